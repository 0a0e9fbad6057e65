// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_RNG_HPP
#define QAW_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace qaw {

// Thin deterministic wrapper around mt19937_64. The standard engine has a
// pinned output sequence, so sampling through these helpers (and never
// through std::uniform_*_distribution, which varies by library) keeps runs
// byte-identical for a fixed seed on any platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform value in [0, n) by rejection sampling.
  std::size_t below(std::size_t n) {
    if (n <= 1) return 0;
    std::uint64_t span = static_cast<std::uint64_t>(n);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return static_cast<std::size_t>(v % span);
  }

  bool coin() { return (gen_() & 1) != 0; }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[below(pool.size())];
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace qaw

#endif
