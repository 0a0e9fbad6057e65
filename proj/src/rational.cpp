// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/rational.hpp"

#include <cstdlib>
#include <limits>

#include "qaw/error.hpp"

namespace qaw {

namespace {

using I128 = __int128;

I128 iabs(I128 v) { return v < 0 ? -v : v; }

I128 igcd(I128 a, I128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(I128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw ValidationError("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

Rational make(I128 num, I128 den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  I128 g = igcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw ValidationError("rational with zero denominator");
  if (den_ < 0) {
    num_ = narrow(-I128(num_));
    den_ = narrow(-I128(den_));
  }
  I128 g = igcd(num_, den_);
  if (g > 1) {
    num_ = static_cast<std::int64_t>(num_ / g);
    den_ = static_cast<std::int64_t>(den_ / g);
  }
}

Rational Rational::parse(const std::string& text) {
  auto parse_int = [](const std::string& s) -> std::int64_t {
    if (s.empty()) throw ValidationError("empty number in rational '" + s + "'");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw ValidationError("bad rational literal '" + s + "'");
    }
    if (pos != s.size()) throw ValidationError("bad rational literal '" + s + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  return make(I128(num_) * o.den_ + I128(o.num_) * den_, I128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return make(I128(num_) * o.den_ - I128(o.num_) * den_, I128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return make(I128(num_) * o.num_, I128(den_) * o.den_);
}

bool Rational::operator<(const Rational& o) const {
  return I128(num_) * o.den_ < I128(o.num_) * den_;
}

const Rational& ExtRational::finite() const {
  if (inf_) throw ValidationError("finite() called on an infinite distance");
  return fin_;
}

std::string ExtRational::str() const { return inf_ ? "inf" : fin_.str(); }

ExtRational ExtRational::operator+(const ExtRational& o) const {
  if (inf_ || o.inf_) return infinity();
  return ExtRational(fin_ + o.fin_);
}

bool ExtRational::operator==(const ExtRational& o) const {
  if (inf_ || o.inf_) return inf_ == o.inf_;
  return fin_ == o.fin_;
}

bool ExtRational::operator<(const ExtRational& o) const {
  if (inf_) return false;
  if (o.inf_) return true;
  return fin_ < o.fin_;
}

ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

}  // namespace qaw
