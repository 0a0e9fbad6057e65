// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_RATIONAL_HPP
#define QAW_RATIONAL_HPP

#include <cstdint>
#include <string>

namespace qaw {

// Exact rational number with a canonical representation: reduced fraction,
// positive denominator. All arithmetic is overflow-checked; distances and
// bounds stay tiny in practice, so hitting the check means a logic bug.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "n" or "n/d"; throws ValidationError on anything else.
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

private:
  std::int64_t num_;
  std::int64_t den_;
};

// Rational extended with a single point at infinity. Used for distances,
// where "no finite bound" is a legitimate value. Addition absorbs into
// infinity and all comparisons treat it as the greatest element.
class ExtRational {
public:
  ExtRational() : inf_(false), fin_() {}
  ExtRational(const Rational& r) : inf_(false), fin_(r) {}
  ExtRational(std::int64_t n) : inf_(false), fin_(n) {}

  static ExtRational infinity() {
    ExtRational e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && fin_.is_zero(); }

  // Finite part; only meaningful when !is_infinite().
  const Rational& finite() const;

  std::string str() const;

  ExtRational operator+(const ExtRational& o) const;

  bool operator==(const ExtRational& o) const;
  bool operator!=(const ExtRational& o) const { return !(*this == o); }
  bool operator<(const ExtRational& o) const;
  bool operator<=(const ExtRational& o) const { return *this < o || *this == o; }
  bool operator>(const ExtRational& o) const { return o < *this; }
  bool operator>=(const ExtRational& o) const { return o <= *this; }

private:
  bool inf_;
  Rational fin_;
};

ExtRational min(const ExtRational& a, const ExtRational& b);
ExtRational max(const ExtRational& a, const ExtRational& b);

}  // namespace qaw

#endif
