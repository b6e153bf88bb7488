#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "qpv/error.hpp"

namespace qpv {

/// Exact rational number with normalized numerator/denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT: integer literals lift implicitly
  explicit Rational(const mpz_class& n) : q_(n) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "n", "-n" or "n/d".
  static Rational parse(std::string_view text);

  const mpq_class& value() const noexcept { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  int sign() const noexcept { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  /// Canonical "num/den" form; the denominator is always present.
  std::string str() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

inline bool is_zero(const Rational& x) { return x.sign() == 0; }
inline bool is_unit(const Rational& x) { return x.sign() != 0; }
Rational inverse(const Rational& x);

/// Exact square root in Q, if one exists.
std::optional<Rational> try_sqrt(const Rational& x);

}  // namespace qpv
