#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qpv/error.hpp"
#include "qpv/prime_field.hpp"
#include "qpv/rational.hpp"

namespace qpv {

namespace detail {
template <class T>
bool scalar_is_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

/// Dense univariate polynomial, coefficients stored low degree first.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }
  Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }

  static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
  static Polynomial monomial(const T& v, std::size_t deg) {
    std::vector<T> c(deg + 1, v - v);
    c[deg] = v;
    return Polynomial(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<T>& coeffs() const noexcept { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  T lead() const { return c_.empty() ? T(0) : c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  /// Evaluate at an element of an extension ring `U` containing T.
  template <class U>
  U eval(const U& x) const {
    U acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + U(c_[k]);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(T(static_cast<long>(k)) * c_[k]);
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> r = a.c_;
    for (auto& x : r) x = -x;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) { return constant(s) * a; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  /// Euclidean division; the leading coefficient of `b` must be a unit.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error(Errc::NotAUnit, "polynomial division by zero");
    const T inv = inverse(b.lead());
    std::vector<T> r = a.c_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<T> q(static_cast<std::size_t>(a.degree() - db + 1), T(0));
    for (int k = a.degree(); k >= db; --k) {
      const T f = r[static_cast<std::size_t>(k)] * inv;
      q[static_cast<std::size_t>(k - db)] = f;
      for (int j = 0; j <= db; ++j)
        r[static_cast<std::size_t>(k - db + j)] =
            r[static_cast<std::size_t>(k - db + j)] - f * b.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  Polynomial monic() const {
    if (is_zero()) return *this;
    const T inv = inverse(lead());
    std::vector<T> r = c_;
    for (auto& x : r) x = x * inv;
    return Polynomial(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero_scalar(c_.back())) c_.pop_back();
  }
  static bool is_zero_scalar(const T& x) { return detail::scalar_is_zero(x); }

  std::vector<T> c_;
};

template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Discriminant of a polynomial of degree 2 or 3 (classical formulas).
template <class T>
T poly_discriminant(const Polynomial<T>& f) {
  if (f.degree() == 2) {
    const T a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
    return b * b - T(4) * a * c;
  }
  if (f.degree() == 3) {
    const T a = f.coeff(3), b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
    return b * b * c * c - T(4) * a * c * c * c - T(4) * b * b * b * d - T(27) * a * a * d * d +
           T(18) * a * b * c * d;
  }
  throw Error(Errc::SizeMismatch, "discriminant only for degree 2 or 3");
}

// Real roots over Q (Sturm sequences).

/// Sturm chain of f (f, f', -rem, ...).
std::vector<Polynomial<Rational>> sturm_chain(const Polynomial<Rational>& f);
/// Number of distinct real roots of squarefree f in the half-open interval (lo, hi].
int sturm_count(const std::vector<Polynomial<Rational>>& chain, const Rational& lo, const Rational& hi);
/// Rational bound B with every real root in (-B, B).
Rational root_bound(const Polynomial<Rational>& f);

/// Disjoint isolating intervals (lo, hi] for the distinct real roots of f,
/// sorted ascending. Endpoints are never roots.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const Polynomial<Rational>& f);

/// Number of distinct real roots.
int count_real_roots(const Polynomial<Rational>& f);

/// Shrink an isolating interval of a squarefree f until its width is < `width`.
void refine_root(const std::vector<Polynomial<Rational>>& chain, std::pair<Rational, Rational>& iv,
                 const Rational& width);

/// Sign of g at the unique root of squarefree f in the isolating interval `iv`,
/// assuming g does not vanish there. `iv` is refined in place.
int sign_at_root(const Polynomial<Rational>& f, std::pair<Rational, Rational>& iv, const Polynomial<Rational>& g);

// Roots in the base.

/// Roots of f in Q with multiplicity, ascending.
std::vector<Rational> roots_in_base(const Polynomial<Rational>& f);
/// Roots of f in F_p with multiplicity, ascending canonical order (p <= 2^20).
std::vector<Fp> roots_in_base(const Polynomial<Fp>& f, std::int64_t p);
/// Same, reading p from the first coefficient bound to a modulus.
std::vector<Fp> roots_in_base(const Polynomial<Fp>& f);

}  // namespace qpv
