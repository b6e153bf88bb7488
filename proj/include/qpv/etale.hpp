#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qpv/error.hpp"
#include "qpv/matrix.hpp"
#include "qpv/polynomial.hpp"
#include "qpv/prime_field.hpp"
#include "qpv/rational.hpp"

namespace qpv {

/// S[t]/(f) for a monic separable f of degree 2 or 3.
template <class S>
struct EtaleAlgebra {
  std::vector<S> modulus;  // low degree first, modulus.back() == 1

  int degree() const noexcept { return static_cast<int>(modulus.size()) - 1; }
  Polynomial<S> poly() const { return Polynomial<S>(modulus); }

  friend bool operator==(const EtaleAlgebra& a, const EtaleAlgebra& b) {
    if (a.modulus.size() != b.modulus.size()) return false;
    for (std::size_t i = 0; i < a.modulus.size(); ++i)
      if (!(a.modulus[i] == b.modulus[i])) return false;
    return true;
  }
};

template <class S>
using AlgebraPtr = std::shared_ptr<const EtaleAlgebra<S>>;

/// Element of an étale algebra S[t]/(f), or a bare constant of S when no
/// algebra is attached. Constants adopt the algebra of the other operand.
template <class S>
class Etale {
 public:
  using base_type = S;

  Etale() : c_{S(0), S(0), S(0)} {}
  Etale(long v) : c_{S(v), S(0), S(0)} {}  // NOLINT: literals
  Etale(const S& s) : c_{s, S(0), S(0)} {}  // NOLINT: base embeds
  Etale(AlgebraPtr<S> alg, std::array<S, 3> c) : alg_(std::move(alg)), c_(std::move(c)) {
    if (alg_) reduce_in_place();
  }

  static Etale generator(const AlgebraPtr<S>& alg) { return Etale(alg, {S(0), S(1), S(0)}); }

  const AlgebraPtr<S>& algebra() const noexcept { return alg_; }
  const std::array<S, 3>& coords() const noexcept { return c_; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  int degree() const noexcept { return alg_ ? alg_->degree() : 1; }

  /// True when every coordinate above the constant one vanishes.
  bool is_constant() const { return is_zero(c_[1]) && is_zero(c_[2]); }

  friend Etale operator+(const Etale& a, const Etale& b) {
    auto alg = merge(a, b);
    return Etale(RawTag{}, alg, {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]});
  }
  friend Etale operator-(const Etale& a, const Etale& b) {
    auto alg = merge(a, b);
    return Etale(RawTag{}, alg, {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]});
  }
  friend Etale operator-(const Etale& a) { return Etale(RawTag{}, a.alg_, {-a.c_[0], -a.c_[1], -a.c_[2]}); }
  friend Etale operator*(const Etale& a, const Etale& b) {
    auto alg = merge(a, b);
    if (!alg) return Etale(a.c_[0] * b.c_[0]);
    const int d = alg->degree();
    std::array<S, 5> prod{S(0), S(0), S(0), S(0), S(0)};
    for (int i = 0; i < d; ++i) {
      if (is_zero(a.c_[static_cast<std::size_t>(i)])) continue;
      for (int j = 0; j < d; ++j)
        prod[static_cast<std::size_t>(i + j)] =
            prod[static_cast<std::size_t>(i + j)] + a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
    }
    for (int k = 2 * d - 2; k >= d; --k) {
      const S top = prod[static_cast<std::size_t>(k)];
      if (is_zero(top)) continue;
      prod[static_cast<std::size_t>(k)] = S(0);
      for (int j = 0; j < d; ++j)
        prod[static_cast<std::size_t>(k - d + j)] =
            prod[static_cast<std::size_t>(k - d + j)] - top * alg->modulus[static_cast<std::size_t>(j)];
    }
    return Etale(RawTag{}, alg, {prod[0], prod[1], prod[2]});
  }
  friend Etale operator/(const Etale& a, const Etale& b) { return a * inverse(b); }

  Etale& operator+=(const Etale& o) { return *this = *this + o; }
  Etale& operator-=(const Etale& o) { return *this = *this - o; }
  Etale& operator*=(const Etale& o) { return *this = *this * o; }

  friend bool operator==(const Etale& a, const Etale& b) {
    merge(a, b);
    return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1] && a.c_[2] == b.c_[2];
  }

 private:
  struct RawTag {};
  Etale(RawTag, AlgebraPtr<S> alg, std::array<S, 3> c) : alg_(std::move(alg)), c_(std::move(c)) {}

  static AlgebraPtr<S> merge(const Etale& a, const Etale& b) {
    if (!a.alg_) return b.alg_;
    if (!b.alg_ || a.alg_ == b.alg_) return a.alg_;
    if (!(*a.alg_ == *b.alg_)) throw Error(Errc::DomainMismatch, "elements of different étale algebras");
    return a.alg_;
  }

  void reduce_in_place() {
    const int d = alg_->degree();
    for (int i = d; i < 3; ++i)
      if (!is_zero(c_[static_cast<std::size_t>(i)]))
        throw Error(Errc::SizeMismatch, "coordinate beyond the algebra degree");
  }

  AlgebraPtr<S> alg_;
  std::array<S, 3> c_;
};

template <class S>
bool is_zero(const Etale<S>& x) {
  return is_zero(x[0]) && is_zero(x[1]) && is_zero(x[2]);
}

/// Matrix of multiplication by x in the power basis of `alg`.
template <class S>
Matrix<S> mul_matrix(const AlgebraPtr<S>& alg, const Etale<S>& x) {
  const int d = alg->degree();
  Matrix<S> m(static_cast<std::size_t>(d), static_cast<std::size_t>(d), S(0));
  Etale<S> col = Etale<S>(alg, {S(1), S(0), S(0)}) * x;
  const Etale<S> t = Etale<S>::generator(alg);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = col[static_cast<std::size_t>(i)];
    col = col * t;
  }
  return m;
}

template <class S>
S norm(const AlgebraPtr<S>& alg, const Etale<S>& x) {
  if (!alg) return x[0];
  return det(mul_matrix(alg, x));
}
template <class S>
S trace(const AlgebraPtr<S>& alg, const Etale<S>& x) {
  if (!alg) return x[0];
  return trace(mul_matrix(alg, x));
}
template <class S>
S norm(const Etale<S>& x) { return norm(x.algebra(), x); }
template <class S>
S trace(const Etale<S>& x) { return trace(x.algebra(), x); }

/// Characteristic polynomial of multiplication by x (monic, low degree first).
template <class S>
Polynomial<S> element_charpoly(const AlgebraPtr<S>& alg, const Etale<S>& x) {
  const auto c = charpoly(mul_matrix(alg, x));
  std::vector<S> low(c.rbegin(), c.rend());
  return Polynomial<S>(low);
}

template <class S>
bool is_unit(const Etale<S>& x) {
  if (!x.algebra() || x.is_constant()) return is_unit(x[0]);
  return is_unit(norm(x));
}

template <class S>
Etale<S> inverse(const Etale<S>& x) {
  if (!x.algebra() || x.is_constant()) return Etale<S>(x.algebra(), {inverse(x[0]), S(0), S(0)});
  const auto& alg = x.algebra();
  const Matrix<S> m = mul_matrix(alg, x);
  const S d = det(m);
  if (!is_unit(d)) throw Error(Errc::NotAUnit, "étale element is not a unit");
  const Matrix<S> adj = adjugate(m);
  const S dinv = inverse(d);
  std::array<S, 3> c{S(0), S(0), S(0)};
  for (int i = 0; i < alg->degree(); ++i) c[static_cast<std::size_t>(i)] = adj(static_cast<std::size_t>(i), 0) * dinv;
  return Etale<S>(alg, c);
}

template <class S>
std::optional<Etale<S>> try_sqrt(const Etale<S>& x) {
  if (!x.is_constant()) return std::nullopt;
  auto r = try_sqrt(x[0]);
  if (!r) return std::nullopt;
  return Etale<S>(x.algebra(), {*r, S(0), S(0)});
}

template <class S>
Etale<S> power(Etale<S> x, std::int64_t e) {
  Etale<S> r = Etale<S>(x.algebra(), {S(1), S(0), S(0)});
  while (e > 0) {
    if (e & 1) r = r * x;
    x = x * x;
    e >>= 1;
  }
  return r;
}

/// Builds S[t]/(f) from monic coefficients (low degree first).
template <class S>
AlgebraPtr<S> etale_make(std::vector<S> modulus) {
  const int d = static_cast<int>(modulus.size()) - 1;
  if (d < 2 || d > 3) throw Error(Errc::SizeMismatch, "modulus degree must be 2 or 3");
  if (!(modulus.back() == S(1))) throw Error(Errc::NonMonic, "modulus must be monic");
  const S disc = poly_discriminant(Polynomial<S>(modulus));
  if (!is_unit(disc)) throw Error(Errc::InseparableModulus, "modulus is not separable");
  return std::make_shared<const EtaleAlgebra<S>>(EtaleAlgebra<S>{std::move(modulus)});
}

/// Lift into the next layer up, as a constant.
template <class S>
Etale<Etale<S>> lift(const Etale<S>& x) {
  return Etale<Etale<S>>(x);
}

/// The constant coordinate of x, provided every other coordinate vanishes.
template <class S>
S descend(const Etale<S>& x) {
  if (!x.is_constant()) throw Error(Errc::DescentFailure, "element does not lie in the base");
  return x[0];
}

/// The other root of a quadratic modulus acting on an element: t -> -c1 - t.
template <class S>
Etale<S> quadratic_conjugate(const Etale<S>& x) {
  const auto& alg = x.algebra();
  if (!alg) return x;
  if (alg->degree() != 2) throw Error(Errc::SizeMismatch, "quadratic conjugate needs a degree-2 algebra");
  const Etale<S> t = Etale<S>::generator(alg);
  const Etale<S> tbar = Etale<S>(-alg->modulus[1]) - t;
  return Etale<S>(x[0]) + Etale<S>(x[1]) * tbar;
}

/// Substitutes the power-basis generator with `image` (an element of the
/// same or a larger ring U).
template <class U, class S>
U substitute_generator(const Etale<S>& x, const U& image) {
  U acc(0);
  for (int i = (x.algebra() ? x.algebra()->degree() : 1); i-- > 0;)
    acc = acc * image + U(x[static_cast<std::size_t>(i)]);
  return acc;
}

/// Roots of f in a finite étale algebra over F_p by enumeration.
std::vector<Etale<Fp>> roots_in_algebra(const AlgebraPtr<Fp>& alg, const Polynomial<Fp>& f, std::int64_t p);
/// Every element of a finite étale algebra over F_p, lexicographic in coordinates.
std::vector<Etale<Fp>> enumerate_elements(const AlgebraPtr<Fp>& alg, std::int64_t p);

/// Whether the modulus has a root in the base (degree 2/3 means reducible).
bool modulus_reducible(const AlgebraPtr<Rational>& alg);
bool modulus_reducible(const AlgebraPtr<Fp>& alg, std::int64_t p);

/// For a cubic field Q[t]/(f) with square discriminant: the three roots of f in
/// the field, (beta, beta^theta, beta^(theta^2)), where theta is the Galois
/// generator from the formula beta2 - beta3 = -sqrt(disc) / f'(beta).
std::optional<std::array<Etale<Rational>, 3>> galois_cubic_roots(const AlgebraPtr<Rational>& alg);

/// Galois conjugates of x per the supported configurations: degree 2 over any
/// field (the involution), degree 3 over F_p (Frobenius orbit) and degree 3
/// Galois over Q. Throws ReducibleModulus or ConjugatesUnavailable.
std::vector<Etale<Rational>> conjugates(const Etale<Rational>& x);
std::vector<Etale<Fp>> conjugates(const Etale<Fp>& x, std::int64_t p);

/// Universal splitting algebra of a separable cubic f over S:
/// M = L[u]/(q(u)) with L = S[t]/(f), q(u) = f(u)/(u - beta).
/// The three roots are beta, u and b1 - beta - u.
template <class S>
struct CubicTower {
  using Elt = Etale<Etale<S>>;

  AlgebraPtr<S> L;
  AlgebraPtr<Etale<S>> M;
  std::array<Elt, 3> roots;

  explicit CubicTower(AlgebraPtr<S> l) : L(std::move(l)) {
    if (L->degree() != 3) throw Error(Errc::SizeMismatch, "cubic tower needs a degree-3 algebra");
    const S b1 = -L->modulus[2];
    const S b2 = L->modulus[1];
    const Etale<S> beta = Etale<S>::generator(L);
    M = etale_make(std::vector<Etale<S>>{beta * beta - Etale<S>(b1) * beta + Etale<S>(b2), beta - Etale<S>(b1),
                                         Etale<S>(1)});
    const Elt b(beta);
    const Elt u = Elt::generator(M);
    roots = {b, u, Elt(Etale<S>(b1)) - b - u};
  }

  /// Elements of L embedded in M.
  Elt embed(const Etale<S>& x) const { return Elt(M, {x, Etale<S>(0), Etale<S>(0)}); }

  /// The ring endomorphism of M sending (beta, u) to (img_beta, img_u).
  Elt apply(const Elt& m, const Elt& img_beta, const Elt& img_u) const {
    Elt acc(0);
    for (int j = M->degree(); j-- > 0;) {
      const Etale<S>& layer = m[static_cast<std::size_t>(j)];
      acc = acc * img_u + substitute_generator(layer, img_beta);
    }
    return acc;
  }

  /// Permutation of the roots; `perm[i]` is the index of the image of root i.
  Elt permute(const Elt& m, const std::array<int, 3>& perm) const {
    return apply(m, roots[static_cast<std::size_t>(perm[0])], roots[static_cast<std::size_t>(perm[1])]);
  }

  // Named automorphisms on roots (beta1, beta2, beta3) = (beta, u, b1-beta-u).
  Elt tau(const Elt& m) const { return permute(m, {1, 0, 2}); }
  Elt mu(const Elt& m) const { return permute(m, {2, 1, 0}); }
  Elt theta(const Elt& m) const { return permute(m, {1, 2, 0}); }
};

}  // namespace qpv
