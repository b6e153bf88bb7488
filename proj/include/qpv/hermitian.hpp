#pragma once

#include <string>
#include <vector>

#include "qpv/error.hpp"
#include "qpv/matrix.hpp"
#include "qpv/polynomial.hpp"
#include "qpv/quaternion.hpp"

namespace qpv {

template <class R>
using QMatrix = Matrix<Quaternion<R>>;

/// x -> (x_ji^*).
template <class R>
QMatrix<R> iota(const QMatrix<R>& m) {
  QMatrix<R> out(m.cols(), m.rows(), Quaternion<R>(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = conj(m(i, j));
  return out;
}

template <class R>
bool is_hermitian(const QMatrix<R>& m) {
  return m.is_square() && iota(m) == m;
}

template <class R>
QMatrix<R> scalar_qmatrix(const Matrix<R>& m) {
  return m.map([](const R& v) { return Quaternion<R>(v); });
}

/// Reduced norm of M_n(B): determinant of the split image, descended.
template <class R>
R reduced_norm_matrix(const SplitEmbedding<R>& emb, const QMatrix<R>& m) {
  if (!m.is_square()) throw Error(Errc::SizeMismatch, "reduced norm of a non-square matrix");
  return descend(det(emb.apply(m)));
}

/// Inverse in GL_n(B), through the split image.
template <class R>
QMatrix<R> inverse(const SplitEmbedding<R>& emb, const QMatrix<R>& m) {
  return emb.descend_matrix(inverse(emb.apply(m)));
}

namespace detail {

template <class T>
T pfaffian_rec(const Matrix<T>& a, std::vector<std::size_t>& idx) {
  if (idx.empty()) return T(1);
  const std::size_t i0 = idx[0];
  T acc(0);
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const T& aij = a(i0, idx[k]);
    if (is_zero(aij)) continue;
    std::vector<std::size_t> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t m = 1; m < idx.size(); ++m)
      if (m != k) rest.push_back(idx[m]);
    const T sub = aij * pfaffian_rec(a, rest);
    acc = (k % 2 == 1) ? acc + sub : acc - sub;
  }
  return acc;
}

}  // namespace detail

/// Pfaffian of an alternating matrix by expansion along the first row.
template <class T>
T classical_pfaffian(const Matrix<T>& a) {
  if (!a.is_square() || a.rows() % 2) throw Error(Errc::SizeMismatch, "Pfaffian needs an even square matrix");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!is_zero(a(i, i))) throw Error(Errc::NotAlternating, "nonzero diagonal entry");
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (!(a(i, j) == -a(j, i))) throw Error(Errc::NotAlternating, "matrix is not skew-symmetric");
  }
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return detail::pfaffian_rec(a, idx);
}

/// Pfaff_n of a Hermitian matrix: the classical Pfaffian of phi(x) J_n with
/// J_n = diag([[0,1],[-1,0]], ...), descended to the coefficient ring.
template <class R>
R pfaffian(const SplitEmbedding<R>& emb, const QMatrix<R>& x) {
  using K = typename SplitEmbedding<R>::K;
  Matrix<K> a = emb.apply(x);
  // Right multiplication by J_n: column pairs (c0, c1) -> (-c1, c0).
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); j += 2) {
      const K c0 = a(i, j);
      a(i, j) = -a(i, j + 1);
      a(i, j + 1) = c0;
    }
  }
  return descend(classical_pfaffian(a));
}

/// Point of V: the pencil x(v) = x1 v1 + x2 v2.
template <class R>
struct HermitianPair {
  QMatrix<R> x1;
  QMatrix<R> x2;

  std::size_t n() const noexcept { return x1.rows(); }
  QMatrix<R> at(const R& v1, const R& v2) const {
    return x1 * Quaternion<R>(v1) + x2 * Quaternion<R>(v2);
  }
  friend bool operator==(const HermitianPair& a, const HermitianPair& b) { return a.x1 == b.x1 && a.x2 == b.x2; }
};

/// g = (g1, g2) in GL_n(B) x GL_2.
template <class R>
struct GroupElement {
  QMatrix<R> g1;
  Matrix<R> g2;

  static GroupElement identity(std::size_t n) {
    return {QMatrix<R>::identity(n, Quaternion<R>(1)), Matrix<R>::identity(2, R(1))};
  }
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.g1 == b.g1 && a.g2 == b.g2; }
};

template <class R>
void check_pair(const HermitianPair<R>& x) {
  if (!x.x1.is_square() || x.x1.rows() != x.x2.rows() || x.x1.cols() != x.x2.cols())
    throw Error(Errc::SizeMismatch, "pair components must be square of equal size");
}

/// (g x)(v) = g1 x(v g2) g1^iota.
template <class R>
HermitianPair<R> act(const GroupElement<R>& g, const HermitianPair<R>& x) {
  check_pair(x);
  if (g.g1.rows() != x.n() || g.g1.cols() != x.n() || g.g2.rows() != 2 || g.g2.cols() != 2)
    throw Error(Errc::SizeMismatch, "group element and pair sizes differ");
  const auto gi = iota(g.g1);
  const Quaternion<R> a(g.g2(0, 0)), b(g.g2(0, 1)), c(g.g2(1, 0)), d(g.g2(1, 1));
  HermitianPair<R> out{g.g1 * (x.x1 * a + x.x2 * b) * gi, g.g1 * (x.x1 * c + x.x2 * d) * gi};
  if (!is_hermitian(out.x1) || !is_hermitian(out.x2))
    throw Error(Errc::MalformedInput, "action produced a non-Hermitian pair; input is not Hermitian");
  return out;
}

template <class R>
GroupElement<R> compose(const GroupElement<R>& g, const GroupElement<R>& h) {
  return {g.g1 * h.g1, g.g2 * h.g2};
}

template <class R>
GroupElement<R> inverse(const SplitEmbedding<R>& emb, const GroupElement<R>& g) {
  return {inverse(emb, g.g1), inverse(g.g2)};
}

template <class R>
bool is_invertible(const SplitEmbedding<R>& emb, const GroupElement<R>& g) {
  return is_unit(reduced_norm_matrix(emb, g.g1)) && is_unit(det(g.g2));
}

/// F(v) = sum_k c[k] v1^(n-k) v2^k.
template <class R>
struct BinaryForm {
  std::vector<R> c;

  int degree() const noexcept { return static_cast<int>(c.size()) - 1; }
  R operator()(const R& v1, const R& v2) const {
    R acc(0);
    const int n = degree();
    for (int k = 0; k <= n; ++k) {
      R term = c[static_cast<std::size_t>(k)];
      for (int e = 0; e < n - k; ++e) term = term * v1;
      for (int e = 0; e < k; ++e) term = term * v2;
      acc = acc + term;
    }
    return acc;
  }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    if (a.c.size() != b.c.size()) return false;
    for (std::size_t i = 0; i < a.c.size(); ++i)
      if (!(a.c[i] == b.c[i])) return false;
    return true;
  }
  friend BinaryForm operator*(const R& s, const BinaryForm& f) {
    BinaryForm r = f;
    for (auto& x : r.c) x = s * x;
    return r;
  }
};

namespace detail {

/// Product of homogeneous forms given by coefficient lists in v1^(n-k) v2^k.
template <class R>
std::vector<R> form_product(const std::vector<R>& a, const std::vector<R>& b) {
  std::vector<R> r(a.size() + b.size() - 1, R(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

}  // namespace detail

/// F(v g2).
template <class R>
BinaryForm<R> substitute(const BinaryForm<R>& f, const Matrix<R>& g2) {
  const int n = f.degree();
  // (v g2)_1 = g00 v1 + g10 v2, (v g2)_2 = g01 v1 + g11 v2.
  const std::vector<R> u1{g2(0, 0), g2(1, 0)};
  const std::vector<R> u2{g2(0, 1), g2(1, 1)};
  std::vector<R> acc(static_cast<std::size_t>(n) + 1, R(0));
  for (int k = 0; k <= n; ++k) {
    std::vector<R> term{f.c[static_cast<std::size_t>(k)]};
    for (int e = 0; e < n - k; ++e) term = detail::form_product(term, u1);
    for (int e = 0; e < k; ++e) term = detail::form_product(term, u2);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + term[i];
  }
  return {acc};
}

/// F_x(v) = Pfaff_n(x(v)), interpolated from its values at (1,0), (0,1),
/// (1,1) and, for n = 3, (1,-1).
template <class R>
BinaryForm<R> form_of_pair(const SplitEmbedding<R>& emb, const HermitianPair<R>& x) {
  check_pair(x);
  const R one(1), zero(0);
  const R f10 = pfaffian(emb, x.x1);
  const R f01 = pfaffian(emb, x.x2);
  const R f11 = pfaffian(emb, x.at(one, one));
  if (x.n() == 2) return {{f10, f11 - f10 - f01, f01}};
  if (x.n() == 3) {
    const R f1m = pfaffian(emb, x.at(one, -one));
    const R bpc = f11 - f10 - f01;
    const R bmc = f10 - f01 - f1m;
    const R two = emb.algebra()->a + emb.algebra()->a;
    const R half = emb.algebra()->a / two;
    return {{f10, (bpc + bmc) * half, (bpc - bmc) * half, f01}};
  }
  throw Error(Errc::SizeMismatch, "only n = 2, 3 are supported");
}

template <class R>
R discriminant(const BinaryForm<R>& f) {
  if (f.degree() == 2) {
    const R &a = f.c[0], &b = f.c[1], &c = f.c[2];
    return b * b - R(4) * a * c;
  }
  if (f.degree() == 3) {
    const R &a = f.c[0], &b = f.c[1], &c = f.c[2], &d = f.c[3];
    return b * b * c * c - R(4) * a * c * c * c - R(4) * b * b * b * d - R(27) * a * a * d * d +
           R(18) * a * b * c * d;
  }
  throw Error(Errc::SizeMismatch, "discriminant only for binary quadratic or cubic forms");
}

template <class R>
bool is_semistable(const SplitEmbedding<R>& emb, const HermitianPair<R>& x) {
  return !is_zero(discriminant(form_of_pair(emb, x)));
}

/// chi(g) = N(g1) det(g2) for n = 2 and N(g1)^2 det(g2)^3 for n = 3.
template <class R>
R character_chi(const SplitEmbedding<R>& emb, const GroupElement<R>& g) {
  const R n1 = reduced_norm_matrix(emb, g.g1);
  const R d2 = det(g.g2);
  if (g.g1.rows() == 2) return n1 * d2;
  if (g.g1.rows() == 3) return n1 * n1 * d2 * d2 * d2;
  throw Error(Errc::SizeMismatch, "only n = 2, 3 are supported");
}

/// Distinct points of P^1(k) where F vanishes, normalized as (1:0) or (t:1).
template <class R>
std::vector<std::pair<R, R>> rational_roots(const BinaryForm<R>& f) {
  std::vector<std::pair<R, R>> out;
  const int n = f.degree();
  if (is_zero(f.c[0])) out.emplace_back(R(1), R(0));
  // F(t, 1) = sum_k c[k] t^(n-k).
  std::vector<R> low(static_cast<std::size_t>(n) + 1, R(0));
  for (int k = 0; k <= n; ++k) low[static_cast<std::size_t>(n - k)] = f.c[static_cast<std::size_t>(k)];
  const Polynomial<R> p(low);
  if (p.degree() <= 0) return out;
  auto roots = roots_in_base(p);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i > 0 && roots[i] == roots[i - 1]) continue;
    out.emplace_back(roots[i], R(1));
  }
  return out;
}

/// Factorization type of a separable binary form over the base field.
template <class R>
std::string form_splitting_type(const BinaryForm<R>& f) {
  if (is_zero(discriminant(f))) throw Error(Errc::NotSemistable, "binary form has a repeated root");
  const std::size_t r = rational_roots(f).size();
  if (f.degree() == 2) return r == 2 ? "(1,1)" : "(2)";
  if (r == 3) return "(1,1,1)";
  if (r == 1) return "(1,2)";
  return "(3)";
}

template <class R>
std::string splitting_type(const SplitEmbedding<R>& emb, const HermitianPair<R>& x) {
  return form_splitting_type(form_of_pair(emb, x));
}

}  // namespace qpv
