#pragma once

#include <array>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "qpv/hermitian.hpp"

namespace qpv {

// ---------------------------------------------------------------------------
// Coefficient lifting between R and towers Etale<...Etale<R>>.

template <class M, class R>
M lift_to(const R& r) {
  if constexpr (std::is_same_v<M, R>) {
    return r;
  } else {
    return M(lift_to<typename M::base_type>(r));
  }
}

template <class R, class M>
R descend_to(const M& m) {
  if constexpr (std::is_same_v<M, R>) {
    return m;
  } else {
    return descend_to<R>(descend(m));
  }
}

template <class M, class R>
QuaternionAlgebraPtr<M> lift_algebra(const QuaternionAlgebraPtr<R>& alg) {
  if (!alg) return nullptr;
  return make_quaternion_algebra(lift_to<M>(alg->a), lift_to<M>(alg->b));
}

template <class M, class R>
Quaternion<M> lift_quaternion(const Quaternion<R>& q, const QuaternionAlgebraPtr<M>& alg) {
  if (!q.algebra()) return Quaternion<M>(lift_to<M>(q.s()));
  return map_coefficients(q, alg, [](const R& r) { return lift_to<M>(r); });
}

template <class M, class R>
Matrix<M> lift_matrix(const Matrix<R>& m) {
  return m.map([](const R& r) { return lift_to<M>(r); });
}

template <class M, class R>
QMatrix<M> lift_qmatrix(const QMatrix<R>& m, const QuaternionAlgebraPtr<M>& alg) {
  return m.map([&](const Quaternion<R>& q) { return lift_quaternion(q, alg); });
}

template <class M, class R>
HermitianPair<M> lift_pair(const HermitianPair<R>& x, const QuaternionAlgebraPtr<M>& alg) {
  return {lift_qmatrix(x.x1, alg), lift_qmatrix(x.x2, alg)};
}

template <class M, class R>
GroupElement<M> lift_element(const GroupElement<R>& g, const QuaternionAlgebraPtr<M>& alg) {
  return {lift_qmatrix(g.g1, alg), lift_matrix<M>(g.g2)};
}

template <class R, class M>
Quaternion<R> descend_quaternion(const Quaternion<M>& q, const QuaternionAlgebraPtr<R>& alg) {
  if (!q.algebra()) return Quaternion<R>(descend_to<R>(q.s()));
  return Quaternion<R>(alg, descend_to<R>(q.s()), descend_to<R>(q.x()), descend_to<R>(q.y()), descend_to<R>(q.z()));
}

template <class R, class M>
HermitianPair<R> descend_pair(const HermitianPair<M>& x, const QuaternionAlgebraPtr<R>& alg) {
  auto f = [&](const Quaternion<M>& q) { return descend_quaternion(q, alg); };
  return {x.x1.map(f), x.x2.map(f)};
}

template <class R, class M>
GroupElement<R> descend_element(const GroupElement<M>& g, const QuaternionAlgebraPtr<R>& alg) {
  return {g.g1.map([&](const Quaternion<M>& q) { return descend_quaternion(q, alg); }),
          g.g2.map([](const M& m) { return descend_to<R>(m); })};
}

/// Applies a coefficient map (e.g. a Galois automorphism) entrywise.
template <class M, class F>
GroupElement<M> map_element(const GroupElement<M>& g, F&& f) {
  auto fq = [&](const Quaternion<M>& q) {
    if (!q.algebra()) return Quaternion<M>(f(q.s()));
    return Quaternion<M>(q.algebra(), f(q.s()), f(q.x()), f(q.y()), f(q.z()));
  };
  return {g.g1.map(fq), g.g2.map(f)};
}

/// Inverse of a group element whose first component has scalar entries.
template <class M>
GroupElement<M> scalar_element_inverse(const GroupElement<M>& g) {
  Matrix<M> s(g.g1.rows(), g.g1.cols(), M(0));
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (!g.g1(i, j).is_scalar()) throw Error(Errc::MalformedInput, "expected scalar entries");
      s(i, j) = g.g1(i, j).s();
    }
  return {scalar_qmatrix(inverse(s)), inverse(g.g2)};
}

// ---------------------------------------------------------------------------
// Forms of pairs with scalar entries (no quaternion split needed).

template <class R>
BinaryForm<R> scalar_pair_form(const HermitianPair<R>& x) {
  const std::size_t n = x.n();
  auto eval = [&](const R& v1, const R& v2) {
    Matrix<R> m(n, n, R(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!x.x1(i, j).is_scalar() || !x.x2(i, j).is_scalar())
          throw Error(Errc::MalformedInput, "expected scalar entries");
        m(i, j) = v1 * x.x1(i, j).s() + v2 * x.x2(i, j).s();
      }
    return det(m);
  };
  const R one = R(1);
  if (n == 2) {
    const R c0 = eval(one, R(0)), c2 = eval(R(0), one);
    return BinaryForm<R>{{c0, eval(one, one) - c0 - c2, c2}};
  }
  if (n != 3) throw Error(Errc::SizeMismatch, "pairs have n = 2 or 3");
  const R c0 = eval(one, R(0)), c3 = eval(R(0), one);
  const R gp = eval(one, one) - c0, gm = eval(-one, one) + c0;
  const R two = one + one;
  return BinaryForm<R>{{c0, (gp + gm) / two - c3, (gp - gm) / two, c3}};
}

// ---------------------------------------------------------------------------
// Base points, representatives and transporters.

template <class R>
QMatrix<R> qmat(std::initializer_list<std::initializer_list<R>> rows) {
  return scalar_qmatrix(Matrix<R>(rows));
}

template <class R>
HermitianPair<R> d5_w() {
  return {qmat<R>({{R(0), R(0)}, {R(0), R(1)}}), qmat<R>({{R(1), R(0)}, {R(0), R(0)}})};
}

template <class R>
HermitianPair<R> d5_x_alpha(const R& a1, const R& a2) {
  if (!is_unit(a1 * a1 - R(4) * a2)) throw Error(Errc::InseparableModulus, "t^2 - a1 t + a2 is not separable");
  return {qmat<R>({{R(0), R(1)}, {R(1), a1}}), qmat<R>({{R(1), a1}, {a1, a1 * a1 - a2}})};
}

/// Transporter with act(g, w) = x_alpha, for conjugate roots alpha, alpha'.
template <class M>
GroupElement<M> d5_g_alpha(const M& al, const M& alc) {
  const M d = inverse(al - alc);
  const Matrix<M> g2{{-d, d}, {-alc * d, al * d}};
  return {qmat<M>({{M(1), M(1)}, {al, alc}}), g2};
}

template <class R>
GroupElement<R> d5_nu_tilde() {
  return {qmat<R>({{R(0), R(1)}, {R(1), R(0)}}), Matrix<R>{{R(0), R(1)}, {R(1), R(0)}}};
}

template <class R>
HermitianPair<R> e7_w() {
  return {qmat<R>({{R(0), R(0), R(0)}, {R(0), R(1), R(0)}, {R(0), R(0), R(-1)}}),
          qmat<R>({{R(1), R(0), R(0)}, {R(0), R(-1), R(0)}, {R(0), R(0), R(0)}})};
}

template <class R>
HermitianPair<R> e7_x_alpha(const R& a1, const R& a2) {
  if (!is_unit(a1 * a1 - R(4) * a2)) throw Error(Errc::NotSemistable, "t^2 - a1 t + a2 is not separable");
  const R z(0), o(1);
  return {qmat<R>({{z, z, z}, {z, z, o}, {z, o, a1}}), qmat<R>({{-o, z, z}, {z, o, a1}, {z, a1, a1 * a1 - a2}})};
}

template <class R>
HermitianPair<R> e7_x_beta(const R& b1, const R& b2, const R& b3) {
  const std::vector<R> f{-b3, b2, -b1, R(1)};
  if (!is_unit(poly_discriminant(Polynomial<R>(f))))
    throw Error(Errc::NotSemistable, "t^3 - b1 t^2 + b2 t - b3 is not separable");
  const R z(0), o(1), h2 = b1 * b1 - b2, h3 = b1 * b1 * b1 - R(2) * b1 * b2 + b3;
  return {qmat<R>({{z, z, o}, {z, o, b1}, {o, b1, h2}}), qmat<R>({{z, o, b1}, {o, b1, h2}, {b1, h2, h3}})};
}

template <class M>
GroupElement<M> e7_g_alpha(const M& al, const M& alc) {
  const M d = inverse(al - alc);
  const M z(0), o(1);
  return {qmat<M>({{o, z, z}, {z, o, o}, {z, al, alc}}), Matrix<M>{{d, z}, {alc * d, (alc - al) * d}}};
}

template <class M>
GroupElement<M> e7_g_beta(const std::array<M, 3>& r) {
  const M& b1 = r[0];
  const M& b2 = r[1];
  const M& b3 = r[2];
  // Sign chosen so that act(g_beta, w) = x_beta.
  const M di = inverse((b2 - b1) * (b2 - b3) * (b3 - b1));
  const M o(1);
  return {qmat<M>({{o, o, o}, {b1, b2, b3}, {b1 * b1, b2 * b2, b3 * b3}}),
          Matrix<M>{{(b2 - b1) * di, (b2 - b3) * di}, {b3 * (b2 - b1) * di, b1 * (b2 - b3) * di}}};
}

template <class R>
GroupElement<R> e7_nu_tilde() {
  const R z(0), o(1);
  return {qmat<R>({{o, z, z}, {z, z, o}, {z, o, z}}), Matrix<R>{{-o, z}, {o, o}}};
}

template <class R>
GroupElement<R> e7_tau_tilde() {
  const R z(0), o(1);
  return {qmat<R>({{z, o, z}, {o, z, z}, {z, z, o}}), Matrix<R>{{o, o}, {z, -o}}};
}

template <class R>
GroupElement<R> e7_mu_tilde() {
  const R z(0), o(1);
  return {qmat<R>({{z, z, o}, {z, o, z}, {o, z, z}}), Matrix<R>{{z, -o}, {-o, z}}};
}

template <class R>
GroupElement<R> e7_theta_tilde() {
  const R z(0), o(1);
  return {qmat<R>({{z, z, o}, {o, z, z}, {z, o, z}}), Matrix<R>{{z, o}, {-o, -o}}};
}

// ---------------------------------------------------------------------------
// Roots of the defining polynomials.

/// Generator of a quadratic algebra and its conjugate.
template <class R>
std::array<Etale<R>, 2> quadratic_roots(const AlgebraPtr<R>& F) {
  if (!F || F->degree() != 2) throw Error(Errc::SizeMismatch, "expected a quadratic algebra");
  const auto al = Etale<R>::generator(F);
  return {al, quadratic_conjugate(al)};
}

/// (beta, beta^theta, beta^(theta^2)) inside L itself; the cubic must be Galois.
inline std::array<Etale<Rational>, 3> cubic_roots_in_field(const AlgebraPtr<Rational>& L) {
  if (modulus_reducible(L)) throw Error(Errc::ReducibleModulus, "cubic modulus has a rational root");
  auto r = galois_cubic_roots(L);
  if (!r) throw Error(Errc::ConjugatesUnavailable, "cubic field is not Galois; use the splitting tower");
  return *r;
}

inline std::array<Etale<Fp>, 3> cubic_roots_in_field(const AlgebraPtr<Fp>& L, std::int64_t p) {
  auto c = conjugates(Etale<Fp>::generator(L), p);
  return {c[0], c[1], c[2]};
}

// ---------------------------------------------------------------------------
// Orbit representatives of the parameterization.

template <class R>
void require_unit_parameter(bool ok, const char* what) {
  if (!ok) throw Error(Errc::NonUnitParameter, std::string(what) + " must be a unit");
}

template <class R>
HermitianPair<R> rep_split(const R& p1, const R& p2, const R& p3) {
  require_unit_parameter<R>(is_unit(p1) && is_unit(p2) && is_unit(p3), "p_i");
  const R z(0);
  return {qmat<R>({{z, z, z}, {z, p2, z}, {z, z, -p3}}), qmat<R>({{p1, z, z}, {z, -p2, z}, {z, z, z}})};
}

/// Lambda_i = Tr(lambda alpha^i / f'(alpha)), i = 0..3.
template <class R>
std::array<R, 4> lambda_coefficients(const Etale<R>& lambda, const AlgebraPtr<R>& F) {
  const auto al = Etale<R>::generator(F);
  const auto fp_inv = inverse(Etale<R>(R(2)) * al + Etale<R>(F->modulus[1]));
  std::array<R, 4> out;
  Etale<R> pw = lambda * fp_inv;
  for (std::size_t i = 0; i < 4; ++i, pw = pw * al) out[i] = trace(F, pw);
  return out;
}

/// The same coefficients through the conjugate difference quotient.
template <class R>
std::array<R, 4> lambda_by_conjugates(const Etale<R>& lambda, const AlgebraPtr<R>& F) {
  const auto [al, alc] = quadratic_roots(F);
  const auto di = inverse(al - alc);
  std::array<R, 4> out;
  Etale<R> pw = lambda * Etale<R>(F, {R(1), R(0), R(0)});
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = descend((pw - quadratic_conjugate(pw)) * di);
    pw = pw * al;
  }
  return out;
}

template <class R>
HermitianPair<R> rep_mixed(const R& p, const Etale<R>& lambda, const AlgebraPtr<R>& F) {
  if (!F || F->degree() != 2) throw Error(Errc::SizeMismatch, "mixed case needs a quadratic algebra");
  require_unit_parameter<R>(is_unit(p), "p");
  const Etale<R> lam = lambda * Etale<R>(F, {R(1), R(0), R(0)});
  require_unit_parameter<R>(is_unit(lam), "lambda");
  const auto L = lambda_coefficients(lam, F);
  const R z(0);
  return {qmat<R>({{z, z, z}, {z, L[0], L[1]}, {z, L[1], L[2]}}),
          qmat<R>({{-p, z, z}, {z, L[1], L[2]}, {z, L[2], L[3]}})};
}

/// Delta_i = -Tr(delta beta^i / f'(beta)), i = 0..5.
template <class R>
std::array<R, 6> delta_coefficients(const Etale<R>& delta, const AlgebraPtr<R>& L) {
  const auto be = Etale<R>::generator(L);
  const auto fp = Etale<R>(R(3)) * be * be + Etale<R>(R(2) * L->modulus[2]) * be + Etale<R>(L->modulus[1]);
  std::array<R, 6> out;
  Etale<R> pw = delta * inverse(fp);
  for (std::size_t i = 0; i < 6; ++i, pw = pw * be) out[i] = -trace(L, pw);
  return out;
}

/// Three-conjugate formula for Delta_i in a ring M holding the roots and the
/// matching conjugates of delta.
template <class R, class M>
std::array<R, 6> delta_by_conjugates(const std::array<M, 3>& b, const std::array<M, 3>& d) {
  const M den = inverse((b[0] - b[1]) * (b[1] - b[2]) * (b[2] - b[0]));
  std::array<M, 3> pw{d[0], d[1], d[2]};
  std::array<R, 6> out;
  for (std::size_t i = 0; i < 6; ++i) {
    const M num = pw[0] * (b[1] - b[2]) + pw[1] * (b[2] - b[0]) + pw[2] * (b[0] - b[1]);
    out[i] = descend_to<R>(num * den);
    for (std::size_t k = 0; k < 3; ++k) pw[k] = pw[k] * b[k];
  }
  return out;
}

template <class R>
HermitianPair<R> rep_cubic(const Etale<R>& delta, const AlgebraPtr<R>& L) {
  if (!L || L->degree() != 3) throw Error(Errc::SizeMismatch, "cubic case needs a cubic algebra");
  const Etale<R> del = delta * Etale<R>(L, {R(1), R(0), R(0)});
  require_unit_parameter<R>(is_unit(del), "delta");
  const auto D = delta_coefficients(del, L);
  return {qmat<R>({{D[0], D[1], D[2]}, {D[1], D[2], D[3]}, {D[2], D[3], D[4]}}),
          qmat<R>({{D[1], D[2], D[3]}, {D[2], D[3], D[4]}, {D[3], D[4], D[5]}})};
}

// ---------------------------------------------------------------------------
// Diagonal elements and the maps phi.

template <class R>
struct DiagonalGroupElement {
  std::vector<Quaternion<R>> b;  // b_1..b_n
  R t;

  GroupElement<R> element() const {
    QMatrix<R> g1(b.size(), b.size(), Quaternion<R>(0));
    for (std::size_t i = 0; i < b.size(); ++i) g1(i, i) = b[i];
    return {g1, Matrix<R>{{t, R(0)}, {R(0), t}}};
  }
};

/// Reads g as d(b_1, .., b_n, t); nullopt when g is not of that shape.
template <class R>
std::optional<DiagonalGroupElement<R>> as_diagonal(const GroupElement<R>& g) {
  const std::size_t n = g.g1.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !is_zero(g.g1(i, j))) return std::nullopt;
  if (!is_zero(g.g2(0, 1)) || !is_zero(g.g2(1, 0)) || !(g.g2(0, 0) == g.g2(1, 1))) return std::nullopt;
  DiagonalGroupElement<R> d{{}, g.g2(0, 0)};
  for (std::size_t i = 0; i < n; ++i) d.b.push_back(g.g1(i, i));
  return d;
}

enum class StabilizerCase { Split, Mixed, Cubic };

inline const char* case_name(StabilizerCase c) {
  switch (c) {
    case StabilizerCase::Split: return "split";
    case StabilizerCase::Mixed: return "mixed";
    case StabilizerCase::Cubic: return "cubic";
  }
  return "?";
}

/// phi-image: components of L^x; split uses three base elements, mixed a base
/// element and an element of F, cubic one element of L.
template <class R>
struct StabilizerDatum {
  StabilizerCase tag;
  AlgebraPtr<R> L;
  std::vector<Etale<R>> value;

  bool is_one() const {
    for (const auto& v : value)
      if (!(v == Etale<R>(1))) return false;
    return true;
  }
};

template <class R>
StabilizerDatum<R> phi_w(const GroupElement<R>& g) {
  auto d = as_diagonal(g);
  if (!d || d->b.size() != 3) throw Error(Errc::NotInKGroup, "element is not diagonal");
  StabilizerDatum<R> out{StabilizerCase::Split, nullptr, {}};
  for (const auto& bi : d->b) out.value.push_back(Etale<R>(d->t * reduced_norm(bi)));
  for (const auto& v : out.value)
    if (!is_unit(v)) throw Error(Errc::NotInKGroup, "diagonal element is not invertible");
  return out;
}

/// phi on g_alpha K^w g_alpha^{-1}; g must be k-rational.
template <class R>
StabilizerDatum<R> phi_x_alpha(const GroupElement<R>& g, const AlgebraPtr<R>& F,
                               const QuaternionAlgebraPtr<R>& alg) {
  using M = Etale<R>;
  const auto [al, alc] = quadratic_roots(F);
  const auto ga = e7_g_alpha<M>(al, alc);
  const auto lalg = lift_algebra<M>(alg);
  const auto d = compose(compose(scalar_element_inverse(ga), lift_element(g, lalg)), ga);
  auto dd = as_diagonal(d);
  if (!dd || dd->b.size() != 3) throw Error(Errc::NotInKGroup, "conjugate by g_alpha is not diagonal");
  auto nu = [](const M& m) { return quadratic_conjugate(m); };
  auto conj_q = [&](const Quaternion<M>& q) {
    if (!q.algebra()) return Quaternion<M>(nu(q.s()));
    return Quaternion<M>(q.algebra(), nu(q.s()), nu(q.x()), nu(q.y()), nu(q.z()));
  };
  if (!(dd->b[2] == conj_q(dd->b[1])) || !(conj_q(dd->b[0]) == dd->b[0]) || !(nu(dd->t) == dd->t))
    throw Error(Errc::NotInKGroup, "diagonal entries are not Galois-compatible");
  StabilizerDatum<R> out{StabilizerCase::Mixed, F, {}};
  out.value.push_back(M(descend(dd->t * reduced_norm(dd->b[0]))));
  out.value.push_back(dd->t * reduced_norm(dd->b[1]));
  return out;
}

/// phi on g_beta K^w g_beta^{-1} over a ring M holding the roots; `theta`
/// cycles beta_1 -> beta_2 -> beta_3 and `to_l` reads an element of L off M.
template <class R, class M, class Theta, class ToL>
StabilizerDatum<R> phi_x_beta_in(const GroupElement<R>& g, const std::array<M, 3>& roots, const AlgebraPtr<R>& L,
                                 const QuaternionAlgebraPtr<R>& alg, Theta&& theta, ToL&& to_l) {
  const auto gb = e7_g_beta<M>(roots);
  const auto lalg = lift_algebra<M>(alg);
  const auto d = compose(compose(scalar_element_inverse(gb), lift_element(g, lalg)), gb);
  auto dd = as_diagonal(d);
  if (!dd || dd->b.size() != 3) throw Error(Errc::NotInKGroup, "conjugate by g_beta is not diagonal");
  auto th = [&](const Quaternion<M>& q) {
    if (!q.algebra()) return Quaternion<M>(theta(q.s()));
    return Quaternion<M>(q.algebra(), theta(q.s()), theta(q.x()), theta(q.y()), theta(q.z()));
  };
  if (!(dd->b[1] == th(dd->b[0])) || !(dd->b[2] == th(dd->b[1])) || !(theta(dd->t) == dd->t))
    throw Error(Errc::NotInKGroup, "diagonal entries are not Galois-compatible");
  StabilizerDatum<R> out{StabilizerCase::Cubic, L, {}};
  try {
    out.value.push_back(to_l(dd->t * reduced_norm(dd->b[0])));
  } catch (const Error&) {
    throw Error(Errc::NotInKGroup, "phi value does not lie in L");
  }
  return out;
}

/// phi_{x_beta} through the universal splitting tower (any separable cubic).
template <class R>
StabilizerDatum<R> phi_x_beta(const GroupElement<R>& g, const AlgebraPtr<R>& L, const QuaternionAlgebraPtr<R>& alg) {
  const CubicTower<R> tw(L);
  return phi_x_beta_in<R>(
      g, tw.roots, L, alg, [&](const Etale<Etale<R>>& m) { return tw.theta(m); },
      [](const Etale<Etale<R>>& m) { return descend(m); });
}

template <class R>
bool in_identity_stabilizer(const GroupElement<R>& g, const HermitianPair<R>& x, const StabilizerDatum<R>& phi) {
  return act(g, x) == x && phi.is_one();
}

}  // namespace qpv
