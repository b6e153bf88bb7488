#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qpv/hermitian.hpp"
#include "qpv/sampling.hpp"

namespace qpv {

// ---------------------------------------------------------------------------
// Case policies. Each provides the entry ring T, the involution used on the
// right factor, the relative form (det or Pfaffian), invertibility and
// k-coordinates of T.

/// Case (a): Y = M_3(k), G_1 = GL_3(k) x GL_3(k).
template <class R>
struct CaseA {
  using Base = R;
  using T = R;
  static constexpr char tag = 'a';
  static constexpr bool two_sided = true;
  static constexpr int dim = 1;

  T star(const T& t) const { return t; }
  T embed(const R& r) const { return r; }
  T one() const { return embed(unit_one); }
  T zero() const { return embed(unit_one - unit_one); }
  bool unit(const T& t) const { return is_unit(t); }
  bool in_y(const Matrix<T>&) const { return true; }
  R form_value(const Matrix<T>& m) const { return det(m); }
  R norm_det(const Matrix<T>& g) const { return det(g); }
  Matrix<T> inv(const Matrix<T>& g) const { return inverse(g); }
  std::vector<R> coords(const T& t) const { return {t}; }
  T from_coords(const std::vector<R>& c) const { return c[0]; }
  T random(const Sampler<R>& s) const { return s(); }
  T random_diag(const Sampler<R>& s) const { return s(); }

  R unit_one;
};

/// Case (b): Y = H_3(F), G_1 = GL_3(F), F a quadratic field over k.
template <class R>
struct CaseB {
  using Base = R;
  using T = Etale<R>;
  static constexpr char tag = 'b';
  static constexpr bool two_sided = false;
  static constexpr int dim = 2;

  T star(const T& t) const { return quadratic_conjugate(t); }
  T embed(const R& r) const { return T(F, {r, unit_one - unit_one, unit_one - unit_one}); }
  T one() const { return embed(unit_one); }
  T zero() const { return embed(unit_one - unit_one); }
  bool unit(const T& t) const { return is_unit(t); }
  bool in_y(const Matrix<T>& m) const {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!(m(j, i) == star(m(i, j)))) return false;
    return true;
  }
  /// det of an element of H_3(F) lies in k.
  R form_value(const Matrix<T>& m) const {
    const T d = det(m);
    if (!(star(d) == d)) throw Error(Errc::DescentFailure, "determinant of a Hermitian matrix left k");
    return descend(d);
  }
  R norm_det(const Matrix<T>& g) const { return norm(F, det(g)); }
  Matrix<T> inv(const Matrix<T>& g) const { return inverse(g); }
  std::vector<R> coords(const T& t) const {
    const T u = t * one();
    return {u[0], u[1]};
  }
  T from_coords(const std::vector<R>& c) const { return T(F, {c[0], c[1], unit_one - unit_one}); }
  T random(const Sampler<R>& s) const { return T(F, {s(), s(), unit_one - unit_one}); }
  T random_diag(const Sampler<R>& s) const { return embed(s()); }

  AlgebraPtr<R> F;
  R unit_one;
};

/// Case (c): Y = H_3(B), G_1 = GL_3(B).
template <class R>
struct CaseC {
  using Base = R;
  using T = Quaternion<R>;
  static constexpr char tag = 'c';
  static constexpr bool two_sided = false;
  static constexpr int dim = 4;

  explicit CaseC(QuaternionAlgebraPtr<R> alg) : emb(alg), unit_one(alg->a / alg->a) {}

  T star(const T& t) const { return conj(t); }
  T embed(const R& r) const { return T(emb.algebra(), r, r - r, r - r, r - r); }
  T one() const { return embed(unit_one); }
  T zero() const { return embed(unit_one - unit_one); }
  bool unit(const T& t) const { return is_unit(t); }
  bool in_y(const Matrix<T>& m) const { return is_hermitian(m); }
  R form_value(const Matrix<T>& m) const { return pfaffian(emb, m); }
  R norm_det(const Matrix<T>& g) const { return reduced_norm_matrix(emb, g); }
  Matrix<T> inv(const Matrix<T>& g) const { return inverse(emb, g); }
  std::vector<R> coords(const T& t) const {
    const T u = t * one();
    return {u.s(), u.x(), u.y(), u.z()};
  }
  T from_coords(const std::vector<R>& c) const { return T(emb.algebra(), c[0], c[1], c[2], c[3]); }
  T random(const Sampler<R>& s) const { return T(emb.algebra(), s(), s(), s(), s()); }
  T random_diag(const Sampler<R>& s) const { return embed(s()); }

  SplitEmbedding<R> emb;
  R unit_one;
};

// ---------------------------------------------------------------------------
// Points and group elements.

template <class T>
struct CasePair {
  Matrix<T> x1;
  Matrix<T> x2;
  friend bool operator==(const CasePair& a, const CasePair& b) { return a.x1 == b.x1 && a.x2 == b.x2; }
};

/// (g_l, g_r, g_2); g_r is used in case (a) only, otherwise it mirrors g_l.
template <class T, class R>
struct CaseElement {
  Matrix<T> gl;
  Matrix<T> gr;
  Matrix<R> g2;
  friend bool operator==(const CaseElement& a, const CaseElement& b) {
    return a.gl == b.gl && a.gr == b.gr && a.g2 == b.g2;
  }
};

enum class Level { V1, V2, V3, Unstable };

inline const char* level_name(Level l) {
  switch (l) {
    case Level::V1: return "V1";
    case Level::V2: return "V2";
    case Level::V3: return "V3";
    case Level::Unstable: return "unstable";
  }
  return "?";
}

enum class Subgroup { P, HCirc, S3, H };

inline const char* subgroup_name(Subgroup s) {
  switch (s) {
    case Subgroup::P: return "P";
    case Subgroup::HCirc: return "H0";
    case Subgroup::S3: return "S3";
    case Subgroup::H: return "H";
  }
  return "?";
}

template <class C>
struct ReduceToWResult {
  CaseElement<typename C::T, typename C::Base> g;
  CasePair<typename C::T> w;
  int attempts = 0;
};

template <class C>
struct ReduceToUResult {
  CaseElement<typename C::T, typename C::Base> p;
  CasePair<typename C::T> u;
  bool eta_applied = false;
  int attempts = 0;
};

/// Generic algorithms over a case policy C.
template <class C>
class Reducible {
 public:
  using R = typename C::Base;
  using T = typename C::T;
  using Pair = CasePair<T>;
  using Elem = CaseElement<T, R>;
  using Mat = Matrix<T>;

  explicit Reducible(C c, std::uint64_t seed = 1, int budget = 256) : c_(std::move(c)), seed_(seed), budget_(budget) {}

  const C& policy() const { return c_; }
  std::uint64_t seed() const { return seed_; }
  int budget() const { return budget_; }

  // -- basic structure ------------------------------------------------------

  R one() const { return c_.unit_one; }
  R zero() const { return c_.unit_one - c_.unit_one; }

  Mat star_transpose(const Mat& m) const {
    Mat out(m.cols(), m.rows(), c_.zero());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = c_.star(m(i, j));
    return out;
  }

  Mat right_factor(const Elem& g) const { return C::two_sided ? g.gr.transpose() : star_transpose(g.gl); }

  Mat identity3() const { return Mat::identity(3, c_.one()); }
  Matrix<R> identity2() const { return Matrix<R>::identity(2, one()); }
  Elem identity() const { return {identity3(), identity3(), identity2()}; }

  Mat scalar_matrix(const Matrix<R>& m) const { return m.map([&](const R& r) { return c_.embed(r); }); }

  Elem make(const Matrix<R>& g1, const Matrix<R>& g2) const { return {scalar_matrix(g1), scalar_matrix(g1), g2}; }

  void check_pair(const Pair& x) const {
    if (x.x1.rows() != 3 || x.x1.cols() != 3 || x.x2.rows() != 3 || x.x2.cols() != 3)
      throw Error(Errc::SizeMismatch, "reducible pairs are 3x3");
    if (!c_.in_y(x.x1) || !c_.in_y(x.x2)) throw Error(Errc::MalformedInput, "pair is not in Y + Y");
  }

  Pair act(const Elem& g, const Pair& x) const {
    check_pair(x);
    const Mat rf = right_factor(g);
    const T a = c_.embed(g.g2(0, 0)), b = c_.embed(g.g2(0, 1)), cc = c_.embed(g.g2(1, 0)), d = c_.embed(g.g2(1, 1));
    Pair out{g.gl * (x.x1 * a + x.x2 * b) * rf, g.gl * (x.x1 * cc + x.x2 * d) * rf};
    if (!c_.in_y(out.x1) || !c_.in_y(out.x2)) throw Error(Errc::MalformedInput, "action left Y + Y");
    return out;
  }

  Elem compose(const Elem& g, const Elem& h) const {
    return {g.gl * h.gl, C::two_sided ? Mat(g.gr * h.gr) : Mat(g.gl * h.gl), g.g2 * h.g2};
  }

  Elem inverse_of(const Elem& g) const {
    const Mat il = c_.inv(g.gl);
    return {il, C::two_sided ? c_.inv(g.gr) : il, inverse(g.g2)};
  }

  bool invertible(const Elem& g) const {
    if (!is_unit(det(g.g2)) || !is_unit(c_.norm_det(g.gl))) return false;
    return !C::two_sided || is_unit(c_.norm_det(g.gr));
  }

  R chi(const Elem& g) const {
    const R d2 = det(g.g2);
    if constexpr (C::two_sided) {
      const R a = det(g.gl), b = det(g.gr);
      return a * a * b * b * d2 * d2 * d2;
    } else {
      const R n = c_.norm_det(g.gl);
      return n * n * d2 * d2 * d2;
    }
  }

  /// c(g) with F_{g x}(v) = c(g) F_x(v g2).
  R multiplier(const Elem& g) const {
    if constexpr (C::two_sided) {
      return det(g.gl) * det(g.gr);
    } else {
      return c_.norm_det(g.gl);
    }
  }

  BinaryForm<R> form(const Pair& x) const {
    check_pair(x);
    auto eval = [&](const R& v1, const R& v2) { return c_.form_value(x.x1 * c_.embed(v1) + x.x2 * c_.embed(v2)); };
    const R o = one(), z = zero();
    const R c0 = eval(o, z), c3 = eval(z, o);
    const R gp = eval(o, o) - c0, gm = eval(-o, o) + c0;
    const R two = o + o;
    return BinaryForm<R>{{c0, (gp + gm) / two - c3, (gp - gm) / two, c3}};
  }

  Level level(const Pair& x) const {
    const auto f = form(x);
    if (is_zero(discriminant(f))) return Level::Unstable;
    const auto t = form_splitting_type(f);
    if (t == "(1,1,1)") return Level::V1;
    if (t == "(1,2)") return Level::V2;
    return Level::V3;
  }

  // -- subgroups ------------------------------------------------------------

  bool first_row_clear(const Mat& m) const { return is_zero(m(0, 1)) && is_zero(m(0, 2)); }

  bool in_P(const Elem& g) const {
    if (!invertible(g)) return false;
    if (!first_row_clear(g.gl) || !is_zero(g.g2(0, 1))) return false;
    if (C::two_sided && !first_row_clear(g.gr)) return false;
    if (!C::two_sided && !(g.gr == g.gl)) return false;
    return true;
  }

  bool diagonal(const Mat& m) const {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j && !is_zero(m(i, j))) return false;
    return true;
  }

  bool in_H0(const Elem& g) const {
    if (!invertible(g)) return false;
    if (!diagonal(g.gl) || (C::two_sided && !diagonal(g.gr))) return false;
    if (!C::two_sided && !(g.gr == g.gl)) return false;
    return is_zero(g.g2(0, 1)) && is_zero(g.g2(1, 0)) && g.g2(0, 0) == g.g2(1, 1);
  }

  Elem theta() const {
    const R o = one(), z = zero();
    return make(Matrix<R>{{z, z, o}, {o, z, z}, {z, o, z}}, Matrix<R>{{z, o}, {-o, -o}});
  }
  Elem eta() const {
    const R o = one(), z = zero();
    return make(Matrix<R>{{o, z, z}, {z, z, o}, {z, o, z}}, Matrix<R>{{-o, z}, {o, o}});
  }

  /// The six elements theta^i eta^j.
  std::vector<Elem> s3() const {
    std::vector<Elem> out;
    Elem t = identity();
    for (int i = 0; i < 3; ++i) {
      out.push_back(t);
      out.push_back(compose(t, eta()));
      t = compose(t, theta());
    }
    return out;
  }

  bool in_S3(const Elem& g) const {
    for (const auto& s : s3())
      if (s == g) return true;
    return false;
  }

  bool in_H(const Elem& g) const {
    for (const auto& s : s3())
      if (in_H0(compose(g, inverse_of(s)))) return true;
    return false;
  }

  bool member(const Elem& g, Subgroup s) const {
    switch (s) {
      case Subgroup::P: return in_P(g);
      case Subgroup::HCirc: return in_H0(g);
      case Subgroup::S3: return in_S3(g);
      case Subgroup::H: return in_H(g);
    }
    return false;
  }

  void require(const Elem& g, Subgroup s) const {
    if (!member(g, s)) throw Error(Errc::NotInSubgroup, std::string("element is not in ") + subgroup_name(s));
  }

  // -- subspaces ------------------------------------------------------------

  bool in_W(const Pair& x) const {
    for (std::size_t i = 0; i < 3; ++i)
      if (!is_zero(x.x1(0, i)) || !is_zero(x.x1(i, 0))) return false;
    return true;
  }

  bool in_U(const Pair& x) const {
    if (!diagonal(x.x1) || !diagonal(x.x2)) return false;
    return is_zero(x.x1(0, 0)) && is_zero(x.x2(2, 2)) && x.x2(1, 1) == -x.x1(1, 1);
  }

  Pair make_u(const R& a, const R& b, const R& cc) const {
    const R z = zero();
    return {scalar_matrix(Matrix<R>{{z, z, z}, {z, b, z}, {z, z, -cc}}),
            scalar_matrix(Matrix<R>{{a, z, z}, {z, -b, z}, {z, z, z}})};
  }

  // -- random sampling --------------------------------------------------------

  Mat random_y(const Sampler<R>& s) const {
    Mat m(3, 3, c_.zero());
    if (C::two_sided) {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = c_.random(s);
      return m;
    }
    for (std::size_t i = 0; i < 3; ++i) {
      m(i, i) = c_.random_diag(s);
      for (std::size_t j = i + 1; j < 3; ++j) {
        m(i, j) = c_.random(s);
        m(j, i) = c_.star(m(i, j));
      }
    }
    return m;
  }

  Mat random_g1(const Sampler<R>& s, bool parabolic) const {
    while (true) {
      Mat m(3, 3, c_.zero());
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (!(parabolic && i == 0 && j > 0)) m(i, j) = c_.random(s);
      if (is_unit(c_.norm_det(m))) return m;
    }
  }

  Elem random_element(const Sampler<R>& s, bool parabolic = false) const {
    Matrix<R> g2(2, 2, zero());
    do {
      g2 = Matrix<R>{{s(), parabolic ? zero() : s()}, {s(), s()}};
    } while (!is_unit(det(g2)));
    const Mat gl = random_g1(s, parabolic);
    return {gl, C::two_sided ? random_g1(s, parabolic) : gl, g2};
  }

  /// Random element of W with the requested level (rejection sampling).
  Pair random_w(const Sampler<R>& s, Level want) const {
    for (int it = 0; it < 100000; ++it) {
      Pair w{random_y(s), random_y(s)};
      for (std::size_t i = 0; i < 3; ++i) w.x1(0, i) = w.x1(i, 0) = c_.zero();
      if (level(w) == want) return w;
    }
    throw Error(Errc::ResourceLimit, "could not sample W at the requested level");
  }

  Pair random_u(const Sampler<R>& s) const { return make_u(s.unit(), s.unit(), s.unit()); }

  // -- k-linear algebra on T^m -------------------------------------------------

  /// k-basis of {v in T^m : v y = 0}.
  std::vector<std::vector<T>> left_kernel(const Mat& y) const {
    const std::size_t m = y.rows();
    const std::size_t d = C::dim;
    Matrix<R> a(y.cols() * d, m * d, zero());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = 0; c < d; ++c) {
        std::vector<R> e(d, zero());
        e[c] = one();
        const T ec = c_.from_coords(e);
        for (std::size_t j = 0; j < y.cols(); ++j) {
          const auto img = c_.coords(ec * y(i, j));
          for (std::size_t r = 0; r < d; ++r) a(j * d + r, i * d + c) = img[r];
        }
      }
    std::vector<std::vector<T>> out;
    for (const auto& kv : kernel(a)) {
      std::vector<T> v;
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<R> cc(kv.begin() + static_cast<long>(i * d), kv.begin() + static_cast<long>((i + 1) * d));
        v.push_back(c_.from_coords(cc));
      }
      out.push_back(v);
    }
    return out;
  }

  std::vector<T> combine(const std::vector<std::vector<T>>& basis, const std::vector<R>& coef) const {
    std::vector<T> v(basis[0].size(), c_.zero());
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] + basis[b][i] * c_.embed(coef[b]);
    return v;
  }

  /// Candidates from a kernel basis: basis vectors first, then seeded random
  /// combinations; `accept` returns true to stop. Returns the attempt count.
  template <class Accept>
  int search_kernel(const std::vector<std::vector<T>>& basis, std::mt19937_64& rng, const Sampler<R>& s,
                    Accept&& accept) const {
    int attempts = 0;
    for (const auto& b : basis) {
      ++attempts;
      if (accept(b)) return attempts;
    }
    for (int it = 0; it < budget_ && !basis.empty(); ++it) {
      ++attempts;
      std::vector<R> coef;
      for (std::size_t b = 0; b < basis.size(); ++b) coef.push_back(s());
      (void)rng;
      if (accept(combine(basis, coef))) return attempts;
    }
    return -attempts;
  }

  /// Row v completed to an invertible 3x3 matrix: standard rows when v has a
  /// unit entry, otherwise seeded random rows (v only needs to be unimodular).
  std::optional<Mat> complete_row(const std::vector<T>& v, const Sampler<R>& s) const {
    Mat h = identity3();
    for (std::size_t j = 0; j < 3; ++j) h(0, j) = v[j];
    for (std::size_t i = 0; i < 3; ++i) {
      if (!c_.unit(v[i])) continue;
      std::size_t r = 1;
      for (std::size_t j = 0; j < 3; ++j) {
        if (j == i) continue;
        for (std::size_t k = 0; k < 3; ++k) h(r, k) = k == j ? c_.one() : c_.zero();
        ++r;
      }
      if (is_unit(c_.norm_det(h))) return h;
    }
    for (int it = 0; it < 16; ++it) {
      for (std::size_t r = 1; r < 3; ++r)
        for (std::size_t k = 0; k < 3; ++k) h(r, k) = c_.random(s);
      if (is_unit(c_.norm_det(h))) return h;
    }
    return std::nullopt;
  }

  [[noreturn]] void search_failed(const char* what, const Mat& y) const {
    std::string datum;
    for (std::size_t i = 0; i < y.rows(); ++i)
      for (std::size_t j = 0; j < y.cols(); ++j)
        for (const auto& c : c_.coords(y(i, j))) datum += to_text(c) + " ";
    throw Error(Errc::KernelUnitSearchFailed, std::string(what) + "; degenerate matrix coordinates: " + datum);
  }

  static std::string to_text(const R& r) {
    if constexpr (std::is_same_v<R, Rational>) {
      return r.str();
    } else {
      return std::to_string(r.canonical(r.modulus()));
    }
  }

  // -- reductions -------------------------------------------------------------

  /// x in V^(2) -> (g, w) with w in W^(2) and act(g, w) = x.
  ReduceToWResult<C> reduce_to_W(const Pair& x) const {
    if (level(x) != Level::V2) throw Error(Errc::NotLevelV2, "input is not in V^(2)");
    if (in_W(x)) return {identity(), x, 0};
    std::mt19937_64 rng(seed_);
    const Sampler<R> s = sampler(rng);
    const auto f = form(x);
    const auto roots = rational_roots(f);
    if (roots.size() != 1) throw Error(Errc::NotLevelV2, "expected exactly one rational root");
    const R r1 = roots[0].first, r2 = roots[0].second;
    // h2 has first row (r1, r2), so the first component becomes x(r1, r2).
    const Matrix<R> h2 = is_zero(r1) ? Matrix<R>{{r1, r2}, {one(), zero()}} : Matrix<R>{{r1, r2}, {zero(), one()}};
    const Mat y = x.x1 * c_.embed(r1) + x.x2 * c_.embed(r2);

    int attempts = 0;
    std::optional<Mat> hl, hr;
    {
      const auto basis = left_kernel(y);
      const int a = search_kernel(basis, rng, s, [&](const std::vector<T>& v) {
        hl = complete_row(v, s);
        return hl.has_value();
      });
      attempts += a < 0 ? -a : a;
      if (!hl) search_failed("no completable left kernel vector", y);
    }
    if (C::two_sided) {
      const auto basis = left_kernel(y.transpose());
      const int a = search_kernel(basis, rng, s, [&](const std::vector<T>& v) {
        hr = complete_row(v, s);
        return hr.has_value();
      });
      attempts += a < 0 ? -a : a;
      if (!hr) search_failed("no completable right kernel vector", y);
    } else {
      hr = hl;
    }
    const Elem h{*hl, *hr, h2};
    const Pair w = act(h, x);
    if (!in_W(w)) throw Error(Errc::NotInW, "reduction did not land in W");
    const Elem g = inverse_of(h);
    if (!(act(g, w) == x)) throw Error(Errc::NotInW, "transport equation failed");
    return {g, w, attempts};
  }

  /// w in W^(1) -> (p, u) with p in P(k), u in U^ss and act(p, u) = w.
  ReduceToUResult<C> reduce_W_to_U(const Pair& w) const {
    if (!in_W(w)) throw Error(Errc::NotInW, "input is not in W");
    if (level(w) != Level::V1) throw Error(Errc::NotLevelV1, "input is not in W^(1)");
    if (in_U(w)) return {identity(), w, false, 0};
    std::mt19937_64 rng(seed_);
    const Sampler<R> s = sampler(rng);
    Elem acc = identity();  // acc . w_original = current
    Pair cur = w;
    int attempts = 0;

    // Step 1: clear w212, w221 with the unipotent radical.
    {
      const T w211 = cur.x2(0, 0);
      if (!c_.unit(w211)) throw Error(Errc::NotLevelV1, "w211 is not a unit");
      const T inv211 = c_.inv(Mat(1, 1, w211))(0, 0);
      Mat ul = identity3(), ur = identity3();
      for (std::size_t i = 1; i < 3; ++i) {
        ul(i, 0) = -(cur.x2(i, 0) * inv211);
        if (C::two_sided) ur(i, 0) = -(cur.x2(0, i) * inv211);
      }
      if (!C::two_sided) ur = ul;
      const Elem u{ul, ur, identity2()};
      cur = act(u, cur);
      acc = compose(u, acc);
    }

    // Step 2: diagonalize the residual 2x2 pencil.
    {
      Mat a(2, 2, c_.zero()), b(2, 2, c_.zero());
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          a(i, j) = cur.x1(i + 1, j + 1);
          b(i, j) = cur.x2(i + 1, j + 1);
        }
      if (!(diagonal2(a) && diagonal2(b))) {
        const BinaryForm<R> f2 = form2(a, b);
        const auto roots = rational_roots(f2);
        if (roots.size() != 2) throw Error(Errc::NotLevelV1, "residual form lacks two rational roots");
        const Mat ys = a * c_.embed(roots[0].first) + b * c_.embed(roots[0].second);
        const Mat yr = a * c_.embed(roots[1].first) + b * c_.embed(roots[1].second);
        auto find_side = [&](const Mat& ysig, const Mat& yrho) {
          const auto kf = left_kernel(ysig);
          const auto ke = left_kernel(yrho);
          std::optional<Mat> h;
          auto try_pair = [&](const std::vector<T>& fv, const std::vector<T>& ev) {
            Mat m{{fv[0], fv[1]}, {ev[0], ev[1]}};
            if (is_unit(c_.norm_det(embed3(m)))) {
              h = m;
              return true;
            }
            return false;
          };
          for (const auto& fv : kf)
            for (const auto& ev : ke) {
              ++attempts;
              if (try_pair(fv, ev)) return h;
            }
          for (int it = 0; it < budget_ && !kf.empty() && !ke.empty(); ++it) {
            ++attempts;
            std::vector<R> cf, ce;
            for (std::size_t k = 0; k < kf.size(); ++k) cf.push_back(s());
            for (std::size_t k = 0; k < ke.size(); ++k) ce.push_back(s());
            if (try_pair(combine(kf, cf), combine(ke, ce))) return h;
          }
          return h;
        };
        const auto hl = find_side(ys, yr);
        if (!hl) search_failed("no invertible pair of kernel vectors", ys);
        Mat hr2 = *hl;
        if (C::two_sided) {
          const auto hr = find_side(ys.transpose(), yr.transpose());
          if (!hr) search_failed("no invertible pair of right kernel vectors", ys);
          hr2 = *hr;
        }
        const Elem d{embed3(*hl), embed3(hr2), identity2()};
        cur = act(d, cur);
        acc = compose(d, acc);
      }
    }

    // Step 3: B_2(k) move sending the roots to (0:1), (1:0), (1:1).
    bool eta_applied = false;
    {
      const T zt = c_.zero();
      std::array<R, 2> al{}, be{};
      for (std::size_t i = 0; i < 2; ++i) {
        al[i] = scalar_of(cur.x1(i + 1, i + 1));
        be[i] = scalar_of(cur.x2(i + 1, i + 1));
        if (!is_unit(al[i])) throw Error(Errc::NotLevelV1, "(1:0) is a multiple root");
      }
      (void)zt;
      const R ra = -be[0] / al[0], rb = -be[1] / al[1];
      // M sends (r_first, 1) to (0:1) and (r_second, 1) to (1:1); choose the lex-smaller ordering.
      auto make_m = [&](const R& first, const R& second) { return Matrix<R>{{one(), zero()}, {-first, second - first}}; };
      const Matrix<R> m1 = make_m(ra, rb), m2 = make_m(rb, ra);
      const bool pick_first = lex_less_eq(m1, m2);
      const Matrix<R> m = pick_first ? m1 : m2;
      const Elem b{identity3(), identity3(), inverse(m)};
      cur = act(b, cur);
      acc = compose(b, acc);
      if (!in_U(cur)) {
        const R o = one(), z = zero();
        const Elem e2{identity3(), identity3(), Matrix<R>{{-o, z}, {o, o}}};
        cur = act(e2, cur);
        acc = compose(e2, acc);
        eta_applied = true;
      }
      if (!in_U(cur)) throw Error(Errc::NotLevelV1, "reduction did not reach U");
    }
    const Elem p = inverse_of(acc);
    if (!in_P(p)) throw Error(Errc::NotInSubgroup, "reduction element is not in P");
    if (!(act(p, cur) == w)) throw Error(Errc::NotInW, "transport equation failed");
    return {p, cur, eta_applied, attempts};
  }

  /// g^{-1} g' in P(k), given act(g, w) = x = act(g', w').
  bool check_bundle_uniqueness(const Pair& x, const Elem& g, const Elem& gp, const Pair& w, const Pair& wp) const {
    if (!(act(g, w) == x) || !(act(gp, wp) == x)) return false;
    return in_P(compose(inverse_of(g), gp));
  }

 private:
  Sampler<R> sampler(std::mt19937_64& rng) const {
    if constexpr (std::is_same_v<R, Rational>) {
      return Sampler<R>{&rng, 3};
    } else {
      return Sampler<R>{&rng, c_.unit_one.modulus()};
    }
  }

  bool diagonal2(const Mat& m) const { return is_zero(m(0, 1)) && is_zero(m(1, 0)); }

  Mat embed3(const Mat& m2) const {
    Mat h = identity3();
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) h(i + 1, j + 1) = m2(i, j);
    return h;
  }

  BinaryForm<R> form2(const Mat& a, const Mat& b) const {
    auto eval = [&](const R& v1, const R& v2) {
      const Mat m = a * c_.embed(v1) + b * c_.embed(v2);
      if constexpr (C::tag == 'c') {
        return pfaffian(c_.emb, m);
      } else if constexpr (C::tag == 'b') {
        return descend(det(m));
      } else {
        return det(m);
      }
    };
    const R o = one(), z = zero();
    const R c0 = eval(o, z), c2 = eval(z, o);
    return BinaryForm<R>{{c0, eval(o, o) - c0 - c2, c2}};
  }

  R scalar_of(const T& t) const {
    const auto c = c_.coords(t);
    for (std::size_t i = 1; i < c.size(); ++i)
      if (!is_zero(c[i])) throw Error(Errc::NotLevelV1, "diagonal entry is not in k");
    return c[0];
  }

  bool lex_less_eq(const Matrix<R>& a, const Matrix<R>& b) const {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const std::string x = to_text(a(i, j)), y = to_text(b(i, j));
        if (x != y) return x < y;
      }
    return true;
  }

  C c_;
  std::uint64_t seed_;
  int budget_;
};

/// All transporters g in G(F_3) (case (a)) with act(g, u) = u2, by exhaustive
/// enumeration of (g11, g2) and a linear solve for g12.
std::vector<CaseElement<Fp, Fp>> case_a_transporters(const CasePair<Fp>& u, const CasePair<Fp>& u2, std::int64_t q);

}  // namespace qpv
