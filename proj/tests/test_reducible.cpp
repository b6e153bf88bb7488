#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpv/reducible.hpp"
#include "qpv/representatives.hpp"

using namespace qpv;

namespace {

CaseA<Fp> case_a(std::int64_t q) { return CaseA<Fp>{Fp(1, q)}; }
CaseB<Fp> case_b_f9() { return CaseB<Fp>{etale_make<Fp>({Fp(1, 3), Fp(0, 3), Fp(1, 3)}), Fp(1, 3)}; }
CaseB<Rational> case_b_q(long d) { return CaseB<Rational>{etale_make<Rational>({Rational(-d), 0, 1}), Rational(1)}; }
CaseC<Fp> case_c_f3() { return CaseC<Fp>(make_quaternion_algebra(Fp(1, 3), Fp(1, 3))); }
CaseC<Rational> case_c_hamilton() { return CaseC<Rational>(make_quaternion_algebra(Rational(-1), Rational(-1))); }

template <class C>
void check_group_laws(const Reducible<C>& red, const Sampler<typename C::Base>& s, int n) {
  for (int i = 0; i < n; ++i) {
    const auto g = red.random_element(s), h = red.random_element(s);
    const CasePair<typename C::T> x{red.random_y(s), red.random_y(s)};
    CHECK(red.act(red.compose(g, h), x) == red.act(g, red.act(h, x)));
    CHECK(red.act(red.inverse_of(g), red.act(g, x)) == x);
    const auto fx = red.form(x), fgx = red.form(red.act(g, x));
    auto expect = substitute(fx, g.g2).c;
    for (auto& c : expect) c = c * red.multiplier(g);
    CHECK(fgx.c == expect);
    const auto chi = red.chi(g);
    CHECK(discriminant(fgx) == chi * chi * discriminant(fx));
  }
}

template <class C>
void check_s3(const Reducible<C>& red, const Sampler<typename C::Base>& s) {
  const auto th = red.theta(), et = red.eta();
  const auto id = red.identity();
  CHECK(red.compose(th, red.compose(th, th)) == id);
  CHECK(red.compose(et, et) == id);
  CHECK(red.compose(et, red.compose(th, et)) == red.compose(th, th));
  CHECK(red.s3().size() == 6);
  for (const auto& g : red.s3()) {
    CHECK(red.in_S3(g));
    CHECK(red.in_H(g));
    for (int i = 0; i < 5; ++i) CHECK(red.in_U(red.act(g, red.random_u(s))));
  }
  CHECK(!red.in_H0(th));
  CHECK(!red.in_P(th));
}

template <class C>
void check_reduce_to_w(const Reducible<C>& red, const Sampler<typename C::Base>& s, int n) {
  for (int i = 0; i < n; ++i) {
    const auto w0 = red.random_w(s, Level::V2);
    const auto x = red.act(red.random_element(s), w0);
    REQUIRE(red.level(x) == Level::V2);
    const auto r = red.reduce_to_W(x);
    CHECK(red.in_W(r.w));
    CHECK(red.act(r.g, r.w) == x);
    CHECK(red.level(r.w) == Level::V2);
    // independent reduction from a translate of x
    const Reducible<C> other(red.policy(), red.seed() + 17, red.budget());
    const auto h = red.random_element(s);
    const auto r2 = other.reduce_to_W(red.act(h, x));
    const auto g2 = red.compose(red.inverse_of(h), r2.g);
    CHECK(red.check_bundle_uniqueness(x, r.g, g2, r.w, r2.w));
  }
}

template <class C>
void check_reduce_to_u(const Reducible<C>& red, const Sampler<typename C::Base>& s, int n) {
  for (int i = 0; i < n; ++i) {
    const auto u0 = red.random_u(s);
    REQUIRE(red.level(u0) == Level::V1);
    const auto p0 = red.random_element(s, true);
    REQUIRE(red.in_P(p0));
    const auto w = red.act(p0, u0);
    REQUIRE(red.in_W(w));
    const auto r = red.reduce_W_to_U(w);
    CHECK(red.in_U(r.u));
    CHECK(red.in_P(r.p));
    CHECK(red.act(r.p, r.u) == w);
  }
}

}  // namespace

TEST_CASE("subgroup membership") {
  const Reducible<CaseA<Fp>> red(case_a(5));
  const Fp o(1, 5), z(0, 5), t(2, 5);
  const Matrix<Fp> diag{{o, z, z}, {z, t, z}, {z, z, o}};
  const auto h0 = CaseElement<Fp, Fp>{diag, diag, Matrix<Fp>{{t, z}, {z, t}}};
  CHECK(red.in_H0(h0));
  CHECK(red.in_P(h0));
  CHECK(red.in_H(h0));
  CHECK(red.in_H(red.compose(h0, red.theta())));
  const auto notp = CaseElement<Fp, Fp>{Matrix<Fp>{{o, o, z}, {z, o, z}, {z, z, o}}, diag, Matrix<Fp>::identity(2, o)};
  CHECK(!red.in_P(notp));
  CHECK_THROWS_AS(red.require(notp, Subgroup::P), Error);
  try {
    red.require(notp, Subgroup::H);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotInSubgroup);
  }
}

TEST_CASE("U^ss forms") {
  const Reducible<CaseA<Fp>> red(case_a(5));
  const Fp a(1, 5), b(2, 5), c(3, 5);
  const auto u = red.make_u(a, b, c);
  CHECK(red.in_U(u));
  CHECK(red.in_W(u));
  // F_u = -abc v1 v2 (v1 - v2)
  const auto f = red.form(u);
  const Fp m = -(a * b * c);
  CHECK(f.c == std::vector<Fp>{Fp(0, 5), m, -m, Fp(0, 5)});
  CHECK(red.level(u) == Level::V1);
  CHECK(red.level(red.make_u(a, Fp(0, 5), c)) == Level::Unstable);
}

TEST_CASE("case (a) over F_3 and F_5") {
  for (std::int64_t q : {3, 5}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(q));
    const Sampler<Fp> s{&rng, q};
    const Reducible<CaseA<Fp>> red(case_a(q));
    check_group_laws(red, s, 20);
    check_s3(red, s);
    check_reduce_to_w(red, s, 100);
    check_reduce_to_u(red, s, 100);
  }
}

TEST_CASE("case (b) over F_9 / F_3") {
  std::mt19937_64 rng(9);
  const Sampler<Fp> s{&rng, 3};
  const Reducible<CaseB<Fp>> red(case_b_f9());
  check_group_laws(red, s, 20);
  check_s3(red, s);
  check_reduce_to_w(red, s, 100);
  check_reduce_to_u(red, s, 100);
}

TEST_CASE("case (b) over Q(sqrt d)") {
  for (long d : {-1L, 2L, -3L}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(d + 10));
    const Sampler<Rational> s{&rng, 3};
    const Reducible<CaseB<Rational>> red(case_b_q(d));
    check_group_laws(red, s, 5);
    check_reduce_to_w(red, s, 10);
    check_reduce_to_u(red, s, 10);
  }
}

TEST_CASE("case (c) split over F_3") {
  std::mt19937_64 rng(33);
  const Sampler<Fp> s{&rng, 3};
  const Reducible<CaseC<Fp>> red(case_c_f3());
  check_group_laws(red, s, 10);
  check_s3(red, s);
  check_reduce_to_w(red, s, 100);
  check_reduce_to_u(red, s, 100);
}

TEST_CASE("case (c) Hamilton quaternions over Q") {
  std::mt19937_64 rng(34);
  const Sampler<Rational> s{&rng, 3};
  const Reducible<CaseC<Rational>> red(case_c_hamilton());
  check_group_laws(red, s, 3);
  check_s3(red, s);
  check_reduce_to_w(red, s, 10);
  check_reduce_to_u(red, s, 10);
}

TEST_CASE("reduction preconditions") {
  std::mt19937_64 rng(5);
  const Sampler<Fp> s{&rng, 5};
  const Reducible<CaseA<Fp>> red(case_a(5));
  const auto u = red.random_u(s);
  try {
    (void)red.reduce_to_W(u);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotLevelV2);
  }
  const auto x = red.act(red.random_element(s), u);
  if (!red.in_W(x)) {
    try {
      (void)red.reduce_W_to_U(x);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotInW);
    }
  }
  const auto w2 = red.random_w(s, Level::V2);
  try {
    (void)red.reduce_W_to_U(w2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotLevelV1);
  }
  // Already reduced inputs come back unchanged.
  const auto r = red.reduce_W_to_U(u);
  CHECK(r.p == red.identity());
  CHECK(!r.eta_applied);
  CHECK(r.u == u);
}

TEST_CASE("case (a) transporters over F_3 lie in H") {
  std::mt19937_64 rng(3);
  const Sampler<Fp> s{&rng, 3};
  const Reducible<CaseA<Fp>> red(case_a(3));
  const auto u = red.random_u(s);
  // Transporters u -> h u for h in H.
  const auto h = red.compose(CaseElement<Fp, Fp>{red.identity()}, red.compose(red.theta(), red.eta()));
  const auto u2 = red.act(h, u);
  const auto ts = case_a_transporters(u, u2, 3);
  CHECK(!ts.empty());
  std::size_t bad = 0;
  for (const auto& g : ts) {
    CHECK(red.act(g, u) == u2);
    if (!red.in_H(g)) ++bad;
  }
  CHECK(bad == 0);
  // Stabilizer of u is H0 intersected with the stabilizer; its size is |ts|.
  const auto stab = case_a_transporters(u, u, 3);
  CHECK(stab.size() == ts.size());
}

TEST_CASE("case (c) Hamilton: e7_x_alpha under a rational translate") {
  std::mt19937_64 rng(35);
  const Sampler<Rational> s{&rng, 3};
  const Reducible<CaseC<Rational>> red(case_c_hamilton());
  const auto alg = red.policy().emb.algebra();
  const auto xa = e7_x_alpha(Rational(1), Rational(3));
  auto attach = [&](const QMatrix<Rational>& m) {
    return m.map([&](const Quaternion<Rational>& q) { return Quaternion<Rational>(alg, q.s(), q.x(), q.y(), q.z()); });
  };
  const CasePair<Quaternion<Rational>> w0{attach(xa.x1), attach(xa.x2)};
  CHECK(red.in_W(w0));
  CHECK(red.level(w0) == Level::V2);
  CHECK(red.reduce_to_W(w0).g == red.identity());
  for (int i = 0; i < 5; ++i) {
    const auto x = red.act(red.random_element(s), w0);
    const auto r = red.reduce_to_W(x);
    CHECK(red.act(r.g, r.w) == x);
    CHECK(red.in_W(r.w));
  }
}

TEST_CASE("bundle uniqueness checks") {
  std::mt19937_64 rng(7);
  const Sampler<Fp> s{&rng, 5};
  const Reducible<CaseA<Fp>> red(case_a(5));
  const auto w = red.random_w(s, Level::V2);
  const auto g = red.random_element(s);
  const auto x = red.act(g, w);
  const auto p = red.random_element(s, true);
  // g' = g p with w' = p^{-1} w
  CHECK(red.check_bundle_uniqueness(x, g, red.compose(g, p), w, red.act(red.inverse_of(p), w)));
  // non-triangular GL_2 part
  const Fp o(1, 5), z(0, 5);
  const CaseElement<Fp, Fp> sw{red.identity3(), red.identity3(), Matrix<Fp>{{z, o}, {o, z}}};
  CHECK(!red.in_P(sw));
  CHECK(!red.check_bundle_uniqueness(x, g, red.compose(g, sw), w, red.act(red.inverse_of(sw), w)));
}
