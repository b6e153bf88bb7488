#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qpv/etale.hpp"

using namespace qpv;

namespace {

Fp f(long v, std::int64_t p) { return Fp(v, p); }

AlgebraPtr<Fp> fp_alg(std::vector<long> c, std::int64_t p) {
  std::vector<Fp> m;
  for (long v : c) m.push_back(Fp(v, p));
  return etale_make(m);
}

AlgebraPtr<Rational> q_alg(std::vector<long> c) {
  std::vector<Rational> m(c.begin(), c.end());
  return etale_make(m);
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("-7").str() == "-7/1");
  CHECK(try_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(try_sqrt(Rational(2)).has_value());
  CHECK_THROWS_AS(inverse(Rational(0)), Error);
  CHECK_THROWS_AS(Rational::parse("1/x"), Error);
}

TEST_CASE("prime field sqrt exhaustive for small p") {
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    int squares = 0;
    for (long v = 0; v < p; ++v) {
      const Fp s(v, p);
      const auto r = try_sqrt(s);
      CHECK(r.has_value() == is_square(s));
      if (r) {
        CHECK(*r * *r == s);
        ++squares;
      }
    }
    CHECK(squares == (p + 1) / 2);
  }
}

TEST_CASE("unbound literals adopt the modulus") {
  const Fp x(4, 5);
  CHECK((x + Fp(2)).canonical() == 1);
  CHECK((Fp(2) * x).canonical() == 3);
  CHECK((x / Fp(2)).canonical() == 2);
  CHECK_THROWS_AS(Fp(1, 5) + Fp(1, 7), Error);
}

TEST_CASE("etale_make") {
  auto f9 = fp_alg({1, 0, 1}, 3);
  CHECK(f9->degree() == 2);
  auto qq = q_alg({0, -1, 1});  // t^2 - t
  CHECK(qq->degree() == 2);
  auto f3f3 = fp_alg({-1, 0, 1}, 3);
  CHECK(f3f3->degree() == 2);
  CHECK_THROWS_WITH_AS(q_alg({1, 2, 1}), doctest::Contains("separable"), Error);
  try {
    q_alg({1, 0, 2});
    FAIL("expected NonMonic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonMonic);
  }
  try {
    fp_alg({1, 2, 1}, 3);
    FAIL("expected InseparableModulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InseparableModulus);
  }
}

TEST_CASE("norm and trace") {
  auto f9 = fp_alg({1, 0, 1}, 3);
  const auto t = Etale<Fp>::generator(f9);
  CHECK(norm(t) == f(1, 3));
  CHECK(trace(t) == f(0, 3));
  CHECK(norm(f9, Etale<Fp>(f(1, 3))) == f(1, 3));
  CHECK(trace(f9, Etale<Fp>(f(1, 3))) == f(2, 3));

  for (long d : {2, 3, -1, 5}) {
    auto alg = q_alg({-d, 0, 1});
    const auto a = Etale<Rational>::generator(alg);
    const Rational u(3, 7), v(-2, 5);
    const Etale<Rational> x = Etale<Rational>(u) + Etale<Rational>(v) * a;
    CHECK(norm(x) == u * u - Rational(d) * v * v);
    CHECK(trace(x) == Rational(2) * u);
  }
  auto cubic = q_alg({-1, -3, 0, 1});
  CHECK(trace(cubic, Etale<Rational>(1)) == Rational(3));
  CHECK(norm(cubic, Etale<Rational>(1)) == Rational(1));
}

TEST_CASE("norm multiplicative, trace additive on random samples") {
  std::mt19937_64 rng(7);
  auto cubic = q_alg({-1, -4, 0, 1});
  auto f27 = fp_alg({1, -1, 0, 1}, 3);
  auto mixed = fp_alg({0, 1, 0, 1}, 5);  // t (t^2 + 1) over F_5
  auto rq = [&] { return Rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 5) + 1); };
  for (int it = 0; it < 200; ++it) {
    Etale<Rational> x(cubic, {rq(), rq(), rq()}), y(cubic, {rq(), rq(), rq()});
    CHECK(norm(x * y) == norm(x) * norm(y));
    CHECK(trace(x + y) == trace(x) + trace(y));
    if (is_unit(x)) CHECK(x * inverse(x) == Etale<Rational>(1));
    for (const auto& alg : {f27}) {
      Etale<Fp> a(alg, {f(rng() % 3, 3), f(rng() % 3, 3), f(rng() % 3, 3)});
      Etale<Fp> b(alg, {f(rng() % 3, 3), f(rng() % 3, 3), f(rng() % 3, 3)});
      CHECK(norm(a * b) == norm(a) * norm(b));
      CHECK(trace(a + b) == trace(a) + trace(b));
    }
    Etale<Fp> a(mixed, {f(rng() % 5, 5), f(rng() % 5, 5), f(rng() % 5, 5)});
    Etale<Fp> b(mixed, {f(rng() % 5, 5), f(rng() % 5, 5), f(rng() % 5, 5)});
    CHECK(norm(a * b) == norm(a) * norm(b));
    if (is_unit(a)) CHECK(a * inverse(a) == Etale<Fp>(f(1, 5)));
  }
}

TEST_CASE("conjugates") {
  auto f9 = fp_alg({1, 0, 1}, 3);
  const auto t = Etale<Fp>::generator(f9);
  auto c = conjugates(t, 3);
  REQUIRE(c.size() == 2);
  CHECK(c[1] == -t);

  auto qd = q_alg({-3, 0, 1});
  const auto a = Etale<Rational>::generator(qd);
  const auto x = Etale<Rational>(Rational(2)) + Etale<Rational>(Rational(5)) * a;
  auto cq = conjugates(x);
  CHECK(cq[1] == Etale<Rational>(Rational(2)) - Etale<Rational>(Rational(5)) * a);

  auto f27 = fp_alg({1, -1, 0, 1}, 3);
  const auto b = Etale<Fp>::generator(f27);
  auto c27 = conjugates(b, 3);
  REQUIRE(c27.size() == 3);
  CHECK(c27[1] == power(b, 3));
  CHECK(c27[2] == power(b, 9));
  for (const auto& r : c27) CHECK(is_zero(f27->poly().eval(r)));
  CHECK_FALSE(c27[0] == c27[1]);

  auto gal = q_alg({-1, -3, 0, 1});
  auto cg = conjugates(Etale<Rational>::generator(gal));
  for (const auto& r : cg) CHECK(is_zero(gal->poly().eval(r)));
  CHECK(trace(gal, cg[0]) == cg[0] + cg[1] + cg[2]);

  auto nongal = q_alg({-2, 0, 0, 1});
  try {
    conjugates(Etale<Rational>::generator(nongal));
    FAIL("expected ConjugatesUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConjugatesUnavailable);
  }
  auto red = q_alg({0, -1, 0, 1});
  try {
    conjugates(Etale<Rational>::generator(red));
    FAIL("expected ReducibleModulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ReducibleModulus);
  }
}

TEST_CASE("roots_in_base") {
  Polynomial<Fp> p1{Fp(-1), Fp(0), Fp(1)};
  auto r1 = roots_in_base(p1, 5);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0] == f(1, 5));
  CHECK(r1[1] == f(4, 5));
  Polynomial<Fp> p2{Fp(1), Fp(0), Fp(1)};
  auto r2 = roots_in_base(p2, 5);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == f(2, 5));
  CHECK(r2[1] == f(3, 5));
  CHECK(roots_in_base(Polynomial<Rational>{-1, -3, 0, 1}).empty());
  auto r3 = roots_in_base(Polynomial<Rational>{0, -1, 0, 1});
  REQUIRE(r3.size() == 3);
  CHECK(r3[0] == Rational(-1));
  CHECK(r3[2] == Rational(1));
  auto r4 = roots_in_base(Polynomial<Rational>{Rational(-3, 4), Rational(0), Rational(3)});
  REQUIRE(r4.size() == 2);
  CHECK(r4[0] == Rational(-1, 2));
  auto r5 = roots_in_base(Polynomial<Rational>{Rational(4), Rational(-4), Rational(1)});
  CHECK(r5 == std::vector<Rational>{Rational(2), Rational(2)});
  auto r6 = roots_in_base(Polynomial<Rational>{Rational(-2, 9), Rational(0), Rational(0), Rational(2)});
  CHECK(r6.empty());
  auto r7 = roots_in_base(Polynomial<Rational>{Rational(-8, 27), Rational(0), Rational(0), Rational(1)});
  CHECK(r7 == std::vector<Rational>{Rational(2, 3)});
}

TEST_CASE("Sturm counting") {
  CHECK(count_real_roots(Polynomial<Rational>{-1, -3, 0, 1}) == 3);
  CHECK(count_real_roots(Polynomial<Rational>{-2, 0, 0, 1}) == 1);
  CHECK(count_real_roots(Polynomial<Rational>{0, -1, 0, 1}) == 3);
  auto ivs = isolate_real_roots(Polynomial<Rational>{-1, -3, 0, 1});
  REQUIRE(ivs.size() == 3);
  CHECK(ivs[0].second <= ivs[1].first);
}

TEST_CASE("cubic tower automorphisms") {
  auto L = q_alg({-2, 0, 0, 1});
  CubicTower<Rational> tw(L);
  const auto& r = tw.roots;
  for (const auto& x : r) CHECK(is_zero(L->poly().eval(x)));
  CHECK(tw.tau(r[0]) == r[1]);
  CHECK(tw.tau(r[2]) == r[2]);
  CHECK(tw.mu(r[1]) == r[1]);
  CHECK(tw.theta(tw.theta(tw.theta(r[0]))) == r[0]);
  const auto m = r[0] * r[1] + r[2];
  CHECK(tw.tau(tw.tau(m)) == m);
  CHECK(tw.tau(r[0] * r[1]) == tw.tau(r[0]) * tw.tau(r[1]));
}
