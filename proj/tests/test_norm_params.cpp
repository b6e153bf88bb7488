#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "qpv/norm_params.hpp"

using namespace qpv;

namespace {

AlgebraPtr<Fp> fq(std::vector<long> c, std::int64_t q) {
  std::vector<Fp> v;
  for (long x : c) v.push_back(Fp(x, q));
  return etale_make(v);
}

}  // namespace

TEST_CASE("finite parameter sets are trivial") {
  const auto f27 = param_set_finite(fq({-1, -1, 0, 1}, 3), 3);  // t^3 - t - 1
  CHECK(f27.class_count == 1);
  CHECK(f27.aut_order == 3);
  const auto f3f9 = param_set_finite(fq({0, 1, 0, 1}, 3), 3);  // t (t^2 + 1)
  CHECK(f3f9.class_count == 1);
  CHECK(f3f9.aut_order == 2);
  const auto f3cubed = param_set_finite(fq({0, -1, 0, 1}, 3), 3);  // t (t-1)(t+1)
  CHECK(f3cubed.class_count == 1);
  CHECK(f3cubed.aut_order == 6);
  CHECK(param_set_finite(fq({-2, 0, 0, 1}, 7), 7).class_count == 1);
  CHECK(param_set_finite(fq({-2, 0, 0, 1}, 5), 5).class_count == 1);
  CHECK_THROWS_AS(param_set_finite(fq({-1, -1, 0, 1}, 11), 11), Error);
}

TEST_CASE("real signature") {
  CHECK(real_signature(Polynomial<Rational>({1, -3, 0, 1})) == std::pair<int, int>{3, 0});
  CHECK(real_signature(Polynomial<Rational>({-2, 0, 0, 1})) == std::pair<int, int>{1, 1});
  CHECK(real_signature(Polynomial<Rational>({0, -1, 0, 1})) == std::pair<int, int>{3, 0});
}

TEST_CASE("definite sign-vector model") {
  const auto g = param_set_definite(etale_make<Rational>({1, -3, 0, 1}), -1, -1);
  CHECK(g.class_count == 2);
  CHECK(g.oracle_count == 2);
  CHECK(g.aut_order == 3);
  CHECK(g.classes.size() == 2u);
  CHECK(g.external_assumption.has_value());
  const auto ng = param_set_definite(etale_make<Rational>({-1, -4, 0, 1}), -1, -1);
  CHECK(ng.class_count == 4);
  CHECK(ng.oracle_count == 4);
  CHECK(ng.aut_order == 1);
  CHECK(ng.classes.size() == 4u);
  const auto c = param_set_definite(etale_make<Rational>({-2, 0, 0, 1}), -1, -1);
  CHECK(c.class_count == 1);
  CHECK(c.r1 == 1);
  CHECK(c.r2 == 1);
  try {
    param_set_definite(etale_make<Rational>({-2, 0, 0, 1}), 1, -1);
    FAIL("expected NotDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotDefinite);
  }
  CHECK_THROWS_AS(param_set_definite(etale_make<Rational>({0, -1, 0, 1}), -1, -1), Error);
}

TEST_CASE("Galois action on real roots is a 3-cycle") {
  const auto p = galois_real_permutation(etale_make<Rational>({1, -3, 0, 1}));
  REQUIRE(p.size() == 3u);
  CHECK(p[0] != 0);
  CHECK(p[p[p[0]]] == 0);
  CHECK(std::set<int>(p.begin(), p.end()).size() == 3u);
}

TEST_CASE("sign vectors are invariant under squares and rational scalars") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-6, 6);
  for (auto L : {etale_make<Rational>({1, -3, 0, 1}), etale_make<Rational>({-1, -4, 0, 1}),
                 etale_make<Rational>({-2, 0, 0, 1})}) {
    for (int it = 0; it < 40; ++it) {
      const Etale<Rational> x(L, {d(rng), d(rng), d(rng)});
      const Etale<Rational> y(L, {d(rng), d(rng), d(rng)});
      if (is_zero(x) || is_zero(y)) continue;
      const auto sx = sign_vector(x);
      CHECK(sign_vector(x * y * y) == sx);
      auto neg = sx;
      for (auto& s : neg) s = -s;
      CHECK(sign_vector(x * Etale<Rational>(Rational(-3, 2))) == neg);
      CHECK(sign_vector(x * Etale<Rational>(Rational(5, 7))) == sx);
    }
  }
}
