#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qpv/census.hpp"
#include "qpv/representatives.hpp"

using namespace qpv;

TEST_CASE("group orders") {
  CHECK(gl_order(4, 3) == 24261120u);
  CHECK(gl_order(2, 3) == 48u);
  CHECK(gl_order(2, 9) == 5760u);
}

TEST_CASE("coordinates round trip and discriminant") {
  auto alg = make_quaternion_algebra(Fp(1, 3), Fp(1, 3));
  const SplitEmbedding<Fp> emb(alg);
  std::vector<std::int64_t> c{0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0};
  const auto w = d5_from_coordinates(c, alg);
  CHECK(d5_coordinates(w, 3) == c);
  CHECK(d5_discriminant(c, 3) == 1);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(0, 2);
  for (int it = 0; it < 300; ++it) {
    for (auto& v : c) v = d(rng);
    const auto x = d5_from_coordinates(c, alg);
    CHECK(Fp(d5_discriminant(c, 3), 3) == discriminant(form_of_pair(emb, x)));
  }
}

TEST_CASE("generators are invertible and preserve the discriminant class") {
  auto alg = make_quaternion_algebra(Fp(1, 3), Fp(1, 3));
  const SplitEmbedding<Fp> emb(alg);
  const auto gens = d5_generators(3, alg);
  CHECK(gens.size() == 14u);
  for (const auto& g : gens) CHECK(is_invertible(emb, g));
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> d(0, 2);
  std::vector<std::int64_t> c(12);
  for (int it = 0; it < 100; ++it) {
    for (auto& v : c) v = d(rng);
    const auto x = d5_from_coordinates(c, alg);
    for (const auto& g : gens) {
      const auto y = d5_coordinates(act(g, x), 3);
      const Fp chi = character_chi(emb, g);
      CHECK(Fp(d5_discriminant(y, 3), 3) == chi * chi * Fp(d5_discriminant(c, 3), 3));
    }
  }
}

TEST_CASE("D5 census at q = 3") {
  const auto rep = enumerate_census(3);
  CHECK(rep.v_size == 531441u);
  CHECK(rep.group_order == 24261120ull * 48ull);
  REQUIRE(rep.orbits.size() == 2u);
  CHECK(rep.orbits[0].size == 252720u);
  CHECK(rep.orbits[1].size == 101088u);
  CHECK(rep.orbits[0].predicted_stabilizer == 2u * 48u * 48u);
  CHECK(rep.orbits[1].predicted_stabilizer == 2u * 5760u);
  CHECK(rep.vss_size == 353808u);
  CHECK(rep.type_counts.at("(1,1)") == 252720u);
  CHECK(rep.type_counts.at("(2)") == 101088u);
  CHECK(rep.orbits[0].homogeneous);
  CHECK(rep.orbits[1].homogeneous);
  CHECK(rep.consistent());
}

TEST_CASE("census refuses large q") {
  try {
    enumerate_census(7);
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ResourceLimit);
  }
}

TEST_CASE("E7 sampling at q = 3") {
  const auto rep = sample_census_e7(3, 20000, 5);
  CHECK(rep.type_counts.count("(1,1,1)") == 1u);
  CHECK(rep.type_counts.count("(1,2)") == 1u);
  CHECK(rep.type_counts.count("(3)") == 1u);
  std::uint64_t sum = rep.unstable;
  for (const auto& [k, v] : rep.type_counts) sum += v;
  CHECK(sum == rep.samples);
}
