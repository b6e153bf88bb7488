#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qpv/hermitian.hpp"

namespace qpv {

struct OrbitRecord {
  std::string start;        // "w" or "x_alpha"
  std::string type;         // splitting type of every member
  std::uint64_t size = 0;
  std::uint64_t predicted_stabilizer = 0;
  std::uint64_t predicted_size = 0;
  bool homogeneous = true;  // all members share the start's type
};

struct CensusReport {
  std::int64_t q = 0;
  int n = 2;
  std::uint64_t v_size = 0;
  std::uint64_t vss_size = 0;
  std::map<std::string, std::uint64_t> type_counts;
  std::vector<OrbitRecord> orbits;
  std::uint64_t group_order = 0;
  int generators = 0;

  /// Every check the census certifies.
  bool consistent() const;
};

/// |GL_m(F_q)|.
std::uint64_t gl_order(int m, std::int64_t q);

/// Exhaustive D5 census over F_q for B = (1,1|F_q); q in {3, 5}.
CensusReport enumerate_census(std::int64_t q, int n = 2, unsigned threads = 0);

struct E7SampleReport {
  std::int64_t q = 0;
  std::uint64_t samples = 0;
  std::uint64_t unstable = 0;
  std::map<std::string, std::uint64_t> type_counts;
};

/// Classifies random points of V(F_q), n = 3, by splitting type.
E7SampleReport sample_census_e7(std::int64_t q, std::uint64_t samples, std::uint64_t seed = 1);

// Exposed for tests: coordinates of an n = 2 pair and the D5 generator set.
std::vector<std::int64_t> d5_coordinates(const HermitianPair<Fp>& x, std::int64_t q);
HermitianPair<Fp> d5_from_coordinates(const std::vector<std::int64_t>& c, const QuaternionAlgebraPtr<Fp>& alg);
std::vector<GroupElement<Fp>> d5_generators(std::int64_t q, const QuaternionAlgebraPtr<Fp>& alg);
/// Discriminant of F_x from coordinates (B = (1,1|F_q)).
std::int64_t d5_discriminant(const std::vector<std::int64_t>& c, std::int64_t q);

}  // namespace qpv
