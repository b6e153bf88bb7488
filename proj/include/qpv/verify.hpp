#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpv/json_io.hpp"

namespace qpv {

struct CheckResult {
  std::string name;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  std::string note;

  bool passed() const { return samples > 0 && failures == 0; }
};

struct SuiteReport {
  std::string suite;
  io::FieldDesc field;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

/// Suites: "identities", "representatives", "reducible", "all".
SuiteReport run_suite(const std::string& suite, const io::FieldDesc& f, int samples, std::uint64_t seed);

nlohmann::json to_json(const SuiteReport& r);

/// Pfaffian axioms for one (field, B, n) configuration.
CheckResult pfaffian_axioms(const io::FieldDesc& f, const std::string& b, std::size_t n, int samples,
                            std::uint64_t seed);
/// Pfaffian, form and discriminant equivariance plus the action law.
std::vector<CheckResult> equivariance(const io::FieldDesc& f, const std::string& b, std::size_t n, int samples,
                                      std::uint64_t seed);
/// Round trips for reduce_to_W and reduce_W_to_U in one case ('a', 'b', 'c').
std::vector<CheckResult> reducible_round_trips(const io::FieldDesc& f, char which, int samples, std::uint64_t seed);
/// Relations of theta and eta and U-invariance for one case.
CheckResult s3_structure(const io::FieldDesc& f, char which, int samples, std::uint64_t seed);

/// A quadratic nonresidue mod p.
std::int64_t nonresidue(std::int64_t p);
/// Low-first monic irreducible cubic t^3 - t - c over F_p.
std::vector<Fp> irreducible_cubic(std::int64_t p);

}  // namespace qpv
