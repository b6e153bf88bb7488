#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpv/etale.hpp"

namespace qpv {

struct ParamClass {
  std::vector<std::string> element;  // coordinates of a representative in L
  std::vector<int> signs;            // sign vector (definite model only)
};

struct ParamSetReport {
  std::string base;                  // "Fp" or "Q"
  std::int64_t p = 0;
  std::vector<std::string> modulus;  // low-first coefficients of L's modulus
  int aut_order = 1;
  std::string model;                 // "enumeration" or "sign_vector"
  int class_count = 0;
  int oracle_count = 0;              // independent recount (union-find over sign vectors)
  int r1 = 0, r2 = 0;
  std::vector<ParamClass> classes;
  std::optional<std::string> external_assumption;
};

/// (k^x . Im N) \ L^x / Aut_k(L) for L cubic étale over F_q (q prime, q <= 7).
ParamSetReport param_set_finite(const AlgebraPtr<Fp>& L, std::int64_t q);

/// Number of real and complex places of Q[t]/(f), f a separable cubic.
std::pair<int, int> real_signature(const Polynomial<Rational>& f);

/// Signs of x at the real roots of L's modulus, ascending root order.
std::vector<int> sign_vector(const Etale<Rational>& x);

/// Index of the real root beta_j with theta(beta_i) = beta_j, for a Galois
/// cubic field; theta from galois_cubic_roots.
std::vector<int> galois_real_permutation(const AlgebraPtr<Rational>& L);

/// Sign-vector model for B = (a, b | Q) totally definite and L a cubic field.
ParamSetReport param_set_definite(const AlgebraPtr<Rational>& L, const Rational& a, const Rational& b);

}  // namespace qpv
