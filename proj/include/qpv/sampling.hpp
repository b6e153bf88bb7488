#pragma once

#include <cstdint>
#include <random>

#include "qpv/hermitian.hpp"

namespace qpv {

template <class R>
struct Sampler;

/// Rationals n/d with |n| <= height and 1 <= d <= height.
template <>
struct Sampler<Rational> {
  std::mt19937_64* rng;
  long height = 5;

  Rational operator()() const {
    std::uniform_int_distribution<long> num(-height, height), den(1, height);
    return Rational(mpz_class(num(*rng)), mpz_class(den(*rng)));
  }
  Rational unit() const {
    while (true) {
      Rational r = (*this)();
      if (r.sign() != 0) return r;
    }
  }
};

template <>
struct Sampler<Fp> {
  std::mt19937_64* rng;
  std::int64_t p = 3;

  Fp operator()() const {
    std::uniform_int_distribution<std::int64_t> d(0, p - 1);
    return Fp(d(*rng), p);
  }
  Fp unit() const {
    std::uniform_int_distribution<std::int64_t> d(1, p - 1);
    return Fp(d(*rng), p);
  }
};

template <class R>
Quaternion<R> random_quaternion(const Sampler<R>& s, const QuaternionAlgebraPtr<R>& alg) {
  return Quaternion<R>(alg, s(), s(), s(), s());
}

template <class R>
QMatrix<R> random_hermitian(const Sampler<R>& s, const QuaternionAlgebraPtr<R>& alg, std::size_t n) {
  QMatrix<R> m(n, n, Quaternion<R>(0));
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Quaternion<R>(alg, s(), R(0), R(0), R(0));
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = random_quaternion(s, alg);
      m(j, i) = conj(m(i, j));
    }
  }
  return m;
}

template <class R>
HermitianPair<R> random_pair(const Sampler<R>& s, const QuaternionAlgebraPtr<R>& alg, std::size_t n) {
  return {random_hermitian(s, alg, n), random_hermitian(s, alg, n)};
}

template <class R>
QMatrix<R> random_qmatrix(const Sampler<R>& s, const QuaternionAlgebraPtr<R>& alg, std::size_t n) {
  QMatrix<R> m(n, n, Quaternion<R>(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_quaternion(s, alg);
  return m;
}

template <class R>
Matrix<R> random_gl2(const Sampler<R>& s) {
  while (true) {
    Matrix<R> m{{s(), s()}, {s(), s()}};
    if (is_unit(det(m))) return m;
  }
}

template <class R>
GroupElement<R> random_group_element(const Sampler<R>& s, const SplitEmbedding<R>& emb, std::size_t n) {
  while (true) {
    QMatrix<R> g1 = random_qmatrix(s, emb.algebra(), n);
    if (is_unit(reduced_norm_matrix(emb, g1))) return {g1, random_gl2(s)};
  }
}

}  // namespace qpv
