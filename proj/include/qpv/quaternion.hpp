#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "qpv/error.hpp"
#include "qpv/etale.hpp"
#include "qpv/matrix.hpp"

namespace qpv {

/// (a, b | R): basis 1, i, j, ij with i^2 = a, j^2 = b, ij = -ji.
template <class R>
struct QuaternionAlgebra {
  R a;
  R b;

  friend bool operator==(const QuaternionAlgebra& u, const QuaternionAlgebra& v) { return u.a == v.a && u.b == v.b; }
};

template <class R>
using QuaternionAlgebraPtr = std::shared_ptr<const QuaternionAlgebra<R>>;

template <class R>
QuaternionAlgebraPtr<R> make_quaternion_algebra(const R& a, const R& b) {
  if (!is_unit(a) || !is_unit(b)) throw Error(Errc::NotAUnit, "quaternion structure constants must be units");
  return std::make_shared<const QuaternionAlgebra<R>>(QuaternionAlgebra<R>{a, b});
}

/// Quaternion s + x i + y j + z ij. Values without an algebra are scalars
/// and combine with any algebra.
template <class R>
class Quaternion {
 public:
  using scalar_type = R;

  Quaternion() : s_(0), x_(0), y_(0), z_(0) {}
  Quaternion(long v) : s_(v), x_(0), y_(0), z_(0) {}        // NOLINT: literals
  Quaternion(const R& s) : s_(s), x_(0), y_(0), z_(0) {}    // NOLINT: scalars embed
  Quaternion(QuaternionAlgebraPtr<R> alg, R s, R x, R y, R z)
      : alg_(std::move(alg)), s_(std::move(s)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}

  const QuaternionAlgebraPtr<R>& algebra() const noexcept { return alg_; }
  const R& s() const noexcept { return s_; }
  const R& x() const noexcept { return x_; }
  const R& y() const noexcept { return y_; }
  const R& z() const noexcept { return z_; }
  bool is_scalar() const { return is_zero(x_) && is_zero(y_) && is_zero(z_); }

  friend Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return Quaternion(merge(p, q), p.s_ + q.s_, p.x_ + q.x_, p.y_ + q.y_, p.z_ + q.z_);
  }
  friend Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return Quaternion(merge(p, q), p.s_ - q.s_, p.x_ - q.x_, p.y_ - q.y_, p.z_ - q.z_);
  }
  friend Quaternion operator-(const Quaternion& p) { return Quaternion(p.alg_, -p.s_, -p.x_, -p.y_, -p.z_); }

  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    auto alg = merge(p, q);
    if (!alg || p.is_scalar() || q.is_scalar()) {
      if (p.is_scalar()) return Quaternion(alg, p.s_ * q.s_, p.s_ * q.x_, p.s_ * q.y_, p.s_ * q.z_);
      if (q.is_scalar()) return Quaternion(alg, p.s_ * q.s_, p.x_ * q.s_, p.y_ * q.s_, p.z_ * q.s_);
      throw Error(Errc::DomainMismatch, "non-scalar quaternion without an algebra");
    }
    const R& a = alg->a;
    const R& b = alg->b;
    const R ab = a * b;
    return Quaternion(alg,
                      p.s_ * q.s_ + a * p.x_ * q.x_ + b * p.y_ * q.y_ - ab * p.z_ * q.z_,
                      p.s_ * q.x_ + p.x_ * q.s_ - b * p.y_ * q.z_ + b * p.z_ * q.y_,
                      p.s_ * q.y_ + p.y_ * q.s_ + a * p.x_ * q.z_ - a * p.z_ * q.x_,
                      p.s_ * q.z_ + p.z_ * q.s_ + p.x_ * q.y_ - p.y_ * q.x_);
  }
  friend Quaternion operator/(const Quaternion& p, const Quaternion& q) { return p * inverse(q); }

  friend bool operator==(const Quaternion& p, const Quaternion& q) {
    merge(p, q);
    return p.s_ == q.s_ && p.x_ == q.x_ && p.y_ == q.y_ && p.z_ == q.z_;
  }

 private:
  static QuaternionAlgebraPtr<R> merge(const Quaternion& p, const Quaternion& q) {
    if (!p.alg_) return q.alg_;
    if (!q.alg_ || p.alg_ == q.alg_) return p.alg_;
    if (!(*p.alg_ == *q.alg_)) throw Error(Errc::DomainMismatch, "quaternions from different algebras");
    return p.alg_;
  }

  QuaternionAlgebraPtr<R> alg_;
  R s_, x_, y_, z_;
};

template <class R>
bool is_zero(const Quaternion<R>& q) {
  return is_zero(q.s()) && q.is_scalar();
}

template <class R>
Quaternion<R> conj(const Quaternion<R>& q) {
  return Quaternion<R>(q.algebra(), q.s(), -q.x(), -q.y(), -q.z());
}

template <class R>
R reduced_norm(const Quaternion<R>& q) {
  if (!q.algebra()) return q.s() * q.s();
  const R& a = q.algebra()->a;
  const R& b = q.algebra()->b;
  return q.s() * q.s() - a * q.x() * q.x() - b * q.y() * q.y() + a * b * q.z() * q.z();
}

template <class R>
R reduced_trace(const Quaternion<R>& q) {
  return R(2) * q.s();
}

template <class R>
bool is_unit(const Quaternion<R>& q) {
  return is_unit(reduced_norm(q));
}

template <class R>
Quaternion<R> inverse(const Quaternion<R>& q) {
  const R n = reduced_norm(q);
  if (!is_unit(n)) throw Error(Errc::NotAUnit, "quaternion has non-invertible reduced norm");
  const R ni = inverse(n);
  const Quaternion<R> c = conj(q);
  return Quaternion<R>(q.algebra(), c.s() * ni, c.x() * ni, c.y() * ni, c.z() * ni);
}

/// Lift the coefficients of a quaternion into a larger coefficient ring.
template <class U, class R, class F>
Quaternion<U> map_coefficients(const Quaternion<R>& q, const QuaternionAlgebraPtr<U>& alg, F&& f) {
  return Quaternion<U>(alg, f(q.s()), f(q.x()), f(q.y()), f(q.z()));
}

/// B (x) R -> M_2(K) with K = R[t]/(t^2 - a), or K = R when a has a square
/// root in R: i -> diag(r, -r), j -> [[0, 1], [b, 0]].
template <class R>
class SplitEmbedding {
 public:
  using K = Etale<R>;

  explicit SplitEmbedding(QuaternionAlgebraPtr<R> alg) : alg_(std::move(alg)) {
    if (auto r = try_sqrt(alg_->a)) {
      r_ = K(*r);
    } else {
      field_ = etale_make<R>({-alg_->a, R(0), R(1)});
      r_ = K::generator(field_);
    }
    init();
  }

  /// Uses a caller supplied square root `r` of a in `field`.
  SplitEmbedding(QuaternionAlgebraPtr<R> alg, AlgebraPtr<R> field, K r) : alg_(std::move(alg)), field_(std::move(field)), r_(std::move(r)) {
    if (!(r_ * r_ == K(alg_->a))) throw Error(Errc::NoSquareRoot, "supplied splitting ring has no square root of a");
    init();
  }

  const QuaternionAlgebraPtr<R>& algebra() const noexcept { return alg_; }
  const AlgebraPtr<R>& field() const noexcept { return field_; }
  const K& root() const noexcept { return r_; }

  Matrix<K> apply(const Quaternion<R>& q) const {
    const K s(q.s()), x(q.x()), y(q.y()), z(q.z());
    return Matrix<K>{{s + x * r_, y + z * r_}, {b_ * y - b_ * z * r_, s - x * r_}};
  }

  Matrix<K> apply(const Matrix<Quaternion<R>>& m) const {
    Matrix<K> out(2 * m.rows(), 2 * m.cols(), K(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.set_block(2 * i, 2 * j, apply(m(i, j)));
    return out;
  }

  /// Inverse of `apply` on a 2x2 block; every coordinate must descend to R.
  Quaternion<R> descend_block(const Matrix<K>& m, std::size_t r0 = 0, std::size_t c0 = 0) const {
    const K& m00 = m(r0, c0);
    const K& m01 = m(r0, c0 + 1);
    const K& m10 = m(r0 + 1, c0);
    const K& m11 = m(r0 + 1, c0 + 1);
    const K s = (m00 + m11) * half_;
    const K x = (m00 - m11) * half_r_inv_;
    const K y = (m01 + m10 * b_inv_) * half_;
    const K z = (m01 - m10 * b_inv_) * half_r_inv_;
    return Quaternion<R>(alg_, descend(s), descend(x), descend(y), descend(z));
  }

  Matrix<Quaternion<R>> descend_matrix(const Matrix<K>& m) const {
    if (m.rows() % 2 || m.cols() % 2) throw Error(Errc::SizeMismatch, "split image must have even size");
    Matrix<Quaternion<R>> out(m.rows() / 2, m.cols() / 2, Quaternion<R>(0));
    for (std::size_t i = 0; i < out.rows(); ++i)
      for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = descend_block(m, 2 * i, 2 * j);
    return out;
  }

 private:
  void init() {
    b_ = K(alg_->b);
    b_inv_ = K(inverse(alg_->b));
    half_ = K(alg_->a / (alg_->a + alg_->a));
    half_r_inv_ = half_ * inverse(r_);
  }

  QuaternionAlgebraPtr<R> alg_;
  AlgebraPtr<R> field_;
  K r_;
  K b_, b_inv_, half_, half_r_inv_;
};

}  // namespace qpv
