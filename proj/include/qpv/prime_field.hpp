#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qpv/error.hpp"

namespace qpv {

/// Element of F_p for an odd prime p chosen at runtime.
///
/// A value built from a bare integer (`Fp(3)`) is an unbound literal: it
/// carries no modulus and adopts the modulus of the first bound value it is
/// combined with. This lets generic code write `R(0)`, `R(2)` for every
/// scalar type.
class Fp {
 public:
  Fp() = default;
  Fp(long v) : v_(v) {}  // NOLINT: literals
  Fp(long v, std::int64_t p) : v_(normalize(v, p)), p_(p) {}

  std::int64_t value() const noexcept { return v_; }
  std::int64_t modulus() const noexcept { return p_; }
  bool bound() const noexcept { return p_ != 0; }
  /// Representative in 0..p-1 (requires a bound value or an explicit p).
  std::int64_t canonical(std::int64_t p = 0) const {
    const std::int64_t m = p_ ? p_ : p;
    return m ? normalize(v_, m) : v_;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    const std::int64_t p = merge(a, b);
    return p ? Fp(raw(a.canonical(p) + b.canonical(p), p)) : Fp(a.v_ + b.v_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    const std::int64_t p = merge(a, b);
    return p ? Fp(raw(a.canonical(p) - b.canonical(p) + p, p)) : Fp(a.v_ - b.v_);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    const std::int64_t p = merge(a, b);
    return p ? Fp(raw(a.canonical(p) * b.canonical(p), p)) : Fp(a.v_ * b.v_);
  }
  friend Fp operator-(const Fp& a) { return a.p_ ? Fp(raw(a.v_ ? a.p_ - a.v_ : 0, a.p_)) : Fp(-a.v_); }
  friend Fp operator/(const Fp& a, const Fp& b);
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    const std::int64_t p = merge(a, b);
    return a.canonical(p) == b.canonical(p);
  }

  std::string str() const { return std::to_string(canonical()); }

 private:
  struct RawTag {};
  Fp(RawTag, std::int64_t v, std::int64_t p) : v_(v), p_(p) {}
  static Fp raw(std::int64_t v, std::int64_t p) { return Fp(RawTag{}, v % p, p); }
  static std::int64_t normalize(std::int64_t v, std::int64_t p) {
    const std::int64_t r = v % p;
    return r < 0 ? r + p : r;
  }
  static std::int64_t merge(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) {
      throw Error(Errc::DomainMismatch, "mixing F_" + std::to_string(a.p_) + " and F_" +
                                            std::to_string(b.p_));
    }
    return a.p_ ? a.p_ : b.p_;
  }

  std::int64_t v_ = 0;
  std::int64_t p_ = 0;
};

inline bool is_zero(const Fp& x) { return x.canonical() == 0; }
inline bool is_unit(const Fp& x) { return !is_zero(x); }
Fp inverse(const Fp& x);
std::optional<Fp> try_sqrt(const Fp& x);
bool is_square(const Fp& x);

bool is_odd_prime(std::int64_t p);

}  // namespace qpv
