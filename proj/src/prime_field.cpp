#include "qpv/prime_field.hpp"

namespace qpv {

namespace {

std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

Fp operator/(const Fp& a, const Fp& b) {
  if (!a.bound() && !b.bound()) {
    if (b.v_ == 0 || a.v_ % b.v_ != 0) {
      throw Error(Errc::NotAUnit, "inexact division of unbound F_p literals");
    }
    return Fp(a.v_ / b.v_);
  }
  const std::int64_t p = Fp::merge(a, b);
  return a * inverse(Fp(b.canonical(p), p));
}

Fp inverse(const Fp& x) {
  if (!x.bound()) {
    if (x.value() == 1 || x.value() == -1) return x;
    throw Error(Errc::NotAUnit, "inverse of an unbound F_p literal");
  }
  const std::int64_t p = x.modulus();
  std::int64_t a = x.canonical();
  if (a == 0) throw Error(Errc::NotAUnit, "0 has no inverse in F_" + std::to_string(p));
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return Fp(t, p);
}

bool is_square(const Fp& x) {
  if (is_zero(x)) return true;
  const std::int64_t p = x.modulus();
  return pow_mod(x.canonical(), (p - 1) / 2, p) == 1;
}

std::optional<Fp> try_sqrt(const Fp& x) {
  if (!x.bound()) throw Error(Errc::DomainMismatch, "square root of an unbound F_p literal");
  const std::int64_t p = x.modulus();
  const std::int64_t a = x.canonical();
  if (a == 0) return Fp(0, p);
  if (!is_square(x)) return std::nullopt;
  // Tonelli-Shanks.
  std::int64_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::int64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::int64_t m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0, t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    const std::int64_t b = pow_mod(c, std::int64_t{1} << (m - i - 1), p);
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return Fp(r, p);
}

bool is_odd_prime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace qpv
