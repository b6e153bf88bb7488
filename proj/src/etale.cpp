#include "qpv/etale.hpp"

namespace qpv {

namespace {

template <class S>
void check_conjugates(const AlgebraPtr<S>& alg, const Etale<S>& x, const std::vector<Etale<S>>& conj) {
  const auto cp = element_charpoly(alg, x);
  for (const auto& c : conj) {
    if (!is_zero(cp.eval(c))) throw Error(Errc::DescentFailure, "conjugate is not a root of the characteristic polynomial");
  }
}

}  // namespace

std::vector<Etale<Fp>> enumerate_elements(const AlgebraPtr<Fp>& alg, std::int64_t p) {
  const int d = alg->degree();
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= p;
  std::vector<Etale<Fp>> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::array<Fp, 3> c{Fp(0, p), Fp(0, p), Fp(0, p)};
    std::int64_t r = idx;
    for (int i = d - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = Fp(r % p, p);
      r /= p;
    }
    out.emplace_back(alg, c);
  }
  return out;
}

std::vector<Etale<Fp>> roots_in_algebra(const AlgebraPtr<Fp>& alg, const Polynomial<Fp>& f, std::int64_t p) {
  std::vector<Etale<Fp>> roots;
  for (const auto& x : enumerate_elements(alg, p)) {
    if (is_zero(f.eval(x))) roots.push_back(x);
  }
  return roots;
}

bool modulus_reducible(const AlgebraPtr<Rational>& alg) { return !roots_in_base(alg->poly()).empty(); }

bool modulus_reducible(const AlgebraPtr<Fp>& alg, std::int64_t p) { return !roots_in_base(alg->poly(), p).empty(); }

std::optional<std::array<Etale<Rational>, 3>> galois_cubic_roots(const AlgebraPtr<Rational>& alg) {
  if (alg->degree() != 3) throw Error(Errc::SizeMismatch, "cubic algebra expected");
  const Polynomial<Rational> f = alg->poly();
  const auto d = try_sqrt(poly_discriminant(f));
  if (!d) return std::nullopt;
  const Etale<Rational> beta = Etale<Rational>::generator(alg);
  const Etale<Rational> fprime = f.derivative().eval(beta);
  const Etale<Rational> b1(-alg->modulus[2]);
  const Etale<Rational> diff = -Etale<Rational>(*d) / fprime;
  const Etale<Rational> beta2 = (b1 - beta + diff) / Etale<Rational>(2);
  const Etale<Rational> beta3 = (b1 - beta - diff) / Etale<Rational>(2);
  for (const auto& r : {beta2, beta3}) {
    if (!is_zero(f.eval(r))) throw Error(Errc::DescentFailure, "Galois root formula failed");
  }
  return std::array<Etale<Rational>, 3>{beta, beta2, beta3};
}

std::vector<Etale<Rational>> conjugates(const Etale<Rational>& x) {
  const auto& alg = x.algebra();
  if (!alg) throw Error(Errc::DomainMismatch, "conjugates need an algebra");
  if (modulus_reducible(alg)) throw Error(Errc::ReducibleModulus, "modulus factors over Q");
  std::vector<Etale<Rational>> out;
  if (alg->degree() == 2) {
    out = {x, quadratic_conjugate(x)};
  } else {
    const auto roots = galois_cubic_roots(alg);
    if (!roots) throw Error(Errc::ConjugatesUnavailable, "non-Galois cubic: conjugates live in the splitting tower");
    out = {x, substitute_generator(x, (*roots)[1]), substitute_generator(x, (*roots)[2])};
  }
  check_conjugates(alg, x, out);
  return out;
}

std::vector<Etale<Fp>> conjugates(const Etale<Fp>& x, std::int64_t p) {
  const auto& alg = x.algebra();
  if (!alg) throw Error(Errc::DomainMismatch, "conjugates need an algebra");
  if (modulus_reducible(alg, p)) throw Error(Errc::ReducibleModulus, "modulus factors over F_p");
  std::vector<Etale<Fp>> out{x};
  for (int i = 1; i < alg->degree(); ++i) out.push_back(power(out.back(), p));
  check_conjugates(alg, x, out);
  return out;
}

}  // namespace qpv
