#include "qpv/polynomial.hpp"

#include <algorithm>

namespace qpv {

namespace {

using QPoly = Polynomial<Rational>;

int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    const int s = p(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

QPoly squarefree_part(const QPoly& f) {
  const QPoly g = gcd(f, f.derivative());
  return divmod(f, g).first.monic();
}

Rational split_point(const QPoly& f, const Rational& lo, const Rational& hi) {
  Rational mid = (lo + hi) / Rational(2);
  if (is_zero(f(mid))) mid = lo + (hi - lo) / Rational(3);
  return mid;
}

void isolate(const QPoly& f, const std::vector<QPoly>& chain, Rational lo, Rational hi,
             std::vector<std::pair<Rational, Rational>>& out) {
  const int n = sturm_count(chain, lo, hi);
  if (n == 0) return;
  if (n == 1) {
    out.emplace_back(std::move(lo), std::move(hi));
    return;
  }
  const Rational mid = split_point(f, lo, hi);
  isolate(f, chain, lo, mid, out);
  isolate(f, chain, mid, hi, out);
}

/// Multiply by the lcm of denominators so every coefficient is an integer.
QPoly clear_denominators(const QPoly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  return Rational(l) * f;
}

mpz_class floor_q(const Rational& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return r;
}

}  // namespace

std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain{f};
  if (f.degree() <= 0) return chain;
  chain.push_back(f.derivative());
  while (true) {
    const QPoly r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    chain.push_back(r);
  }
  return chain;
}

int sturm_count(const std::vector<QPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

Rational root_bound(const QPoly& f) {
  Rational m(0);
  const Rational lead = f.lead();
  for (int k = 0; k < f.degree(); ++k) {
    Rational r = f.coeff(static_cast<std::size_t>(k)) / lead;
    if (r.sign() < 0) r = -r;
    if (r > m) m = r;
  }
  return m + Rational(1);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& f) {
  std::vector<std::pair<Rational, Rational>> out;
  if (f.degree() <= 0) return out;
  const QPoly s = squarefree_part(f);
  const auto chain = sturm_chain(s);
  const Rational b = root_bound(s);
  isolate(s, chain, -b, b, out);
  return out;
}

int count_real_roots(const QPoly& f) { return static_cast<int>(isolate_real_roots(f).size()); }

void refine_root(const std::vector<QPoly>& chain, std::pair<Rational, Rational>& iv, const Rational& width) {
  const QPoly& f = chain.front();
  while (iv.second - iv.first >= width) {
    const Rational mid = split_point(f, iv.first, iv.second);
    if (sturm_count(chain, iv.first, mid) == 1) {
      iv.second = mid;
    } else {
      iv.first = mid;
    }
  }
}

int sign_at_root(const QPoly& f, std::pair<Rational, Rational>& iv, const QPoly& g) {
  if (g.is_zero()) throw Error(Errc::DescentFailure, "sign of the zero polynomial at a root");
  if (g.degree() == 0) return g.lead().sign();
  const auto fchain = sturm_chain(squarefree_part(f));
  const auto gchain = sturm_chain(squarefree_part(g));
  while (true) {
    if (sturm_count(gchain, iv.first, iv.second) == 0 && !is_zero(g(iv.second))) return g(iv.second).sign();
    refine_root(fchain, iv, (iv.second - iv.first) / Rational(2));
  }
}

std::vector<Rational> roots_in_base(const QPoly& f) {
  std::vector<Rational> roots;
  if (f.degree() <= 0) return roots;
  // g(s) = a^(n-1) f(s/a) is monic with integer coefficients; its rational
  // roots are integers.
  const QPoly fi = clear_denominators(f);
  const int n = fi.degree();
  const Rational a = fi.lead();
  std::vector<Rational> gc(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int k = 0; k < n; ++k) {
    Rational p(1);
    for (int e = 0; e < n - 1 - k; ++e) p = p * a;
    gc[static_cast<std::size_t>(k)] = fi.coeff(static_cast<std::size_t>(k)) * p;
  }
  gc[static_cast<std::size_t>(n)] = Rational(1);
  const QPoly g(gc);
  const QPoly s = squarefree_part(g);
  const auto chain = sturm_chain(s);
  for (auto iv : isolate_real_roots(g)) {
    refine_root(chain, iv, Rational(1, 2));
    for (mpz_class z = floor_q(iv.first); Rational(z) <= iv.second; ++z) {
      if (Rational(z) > iv.first && is_zero(g(Rational(z)))) roots.push_back(Rational(z) / a);
    }
  }
  std::vector<Rational> with_mult;
  for (const auto& r : roots) {
    QPoly h = f;
    const QPoly lin{-r, Rational(1)};
    while (true) {
      auto [q, rem] = divmod(h, lin);
      if (!rem.is_zero()) break;
      with_mult.push_back(r);
      h = q;
    }
  }
  std::sort(with_mult.begin(), with_mult.end());
  return with_mult;
}

std::vector<Fp> roots_in_base(const Polynomial<Fp>& f, std::int64_t p) {
  if (p > (std::int64_t{1} << 20)) throw Error(Errc::ResourceLimit, "root search limited to p <= 2^20");
  std::vector<Fp> bound;
  for (const auto& c : f.coeffs()) bound.push_back(Fp(c.canonical(p), p));
  Polynomial<Fp> h(bound);
  std::vector<Fp> roots;
  if (h.degree() <= 0) return roots;
  for (std::int64_t v = 0; v < p; ++v) {
    const Fp x(v, p);
    const Polynomial<Fp> lin{-x, Fp(1, p)};
    while (h.degree() > 0) {
      auto [q, rem] = divmod(h, lin);
      if (!rem.is_zero()) break;
      roots.push_back(x);
      h = q;
    }
  }
  return roots;
}

std::vector<Fp> roots_in_base(const Polynomial<Fp>& f) {
  for (const auto& c : f.coeffs()) {
    if (c.bound()) return roots_in_base(f, c.modulus());
  }
  throw Error(Errc::DomainMismatch, "polynomial over F_p carries no modulus");
}

}  // namespace qpv
