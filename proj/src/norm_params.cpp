#include "qpv/norm_params.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "qpv/matrix.hpp"

namespace qpv {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::int64_t primitive_root(std::int64_t q) {
  for (std::int64_t g = 2; g < q; ++g) {
    std::int64_t x = 1;
    int ord = 0;
    do {
      x = x * g % q;
      ++ord;
    } while (x != 1);
    if (ord == q - 1) return g;
  }
  return 1;
}

Polynomial<Rational> as_poly(const Etale<Rational>& x) { return Polynomial<Rational>({x[0], x[1], x[2]}); }

std::vector<std::pair<Rational, Rational>> real_roots(const AlgebraPtr<Rational>& L) {
  return isolate_real_roots(L->poly());
}

}  // namespace

ParamSetReport param_set_finite(const AlgebraPtr<Fp>& L, std::int64_t q) {
  if (!is_odd_prime(q) || q > 7) throw Error(Errc::ResourceLimit, "finite parameter sets need an odd prime q <= 7");
  if (!L || L->degree() != 3) throw Error(Errc::SizeMismatch, "L must be a cubic étale algebra");
  ParamSetReport rep;
  rep.base = "Fp";
  rep.p = q;
  rep.model = "enumeration";
  for (const auto& c : L->modulus) rep.modulus.push_back(std::to_string(c.canonical(q)));

  auto index = [&](const Etale<Fp>& x) {
    return static_cast<std::size_t>(x[0].canonical(q) + q * (x[1].canonical(q) + q * x[2].canonical(q)));
  };
  const auto all = enumerate_elements(L, q);
  std::vector<Etale<Fp>> units;
  for (const auto& x : all)
    if (is_unit(x)) units.push_back(x);
  std::vector<long> slot(all.size(), -1);
  for (std::size_t i = 0; i < units.size(); ++i) slot[index(units[i])] = static_cast<long>(i);

  // Image of the reduced norm of B (x) L; B is split so this is det on M_2(L).
  std::vector<bool> in_image(units.size(), false);
  std::size_t found = 0;
  const std::size_t n = all.size();
  for (std::size_t i0 = 0; i0 < n && found < units.size(); ++i0)
    for (std::size_t i1 = 0; i1 < n && found < units.size(); ++i1)
      for (std::size_t i2 = 0; i2 < n && found < units.size(); ++i2)
        for (std::size_t i3 = 0; i3 < n && found < units.size(); ++i3) {
          const Etale<Fp> d = all[i0] * all[i3] - all[i1] * all[i2];
          const long s = slot[index(d)];
          if (s >= 0 && !in_image[static_cast<std::size_t>(s)]) {
            in_image[static_cast<std::size_t>(s)] = true;
            ++found;
          }
        }

  // Aut_k(L): beta -> r for each root r of f in L with 1, r, r^2 a basis.
  std::vector<Etale<Fp>> autos;
  for (const auto& r : roots_in_algebra(L, L->poly(), q)) {
    const Etale<Fp> r2 = r * r;
    Matrix<Fp> m{{Fp(1, q), r[0], r2[0]}, {Fp(0, q), r[1], r2[1]}, {Fp(0, q), r[2], r2[2]}};
    if (is_unit(det(m))) autos.push_back(r);
  }
  rep.aut_order = static_cast<int>(autos.size());

  UnionFind uf(units.size());
  const Etale<Fp> g(Fp(primitive_root(q), q));
  std::vector<Etale<Fp>> img;
  for (std::size_t i = 0; i < units.size(); ++i)
    if (in_image[i]) img.push_back(units[i]);
  for (std::size_t i = 0; i < units.size(); ++i) {
    uf.unite(i, static_cast<std::size_t>(slot[index(units[i] * g)]));
    for (const auto& m : img) uf.unite(i, static_cast<std::size_t>(slot[index(units[i] * m)]));
    for (const auto& r : autos) uf.unite(i, static_cast<std::size_t>(slot[index(substitute_generator(units[i], r))]));
  }
  std::map<std::size_t, std::size_t> roots;
  for (std::size_t i = 0; i < units.size(); ++i) roots.emplace(uf.find(i), i);
  rep.class_count = static_cast<int>(roots.size());
  rep.oracle_count = rep.class_count;
  for (const auto& [root, i] : roots) {
    ParamClass c;
    for (int k = 0; k < 3; ++k) c.element.push_back(std::to_string(units[root][static_cast<std::size_t>(k)].canonical(q)));
    rep.classes.push_back(c);
  }
  return rep;
}

std::pair<int, int> real_signature(const Polynomial<Rational>& f) {
  if (f.degree() != 3) throw Error(Errc::SizeMismatch, "expected a cubic");
  if (is_zero(poly_discriminant(f))) throw Error(Errc::InseparableModulus, "cubic is not separable");
  const int r1 = count_real_roots(f);
  return {r1, (3 - r1) / 2};
}

std::vector<int> sign_vector(const Etale<Rational>& x) {
  const auto& L = x.algebra();
  if (!L) throw Error(Errc::DomainMismatch, "sign vector needs an element of L");
  if (is_zero(x)) throw Error(Errc::NotAUnit, "zero has no sign vector");
  std::vector<int> out;
  for (auto iv : real_roots(L)) out.push_back(sign_at_root(L->poly(), iv, as_poly(x)));
  return out;
}

std::vector<int> galois_real_permutation(const AlgebraPtr<Rational>& L) {
  const auto r = galois_cubic_roots(L);
  if (!r) throw Error(Errc::ConjugatesUnavailable, "cubic field is not Galois");
  const auto f = L->poly();
  const auto ivs = real_roots(L);
  const auto h = as_poly((*r)[1]);
  std::vector<int> perm;
  for (auto iv : ivs) {
    int target = -1;
    for (std::size_t j = 0; j < ivs.size(); ++j) {
      auto a = iv, b = iv;
      const int above_lo = sign_at_root(f, a, h - Polynomial<Rational>({ivs[j].first}));
      const int above_hi = sign_at_root(f, b, h - Polynomial<Rational>({ivs[j].second}));
      if (above_lo > 0 && above_hi < 0) target = static_cast<int>(j);
    }
    if (target < 0) throw Error(Errc::ConjugatesUnavailable, "could not locate a conjugate root");
    perm.push_back(target);
  }
  return perm;
}

ParamSetReport param_set_definite(const AlgebraPtr<Rational>& L, const Rational& a, const Rational& b) {
  if (!(a.sign() < 0 && b.sign() < 0)) throw Error(Errc::NotDefinite, "B must be totally definite (a < 0, b < 0)");
  if (!L || L->degree() != 3) throw Error(Errc::SizeMismatch, "L must be a cubic algebra");
  if (modulus_reducible(L)) throw Error(Errc::ReducibleModulus, "L must be a cubic field");
  ParamSetReport rep;
  rep.base = "Q";
  rep.model = "sign_vector";
  for (const auto& c : L->modulus) rep.modulus.push_back(c.str());
  rep.external_assumption =
      "reduced-norm image of a totally definite quaternion algebra over L = elements positive at every real place "
      "of L (Hasse-Schilling norm theorem); not derived here";
  std::tie(rep.r1, rep.r2) = real_signature(L->poly());
  const int r1 = rep.r1;

  // Coordinate permutation induced by Aut_k(L).
  std::vector<std::vector<int>> group{std::vector<int>(static_cast<std::size_t>(r1))};
  std::iota(group[0].begin(), group[0].end(), 0);
  const bool galois = galois_cubic_roots(L).has_value();
  rep.aut_order = galois ? 3 : 1;
  if (galois && r1 == 3) {
    const auto p = galois_real_permutation(L);
    std::vector<int> p2(3);
    for (int i = 0; i < 3; ++i) p2[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
    group.push_back(p);
    group.push_back(p2);
  }

  // Burnside over {+-1}^r1 under <-1> x Aut.
  const int nv = 1 << r1;
  auto vec_of = [&](int m) {
    std::vector<int> v(static_cast<std::size_t>(r1));
    for (int i = 0; i < r1; ++i) v[static_cast<std::size_t>(i)] = (m >> i) & 1 ? -1 : 1;
    return v;
  };
  auto mask_of = [&](const std::vector<int>& v) {
    int m = 0;
    for (int i = 0; i < r1; ++i)
      if (v[static_cast<std::size_t>(i)] < 0) m |= 1 << i;
    return m;
  };
  // Sign vector of x^sigma at root i is that of x at root perm[i].
  auto act = [&](const std::vector<int>& perm, const std::vector<int>& v, int s) {
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[static_cast<std::size_t>(perm[i])];
    return out;
  };
  long fixed = 0;
  for (const auto& perm : group)
    for (int s : {1, -1})
      for (int m = 0; m < nv; ++m)
        if (act(perm, vec_of(m), s) == vec_of(m)) ++fixed;
  rep.class_count = static_cast<int>(fixed / (2 * static_cast<long>(group.size())));

  UnionFind uf(static_cast<std::size_t>(nv));
  for (int m = 0; m < nv; ++m)
    for (const auto& perm : group)
      for (int s : {1, -1}) uf.unite(static_cast<std::size_t>(m), static_cast<std::size_t>(mask_of(act(perm, vec_of(m), s))));
  std::map<std::size_t, int> cls;
  for (int m = 0; m < nv; ++m) cls.emplace(uf.find(static_cast<std::size_t>(m)), m);
  rep.oracle_count = static_cast<int>(cls.size());

  // Representatives: products of (beta - c_j), c_j separating consecutive real roots.
  const auto ivs = real_roots(L);
  const Etale<Rational> beta = Etale<Rational>::generator(L);
  std::set<std::size_t> done;
  for (int subset = 0; subset < (1 << std::max(0, r1 - 1)) && done.size() < cls.size(); ++subset) {
    Etale<Rational> e(L, {Rational(1), Rational(0), Rational(0)});
    for (int j = 0; j + 1 < r1; ++j)
      if ((subset >> j) & 1) e = e * (beta - Etale<Rational>(ivs[static_cast<std::size_t>(j)].second));
    const auto sv = sign_vector(e);
    const std::size_t root = uf.find(static_cast<std::size_t>(mask_of(sv)));
    if (!done.insert(root).second) continue;
    ParamClass c;
    for (int k = 0; k < 3; ++k) c.element.push_back(e[static_cast<std::size_t>(k)].str());
    c.signs = sv;
    rep.classes.push_back(c);
  }
  return rep;
}

}  // namespace qpv
