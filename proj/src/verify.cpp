#include "qpv/verify.hpp"

#include <random>

#include "qpv/representatives.hpp"
#include "qpv/sampling.hpp"

namespace qpv {

namespace {

template <class R>
R one_of(const io::FieldDesc& f) {
  if constexpr (std::is_same_v<R, Rational>) {
    (void)f;
    return Rational(1);
  } else {
    return Fp(1, f.p);
  }
}

template <class R>
Sampler<R> make_sampler(const io::FieldDesc& f, std::mt19937_64& rng) {
  if constexpr (std::is_same_v<R, Rational>) {
    (void)f;
    return Sampler<R>{&rng, 4};
  } else {
    return Sampler<R>{&rng, f.p};
  }
}

template <class R>
QuaternionAlgebraPtr<R> algebra_for(const io::FieldDesc& f, const std::string& b) {
  const R o = one_of<R>(f);
  if (b == "split") return make_quaternion_algebra(o, o);
  if (b == "hamilton") return make_quaternion_algebra(-o, -o);
  throw Error(Errc::MalformedInput, "unknown algebra '" + b + "'", "--B");
}

template <class Fn>
auto with_field(const io::FieldDesc& f, Fn&& fn) {
  if (f.rational) return fn(Rational(1));
  return fn(Fp(1, f.p));
}

/// Runs `body` `samples` times, counting false results and thrown errors.
template <class Body>
CheckResult run_check(const std::string& name, int samples, Body&& body) {
  CheckResult r{name, 0, 0, {}};
  for (int i = 0; i < samples; ++i) {
    ++r.samples;
    try {
      if (!body(i)) ++r.failures;
    } catch (const Error& e) {
      ++r.failures;
      if (r.note.empty()) r.note = e.what();
    }
  }
  return r;
}

template <class R>
std::string type_of(const HermitianPair<R>& x) {
  return form_splitting_type(scalar_pair_form(x));
}

template <class R>
HermitianPair<R> negate(const HermitianPair<R>& x) {
  auto neg = [](const Quaternion<R>& q) { return -q; };
  return {x.x1.map(neg), x.x2.map(neg)};
}

template <class M>
HermitianPair<M> lift_plain(const HermitianPair<typename M::base_type>& x) {
  return lift_pair(x, QuaternionAlgebraPtr<M>{});
}

template <class M>
GroupElement<M> lift_plain(const GroupElement<typename M::base_type>& g) {
  return lift_element(g, QuaternionAlgebraPtr<M>{});
}

template <class R>
AlgebraPtr<R> quadratic_for(const io::FieldDesc& f) {
  const R o = one_of<R>(f);
  if constexpr (std::is_same_v<R, Rational>) {
    return etale_make<R>({o, o - o, o});
  } else {
    return etale_make<R>({Fp(-nonresidue(f.p), f.p), o - o, o});
  }
}

template <class R>
std::vector<CheckResult> representatives_suite(const io::FieldDesc& f, int samples, std::uint64_t seed) {
  using E = Etale<R>;
  std::mt19937_64 rng(seed);
  const auto s = make_sampler<R>(f, rng);
  const R o = one_of<R>(f), z = o - o;
  std::vector<CheckResult> out;
  const auto F = quadratic_for<R>(f);
  const auto [al, alc] = quadratic_roots(F);
  const R a1 = -F->modulus[1], a2 = F->modulus[0];

  out.push_back(run_check("d5_transporter", 1, [&](int) {
    return act(d5_g_alpha<E>(al, alc), lift_plain<E>(d5_w<R>())) == lift_plain<E>(d5_x_alpha<R>(a1, a2));
  }));
  out.push_back(run_check("e7_transporter_alpha", 1, [&](int) {
    return act(e7_g_alpha<E>(al, alc), lift_plain<E>(e7_w<R>())) == lift_plain<E>(e7_x_alpha<R>(a1, a2));
  }));
  AlgebraPtr<R> L;
  std::array<E, 3> roots;
  if constexpr (std::is_same_v<R, Rational>) {
    L = etale_make<R>({-1, -3, 0, 1});
    roots = cubic_roots_in_field(L);
  } else {
    L = etale_make<R>(irreducible_cubic(f.p));
    roots = cubic_roots_in_field(L, f.p);
  }
  const R b1 = -L->modulus[2], b2 = L->modulus[1], b3 = -L->modulus[0];
  out.push_back(run_check("e7_transporter_beta", 1, [&](int) {
    return act(e7_g_beta<E>(roots), lift_plain<E>(e7_w<R>())) == lift_plain<E>(e7_x_beta<R>(b1, b2, b3));
  }));
  out.push_back(run_check("e7_theta_twist", 1, [&](int) {
    const auto g = e7_g_beta<E>(roots);
    const auto tw = map_element(g, [&](const E& m) { return substitute_generator(m, roots[1]); });
    return tw == compose(g, lift_plain<E>(e7_theta_tilde<R>()));
  }));
  out.push_back(run_check("rep_split_base_point", 1, [&](int) { return rep_split<R>(o, o, o) == e7_w<R>(); }));
  out.push_back(run_check("rep_cubic_one", 1, [&](int) {
    return rep_cubic(E(L, {o, z, z}), L) == negate(e7_x_beta<R>(b1, b2, b3));
  }));
  out.push_back(run_check("rep_split_type", samples, [&](int) {
    return type_of(rep_split<R>(s.unit(), s.unit(), s.unit())) == "(1,1,1)";
  }));
  out.push_back(run_check("rep_mixed_type", samples, [&](int) {
    E lam(F, {s(), s(), z});
    while (is_zero(lam)) lam = E(F, {s(), s(), z});
    return type_of(rep_mixed<R>(s.unit(), lam, F)) == "(1,2)";
  }));
  out.push_back(run_check("rep_cubic_type", samples, [&](int) {
    E del(L, {s(), s(), s()});
    while (is_zero(del)) del = E(L, {s(), s(), s()});
    return type_of(rep_cubic(del, L)) == "(3)";
  }));
  out.push_back(run_check("lambda_formulas", samples, [&](int) {
    E lam(F, {s(), s(), z});
    return lambda_by_conjugates(lam, F) == lambda_coefficients(lam, F);
  }));
  out.push_back(run_check("delta_formulas", samples, [&](int) {
    E del(L, {s(), s(), s()});
    std::array<E, 3> dc{del, substitute_generator(del, roots[1]), substitute_generator(del, roots[2])};
    return delta_by_conjugates<R>(roots, dc) == delta_coefficients(del, L);
  }));
  return out;
}

}  // namespace

std::int64_t nonresidue(std::int64_t p) {
  for (std::int64_t d = 2; d < p; ++d) {
    std::int64_t r = 1, b = d, e = (p - 1) / 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    if (r == p - 1) return d;
  }
  throw Error(Errc::NoSquareRoot, "no quadratic nonresidue");
}

std::vector<Fp> irreducible_cubic(std::int64_t p) {
  for (std::int64_t c = 1; c < p; ++c) {
    std::vector<Fp> f{Fp(-c, p), Fp(-1, p), Fp(0, p), Fp(1, p)};
    if (roots_in_base(Polynomial<Fp>(f), p).empty()) return f;
  }
  for (std::int64_t c = 1; c < p; ++c) {
    std::vector<Fp> f{Fp(-c, p), Fp(1, p), Fp(0, p), Fp(1, p)};
    if (roots_in_base(Polynomial<Fp>(f), p).empty()) return f;
  }
  throw Error(Errc::ReducibleModulus, "no irreducible cubic found");
}

CheckResult pfaffian_axioms(const io::FieldDesc& f, const std::string& b, std::size_t n, int samples,
                            std::uint64_t seed) {
  return with_field(f, [&](auto tag) {
    using R = decltype(tag);
    std::mt19937_64 rng(seed);
    const auto s = make_sampler<R>(f, rng);
    const auto alg = algebra_for<R>(f, b);
    const SplitEmbedding<R> emb(alg);
    const R o = one_of<R>(f);
    const auto id = QMatrix<R>::identity(n, Quaternion<R>(alg, o, o - o, o - o, o - o));
    auto r = run_check("pfaffian_axioms", samples, [&](int i) {
      if (i == 0 && !(pfaffian(emb, id) == one_of<R>(f))) return false;
      const auto x = random_hermitian(s, alg, n);
      const R pf = pfaffian(emb, x);
      return pf * pf == reduced_norm_matrix(emb, x);
    });
    return r;
  });
}

std::vector<CheckResult> equivariance(const io::FieldDesc& f, const std::string& b, std::size_t n, int samples,
                                      std::uint64_t seed) {
  return with_field(f, [&](auto tag) {
    using R = decltype(tag);
    std::mt19937_64 rng(seed);
    const auto s = make_sampler<R>(f, rng);
    const auto alg = algebra_for<R>(f, b);
    const SplitEmbedding<R> emb(alg);
    std::vector<CheckResult> out;
    out.push_back(run_check("pfaffian_equivariance", samples, [&](int) {
      const auto g = random_qmatrix(s, alg, n);
      const auto x = random_hermitian(s, alg, n);
      return pfaffian(emb, g * x * iota(g)) == reduced_norm_matrix(emb, g) * pfaffian(emb, x);
    }));
    out.push_back(run_check("form_equivariance", samples, [&](int) {
      const auto g = random_group_element(s, emb, n);
      const auto x = random_pair(s, alg, n);
      const auto lhs = form_of_pair(emb, act(g, x));
      auto rhs = substitute(form_of_pair(emb, x), g.g2).c;
      for (auto& c : rhs) c = c * reduced_norm_matrix(emb, g.g1);
      return lhs.c == rhs;
    }));
    out.push_back(run_check("discriminant_character", samples, [&](int) {
      const auto g = random_group_element(s, emb, n);
      const auto x = random_pair(s, alg, n);
      const R chi = character_chi(emb, g);
      return discriminant(form_of_pair(emb, act(g, x))) == chi * chi * discriminant(form_of_pair(emb, x));
    }));
    out.push_back(run_check("action_law", samples, [&](int) {
      const auto g = random_group_element(s, emb, n), h = random_group_element(s, emb, n);
      const auto x = random_pair(s, alg, n);
      return act(compose(g, h), x) == act(g, act(h, x));
    }));
    return out;
  });
}

namespace {

template <class C>
std::vector<CheckResult> round_trips(const Reducible<C>& red, const io::FieldDesc& f, int samples,
                                     std::uint64_t seed) {
  using R = typename C::Base;
  std::mt19937_64 rng(seed);
  const auto s = make_sampler<R>(f, rng);
  std::uint64_t kernel_failures = 0;
  auto guard = [&](auto&& body) {
    return [&, body](int i) {
      try {
        return body(i);
      } catch (const Error& e) {
        if (e.code() == Errc::KernelUnitSearchFailed) ++kernel_failures;
        throw;
      }
    };
  };
  std::vector<CheckResult> out;
  out.push_back(run_check("reduce_to_W", samples, guard([&](int) {
    const auto x = red.act(red.random_element(s), red.random_w(s, Level::V2));
    const auto r = red.reduce_to_W(x);
    if (!(red.in_W(r.w) && red.act(r.g, r.w) == x && red.level(r.w) == Level::V2)) return false;
    const Reducible<C> other(red.policy(), red.seed() + 1, red.budget());
    const auto h = red.random_element(s);
    const auto r2 = other.reduce_to_W(red.act(h, x));
    return red.check_bundle_uniqueness(x, r.g, red.compose(red.inverse_of(h), r2.g), r.w, r2.w);
  })));
  out.push_back(run_check("reduce_W_to_U", samples, guard([&](int) {
    const auto w = red.act(red.random_element(s, true), red.random_u(s));
    const auto r = red.reduce_W_to_U(w);
    return red.in_U(r.u) && red.level(r.u) == Level::V1 && red.in_P(r.p) && red.act(r.p, r.u) == w;
  })));
  for (auto& c : out)
    if (kernel_failures) c.note = "KernelUnitSearchFailed occurrences: " + std::to_string(kernel_failures);
  return out;
}

template <class C>
CheckResult s3_check(const Reducible<C>& red, const io::FieldDesc& f, int samples, std::uint64_t seed) {
  using R = typename C::Base;
  std::mt19937_64 rng(seed);
  const auto s = make_sampler<R>(f, rng);
  return run_check("s3_structure", samples, [&](int i) {
    if (i == 0) {
      const auto th = red.theta(), et = red.eta(), id = red.identity();
      if (!(red.compose(th, red.compose(th, th)) == id) || !(red.compose(et, et) == id)) return false;
      if (!(red.compose(et, red.compose(th, et)) == red.compose(th, th))) return false;
      const auto all = red.s3();
      for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b)
          if (all[a] == all[b]) return false;
      // closed under composition
      for (const auto& a : all)
        for (const auto& b : all)
          if (!red.in_S3(red.compose(a, b))) return false;
    }
    const auto u = red.random_u(s);
    for (const auto& g : red.s3())
      if (!red.in_U(red.act(g, u))) return false;
    return true;
  });
}

template <class R, class Fn>
auto with_case(const io::FieldDesc& f, char which, std::uint64_t seed, Fn&& fn) {
  const R o = one_of<R>(f);
  switch (which) {
    case 'a': return fn(Reducible<CaseA<R>>(CaseA<R>{o}, seed));
    case 'b': return fn(Reducible<CaseB<R>>(CaseB<R>{quadratic_for<R>(f), o}, seed));
    case 'c': {
      if constexpr (std::is_same_v<R, Rational>) {
        return fn(Reducible<CaseC<R>>(CaseC<R>(make_quaternion_algebra(-o, -o)), seed));
      } else {
        return fn(Reducible<CaseC<R>>(CaseC<R>(make_quaternion_algebra(o, o)), seed));
      }
    }
  }
  throw Error(Errc::MalformedInput, "case must be a, b or c", "--case");
}

}  // namespace

std::vector<CheckResult> reducible_round_trips(const io::FieldDesc& f, char which, int samples, std::uint64_t seed) {
  return with_field(f, [&](auto tag) {
    using R = decltype(tag);
    return with_case<R>(f, which, seed, [&](const auto& red) { return round_trips(red, f, samples, seed); });
  });
}

CheckResult s3_structure(const io::FieldDesc& f, char which, int samples, std::uint64_t seed) {
  return with_field(f, [&](auto tag) {
    using R = decltype(tag);
    return with_case<R>(f, which, seed, [&](const auto& red) { return s3_check(red, f, samples, seed); });
  });
}

bool SuiteReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return !checks.empty();
}

SuiteReport run_suite(const std::string& suite, const io::FieldDesc& f, int samples, std::uint64_t seed) {
  if (samples <= 0) throw Error(Errc::MalformedInput, "samples must be positive", "--samples");
  if (suite != "identities" && suite != "representatives" && suite != "reducible" && suite != "all")
    throw Error(Errc::MalformedInput, "unknown suite '" + suite + "'", "--suite");
  SuiteReport rep{suite, f, seed, samples, {}};
  auto add = [&](std::string prefix, std::vector<CheckResult> cs) {
    for (auto& c : cs) {
      c.name = prefix + c.name;
      rep.checks.push_back(c);
    }
  };
  const bool all = suite == "all";
  if (all || suite == "identities") {
    for (const std::string b : {"split", "hamilton"})
      for (std::size_t n : {2u, 3u}) {
        const std::string prefix = b + "/n" + std::to_string(n) + "/";
        add(prefix, {pfaffian_axioms(f, b, n, samples, seed)});
        add(prefix, equivariance(f, b, n, samples, seed));
      }
  }
  if (all || suite == "representatives") {
    add("", with_field(f, [&](auto tag) { return representatives_suite<decltype(tag)>(f, samples, seed); }));
  }
  if (all || suite == "reducible") {
    for (char which : {'a', 'b', 'c'}) {
      const std::string prefix = std::string("case_") + which + "/";
      add(prefix, reducible_round_trips(f, which, samples, seed));
      add(prefix, {s3_structure(f, which, samples, seed)});
    }
  }
  return rep;
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json e{{"name", c.name}, {"samples", c.samples}, {"failures", c.failures}, {"passed", c.passed()}};
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(e);
  }
  return nlohmann::json{{"suite", r.suite},
                        {"field", io::to_json(r.field)},
                        {"seed", r.seed},
                        {"samples", r.samples},
                        {"checks", checks},
                        {"all_passed", r.all_passed()}};
}

}  // namespace qpv
