// Acceptance run: one PASS/FAIL line per criterion. All checks are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "qpv/census.hpp"
#include "qpv/norm_params.hpp"
#include "qpv/representatives.hpp"
#include "qpv/sampling.hpp"
#include "qpv/verify.hpp"

using namespace qpv;

namespace {

using E = Etale<Rational>;
using EF = Etale<Fp>;

constexpr double kPfaffianSeconds = 120.0;
constexpr double kCensusSeconds = 1800.0;
constexpr int kIdentitySamples = 1000;
constexpr int kFormulaSamples = 200;
constexpr int kRoundTrips = 100;

struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first;

  void add(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first.empty()) first = what;
    }
  }
  void add(const CheckResult& r, const std::string& what) {
    checks += r.samples;
    failures += r.failures;
    if (!r.passed() && first.empty()) first = what + "/" + r.name + (r.note.empty() ? "" : " (" + r.note + ")");
  }
  bool ok() const { return checks > 0 && failures == 0; }
};

int failed_criteria = 0;

void report(int n, const std::string& title, const Tally& t, double seconds, std::string extra = {}) {
  const bool ok = t.ok() && extra.empty();
  if (!ok) ++failed_criteria;
  std::ostringstream line;
  line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << title << " (" << t.checks << " checks, "
       << t.failures << " failures, " << seconds << " s)";
  if (!t.first.empty()) line << " first failure: " << t.first;
  if (!extra.empty()) line << " " << extra;
  std::cout << line.str() << std::endl;
}

template <class Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs fn, converting a thrown Error into a failure.
template <class Fn>
void guarded(Tally& t, const std::string& what, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    t.add(false, what + ": " + e.what());
  }
}

const std::vector<std::pair<io::FieldDesc, std::string>> kConfigs{
    {{false, 3}, "split"}, {{false, 5}, "split"}, {{false, 7}, "split"}, {{true, 0}, "split"}, {{true, 0}, "hamilton"}};

std::string config_name(const io::FieldDesc& f, const std::string& b, std::size_t n) {
  return (f.rational ? std::string("Q") : "F" + std::to_string(f.p)) + "/" + b + "/n" + std::to_string(n);
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
std::string type_of(const HermitianPair<R>& x) {
  return form_splitting_type(scalar_pair_form(x));
}

template <class R>
HermitianPair<R> negate(const HermitianPair<R>& x) {
  auto neg = [](const Quaternion<R>& q) { return -q; };
  return {x.x1.map(neg), x.x2.map(neg)};
}

AlgebraPtr<Fp> f9() { return etale_make<Fp>({Fp(1, 3), Fp(0, 3), Fp(1, 3)}); }
AlgebraPtr<Fp> f27() { return etale_make<Fp>({Fp(-1, 3), Fp(-1, 3), Fp(0, 3), Fp(1, 3)}); }
AlgebraPtr<Rational> galois_cubic() { return etale_make<Rational>({-1, -3, 0, 1}); }

const std::vector<std::vector<Rational>> kQuadratics{{-2, 0, 1}, {2, 0, 1}, {-5, 0, 1}, {3, 0, 1}};

// -- criteria -------------------------------------------------------------------

void criterion1() {
  Tally t;
  const double s = timed([&] {
    for (const auto& [f, b] : kConfigs)
      for (std::size_t n : {2u, 3u}) guarded(t, config_name(f, b, n), [&] {
          t.add(pfaffian_axioms(f, b, n, kIdentitySamples, 11), config_name(f, b, n));
        });
  });
  report(1, "Pfaffian axioms Pf(1)=1, Pf(x)^2 = N(x)", t, s,
         s < kPfaffianSeconds ? "" : "runtime exceeded " + std::to_string(kPfaffianSeconds) + " s");
}

void criterion2() {
  Tally t;
  const double s = timed([&] {
    for (const auto& [f, b] : kConfigs)
      for (std::size_t n : {2u, 3u}) guarded(t, config_name(f, b, n), [&] {
          for (const auto& r : equivariance(f, b, n, kIdentitySamples, 12)) t.add(r, config_name(f, b, n));
        });
  });
  report(2, "equivariance of Pf, F_x and P", t, s);
}

void criterion3() {
  Tally t;
  const double s = timed([&] {
    guarded(t, "F9", [&] {
      const auto [al, alc] = quadratic_roots(f9());
      const Fp a1(0, 3), a2(1, 3);
      t.add(act(d5_g_alpha<EF>(al, alc), lift_plain<EF>(d5_w<Fp>())) == lift_plain<EF>(d5_x_alpha<Fp>(a1, a2)),
            "D5 over F9");
      t.add(act(e7_g_alpha<EF>(al, alc), lift_plain<EF>(e7_w<Fp>())) == lift_plain<EF>(e7_x_alpha<Fp>(a1, a2)),
            "E7 alpha over F9");
    });
    for (const auto& mod : kQuadratics) guarded(t, "Q(sqrt d)", [&] {
        const auto F = etale_make<Rational>(mod);
        const auto [al, alc] = quadratic_roots(F);
        const Rational a1 = -mod[1], a2 = mod[0];
        t.add(act(d5_g_alpha<E>(al, alc), lift_plain<E>(d5_w<Rational>())) == lift_plain<E>(d5_x_alpha(a1, a2)),
              "D5 over Q(sqrt d)");
        t.add(act(e7_g_alpha<E>(al, alc), lift_plain<E>(e7_w<Rational>())) == lift_plain<E>(e7_x_alpha(a1, a2)),
              "E7 alpha over Q(sqrt d)");
      });
    guarded(t, "F27", [&] {
      const auto L = f27();
      const auto r = cubic_roots_in_field(L, 3);
      t.add(act(e7_g_beta<EF>(r), lift_plain<EF>(e7_w<Fp>())) ==
                lift_plain<EF>(e7_x_beta<Fp>(-L->modulus[2], L->modulus[1], -L->modulus[0])),
            "E7 beta over F27");
    });
    guarded(t, "t^3-3t-1", [&] {
      const auto L = galois_cubic();
      const auto r = cubic_roots_in_field(L);
      t.add(act(e7_g_beta<E>(r), lift_plain<E>(e7_w<Rational>())) ==
                lift_plain<E>(e7_x_beta<Rational>(-L->modulus[2], L->modulus[1], -L->modulus[0])),
            "E7 beta over Q[t]/(t^3-3t-1)");
    });
  });
  report(3, "transporter identities act(g, w) = x", t, s);
}

void criterion4() {
  Tally t;
  const double s = timed([&] {
    // tilde elements stabilize w
    t.add(act(d5_nu_tilde<Rational>(), d5_w<Rational>()) == d5_w<Rational>(), "D5 nu~ stabilizes w");
    for (const auto& g : {e7_nu_tilde<Rational>(), e7_tau_tilde<Rational>(), e7_mu_tilde<Rational>(),
                          e7_theta_tilde<Rational>()})
      t.add(act(g, e7_w<Rational>()) == e7_w<Rational>(), "E7 tilde stabilizes w");
    guarded(t, "alpha twists", [&] {
      const auto [al, alc] = quadratic_roots(f9());
      auto nu = [](const EF& m) { return quadratic_conjugate(m); };
      const auto gd = d5_g_alpha<EF>(al, alc);
      t.add(map_element(gd, nu) == compose(gd, lift_plain<EF>(d5_nu_tilde<Fp>())), "D5 nu over F9");
      const auto ge = e7_g_alpha<EF>(al, alc);
      t.add(map_element(ge, nu) == compose(ge, lift_plain<EF>(e7_nu_tilde<Fp>())), "E7 nu over F9");
      for (const auto& mod : kQuadratics) {
        const auto [a, ac] = quadratic_roots(etale_make<Rational>(mod));
        auto nq = [](const E& m) { return quadratic_conjugate(m); };
        const auto hd = d5_g_alpha<E>(a, ac);
        t.add(map_element(hd, nq) == compose(hd, lift_plain<E>(d5_nu_tilde<Rational>())), "D5 nu over Q");
        const auto he = e7_g_alpha<E>(a, ac);
        t.add(map_element(he, nq) == compose(he, lift_plain<E>(e7_nu_tilde<Rational>())), "E7 nu over Q");
      }
    });
    guarded(t, "theta over F27", [&] {
      const auto g = e7_g_beta<EF>(cubic_roots_in_field(f27(), 3));
      t.add(map_element(g, [](const EF& m) { return power(m, 3); }) == compose(g, lift_plain<EF>(e7_theta_tilde<Fp>())),
            "theta over F27");
    });
    guarded(t, "Galois cubic", [&] {
      const auto L = galois_cubic();
      const auto r = cubic_roots_in_field(L);
      const auto g = e7_g_beta<E>(r);
      t.add(map_element(g, [&](const E& m) { return substitute_generator(m, r[1]); }) ==
                compose(g, lift_plain<E>(e7_theta_tilde<Rational>())),
            "theta over t^3-3t-1");
    });
    using T = Etale<Etale<Rational>>;
    for (const auto& mod : {std::vector<Rational>{-1, -3, 0, 1}, {-2, 0, 0, 1}}) guarded(t, "tower", [&] {
        const auto L = etale_make<Rational>(mod);
        const CubicTower<Rational> tw(L);
        const auto g = e7_g_beta<T>(tw.roots);
        auto lt = [](const GroupElement<Rational>& h) { return lift_element(h, QuaternionAlgebraPtr<T>{}); };
        t.add(map_element(g, [&](const T& m) { return tw.tau(m); }) == compose(g, lt(e7_tau_tilde<Rational>())), "tau");
        t.add(map_element(g, [&](const T& m) { return tw.mu(m); }) == compose(g, lt(e7_mu_tilde<Rational>())), "mu");
        t.add(map_element(g, [&](const T& m) { return tw.theta(m); }) == compose(g, lt(e7_theta_tilde<Rational>())),
              "theta");
      });
  });
  report(4, "cocycle relations g^s = g s~ and s~ in G_w", t, s);
}

void criterion5() {
  Tally t;
  const double s = timed([&] {
    std::mt19937_64 rng(5);
    const Sampler<Rational> sq{&rng, 5};
    t.add(rep_split<Rational>(1, 1, 1) == e7_w<Rational>(), "rep_split(1,1,1) = w");
    const auto L = galois_cubic();
    const auto F = etale_make<Rational>({-2, 0, 1});
    t.add(rep_cubic(E(L, {1, 0, 0}), L) == negate(e7_x_beta<Rational>(-L->modulus[2], L->modulus[1], -L->modulus[0])),
          "rep_cubic(1) = -x_beta");
    const auto L2 = etale_make<Rational>({-2, 0, 0, 1});
    t.add(rep_cubic(E(L2, {1, 0, 0}), L2) == negate(e7_x_beta<Rational>(0, 0, 2)), "rep_cubic(1) = -x_beta, t^3-2");
    for (int i = 0; i < kFormulaSamples; ++i) guarded(t, "random reps", [&] {
        t.add(type_of(rep_split<Rational>(sq.unit(), sq.unit(), sq.unit())) == "(1,1,1)", "rep_split type");
        E lam(F, {sq(), sq(), 0});
        if (!is_zero(lam)) t.add(type_of(rep_mixed<Rational>(sq.unit(), lam, F)) == "(1,2)", "rep_mixed type");
        for (const auto& M : {L, L2}) {
          E del(M, {sq(), sq(), sq()});
          if (!is_zero(del)) t.add(type_of(rep_cubic(del, M)) == "(3)", "rep_cubic type");
        }
      });
    const auto L27 = f27();
    for (const auto& del : enumerate_elements(L27, 3))
      if (!is_zero(del)) t.add(type_of(rep_cubic(del, L27)) == "(3)", "rep_cubic over F27");
  });
  report(5, "representative classification", t, s);
}

void criterion6() {
  Tally t;
  const double s = timed([&] {
    std::mt19937_64 rng(6);
    const Sampler<Rational> sq{&rng, 7};
    int lambda_done = 0;
    while (lambda_done < kFormulaSamples) {
      const Rational c0 = sq(), c1 = sq();
      if (is_zero(c1 * c1 - Rational(4) * c0)) continue;
      const auto F = etale_make<Rational>({c0, c1, 1});
      if (modulus_reducible(F)) continue;
      const E lam(F, {sq(), sq(), 0});
      guarded(t, "lambda", [&] { t.add(lambda_by_conjugates(lam, F) == lambda_coefficients(lam, F), "Lambda"); });
      ++lambda_done;
    }
    const auto L = galois_cubic();
    const auto r = cubic_roots_in_field(L);
    for (int i = 0; i < kFormulaSamples; ++i) {
      const E del(L, {sq(), sq(), sq()});
      const std::array<E, 3> dc{del, substitute_generator(del, r[1]), substitute_generator(del, r[2])};
      guarded(t, "delta", [&] { t.add(delta_by_conjugates<Rational>(r, dc) == delta_coefficients(del, L), "Delta"); });
    }
    const auto L27 = f27();
    const auto r27 = cubic_roots_in_field(L27, 3);
    for (const auto& del : enumerate_elements(L27, 3)) {
      const std::array<EF, 3> dc{del, substitute_generator(del, r27[1]), substitute_generator(del, r27[2])};
      t.add(delta_by_conjugates<Fp>(r27, dc) == delta_coefficients(del, L27), "Delta over F27");
    }
    // Euler identities: Delta(1) = (0, 0, -1, -e1, -h2, -h3)
    for (const auto& mod : {std::vector<Rational>{-1, -3, 0, 1}, {-3, 2, -1, 1}, {-2, 0, 0, 1}}) {
      const auto M = etale_make<Rational>(mod);
      const Rational b1 = -mod[2], b2 = mod[1], b3 = -mod[0];
      t.add(delta_coefficients(E(M, {1, 0, 0}), M) ==
                std::array<Rational, 6>{0, 0, -1, -b1, -(b1 * b1 - b2), -(b1 * b1 * b1 - 2 * b1 * b2 + b3)},
            "Euler identities");
    }
  });
  report(6, "Lambda/Delta trace formulas equal conjugate formulas", t, s);
}

void criterion7() {
  Tally t;
  std::string extra;
  const double s = timed([&] {
    guarded(t, "census", [&] {
      const auto rep = enumerate_census(3, 2);
      t.add(rep.orbits.size() == 2, "two orbits");
      std::uint64_t sum = 0;
      for (const auto& o : rep.orbits) {
        sum += o.size;
        const std::uint64_t stab = o.type == "(1,1)" ? 2 * gl_order(2, 3) * gl_order(2, 3) : 2 * gl_order(2, 9);
        t.add(o.size * stab == gl_order(4, 3) * gl_order(2, 3), "orbit-stabilizer " + o.type);
        t.add(o.homogeneous, "homogeneous orbit");
      }
      t.add(sum == rep.vss_size, "orbit sizes sum to |V^ss|");
      t.add(rep.consistent(), "census self-consistency");
    });
  });
  if (s >= kCensusSeconds) extra = "runtime exceeded";
  report(7, "D5 census at q = 3", t, s, extra);
}

void criterion8() {
  Tally t;
  const double s = timed([&] {
    const std::vector<std::pair<std::int64_t, std::vector<std::vector<long>>>> finite{
        {3, {{-1, -1, 0, 1}, {0, 1, 0, 1}, {0, -1, 0, 1}}},
        {5, {{1, 1, 0, 1}, {0, -2, 0, 1}, {0, -1, 0, 1}}}};
    for (const auto& [q, mods] : finite)
      for (const auto& m : mods) guarded(t, "finite", [&] {
          std::vector<Fp> c;
          for (long v : m) c.push_back(Fp(v, q));
          const auto r = param_set_finite(etale_make<Fp>(c), q);
          t.add(r.class_count == 1 && r.oracle_count == 1, "F_" + std::to_string(q) + " one class");
        });
    const std::vector<std::pair<std::vector<Rational>, int>> definite{
        {{-1, -3, 0, 1}, 2}, {{-1, -4, 0, 1}, 4}, {{-2, 0, 0, 1}, 1}};
    for (const auto& [m, want] : definite) guarded(t, "definite", [&] {
        const auto r = param_set_definite(etale_make<Rational>(m), Rational(-1), Rational(-1));
        t.add(r.class_count == want, "definite class count");
        t.add(r.oracle_count == r.class_count, "sign-vector oracle agrees");
      });
  });
  report(8, "parameter sets", t, s);
}

void criterion9() {
  Tally t;
  const double s = timed([&] {
    const std::vector<std::pair<char, std::int64_t>> runs{{'a', 3}, {'a', 5}, {'b', 3}, {'c', 3}};
    for (const auto& [which, p] : runs) guarded(t, std::string(1, which), [&] {
        for (const auto& r : reducible_round_trips({false, p}, which, kRoundTrips, 9))
          t.add(r, std::string("case ") + which + " F" + std::to_string(p));
      });
  });
  report(9, "reducible round trips", t, s);
}

void criterion10() {
  Tally t;
  const double s = timed([&] {
    for (char which : {'a', 'b', 'c'})
      for (const io::FieldDesc& f : {io::FieldDesc{false, 3}, io::FieldDesc{false, 5}, io::FieldDesc{true, 0}})
        guarded(t, std::string(1, which), [&] { t.add(s3_structure(f, which, 20, 10), std::string("case ") + which); });
  });
  report(10, "S3 relations and U invariance", t, s);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9, criterion10};
  for (const auto& c : all) c();
  std::cout << (failed_criteria == 0 ? "all criteria passed" : std::to_string(failed_criteria) + " criteria failed")
            << std::endl;
  return failed_criteria == 0 ? 0 : 1;
}
