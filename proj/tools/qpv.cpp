// qpv: command-line front end.
//
//   qpv classify [--input f.json] [--field Q|Fp:p] [--B a,b]
//   qpv rep --type split|mixed|cubic --params <json> [--field ...]
//   qpv verify --suite identities|representatives|reducible|all [--field ...] [--samples N] [--seed S]
//   qpv census --q 3 --n 2 [--emit-orbit-sizes] [--threads T] [--limits <json>]
//   qpv params --L c0,c1,c2,1 [--B -1,-1] [--field ...]
//   qpv reduce --case a|b|c --target W|U [--input f.json] [--seed S] [--budget N]
//
// Exit status: 0 success, 1 malformed input, 2 mathematical rejection.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qpv/census.hpp"
#include "qpv/json_io.hpp"
#include "qpv/norm_params.hpp"
#include "qpv/reducible.hpp"
#include "qpv/representatives.hpp"
#include "qpv/verify.hpp"

using namespace qpv;
using io::json;

namespace {

json read_json(const std::string& src) {
  std::string text;
  if (src == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(src);
    if (!in) throw Error(Errc::MalformedInput, "cannot open '" + src + "'", "--input");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedInput, e.what(), "/");
  }
}

/// Inline JSON, or @file.
json inline_json(const std::string& s, const std::string& flag) {
  if (!s.empty() && s[0] == '@') return read_json(s.substr(1));
  try {
    return json::parse(s);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedInput, e.what(), flag);
  }
}

io::FieldDesc field_of(const std::string& flag, const json& j) {
  if (!flag.empty()) return io::parse_field_flag(flag);
  if (j.is_object() && j.contains("field")) return io::parse_field(j["field"]);
  return {true, 0};
}

template <class Fn>
auto dispatch(const io::FieldDesc& f, Fn&& fn) {
  if (f.rational) return fn(Rational(1));
  return fn(Fp(1, f.p));
}

template <class R>
R unit_of(const io::FieldDesc& f) {
  if constexpr (std::is_same_v<R, Rational>) {
    (void)f;
    return Rational(1);
  } else {
    return Fp(1, f.p);
  }
}

template <class R>
QuaternionAlgebraPtr<R> algebra_of(const std::string& flag, const json& j, const io::FieldDesc& f) {
  if (!flag.empty()) {
    const auto parts = io::split_list(flag);
    if (parts.size() != 2) throw Error(Errc::MalformedInput, "expected a,b", "--B");
    return make_quaternion_algebra(io::scalar_from_text<R>(parts[0], f, "--B/a"),
                                   io::scalar_from_text<R>(parts[1], f, "--B/b"));
  }
  if (j.is_object() && j.contains("algebra")) return io::algebra_from<R>(j["algebra"], f, "/algebra");
  const R o = unit_of<R>(f);
  return make_quaternion_algebra(-o, -o);
}

template <class R>
std::vector<R> poly_flag(const std::string& s, const io::FieldDesc& f, const std::string& flag) {
  std::vector<R> out;
  const auto parts = io::split_list(s);
  for (std::size_t i = 0; i < parts.size(); ++i)
    out.push_back(io::scalar_from_text<R>(parts[i], f, flag + "/" + std::to_string(i)));
  return out;
}

// -- classify -----------------------------------------------------------------

json cmd_classify(const std::string& input, const std::string& field, const std::string& b) {
  const json j = read_json(input);
  const auto f = field_of(field, j);
  return dispatch(f, [&](auto tag) {
    using R = decltype(tag);
    const auto alg = algebra_of<R>(b, j, f);
    const auto x = io::pair_from<R>(j, f, alg);
    const SplitEmbedding<R> emb(alg);
    const auto F = form_of_pair(emb, x);
    const R P = discriminant(F);
    json out{{"field", io::to_json(f)},
             {"algebra", io::to_json(alg)},
             {"n", x.x1.rows()},
             {"F", io::to_json(F)},
             {"P", io::to_json(P)},
             {"semistable", !is_zero(P)}};
    out["splitting_type"] = is_zero(P) ? json(nullptr) : json(form_splitting_type(F));
    return out;
  });
}

// -- rep ----------------------------------------------------------------------

json cmd_rep(const std::string& type, const std::string& params, const std::string& field) {
  const json pj = inline_json(params, "--params");
  if (!pj.is_object()) throw Error(Errc::MalformedInput, "params must be an object", "--params");
  const auto f = field_of(field, pj);
  return dispatch(f, [&](auto tag) {
    using R = decltype(tag);
    using E = Etale<R>;
    auto need = [&](const char* key) -> const json& {
      if (!pj.contains(key)) throw Error(Errc::MalformedInput, std::string("missing ") + key, std::string("/") + key);
      return pj[key];
    };
    HermitianPair<R> x;
    if (type == "split") {
      const auto p = io::scalars_from<R>(need("p"), f, "/p");
      if (p.size() != 3) throw Error(Errc::MalformedInput, "p needs three entries", "/p");
      x = rep_split<R>(p[0], p[1], p[2]);
    } else if (type == "mixed") {
      const R p = io::scalar_from<R>(need("p"), f, "/p");
      const auto mod = io::scalars_from<R>(need("F"), f, "/F");
      if (mod.size() != 3) throw Error(Errc::MalformedInput, "F must be a monic quadratic", "/F");
      const auto F = etale_make<R>(mod);
      const auto lam = io::scalars_from<R>(need("lambda"), f, "/lambda");
      if (lam.size() != 2) throw Error(Errc::MalformedInput, "lambda needs two coordinates", "/lambda");
      x = rep_mixed<R>(p, E(F, {lam[0], lam[1], lam[0] - lam[0]}), F);
    } else if (type == "cubic") {
      const auto mod = io::scalars_from<R>(need("L"), f, "/L");
      if (mod.size() != 4) throw Error(Errc::MalformedInput, "L must be a monic cubic", "/L");
      const auto L = etale_make<R>(mod);
      const auto d = io::scalars_from<R>(need("delta"), f, "/delta");
      if (d.size() != 3) throw Error(Errc::MalformedInput, "delta needs three coordinates", "/delta");
      x = rep_cubic(E(L, {d[0], d[1], d[2]}), L);
    } else {
      throw Error(Errc::MalformedInput, "type must be split, mixed or cubic", "--type");
    }
    json out = io::to_json(x);
    out["field"] = io::to_json(f);
    out["type"] = type;
    out["splitting_type"] = form_splitting_type(scalar_pair_form(x));
    return out;
  });
}

// -- census ---------------------------------------------------------------------

json cmd_census(std::int64_t q, int n, bool orbit_sizes, unsigned threads, std::uint64_t samples, std::uint64_t seed,
                const std::string& limits) {
  std::optional<std::uint64_t> max_points, max_samples;
  if (!limits.empty()) {
    const json l = inline_json(limits, "--limits");
    if (!l.is_object()) throw Error(Errc::MalformedInput, "limits must be an object", "--limits");
    for (const auto& [k, v] : l.items()) {
      if (!v.is_number_integer() || v.get<long long>() <= 0)
        throw Error(Errc::MalformedInput, "limits must be positive integers", "--limits/" + k);
      if (k == "max_points") {
        max_points = v.get<std::uint64_t>();
      } else if (k == "max_samples") {
        max_samples = v.get<std::uint64_t>();
      } else {
        throw Error(Errc::MalformedInput, "unknown limit '" + k + "'", "--limits/" + k);
      }
    }
  }
  if (!is_odd_prime(q)) throw Error(Errc::MalformedInput, "q must be an odd prime", "--q");
  if (n == 2) {
    std::uint64_t points = 1;
    for (int i = 0; i < 12; ++i) points *= static_cast<std::uint64_t>(q);
    if (max_points && points > *max_points) throw Error(Errc::ResourceLimit, "|V(F_q)| exceeds max_points");
    auto out = io::to_json(enumerate_census(q, 2, threads), orbit_sizes);
    return out;
  }
  if (n == 3) {
    if (max_samples && samples > *max_samples) throw Error(Errc::ResourceLimit, "samples exceed max_samples");
    auto out = io::to_json(sample_census_e7(q, samples, seed));
    out["seed"] = seed;
    return out;
  }
  throw Error(Errc::MalformedInput, "n must be 2 or 3", "--n");
}

// -- params ---------------------------------------------------------------------

json cmd_params(const std::string& lpoly, const std::string& b, const std::string& field) {
  const auto f = field_of(field, json());
  if (f.rational) {
    const auto mod = poly_flag<Rational>(lpoly, f, "--L");
    if (mod.size() != 4) throw Error(Errc::MalformedInput, "L must be a monic cubic c0,c1,c2,1", "--L");
    const auto parts = io::split_list(b.empty() ? "-1,-1" : b);
    if (parts.size() != 2) throw Error(Errc::MalformedInput, "expected a,b", "--B");
    const Rational a = io::scalar_from_text<Rational>(parts[0], f, "--B/a");
    const Rational bb = io::scalar_from_text<Rational>(parts[1], f, "--B/b");
    auto out = io::to_json(param_set_definite(etale_make<Rational>(mod), a, bb));
    out["algebra"] = json{{"a", io::to_json(a)}, {"b", io::to_json(bb)}};
    return out;
  }
  const auto mod = poly_flag<Fp>(lpoly, f, "--L");
  if (mod.size() != 4) throw Error(Errc::MalformedInput, "L must be a monic cubic c0,c1,c2,1", "--L");
  return io::to_json(param_set_finite(etale_make<Fp>(mod), f.p));
}

// -- reduce ---------------------------------------------------------------------

template <class C>
json element_json(const C& c, const CaseElement<typename C::T, typename C::Base>& g) {
  json out{{"g2", io::to_json(g.g2)}};
  if constexpr (C::two_sided) {
    out["g11"] = io::case_matrix_json(c, g.gl);
    out["g12"] = io::case_matrix_json(c, g.gr);
  } else {
    out["g1"] = io::case_matrix_json(c, g.gl);
  }
  return out;
}

template <class C>
json pair_json(const C& c, const CasePair<typename C::T>& x, const json& header) {
  json out = header;
  out["x1"] = io::case_matrix_json(c, x.x1);
  out["x2"] = io::case_matrix_json(c, x.x2);
  return out;
}

template <class C>
json run_reduce(const C& c, const json& j, const io::FieldDesc& f, const json& header, const std::string& target,
                std::uint64_t seed, int budget) {
  const Reducible<C> red(c, seed, budget);
  auto entry = [&](const json& e, const std::string& p) { return io::case_entry_from(c, e, f, p); };
  for (const char* key : {"x1", "x2"})
    if (!j.contains(key)) throw Error(Errc::MalformedInput, "missing component", std::string("/") + key);
  const CasePair<typename C::T> x{io::matrix_from<typename C::T>(j["x1"], 3, "/x1", entry),
                                  io::matrix_from<typename C::T>(j["x2"], 3, "/x2", entry)};
  if (!c.in_y(x.x1)) throw Error(Errc::MalformedInput, "matrix is not in Y", "/x1");
  if (!c.in_y(x.x2)) throw Error(Errc::MalformedInput, "matrix is not in Y", "/x2");
  json out{{"target", target}, {"seed", seed}, {"budget", budget}};
  if (target == "W") {
    const auto r = red.reduce_to_W(x);
    out["g"] = element_json(c, r.g);
    out["w_or_u"] = pair_json(c, r.w, header);
    out["eta_applied"] = false;
    out["attempts"] = r.attempts;
  } else {
    const auto r = red.reduce_W_to_U(x);
    out["g"] = element_json(c, r.p);
    out["w_or_u"] = pair_json(c, r.u, header);
    out["eta_applied"] = r.eta_applied;
    out["attempts"] = r.attempts;
  }
  out["case"] = header["case"];
  out["field"] = header["field"];
  return out;
}

json cmd_reduce(const std::string& which, const std::string& target, const std::string& input, std::uint64_t seed,
                int budget) {
  if (which != "a" && which != "b" && which != "c") throw Error(Errc::MalformedInput, "case must be a, b or c", "--case");
  if (target != "W" && target != "U") throw Error(Errc::MalformedInput, "target must be W or U", "--target");
  if (budget <= 0) throw Error(Errc::MalformedInput, "budget must be positive", "--budget");
  const json j = read_json(input);
  if (!j.is_object()) throw Error(Errc::MalformedInput, "expected a case pair object", "/");
  if (j.contains("case") && j["case"] != which) throw Error(Errc::MalformedInput, "case tag disagrees with --case", "/case");
  const auto f = field_of("", j);
  json header{{"case", which}, {"field", io::to_json(f)}};
  return dispatch(f, [&](auto tag) {
    using R = decltype(tag);
    const R o = unit_of<R>(f);
    if (which == "a") return run_reduce(CaseA<R>{o}, j, f, header, target, seed, budget);
    if (which == "b") {
      if (!j.contains("F")) throw Error(Errc::MalformedInput, "case b needs the quadratic modulus F", "/F");
      const auto mod = io::scalars_from<R>(j["F"], f, "/F");
      if (mod.size() != 3) throw Error(Errc::MalformedInput, "F must be a monic quadratic", "/F");
      const auto F = etale_make<R>(mod);
      bool reducible = false;
      if constexpr (std::is_same_v<R, Rational>) {
        reducible = modulus_reducible(F);
      } else {
        reducible = modulus_reducible(F, f.p);
      }
      if (reducible) throw Error(Errc::ReducibleModulus, "F must be a field", "/F");
      header["F"] = j["F"];
      return run_reduce(CaseB<R>{F, o}, j, f, header, target, seed, budget);
    }
    if (!j.contains("B")) throw Error(Errc::MalformedInput, "case c needs the quaternion algebra B", "/B");
    const auto alg = io::algebra_from<R>(j["B"], f, "/B");
    header["B"] = io::to_json(alg);
    return run_reduce(CaseC<R>(alg), j, f, header, target, seed, budget);
  });
}

json error_json(const Error& e) {
  return json{{"error", {{"code", errc_name(e.code())}, {"message", e.message()}, {"offending_path", e.offending_path()}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with pairs of quaternionic Hermitian forms"};
  app.require_subcommand(1);

  std::string input = "-", field, b, type, params, suite = "identities", lpoly, which, target, limits;
  int samples = 100, n = 2, budget = 256;
  std::int64_t q = 3;
  std::uint64_t seed = 1, census_samples = 20000;
  unsigned threads = 0;
  bool orbit_sizes = false;

  auto* classify = app.add_subcommand("classify", "form, invariant and splitting type of a pair");
  classify->add_option("--input", input, "pair JSON file, - for stdin");
  classify->add_option("--field", field, "Q or Fp:p (default: from input, else Q)");
  classify->add_option("--B", b, "quaternion algebra a,b (default: from input, else -1,-1)");

  auto* rep = app.add_subcommand("rep", "orbit representatives");
  rep->add_option("--type", type, "split, mixed or cubic")->required();
  rep->add_option("--params", params, "parameters as JSON or @file")->required();
  rep->add_option("--field", field, "Q or Fp:p");

  auto* verify = app.add_subcommand("verify", "run identity suites");
  verify->add_option("--suite", suite, "identities, representatives, reducible or all");
  verify->add_option("--field", field, "Q or Fp:p");
  verify->add_option("--samples", samples, "random samples per check");
  verify->add_option("--seed", seed, "random seed");

  auto* census = app.add_subcommand("census", "finite field orbit census");
  census->add_option("--q", q, "odd prime")->required();
  census->add_option("--n", n, "2 (exhaustive) or 3 (sampled)");
  census->add_flag("--emit-orbit-sizes", orbit_sizes, "include the full orbit ledger");
  census->add_option("--threads", threads, "worker threads (0: hardware)");
  census->add_option("--samples", census_samples, "samples for n = 3");
  census->add_option("--seed", seed, "random seed for n = 3");
  census->add_option("--limits", limits, "JSON {\"max_points\":N,\"max_samples\":N}");

  auto* prm = app.add_subcommand("params", "parameter sets for the cubic representatives");
  prm->add_option("--L", lpoly, "cubic modulus c0,c1,c2,1")->required();
  prm->add_option("--B", b, "quaternion algebra a,b over Q (default -1,-1)");
  prm->add_option("--field", field, "Q or Fp:p");

  auto* reduce = app.add_subcommand("reduce", "reducible-locus reductions");
  reduce->add_option("--case", which, "a, b or c")->required();
  reduce->add_option("--target", target, "W or U")->required();
  reduce->add_option("--input", input, "case pair JSON file, - for stdin");
  reduce->add_option("--seed", seed, "seed for kernel search");
  reduce->add_option("--budget", budget, "random kernel combinations tried");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", {{"code", "MalformedInput"}, {"message", e.what()}, {"offending_path", "argv"}}}}.dump(2)
              << "\n";
    return 1;
  }

  try {
    json out;
    if (*classify) {
      out = cmd_classify(input, field, b);
    } else if (*rep) {
      out = cmd_rep(type, params, field);
    } else if (*verify) {
      const auto r = run_suite(suite, field.empty() ? io::FieldDesc{true, 0} : io::parse_field_flag(field), samples, seed);
      std::cout << to_json(r).dump(2) << "\n";
      return r.all_passed() ? 0 : 2;
    } else if (*census) {
      out = cmd_census(q, n, orbit_sizes, threads, census_samples, seed, limits);
    } else if (*prm) {
      out = cmd_params(lpoly, b, field);
    } else {
      out = cmd_reduce(which, target, input, seed, budget);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    std::cout << error_json(e).dump(2) << "\n";
    return is_input_error(e.code()) ? 1 : 2;
  } catch (const json::exception& e) {
    std::cout << json{{"error", {{"code", "MalformedInput"}, {"message", e.what()}, {"offending_path", "/"}}}}.dump(2)
              << "\n";
    return 1;
  }
}
