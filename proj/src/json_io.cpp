#include "qpv/json_io.hpp"

#include <sstream>

namespace qpv::io {

void malformed(const std::string& path, const std::string& msg) {
  throw Error(Errc::MalformedInput, msg, path.empty() ? "/" : path);
}

FieldDesc parse_field(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("base") || !j["base"].is_string()) malformed(path, "expected a field descriptor");
  const auto base = j["base"].get<std::string>();
  if (base == "Q") return {true, 0};
  if (base != "Fp") malformed(path + "/base", "unknown base '" + base + "'");
  if (!j.contains("p") || !j["p"].is_number_integer()) malformed(path + "/p", "missing prime");
  const auto p = j["p"].get<std::int64_t>();
  if (!is_odd_prime(p)) malformed(path + "/p", "p must be an odd prime");
  return {false, p};
}

FieldDesc parse_field_flag(const std::string& s) {
  if (s == "Q") return {true, 0};
  if (s.rfind("Fp:", 0) == 0) {
    std::int64_t p = 0;
    try {
      p = std::stoll(s.substr(3));
    } catch (const std::exception&) {
      malformed("--field", "bad prime in '" + s + "'");
    }
    if (!is_odd_prime(p)) malformed("--field", "p must be an odd prime");
    return {false, p};
  }
  malformed("--field", "expected Q or Fp:<p>, got '" + s + "'");
}

json to_json(const FieldDesc& f) {
  if (f.rational) return json{{"base", "Q"}};
  return json{{"base", "Fp"}, {"p", f.p}};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const Fp& x) { return x.canonical(); }

Rational rational_from(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) malformed(path, "expected a rational \"n/d\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    malformed(path, e.message());
  }
}

Fp fp_from(const json& j, std::int64_t p, const std::string& path) {
  if (!j.is_number_integer()) malformed(path, "expected an integer");
  return Fp(j.get<long>(), p);
}

json to_json(const CensusReport& r, bool orbit_sizes) {
  json orbits = json::array();
  for (const auto& o : r.orbits) {
    json e{{"type", o.type}, {"size", o.size}};
    if (orbit_sizes) {
      e["start"] = o.start;
      e["predicted_stabilizer"] = o.predicted_stabilizer;
      e["predicted_size"] = o.predicted_size;
      e["homogeneous"] = o.homogeneous;
    }
    orbits.push_back(e);
  }
  json out{{"q", r.q},
           {"n", r.n},
           {"v_size", r.v_size},
           {"vss_size", r.vss_size},
           {"type_counts", r.type_counts},
           {"orbit_count", r.orbits.size()},
           {"orbits", orbits},
           {"consistent", r.consistent()}};
  if (orbit_sizes) {
    out["group_order"] = r.group_order;
    out["generators"] = r.generators;
  }
  return out;
}

json to_json(const E7SampleReport& r) {
  return json{{"q", r.q}, {"n", 3}, {"samples", r.samples}, {"unstable", r.unstable}, {"type_counts", r.type_counts}};
}

json to_json(const ParamSetReport& r) {
  // F_p coordinates are integers, rationals stay "n/d".
  auto coords = [&](const std::vector<std::string>& v) {
    json out = json::array();
    for (const auto& s : v) {
      if (r.base == "Fp") {
        out.push_back(std::stoll(s));
      } else {
        out.push_back(s);
      }
    }
    return out;
  };
  json classes = json::array();
  for (const auto& c : r.classes) {
    json e{{"element", coords(c.element)}};
    if (!c.signs.empty()) e["signs"] = c.signs;
    classes.push_back(e);
  }
  json out{{"base", r.base},
           {"modulus", coords(r.modulus)},
           {"aut_order", r.aut_order},
           {"model", r.model},
           {"class_count", r.class_count},
           {"oracle_count", r.oracle_count},
           {"classes", classes}};
  if (r.base == "Fp") out["p"] = r.p;
  if (r.model == "sign_vector") out["signature"] = json::array({r.r1, r.r2});
  if (r.external_assumption) out["external_assumption"] = *r.external_assumption;
  return out;
}

}  // namespace qpv::io
