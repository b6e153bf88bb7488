#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "qpv/census.hpp"
#include "qpv/hermitian.hpp"
#include "qpv/norm_params.hpp"
#include "qpv/reducible.hpp"

namespace qpv::io {

using json = nlohmann::json;

/// Base field: Q or F_p.
struct FieldDesc {
  bool rational = true;
  std::int64_t p = 0;

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

[[noreturn]] void malformed(const std::string& path, const std::string& msg);

/// {"base":"Q"} | {"base":"Fp","p":5}
FieldDesc parse_field(const json& j, const std::string& path = "/field");
/// "Q" | "Fp:5"
FieldDesc parse_field_flag(const std::string& s);
json to_json(const FieldDesc& f);

/// Comma separated scalars, e.g. "-1,-1".
std::vector<std::string> split_list(const std::string& s);

json to_json(const Rational& r);
json to_json(const Fp& x);

Rational rational_from(const json& j, const std::string& path);
Fp fp_from(const json& j, std::int64_t p, const std::string& path);

template <class R>
R scalar_from(const json& j, const FieldDesc& f, const std::string& path) {
  if constexpr (std::is_same_v<R, Rational>) {
    if (!f.rational) malformed(path, "field mismatch");
    return rational_from(j, path);
  } else {
    if (f.rational) malformed(path, "field mismatch");
    return fp_from(j, f.p, path);
  }
}

template <class R>
R scalar_from_text(const std::string& s, const FieldDesc& f, const std::string& path) {
  json j;
  if constexpr (std::is_same_v<R, Rational>) {
    j = s;
  } else {
    try {
      j = std::stoll(s);
    } catch (const std::exception&) {
      malformed(path, "expected an integer, got '" + s + "'");
    }
  }
  return scalar_from<R>(j, f, path);
}

template <class R>
std::vector<R> scalars_from(const json& j, const FieldDesc& f, const std::string& path) {
  if (!j.is_array()) malformed(path, "expected an array of scalars");
  std::vector<R> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_from<R>(j[i], f, path + "/" + std::to_string(i)));
  return out;
}

template <class R>
json to_json(const std::vector<R>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

template <class R>
json to_json(const Etale<R>& x, int degree) {
  json out = json::array();
  for (int i = 0; i < degree; ++i) out.push_back(to_json(x[static_cast<std::size_t>(i)]));
  return out;
}

template <class R>
json to_json(const Quaternion<R>& q) {
  return json::array({to_json(q.s()), to_json(q.x()), to_json(q.y()), to_json(q.z())});
}

template <class T, class F>
json matrix_json(const Matrix<T>& m, F&& entry) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry(m(i, j)));
    out.push_back(row);
  }
  return out;
}

template <class T>
json to_json(const Matrix<T>& m) {
  return matrix_json(m, [](const T& x) { return to_json(x); });
}

/// Square matrix of the given size; `entry(json, path)` parses one entry.
template <class T, class F>
Matrix<T> matrix_from(const json& j, std::size_t n, const std::string& path, F&& entry) {
  if (!j.is_array() || j.size() != n) malformed(path, "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<T>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != n) malformed(rp, "expected " + std::to_string(n) + " entries");
    std::vector<T> row;
    for (std::size_t k = 0; k < n; ++k) row.push_back(entry(j[i][k], rp + "/" + std::to_string(k)));
    rows.push_back(row);
  }
  Matrix<T> m(n, n, rows[0][0]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k];
  return m;
}

template <class R>
Quaternion<R> quaternion_from(const json& j, const FieldDesc& f, const QuaternionAlgebraPtr<R>& alg,
                              const std::string& path) {
  if (j.is_array() && j.size() == 4) {
    const auto c = scalars_from<R>(j, f, path);
    return Quaternion<R>(alg, c[0], c[1], c[2], c[3]);
  }
  if (j.is_string() || j.is_number()) {
    const R s = scalar_from<R>(j, f, path);
    return Quaternion<R>(alg, s, s - s, s - s, s - s);
  }
  malformed(path, "expected a quaternion [s,x,y,z]");
}

/// {"a":..,"b":..}
template <class R>
QuaternionAlgebraPtr<R> algebra_from(const json& j, const FieldDesc& f, const std::string& path) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) malformed(path, "expected {\"a\":..,\"b\":..}");
  return make_quaternion_algebra(scalar_from<R>(j["a"], f, path + "/a"), scalar_from<R>(j["b"], f, path + "/b"));
}

template <class R>
json to_json(const QuaternionAlgebraPtr<R>& alg) {
  return json{{"a", to_json(alg->a)}, {"b", to_json(alg->b)}};
}

template <class R>
json to_json(const HermitianPair<R>& x) {
  return json{{"n", x.x1.rows()}, {"x1", to_json(x.x1)}, {"x2", to_json(x.x2)}};
}

template <class R>
HermitianPair<R> pair_from(const json& j, const FieldDesc& f, const QuaternionAlgebraPtr<R>& alg,
                           const std::string& path = "") {
  if (!j.is_object()) malformed(path.empty() ? "/" : path, "expected a pair object");
  if (!j.contains("n") || !j["n"].is_number_integer()) malformed(path + "/n", "missing n");
  const int n = j["n"].get<int>();
  if (n != 2 && n != 3) malformed(path + "/n", "n must be 2 or 3");
  auto q = [&](const json& e, const std::string& p) { return quaternion_from<R>(e, f, alg, p); };
  for (const char* key : {"x1", "x2"})
    if (!j.contains(key)) malformed(path + "/" + key, "missing component");
  HermitianPair<R> x{matrix_from<Quaternion<R>>(j["x1"], static_cast<std::size_t>(n), path + "/x1", q),
                     matrix_from<Quaternion<R>>(j["x2"], static_cast<std::size_t>(n), path + "/x2", q)};
  if (!is_hermitian(x.x1)) malformed(path + "/x1", "matrix is not Hermitian");
  if (!is_hermitian(x.x2)) malformed(path + "/x2", "matrix is not Hermitian");
  return x;
}

template <class R>
json to_json(const BinaryForm<R>& f) {
  return to_json(f.c);
}

json to_json(const CensusReport& r, bool orbit_sizes);
json to_json(const E7SampleReport& r);
json to_json(const ParamSetReport& r);

// -- reducible case pairs ----------------------------------------------------

template <class C>
json case_entry_json(const C& c, const typename C::T& t) {
  if constexpr (C::tag == 'a') {
    (void)c;
    return to_json(t);
  } else if constexpr (C::tag == 'b') {
    (void)c;
    return to_json(t, 2);
  } else {
    (void)c;
    return to_json(t);
  }
}

template <class C>
json case_matrix_json(const C& c, const Matrix<typename C::T>& m) {
  return matrix_json(m, [&](const typename C::T& t) { return case_entry_json(c, t); });
}

template <class C>
typename C::T case_entry_from(const C& c, const json& j, const FieldDesc& f, const std::string& path) {
  using R = typename C::Base;
  if constexpr (C::tag == 'a') {
    (void)c;
    return scalar_from<R>(j, f, path);
  } else if constexpr (C::tag == 'b') {
    if (j.is_array() && j.size() == 2) {
      const auto v = scalars_from<R>(j, f, path);
      return c.from_coords(v);
    }
    return c.embed(scalar_from<R>(j, f, path));
  } else {
    return quaternion_from<R>(j, f, c.emb.algebra(), path);
  }
}

}  // namespace qpv::io
