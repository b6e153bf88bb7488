#include "qpv/reducible.hpp"

#include <cstdint>

namespace qpv {

namespace {

using IMat = std::vector<std::vector<std::int64_t>>;

std::int64_t md(std::int64_t a, std::int64_t q) { return ((a % q) + q) % q; }

std::int64_t inv_mod(std::int64_t a, std::int64_t q) {
  std::int64_t r = 1, b = md(a, q), e = q - 2;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r;
}

IMat to_int(const Matrix<Fp>& m, std::int64_t q) {
  IMat out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).canonical(q);
  return out;
}

Matrix<Fp> to_fp(const IMat& m, std::int64_t q) {
  Matrix<Fp> out(m.size(), m[0].size(), Fp(0, q));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) out(i, j) = Fp(m[i][j], q);
  return out;
}

IMat mul(const IMat& a, const IMat& b, std::int64_t q) {
  IMat c(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % q;
  return c;
}

std::int64_t det3(const IMat& m, std::int64_t q) {
  const std::int64_t d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return md(d, q);
}

/// All Z (3x3) with A Z = B, A 6x3, B 6x3.
std::vector<IMat> solve_all(IMat a, IMat b, std::int64_t q) {
  const std::size_t rows = a.size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < 3 && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const std::int64_t iv = inv_mod(a[r][c], q);
    for (auto& v : a[r]) v = v * iv % q;
    for (auto& v : b[r]) v = v * iv % q;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::int64_t f = a[i][c];
      for (std::size_t j = 0; j < 3; ++j) a[i][j] = md(a[i][j] - f * a[r][j], q);
      for (std::size_t j = 0; j < 3; ++j) b[i][j] = md(b[i][j] - f * b[r][j], q);
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (b[i][j] != 0) return {};
  std::vector<int> free_cols;
  for (int c = 0; c < 3; ++c)
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) free_cols.push_back(c);
  std::int64_t combos = 1;
  for (std::size_t i = 0; i < free_cols.size() * 3; ++i) combos *= q;
  std::vector<IMat> out;
  for (std::int64_t t = 0; t < combos; ++t) {
    IMat z(3, std::vector<std::int64_t>(3, 0));
    std::int64_t code = t;
    for (int fc : free_cols)
      for (std::size_t j = 0; j < 3; ++j) {
        z[static_cast<std::size_t>(fc)][j] = code % q;
        code /= q;
      }
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      const auto pc = static_cast<std::size_t>(pivot_col[i]);
      for (std::size_t j = 0; j < 3; ++j) {
        std::int64_t v = b[i][j];
        for (int fc : free_cols) v -= a[i][static_cast<std::size_t>(fc)] * z[static_cast<std::size_t>(fc)][j];
        z[pc][j] = md(v, q);
      }
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace

std::vector<CaseElement<Fp, Fp>> case_a_transporters(const CasePair<Fp>& u, const CasePair<Fp>& u2, std::int64_t q) {
  if (!is_odd_prime(q) || q > 3) throw Error(Errc::ResourceLimit, "exhaustive transporter search is limited to q = 3");
  const IMat x1 = to_int(u.x1, q), x2 = to_int(u.x2, q);
  IMat t1 = to_int(u2.x1, q), t2 = to_int(u2.x2, q);
  IMat rhs = t1;
  rhs.insert(rhs.end(), t2.begin(), t2.end());

  std::vector<IMat> gl3;
  const std::int64_t n9 = q * q * q * q * q * q * q * q * q;
  for (std::int64_t code = 0; code < n9; ++code) {
    IMat m(3, std::vector<std::int64_t>(3));
    std::int64_t c = code;
    for (auto& row : m)
      for (auto& v : row) {
        v = c % q;
        c /= q;
      }
    if (det3(m, q) != 0) gl3.push_back(m);
  }
  std::vector<std::array<std::int64_t, 4>> gl2;
  for (std::int64_t code = 0; code < q * q * q * q; ++code) {
    std::array<std::int64_t, 4> g{code % q, (code / q) % q, (code / (q * q)) % q, code / (q * q * q)};
    if (md(g[0] * g[3] - g[1] * g[2], q) != 0) gl2.push_back(g);
  }

  std::vector<CaseElement<Fp, Fp>> out;
  for (const auto& g2 : gl2) {
    IMat y1(3, std::vector<std::int64_t>(3)), y2 = y1;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        y1[i][j] = (g2[0] * x1[i][j] + g2[1] * x2[i][j]) % q;
        y2[i][j] = (g2[2] * x1[i][j] + g2[3] * x2[i][j]) % q;
      }
    for (const auto& g11 : gl3) {
      IMat a = mul(g11, y1, q);
      const IMat a2 = mul(g11, y2, q);
      a.insert(a.end(), a2.begin(), a2.end());
      for (const auto& z : solve_all(a, rhs, q)) {
        if (det3(z, q) == 0) continue;
        IMat g12(3, std::vector<std::int64_t>(3));
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) g12[i][j] = z[j][i];
        IMat m2{{g2[0], g2[1]}, {g2[2], g2[3]}};
        out.push_back({to_fp(g11, q), to_fp(g12, q), to_fp(m2, q)});
      }
    }
  }
  return out;
}

}  // namespace qpv
