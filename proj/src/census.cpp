#include "qpv/census.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <thread>

#include "qpv/representatives.hpp"

namespace qpv {

namespace {

constexpr int kDim = 12;

std::int64_t md(std::int64_t v, std::int64_t q) {
  v %= q;
  return v < 0 ? v + q : v;
}

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
  return 1;  // q = 2 unreachable
}

/// Quaternion with a = b = 1 from the 2x2 matrix it maps to.
Quaternion<Fp> from_matrix(const QuaternionAlgebraPtr<Fp>& alg, std::int64_t m00, std::int64_t m01, std::int64_t m10,
                           std::int64_t m11, std::int64_t q) {
  const Fp h = inverse(Fp(2, q));
  return Quaternion<Fp>(alg, Fp(m00 + m11, q) * h, Fp(m00 - m11, q) * h, Fp(m01 + m10, q) * h,
                        Fp(m01 - m10, q) * h);
}

bool is_square_mod(std::int64_t v, std::int64_t q) {
  for (std::int64_t r = 0; r < q; ++r)
    if (r * r % q == v) return true;
  return false;
}


using Linear = std::vector<std::int64_t>;  // kDim x kDim row-major, images as columns

struct Codec {
  std::int64_t q;
  std::vector<std::uint64_t> pw;
  explicit Codec(std::int64_t q_) : q(q_), pw(kDim + 1, 1) {
    for (int i = 1; i <= kDim; ++i) pw[static_cast<std::size_t>(i)] = pw[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(q);
  }
  void decode(std::uint64_t idx, std::int64_t* c) const {
    for (int i = 0; i < kDim; ++i) {
      c[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(q));
      idx /= static_cast<std::uint64_t>(q);
    }
  }
  std::uint64_t encode(const std::int64_t* c) const {
    std::uint64_t idx = 0;
    for (int i = kDim; i-- > 0;) idx = idx * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(c[i]);
    return idx;
  }
};

std::int64_t disc_raw(const std::int64_t* c, std::int64_t q) {
  // N(s,x,y,z) = s^2 - x^2 - y^2 + z^2; polar form B(u,v) = 2(s s' - x x' - y y' + z z').
  auto nrm = [&](const std::int64_t* u) { return u[0] * u[0] - u[1] * u[1] - u[2] * u[2] + u[3] * u[3]; };
  auto pol = [&](const std::int64_t* u, const std::int64_t* v) {
    return 2 * (u[0] * v[0] - u[1] * v[1] - u[2] * v[2] + u[3] * v[3]);
  };
  const std::int64_t c0 = md(c[0] * c[1] - nrm(c + 2), q);
  const std::int64_t c2 = md(c[6] * c[7] - nrm(c + 8), q);
  const std::int64_t c1 = md(c[0] * c[7] + c[6] * c[1] - pol(c + 2, c + 8), q);
  return md(c1 * c1 - 4 * c0 * c2, q);
}

unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  const unsigned h = std::thread::hardware_concurrency();
  return std::max(1u, std::min(h, 16u));
}

}  // namespace

std::uint64_t gl_order(int m, std::int64_t q) {
  std::uint64_t qm = 1;
  for (int i = 0; i < m; ++i) qm *= static_cast<std::uint64_t>(q);
  std::uint64_t out = 1, qi = 1;
  for (int i = 0; i < m; ++i) {
    out *= qm - qi;
    qi *= static_cast<std::uint64_t>(q);
  }
  return out;
}

std::vector<std::int64_t> d5_coordinates(const HermitianPair<Fp>& x, std::int64_t q) {
  if (x.n() != 2) throw Error(Errc::SizeMismatch, "census pairs have n = 2");
  std::vector<std::int64_t> c;
  for (const auto* m : {&x.x1, &x.x2}) {
    const auto& o = (*m)(0, 1);
    for (const Fp& v : {(*m)(0, 0).s(), (*m)(1, 1).s(), o.s(), o.x(), o.y(), o.z()})
      c.push_back(v.canonical(q));
  }
  return c;
}

HermitianPair<Fp> d5_from_coordinates(const std::vector<std::int64_t>& c, const QuaternionAlgebraPtr<Fp>& alg) {
  const std::int64_t q = alg->a.modulus();
  auto one = [&](std::size_t o) {
    QMatrix<Fp> m(2, 2, Quaternion<Fp>(Fp(0, q)));
    m(0, 0) = Quaternion<Fp>(alg, Fp(c[o], q), Fp(0, q), Fp(0, q), Fp(0, q));
    m(1, 1) = Quaternion<Fp>(alg, Fp(c[o + 1], q), Fp(0, q), Fp(0, q), Fp(0, q));
    m(0, 1) = Quaternion<Fp>(alg, Fp(c[o + 2], q), Fp(c[o + 3], q), Fp(c[o + 4], q), Fp(c[o + 5], q));
    m(1, 0) = conj(m(0, 1));
    return m;
  };
  return {one(0), one(6)};
}

std::int64_t d5_discriminant(const std::vector<std::int64_t>& c, std::int64_t q) { return disc_raw(c.data(), q); }

std::vector<GroupElement<Fp>> d5_generators(std::int64_t q, const QuaternionAlgebraPtr<Fp>& alg) {
  const Fp z(0, q), o(1, q);
  const Quaternion<Fp> qz(alg, z, z, z, z), qo(alg, o, z, z, z);
  const Matrix<Fp> id2{{o, z}, {z, o}};
  const std::int64_t g = primitive_root(q);
  std::vector<GroupElement<Fp>> out;
  const std::vector<Quaternion<Fp>> basis{qo, Quaternion<Fp>(alg, z, o, z, z), Quaternion<Fp>(alg, z, z, o, z),
                                          Quaternion<Fp>(alg, z, z, z, o)};
  for (const auto& c : basis) {
    out.push_back({QMatrix<Fp>{{qo, c}, {qz, qo}}, id2});
    out.push_back({QMatrix<Fp>{{qo, qz}, {c, qo}}, id2});
  }
  for (const auto& u : {from_matrix(alg, g, 0, 0, 1, q), from_matrix(alg, 1, 1, 0, 1, q), from_matrix(alg, 0, 1, 1, 0, q)})
    out.push_back({QMatrix<Fp>{{u, qz}, {qz, qo}}, id2});
  const QMatrix<Fp> i1{{qo, qz}, {qz, qo}};
  out.push_back({i1, Matrix<Fp>{{Fp(g, q), z}, {z, o}}});
  out.push_back({i1, Matrix<Fp>{{o, o}, {z, o}}});
  out.push_back({i1, Matrix<Fp>{{z, o}, {o, z}}});
  return out;
}

bool CensusReport::consistent() const {
  std::uint64_t sum = 0;
  for (const auto& o : orbits) {
    sum += o.size;
    if (!o.homogeneous || o.size != o.predicted_size || group_order % o.size != 0) return false;
    if (type_counts.count(o.type) == 0 || type_counts.at(o.type) != o.size) return false;
  }
  return sum == vss_size && orbits.size() == type_counts.size();
}

CensusReport enumerate_census(std::int64_t q, int n, unsigned threads) {
  if (n != 2) throw Error(Errc::ResourceLimit, "census enumerates n = 2 only");
  if (q != 3 && q != 5) throw Error(Errc::ResourceLimit, "census supports q in {3, 5}");
  const unsigned nt = thread_count(threads);
  const Codec codec(q);
  auto alg = make_quaternion_algebra(Fp(1, q), Fp(1, q));

  CensusReport rep;
  rep.q = q;
  rep.n = n;
  rep.v_size = codec.pw[kDim];
  rep.group_order = gl_order(4, q) * gl_order(2, q);

  // Linear maps of the generators, built through act().
  const auto gens = d5_generators(q, alg);
  rep.generators = static_cast<int>(gens.size());
  std::vector<Linear> lin;
  for (const auto& g : gens) {
    Linear m(kDim * kDim, 0);
    for (int k = 0; k < kDim; ++k) {
      std::vector<std::int64_t> e(kDim, 0);
      e[static_cast<std::size_t>(k)] = 1;
      const auto img = d5_coordinates(act(g, d5_from_coordinates(e, alg)), q);
      for (int r = 0; r < kDim; ++r) m[static_cast<std::size_t>(r * kDim + k)] = img[static_cast<std::size_t>(r)];
    }
    lin.push_back(std::move(m));
  }

  // Type of every point, two bits each: 0 unstable, 1 split, 2 nonsplit.
  std::vector<std::uint8_t> type(rep.v_size, 0);
  {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (rep.v_size + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        std::int64_t c[kDim];
        const std::uint64_t lo = t * chunk, hi = std::min(rep.v_size, lo + chunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
          codec.decode(i, c);
          const std::int64_t d = disc_raw(c, q);
          type[i] = d == 0 ? 0 : (is_square_mod(d, q) ? 1 : 2);
        }
      });
    for (auto& th : pool) th.join();
  }
  std::uint64_t cnt[3] = {0, 0, 0};
  for (auto t : type) ++cnt[t];
  rep.vss_size = cnt[1] + cnt[2];
  rep.type_counts["(1,1)"] = cnt[1];
  rep.type_counts["(2)"] = cnt[2];

  std::vector<std::atomic<std::uint64_t>> seen((rep.v_size + 63) / 64);
  for (auto& s : seen) s.store(0, std::memory_order_relaxed);
  auto mark = [&](std::uint64_t i) {
    const std::uint64_t bit = 1ull << (i & 63);
    return (seen[i >> 6].fetch_or(bit, std::memory_order_relaxed) & bit) == 0;
  };

  auto bfs = [&](std::uint64_t start, std::uint8_t want, OrbitRecord& rec) {
    if (!mark(start)) {
      rec.homogeneous = false;  // start already lies in an earlier orbit
      return;
    }
    std::vector<std::uint64_t> frontier{start};
    std::uint64_t total = 1;
    std::atomic<bool> homog{type[start] == want};
    while (!frontier.empty()) {
      std::vector<std::vector<std::uint64_t>> next(nt);
      std::vector<std::thread> pool;
      const std::size_t chunk = (frontier.size() + nt - 1) / nt;
      for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
          std::int64_t c[kDim], d[kDim];
          const std::size_t lo = t * chunk, hi = std::min(frontier.size(), lo + chunk);
          for (std::size_t f = lo; f < hi; ++f) {
            codec.decode(frontier[f], c);
            for (const auto& m : lin) {
              for (int r = 0; r < kDim; ++r) {
                std::int64_t acc = 0;
                for (int k = 0; k < kDim; ++k) acc += m[static_cast<std::size_t>(r * kDim + k)] * c[k];
                d[r] = acc % q;
              }
              const std::uint64_t j = codec.encode(d);
              if (mark(j)) {
                if (type[j] != want) homog.store(false, std::memory_order_relaxed);
                next[t].push_back(j);
              }
            }
          }
        });
      for (auto& th : pool) th.join();
      frontier.clear();
      for (auto& v : next) {
        total += v.size();
        frontier.insert(frontier.end(), v.begin(), v.end());
      }
    }
    rec.size = total;
    rec.homogeneous = rec.homogeneous && homog.load();
  };

  const std::uint64_t gq = gl_order(2, q);
  const std::uint64_t gq2 = (static_cast<std::uint64_t>(q * q) * q * q - 1) * (static_cast<std::uint64_t>(q * q) * q * q - q * q);
  // Base point w and x_alpha = ([[0,1],[1,0]], [[1,0],[0,d]]) with d a nonsquare.
  std::int64_t d = 2;
  while (is_square_mod(d, q)) ++d;
  std::vector<std::int64_t> cw(kDim, 0), cx(kDim, 0);
  cw[1] = 1;  // x1 = diag(0,1)
  cw[6] = 1;  // x2 = diag(1,0)
  cx[2] = 1;  // x1 off-diagonal 1
  cx[6] = 1;
  cx[7] = d;
  OrbitRecord ow{"w", "(1,1)", 0, 2 * gq * gq, rep.group_order / (2 * gq * gq), true};
  OrbitRecord ox{"x_alpha", "(2)", 0, 2 * gq2, rep.group_order / (2 * gq2), true};
  bfs(codec.encode(cw.data()), 1, ow);
  bfs(codec.encode(cx.data()), 2, ox);
  rep.orbits = {ow, ox};
  return rep;
}

E7SampleReport sample_census_e7(std::int64_t q, std::uint64_t samples, std::uint64_t seed) {
  if (q < 3 || q > 31 || !is_odd_prime(q)) throw Error(Errc::ResourceLimit, "sampling supports odd primes q <= 31");
  auto alg = make_quaternion_algebra(Fp(1, q), Fp(1, q));
  const SplitEmbedding<Fp> emb(alg);
  E7SampleReport rep;
  rep.q = q;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(0, q - 1);
  auto r = [&] { return Fp(dist(rng), q); };
  for (std::uint64_t s = 0; s < samples; ++s) {
    HermitianPair<Fp> x{QMatrix<Fp>(3, 3, Quaternion<Fp>(Fp(0, q))), QMatrix<Fp>(3, 3, Quaternion<Fp>(Fp(0, q)))};
    for (auto* m : {&x.x1, &x.x2})
      for (std::size_t i = 0; i < 3; ++i) {
        (*m)(i, i) = Quaternion<Fp>(alg, r(), Fp(0, q), Fp(0, q), Fp(0, q));
        for (std::size_t j = i + 1; j < 3; ++j) {
          (*m)(i, j) = Quaternion<Fp>(alg, r(), r(), r(), r());
          (*m)(j, i) = conj((*m)(i, j));
        }
      }
    const auto f = form_of_pair(emb, x);
    if (is_zero(discriminant(f))) {
      ++rep.unstable;
      continue;
    }
    ++rep.type_counts[form_splitting_type(f)];
  }
  return rep;
}

}  // namespace qpv
