#include "excone/volume.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace excone {

using ordered_json = nlohmann::ordered_json;

BallSample sample_ball(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_ball: n >= 1");
  const int d = n * (n + 1) / 2;
  BallSample out;
  out.coords.resize(d);
  double norm2 = 0.0;
  for (int i = 0; i < d; ++i) {
    out.coords[i] = rng.next_normal();
    norm2 += out.coords[i] * out.coords[i];
  }
  const double norm = std::sqrt(norm2);
  const double radius = std::pow(rng.next_uniform_pos(), 1.0 / double(d));
  const double scale = norm > 0 ? radius / norm : 0.0;
  for (auto& c : out.coords) c *= scale;

  out.matrix = SymMatrix(n);
  const double inv_r2 = 1.0 / std::sqrt(2.0);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++idx)
      out.matrix.set(i, j, i == j ? out.coords[idx] : out.coords[idx] * inv_r2);
  return out;
}

namespace {

constexpr int kChunks = 64;  // fixed split; results independent of thread count

struct ChunkCounts {
  std::int64_t hits = 0;
  std::int64_t excluded = 0;
};

void finalize_estimate(VradEstimate& est, int n) {
  const int d = n * (n + 1) / 2;
  const std::int64_t effective = est.samples - est.excluded;
  est.excluded_fraction = est.samples ? double(est.excluded) / double(est.samples) : 0.0;
  if (effective <= 0) return;
  const double p = double(est.hits) / double(effective);
  est.fraction = p;
  est.fraction_stderr = std::sqrt(std::max(p * (1.0 - p), 0.0) / double(effective));
  if (est.hits == 0) {
    est.vrad = 0.0;
    est.vrad_ci = {0.0, std::pow(3.0 / double(effective), 1.0 / double(d))};
    return;
  }
  est.vrad = std::pow(p, 1.0 / double(d));
  // delta method: d vrad / d p = vrad / (p d)
  const double half = 2.0 * est.fraction_stderr * est.vrad / (p * double(d));
  est.vrad_ci = {std::max(0.0, est.vrad - half), est.vrad + half};
}

}  // namespace

VradEstimate vrad_estimate(int n, const ConePredicate& predicate, std::int64_t samples,
                           std::uint64_t seed, const std::string& cone_name, int workers) {
  if (samples < 1) throw std::invalid_argument("vrad_estimate: samples >= 1");
  const int chunks = int(std::min<std::int64_t>(kChunks, samples));
  std::vector<std::int64_t> chunk_size(chunks, samples / chunks);
  for (int c = 0; c < samples % chunks; ++c) ++chunk_size[c];

  std::vector<ChunkCounts> counts(chunks);
  auto run_chunk = [&](int c) {
    RngStream rng = RngStream::derived(seed, std::uint64_t(c));
    for (std::int64_t it = 0; it < chunk_size[c]; ++it) {
      const BallSample s = sample_ball(n, rng);
      switch (predicate(s.matrix)) {
        case Verdict::In: ++counts[c].hits; break;
        case Verdict::Out: break;
        case Verdict::Unknown: ++counts[c].excluded; break;
      }
    }
  };

  int nthreads = workers > 0 ? workers : int(std::thread::hardware_concurrency());
  nthreads = std::clamp(nthreads, 1, chunks);
  if (nthreads == 1) {
    for (int c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  VradEstimate est;
  est.cone = cone_name;
  est.n = n;
  est.samples = samples;
  est.seed = seed;
  for (const auto& c : counts) {
    est.hits += c.hits;
    est.excluded += c.excluded;
  }
  finalize_estimate(est, n);
  return est;
}

Rat nn_fraction_exact(int n) {
  if (n < 1) throw std::invalid_argument("nn_fraction_exact: n >= 1");
  const int d = n * (n + 1) / 2;
  BigInt den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), d);
  return Rat(BigInt(1), den);
}

std::optional<Rat> exact_root(const Rat& value, int d) {
  if (d < 1 || value.sign() < 0) return std::nullopt;
  BigInt rn, rd;
  const int exact_num = mpz_root(rn.get_mpz_t(), value.num().get_mpz_t(), d);
  const int exact_den = mpz_root(rd.get_mpz_t(), value.den().get_mpz_t(), d);
  if (!exact_num || !exact_den) return std::nullopt;
  return Rat(rn, rd);
}

Claim2Decomposition claim2_decompose(int i, int j, int n) {
  if (n < 1 || i < 1 || j < 1 || i > n || j > n || i > j)
    throw std::invalid_argument("claim2_decompose: need 1 <= i <= j <= n");
  const int i0 = i - 1, j0 = j - 1;
  Claim2Decomposition out;
  const QSqrt2 one(1);
  const QSqrt2 half(Rat(1, 2));
  const QSqrt2 inv_r2(Rat(0), Rat(1, 2));  // sqrt2/2 = 1/sqrt2

  if (i == j) {
    ExactSymMatrix e(n);
    e.set(i0, i0, one);
    out.extreme = e;
    out.cp_plus = e;
    out.cp_minus = ExactSymMatrix(n);
    std::vector<QSqrt2> col(n);
    col[i0] = one;
    out.cp_plus_factor = {col};
    // E_ii = e_i e_i^T, norm exactly 1
    out.verified = (frobenius_exact(e, e) == QSqrt2(1));
    if (!out.verified) out.detail = "diagonal extreme point norm is not 1";
    return out;
  }

  ExactSymMatrix e(n);
  e.set(i0, j0, inv_r2);
  out.extreme = e;

  ExactSymMatrix u(n);  // F/2 with F = x x^T, x the indicator of {i,j}
  u.set(i0, i0, half);
  u.set(j0, j0, half);
  u.set(i0, j0, half);
  ExactSymMatrix v(n);  // (E_ii + E_jj)/2
  v.set(i0, i0, half);
  v.set(j0, j0, half);
  out.cp_plus = u;
  out.cp_minus = v;

  std::vector<QSqrt2> ucol(n);
  ucol[i0] = inv_r2;
  ucol[j0] = inv_r2;
  out.cp_plus_factor = {ucol};
  std::vector<QSqrt2> vcol1(n), vcol2(n);
  vcol1[i0] = inv_r2;
  vcol2[j0] = inv_r2;
  out.cp_minus_factor = {vcol1, vcol2};

  auto check = [&]() -> std::string {
    // extreme = sqrt2 (U - V)
    const QSqrt2 r2 = QSqrt2::sqrt2();
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        if (e.at(a, b) != r2 * (u.at(a, b) - v.at(a, b)))
          return "difference identity fails";
    // factorizations B B^T with nonnegative factors
    auto check_factor = [&](const ExactSymMatrix& m,
                            const std::vector<std::vector<QSqrt2>>& cols) -> bool {
      for (const auto& col : cols)
        for (const auto& x : col)
          if (sign_of(x) < 0) return false;
      for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
          QSqrt2 acc;
          for (const auto& col : cols) acc += col[a] * col[b];
          if (acc != m.at(a, b)) return false;
        }
      }
      return true;
    };
    if (!check_factor(u, out.cp_plus_factor)) return "U is not B B^T with B >= 0";
    if (!check_factor(v, out.cp_minus_factor)) return "V is not B B^T with B >= 0";
    // Frobenius norms at most 1 (exactly: ||U||^2 = 1, ||V||^2 = 1/2)
    if (frobenius_exact(u, u) != QSqrt2(1)) return "||U||_F != 1";
    if (frobenius_exact(v, v) != QSqrt2(Rat(1, 2))) return "||V||_F^2 != 1/2";
    return {};
  };
  out.detail = check();
  out.verified = out.detail.empty();
  return out;
}

SandwichReport sandwich_check(int n, std::int64_t samples, std::uint64_t seed,
                              const SpnOptions& spn_opts) {
  if (samples < 1) throw std::invalid_argument("sandwich_check: samples >= 1");
  SandwichReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.seed = seed;

  const int chunks = int(std::min<std::int64_t>(kChunks, samples));
  std::vector<std::int64_t> chunk_size(chunks, samples / chunks);
  for (int c = 0; c < samples % chunks; ++c) ++chunk_size[c];

  struct Counts {
    std::int64_t nn = 0, psd = 0, dnn = 0, spn = 0, spn_unknown = 0, violations = 0;
  };
  std::vector<Counts> counts(chunks);

  auto run_chunk = [&](int c) {
    RngStream rng = RngStream::derived(seed, std::uint64_t(c));
    for (std::int64_t it = 0; it < chunk_size[c]; ++it) {
      const BallSample s = sample_ball(n, rng);
      const bool nn = is_nn(s.matrix).verdict == Verdict::In;
      const bool psd = is_psd(s.matrix, spn_opts.tol).verdict == Verdict::In;
      const bool dnn = nn && psd;
      const auto spn = is_spn(s.matrix, spn_opts);
      if (nn) ++counts[c].nn;
      if (psd) ++counts[c].psd;
      if (dnn) ++counts[c].dnn;
      if (spn.verdict == Verdict::In) ++counts[c].spn;
      if (spn.verdict == Verdict::Unknown) ++counts[c].spn_unknown;
      // samplewise inclusion DNN => {PSD, NN} => SPN
      if (dnn && (!nn || !psd)) ++counts[c].violations;
      if (dnn && spn.verdict != Verdict::In) ++counts[c].violations;
      if ((nn || psd) && spn.verdict == Verdict::Out) ++counts[c].violations;
    }
  };

  int nthreads = std::clamp(int(std::thread::hardware_concurrency()), 1, chunks);
  if (nthreads == 1) {
    for (int c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  Counts total;
  for (const auto& c : counts) {
    total.nn += c.nn;
    total.psd += c.psd;
    total.dnn += c.dnn;
    total.spn += c.spn;
    total.spn_unknown += c.spn_unknown;
    total.violations += c.violations;
  }
  rep.inclusion_violations = total.violations;
  rep.spn_unknown = total.spn_unknown;

  auto mk = [&](const std::string& name, std::int64_t hits, std::int64_t excl) {
    VradEstimate est;
    est.cone = name;
    est.n = n;
    est.samples = samples;
    est.seed = seed;
    est.hits = hits;
    est.excluded = excl;
    finalize_estimate(est, n);
    return est;
  };
  rep.cones.push_back(mk("nn", total.nn, 0));
  rep.cones.push_back(mk("psd", total.psd, 0));
  rep.cones.push_back(mk("dnn", total.dnn, 0));
  rep.cones.push_back(mk("spn", total.spn, total.spn_unknown));
  return rep;
}

std::string vrad_csv(const std::vector<VradEstimate>& rows) {
  std::ostringstream os;
  os << "cone,n,samples,seed,hits,excluded,fraction,stderr,vrad,ci_lo,ci_hi\n";
  os.precision(12);
  for (const auto& r : rows) {
    os << r.cone << ',' << r.n << ',' << r.samples << ',' << r.seed << ',' << r.hits << ','
       << r.excluded << ',' << r.fraction << ',' << r.fraction_stderr << ',' << r.vrad << ','
       << r.vrad_ci.first << ',' << r.vrad_ci.second << '\n';
  }
  return os.str();
}

std::string vrad_json(const std::vector<VradEstimate>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"cone", r.cone},
                   {"n", r.n},
                   {"samples", r.samples},
                   {"seed", r.seed},
                   {"hits", r.hits},
                   {"excluded", r.excluded},
                   {"fraction", r.fraction},
                   {"stderr", r.fraction_stderr},
                   {"vrad", r.vrad},
                   {"ci_lo", r.vrad_ci.first},
                   {"ci_hi", r.vrad_ci.second}});
  }
  return arr.dump(1);
}

std::string SandwichReport::to_json() const {
  ordered_json j;
  j["n"] = n;
  j["samples"] = samples;
  j["seed"] = seed;
  j["inclusion_violations"] = inclusion_violations;
  j["spn_unknown"] = spn_unknown;
  j["cones"] = ordered_json::parse(vrad_json(cones));
  return j.dump(1);
}

std::string SandwichReport::to_csv() const { return vrad_csv(cones); }

}  // namespace excone
