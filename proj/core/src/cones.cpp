#include "excone/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "excone/rng.hpp"
#include "excone/solver.hpp"

namespace excone {

using ordered_json = nlohmann::ordered_json;

std::size_t SymMatrix::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_) throw std::out_of_range("SymMatrix: index");
  return std::size_t(i) * (2 * n_ - i + 1) / 2 + (j - i);
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::from_upper(int n, std::vector<double> upper) {
  if (upper.size() != std::size_t(n) * (n + 1) / 2)
    throw std::invalid_argument("SymMatrix::from_upper: wrong length");
  SymMatrix m(n);
  m.tri_ = std::move(upper);
  return m;
}

double SymMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    acc += at(i, i) * at(i, i);
    for (int j = i + 1; j < n_; ++j) acc += 2.0 * at(i, j) * at(i, j);
  }
  return std::sqrt(acc);
}

SymMatrix SymMatrix::leading(int k) const {
  SymMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) m.set(i, j, at(i, j));
  return m;
}

ExactSymMatrix SymMatrix::to_exact() const {
  ExactSymMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) m.set(i, j, QSqrt2(Rat::from_double_exact(at(i, j))));
  return m;
}

JacobiEigen jacobi_eigen(const SymMatrix& a) {
  const int n = a.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = a.at(i, j);
  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) q[i][i] = 1.0;

  const double stop = 1e-12 * std::max(a.frobenius_norm(), 1e-300);
  auto off_norm = [&] {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) acc += 2.0 * w[i][j] * w[i][j];
    return std::sqrt(acc);
  };

  for (int sweep = 0; sweep < 64 && off_norm() > stop; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apq = w[p][r];
        if (apq == 0.0) continue;
        const double theta = (w[r][r] - w[p][p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = w[p][p], arr = w[r][r];
        w[p][p] = app - t * apq;
        w[r][r] = arr + t * apq;
        w[p][r] = w[r][p] = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i != p && i != r) {
            const double aip = w[i][p], air = w[i][r];
            w[i][p] = w[p][i] = aip - s * (air + tau * aip);
            w[i][r] = w[r][i] = air + s * (aip - tau * air);
          }
          const double qip = q[i][p], qir = q[i][r];
          q[i][p] = qip - s * (qir + tau * qip);
          q[i][r] = qir + s * (qip - tau * qir);
        }
      }
    }
  }

  JacobiEigen out;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return w[i][i] < w[j][j]; });
  out.values.resize(n);
  out.vectors.resize(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = w[order[k]][order[k]];
    out.vectors[k].resize(n);
    for (int i = 0; i < n; ++i) out.vectors[k][i] = q[i][order[k]];
  }
  return out;
}

std::vector<double> eig_sym(const SymMatrix& a) { return jacobi_eigen(a).values; }

ExactSymMatrix horn_matrix() {
  // +1 on shifts {0, 2, 3}, -1 on shifts {1, 4} around the 5-cycle
  ExactSymMatrix h(5);
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      const int d = j - i;
      const bool minus = (d == 1 || d == 4);
      h.set(i, j, QSqrt2(minus ? -1 : 1));
    }
  }
  return h;
}

std::string MembershipReport::to_json() const {
  ordered_json j;
  j["cone"] = cone;
  j["verdict"] = verdict == Verdict::In ? "in" : verdict == Verdict::Out ? "out" : "unknown";
  j["margin"] = margin;
  if (!note.empty()) j["note"] = note;
  if (witness) {
    ordered_json w;
    if (witness->entry) w["entry"] = {witness->entry->first, witness->entry->second};
    if (witness->vector) w["vector"] = *witness->vector;
    if (witness->matrix) {
      ordered_json rows = ordered_json::array();
      const auto& m = *witness->matrix;
      for (int i = 0; i < m.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int jj = 0; jj < m.size(); ++jj) row.push_back(m.at(i, jj));
        rows.push_back(row);
      }
      w["matrix"] = rows;
    }
    if (witness->exact_matrix) {
      ordered_json up = ordered_json::array();
      for (const auto& v : witness->exact_matrix->upper()) up.push_back(v.str());
      w["exact_matrix_upper"] = up;
    }
    if (witness->exact_value) w["exact_value"] = witness->exact_value->str();
    j["witness"] = w;
  }
  return j.dump();
}

MembershipReport is_nn(const SymMatrix& a) {
  MembershipReport rep;
  rep.cone = "NN";
  double min_val = std::numeric_limits<double>::infinity();
  std::pair<int, int> arg{0, 0};
  for (int i = 0; i < a.size(); ++i) {
    for (int j = i; j < a.size(); ++j) {
      if (a.at(i, j) < min_val) {
        min_val = a.at(i, j);
        arg = {i, j};
      }
    }
  }
  if (a.size() == 0) min_val = 0.0;
  rep.margin = min_val;
  if (min_val >= 0.0) {
    rep.verdict = Verdict::In;
  } else {
    rep.verdict = Verdict::Out;
    MembershipWitness w;
    w.entry = arg;
    rep.witness = w;
  }
  return rep;
}

MembershipReport is_nn(const ExactSymMatrix& a) {
  MembershipReport rep;
  rep.cone = "NN";
  const QSqrt2* worst = nullptr;
  std::pair<int, int> arg{0, 0};
  for (int i = 0; i < a.size(); ++i) {
    for (int j = i; j < a.size(); ++j) {
      const QSqrt2& v = a.at(i, j);
      if (sign_of(v) < 0 && (!worst || v < *worst)) {
        worst = &v;
        arg = {i, j};
      }
    }
  }
  if (!worst) {
    rep.verdict = Verdict::In;
    rep.margin = 0.0;
    for (int i = 0; i < a.size(); ++i)
      for (int j = i; j < a.size(); ++j)
        rep.margin = (i == 0 && j == 0) ? a.at(0, 0).to_double()
                                        : std::min(rep.margin, a.at(i, j).to_double());
  } else {
    rep.verdict = Verdict::Out;
    rep.margin = worst->to_double();
    MembershipWitness w;
    w.entry = arg;
    rep.witness = w;
  }
  return rep;
}

MembershipReport is_psd(const SymMatrix& a, double tol) {
  if (tol < 0) throw std::invalid_argument("is_psd: tol must be nonnegative");
  MembershipReport rep;
  rep.cone = "PSD";
  const auto eig = jacobi_eigen(a);
  const double lmin = eig.values.empty() ? 0.0 : eig.values.front();
  rep.margin = lmin;
  if (lmin >= -tol) {
    rep.verdict = Verdict::In;
  } else {
    rep.verdict = Verdict::Out;
    MembershipWitness w;
    w.vector = eig.vectors.front();
    rep.witness = w;
  }
  return rep;
}

MembershipReport is_spn(const SymMatrix& a, const SpnOptions& opts) {
  MembershipReport rep;
  rep.cone = "SPN";
  const int n = a.size();

  if (opts.shortcuts) {
    // exact dual refutations: <A, D> < 0 for a DNN matrix D
    for (int i = 0; i < n; ++i) {
      if (a.at(i, i) < 0) {
        rep.verdict = Verdict::Out;
        rep.margin = a.at(i, i);
        MembershipWitness w;
        ExactSymMatrix d(n);
        d.set(i, i, QSqrt2(1));
        w.exact_matrix = d;  // <A, E_ii> = A_ii < 0
        rep.witness = w;
        rep.note = "negative diagonal entry";
        return rep;
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double aij = a.at(i, j);
        if (aij < 0 && aij * aij > a.at(i, i) * a.at(j, j)) {
          // v = e_i + t e_j with t > 0 gives v^T A v < 0; D = v v^T is DNN
          const double ajj = a.at(j, j);
          const double t = ajj > 0 ? -aij / ajj : (a.at(i, i) + 1.0) / (-2.0 * aij);
          const double value = a.at(i, i) + 2.0 * aij * t + ajj * t * t;
          SymMatrix d(n);
          d.set(i, i, 1.0);
          d.set(j, j, t * t);
          d.set(i, j, t);
          rep.verdict = Verdict::Out;
          rep.margin = value;
          MembershipWitness w;
          w.matrix = d;
          rep.witness = w;
          rep.note = "violated 2x2 copositive-dual inequality";
          return rep;
        }
      }
    }
    // cheap inclusions
    const auto psd = is_psd(a, opts.tol);
    if (psd.verdict == Verdict::In) {
      rep.verdict = Verdict::In;
      rep.margin = psd.margin;
      MembershipWitness w;
      w.matrix = SymMatrix(n);  // N = 0
      rep.witness = w;
      rep.note = "already PSD";
      return rep;
    }
    const auto nn = is_nn(a);
    if (nn.verdict == Verdict::In) {
      rep.verdict = Verdict::In;
      rep.margin = nn.margin;
      MembershipWitness w;
      w.matrix = a;  // N = A
      rep.witness = w;
      rep.note = "already NN";
      return rep;
    }
  }

  const ConicProblem prob = build_spn_problem(a);
  const ConicSolution sol = solve(prob, opts.tol, opts.max_iter);
  rep.margin = sol.feasibility_margin;
  if (sol.status == SolveStatus::Feasible) {
    rep.verdict = Verdict::In;
    const int n_off = prob.layout.block_offset(1);
    SymMatrix nmat(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) nmat.set(i, j, sol.x[n_off + svec_index(i, j, n)]);
    MembershipWitness w;
    w.matrix = nmat;
    rep.witness = w;
  } else if (sol.status == SolveStatus::InfeasibleEvidence) {
    rep.verdict = Verdict::Unknown;
    rep.note = "solver evidence of infeasibility (not a proof): " + sol.message;
  } else {
    rep.verdict = Verdict::Unknown;
    rep.note = sol.message;
  }
  return rep;
}

MembershipReport not_in_cone_witness(const ExactSymMatrix& a, const ExactSymMatrix& w,
                                     DualWitnessMode mode) {
  MembershipReport rep;
  rep.cone = (mode == DualWitnessMode::CP) ? "notCP-witness" : "notSPN-witness";

  ExactSymMatrix lhs = a;
  if (mode == DualWitnessMode::CP) {
    if (a.size() > w.size()) {
      if (w.size() != 5)
        throw std::invalid_argument("not_in_cone_witness: bootstrap expects a 5x5 witness");
      lhs = a.leading(5);
    }
  } else {
    // the SPN dual cone is DNN; insist on an exactly certified witness
    if (!is_psd_exact(w).psd || is_nn(w).verdict != Verdict::In) {
      throw std::invalid_argument("not_in_cone_witness: SPN mode requires a DNN witness");
    }
  }
  if (lhs.size() != w.size())
    throw std::invalid_argument("not_in_cone_witness: size mismatch beyond the bootstrap");

  const QSqrt2 pairing = frobenius_exact(lhs, w);
  rep.margin = pairing.to_double();
  MembershipWitness mw;
  mw.exact_matrix = w;
  mw.exact_value = pairing;
  rep.witness = mw;
  if (sign_of(pairing) < 0) {
    rep.verdict = Verdict::Out;
  } else {
    rep.verdict = Verdict::Unknown;
    rep.note = "pairing is nonnegative; no conclusion";
    rep.witness.reset();
  }
  return rep;
}

MembershipReport parrilo_membership(const SymMatrix& a, int r, const ParriloOptions& opts) {
  if (r < 0 || r > 2) throw std::invalid_argument("parrilo_membership: r must be 0, 1 or 2");
  MembershipReport rep;
  rep.cone = "COP-relax-" + std::to_string(r);
  const int n = a.size();
  const auto target = expand_target(a.to_exact(), r);
  const ConicProblem prob = build_poly_sos_problem(target, n, 2 + r);
  const ConicSolution sol = solve(prob, opts.tol, opts.max_iter);
  rep.margin = sol.feasibility_margin;

  if (sol.x.size() == prob.num_vars()) {
    // judge the returned Gram on its own merits (boundary instances are
    // legitimate: "feasible" margin may be numerically zero)
    const MonomialBasis basis(n, 2 + r);
    const Eigen::MatrixXd g = unsvec_float(basis.size(), sol.x);
    SymMatrix gram(basis.size());
    for (int i = 0; i < basis.size(); ++i)
      for (int j = i; j < basis.size(); ++j) gram.set(i, j, g(i, j));
    const double lmin = eig_sym(gram).front();
    double resid = 0.0;
    const auto res = prob.residual_exact([&] {
      std::vector<QSqrt2> xv(prob.num_vars());
      for (int i = 0; i < prob.num_vars(); ++i)
        xv[i] = QSqrt2(Rat::from_double_exact(sol.x[i]));
      return xv;
    }());
    for (const auto& v : res) resid = std::max(resid, std::abs(v.to_double()));
    if (resid < opts.residual_tol && lmin >= -opts.eigen_tol) {
      rep.verdict = Verdict::In;
      MembershipWitness w;
      w.matrix = gram;
      rep.witness = w;
      rep.margin = lmin;
      rep.note = "Gram residual " + std::to_string(resid);
      return rep;
    }
  }
  rep.verdict = Verdict::Unknown;
  rep.note = to_string(sol.status) + ": " + sol.message;
  return rep;
}

CopositivitySampleReport copositivity_sample_check(const SymMatrix& a, std::int64_t samples,
                                                   std::uint64_t rng_seed) {
  if (samples < 1) throw std::invalid_argument("copositivity_sample_check: samples >= 1");
  const int n = a.size();
  CopositivitySampleReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();

  auto eval = [&](const std::vector<double>& x) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += a.at(i, i) * x[i] * x[i];
      for (int j = i + 1; j < n; ++j) acc += 2.0 * a.at(i, j) * x[i] * x[j];
    }
    return acc;
  };
  auto consider = [&](const std::vector<double>& x) {
    const double v = eval(x);
    ++rep.evaluations;
    if (v < rep.min_value) {
      rep.min_value = v;
      rep.min_point = x;
    }
  };

  std::vector<double> x(n, 0.0);
  for (int i = 0; i < n; ++i) {  // vertices
    std::fill(x.begin(), x.end(), 0.0);
    x[i] = 1.0;
    consider(x);
  }
  for (int i = 0; i < n; ++i) {  // edge midpoints
    for (int j = i + 1; j < n; ++j) {
      std::fill(x.begin(), x.end(), 0.0);
      x[i] = x[j] = 0.5;
      consider(x);
    }
  }
  RngStream rng(rng_seed);
  for (std::int64_t it = 0; it < samples; ++it) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] = -std::log(rng.next_uniform_pos());
      sum += x[i];
    }
    for (int i = 0; i < n; ++i) x[i] /= sum;
    consider(x);
  }
  rep.violation = rep.min_value < 0.0;
  return rep;
}

}  // namespace excone
