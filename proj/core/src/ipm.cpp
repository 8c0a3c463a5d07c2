#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "excone/solver.hpp"

namespace excone {
namespace {

constexpr double kStepFraction = 0.99;  // fraction of the step to the boundary

// static KKT regularization, small enough not to bias boundary optima
// beyond the requested tolerance
double regularization(double tol) { return std::clamp(0.1 * tol, 1e-12, 1e-8); }

// svec <-> matrix for float vectors, matching the exact convention
// (off-diagonal coordinates carry a factor sqrt2)
Eigen::MatrixXd unsvec_block(const Eigen::VectorXd& v, int side) {
  Eigen::MatrixXd m(side, side);
  int idx = 0;
  const double inv_r2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < side; ++i) {
    for (int j = i; j < side; ++j, ++idx) {
      if (i == j)
        m(i, i) = v[idx];
      else
        m(i, j) = m(j, i) = v[idx] * inv_r2;
    }
  }
  return m;
}

Eigen::VectorXd svec_block(const Eigen::MatrixXd& m) {
  const int side = int(m.rows());
  Eigen::VectorXd v(side * (side + 1) / 2);
  int idx = 0;
  const double r2 = std::sqrt(2.0);
  for (int i = 0; i < side; ++i)
    for (int j = i; j < side; ++j, ++idx) v[idx] = (i == j) ? m(i, i) : m(i, j) * r2;
  return v;
}

// Nesterov-Todd scaling data of one PSD block. R satisfies
// R^{-1} X R^{-T} = R^T S R = diag(sigma); W = R R^T obeys W S W = X.
struct PsdScaling {
  Eigen::MatrixXd r;      // R
  Eigen::MatrixXd rinv;   // R^{-1}
  Eigen::MatrixXd winv;   // W^{-1} = R^{-T} R^{-1}
  Eigen::VectorXd sigma;  // common scaled spectrum, > 0
};

class Ipm {
 public:
  Ipm(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c, std::vector<Block> blocks,
      double tol, int max_iter)
      : a_(std::move(a)),
        b_(std::move(b)),
        c_(std::move(c)),
        blocks_(std::move(blocks)),
        tol_(tol),
        max_iter_(max_iter),
        m_(int(a_.rows())),
        n_(int(a_.cols())) {
    offsets_.resize(blocks_.size());
    int off = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      offsets_[i] = off;
      off += blocks_[i].dim();
    }
    for (const auto& blk : blocks_)
      if (blk.kind != BlockKind::Free) nu_ += blk.size;
  }

  struct Result {
    bool converged = false;
    Eigen::VectorXd x, y, s;
    double rp_rel = 0, rd_rel = 0, gap_rel = 0;
    int iterations = 0;
    std::string message;
  };

  Result run();

 private:
  void init_point(Eigen::VectorXd& z) const {
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const auto& blk = blocks_[bi];
      const int off = offsets_[bi];
      if (blk.kind == BlockKind::Nonneg) {
        z.segment(off, blk.size).setOnes();
      } else if (blk.kind == BlockKind::Psd) {
        int idx = off;
        for (int i = 0; i < blk.size; ++i)
          for (int j = i; j < blk.size; ++j, ++idx) z[idx] = (i == j) ? 1.0 : 0.0;
      }
    }
  }

  double cone_inner(const Eigen::VectorXd& xv, const Eigen::VectorXd& sv) const {
    double acc = 0.0;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const auto& blk = blocks_[bi];
      if (blk.kind == BlockKind::Free) continue;
      acc += xv.segment(offsets_[bi], blk.dim()).dot(sv.segment(offsets_[bi], blk.dim()));
    }
    return acc;
  }

  // largest alpha with z + alpha dz still in the cone (z strictly interior)
  double step_to_boundary(const Eigen::VectorXd& z, const Eigen::VectorXd& dz) const {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const auto& blk = blocks_[bi];
      const int off = offsets_[bi];
      if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i)
          if (dz[off + i] < 0) alpha = std::min(alpha, -z[off + i] / dz[off + i]);
      } else if (blk.kind == BlockKind::Psd) {
        const Eigen::MatrixXd zm = unsvec_block(z.segment(off, blk.dim()), blk.size);
        const Eigen::MatrixXd dm = unsvec_block(dz.segment(off, blk.dim()), blk.size);
        Eigen::LLT<Eigen::MatrixXd> llt(zm);
        if (llt.info() != Eigen::Success) return 0.0;
        const Eigen::MatrixXd l = llt.matrixL();
        Eigen::MatrixXd y1 = l.triangularView<Eigen::Lower>().solve(dm);
        Eigen::MatrixXd t =
            l.triangularView<Eigen::Lower>().solve(y1.transpose()).transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t + t.transpose()),
                                                          Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues().minCoeff();
        if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
      }
    }
    return alpha;
  }

  Eigen::MatrixXd a_;
  Eigen::VectorXd b_, c_;
  std::vector<Block> blocks_;
  double tol_;
  int max_iter_;
  int m_, n_;
  std::vector<int> offsets_;
  int nu_ = 0;
};

Ipm::Result Ipm::run() {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n_);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m_);
  init_point(x);
  init_point(s);

  Result best;
  best.x = x;
  best.y = y;
  best.s = s;
  best.iterations = 0;
  double best_metric = std::numeric_limits<double>::infinity();

  const double bnorm = 1.0 + b_.lpNorm<Eigen::Infinity>();
  const double cnorm = 1.0 + c_.lpNorm<Eigen::Infinity>();

  for (int iter = 0; iter < max_iter_; ++iter) {
    const Eigen::VectorXd rp = b_ - a_ * x;
    const Eigen::VectorXd rd = c_ - a_.transpose() * y - s;
    const double mu = nu_ > 0 ? std::max(cone_inner(x, s), 0.0) / double(nu_) : 0.0;
    const double obj_scale = 1.0 + std::abs(c_.dot(x)) + std::abs(b_.dot(y));
    const double rp_rel = rp.lpNorm<Eigen::Infinity>() / bnorm;
    const double rd_rel = rd.lpNorm<Eigen::Infinity>() / cnorm;
    const double gap_rel = mu / obj_scale;
    const double metric = std::max({rp_rel, rd_rel, gap_rel});
    if (metric < best_metric) {
      best_metric = metric;
      best.x = x;
      best.y = y;
      best.s = s;
      best.rp_rel = rp_rel;
      best.rd_rel = rd_rel;
      best.gap_rel = gap_rel;
      best.iterations = iter;
    }
    if (rp_rel < tol_ && rd_rel < tol_ && gap_rel < tol_) {
      best.converged = true;
      return best;
    }

    const double kReg = regularization(tol_);

    // NT scalings
    std::vector<PsdScaling> psd(blocks_.size());
    Eigen::VectorXd nn_w = Eigen::VectorXd::Ones(n_);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const auto& blk = blocks_[bi];
      const int off = offsets_[bi];
      if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i) {
          const double xi = x[off + i], si = s[off + i];
          if (!(xi > 0) || !(si > 0)) {
            best.message = "iterate left the nonnegative cone interior";
            return best;
          }
          nn_w[off + i] = std::sqrt(xi / si);
        }
      } else if (blk.kind == BlockKind::Psd) {
        const Eigen::MatrixXd xm = unsvec_block(x.segment(off, blk.dim()), blk.size);
        const Eigen::MatrixXd sm = unsvec_block(s.segment(off, blk.dim()), blk.size);
        Eigen::LLT<Eigen::MatrixXd> lltx(xm), llts(sm);
        if (lltx.info() != Eigen::Success || llts.info() != Eigen::Success) {
          best.message = "iterate left the PSD cone interior";
          return best;
        }
        const Eigen::MatrixXd lx = lltx.matrixL();
        const Eigen::MatrixXd ls = llts.matrixL();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(ls.transpose() * lx,
                                              Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::VectorXd sig = svd.singularValues();
        if (sig.minCoeff() <= 0) {
          best.message = "singular NT scaling";
          return best;
        }
        PsdScaling sc;
        const Eigen::VectorXd isq = sig.array().sqrt().inverse().matrix();
        sc.r = lx * svd.matrixV() * isq.asDiagonal();
        sc.rinv = isq.asDiagonal() * svd.matrixU().transpose() * ls.transpose();
        sc.winv = sc.rinv.transpose() * sc.rinv;
        sc.sigma = sig;
        psd[bi] = std::move(sc);
      }
    }

    // KKT matrix [ -(H + reg I)  A^T ; A  reg I ], H the NT Hessian
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n_ + m_, n_ + m_);
    const double inv_r2 = 1.0 / std::sqrt(2.0);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const auto& blk = blocks_[bi];
      const int off = offsets_[bi];
      if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i) {
          const double w = nn_w[off + i];
          kkt(off + i, off + i) = -1.0 / (w * w) - kReg;
        }
      } else if (blk.kind == BlockKind::Free) {
        for (int i = 0; i < blk.size; ++i) kkt(off + i, off + i) = -kReg;
      } else {
        const auto& wi = psd[bi].winv;
        int col = off;
        for (int p = 0; p < blk.size; ++p) {
          for (int q = p; q < blk.size; ++q, ++col) {
            Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(blk.size, blk.size);
            if (p == q)
              basis(p, p) = 1.0;
            else
              basis(p, q) = basis(q, p) = inv_r2;
            const Eigen::VectorXd hcol = svec_block(wi * basis * wi);
            for (int rI = 0; rI < blk.dim(); ++rI) kkt(off + rI, col) = -hcol[rI];
          }
        }
        for (int rI = 0; rI < blk.dim(); ++rI) kkt(off + rI, off + rI) -= kReg;
      }
    }
    kkt.block(n_, 0, m_, n_) = a_;
    kkt.block(0, n_, n_, m_) = a_.transpose();
    kkt.block(n_, n_, m_, m_) = kReg * Eigen::MatrixXd::Identity(m_, m_);
    Eigen::LDLT<Eigen::MatrixXd> fac(kkt);
    if (fac.info() != Eigen::Success) {
      best.message = "KKT factorization failed";
      return best;
    }
    auto kkt_solve = [&](const Eigen::VectorXd& rhs) {
      Eigen::VectorXd sol = fac.solve(rhs);
      sol += fac.solve(rhs - kkt * sol);
      return sol;
    };

    // direction for a scaled complementarity right-hand side dtil:
    // solve lambda o u = dtil, set v = (R^{-T} u R^{-1}), then
    //   [-H A^T; A 0] (dx, dy) = (rd - v, rp),  ds = v - H dx
    auto direction = [&](const std::vector<Eigen::MatrixXd>& dtil_psd,
                         const Eigen::VectorXd& dtil_nn, Eigen::VectorXd& dx,
                         Eigen::VectorXd& dy, Eigen::VectorXd& ds) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n_);
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        const auto& blk = blocks_[bi];
        const int off = offsets_[bi];
        if (blk.kind == BlockKind::Nonneg) {
          for (int i = 0; i < blk.size; ++i) {
            const double sg = std::sqrt(x[off + i] * s[off + i]);
            v[off + i] = (dtil_nn[off + i] / sg) / nn_w[off + i];
          }
        } else if (blk.kind == BlockKind::Psd) {
          const auto& sc = psd[bi];
          Eigen::MatrixXd u(blk.size, blk.size);
          for (int p = 0; p < blk.size; ++p)
            for (int q = 0; q < blk.size; ++q)
              u(p, q) = 2.0 * dtil_psd[bi](p, q) / (sc.sigma[p] + sc.sigma[q]);
          v.segment(off, blk.dim()) = svec_block(sc.rinv.transpose() * u * sc.rinv);
        }
      }
      Eigen::VectorXd rhs(n_ + m_);
      rhs.head(n_) = (c_ - a_.transpose() * y - s) - v;  // rd - v
      rhs.tail(m_) = b_ - a_ * x;                        // rp
      const Eigen::VectorXd sol = kkt_solve(rhs);
      dx = sol.head(n_);
      dy = sol.tail(m_);
      ds = Eigen::VectorXd::Zero(n_);
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        const auto& blk = blocks_[bi];
        const int off = offsets_[bi];
        if (blk.kind == BlockKind::Nonneg) {
          for (int i = 0; i < blk.size; ++i) {
            const double w = nn_w[off + i];
            ds[off + i] = v[off + i] - dx[off + i] / (w * w);
          }
        } else if (blk.kind == BlockKind::Psd) {
          const auto& sc = psd[bi];
          const Eigen::MatrixXd dxm = unsvec_block(dx.segment(off, blk.dim()), blk.size);
          ds.segment(off, blk.dim()) =
              v.segment(off, blk.dim()) - svec_block(sc.winv * dxm * sc.winv);
        }
      }
    };

    // affine scaling direction: dtil = -lambda o lambda
    std::vector<Eigen::MatrixXd> dtil_psd(blocks_.size());
    Eigen::VectorXd dtil_nn = Eigen::VectorXd::Zero(n_);
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const auto& blk = blocks_[bi];
      const int off = offsets_[bi];
      if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i) dtil_nn[off + i] = -x[off + i] * s[off + i];
      } else if (blk.kind == BlockKind::Psd) {
        dtil_psd[bi] =
            Eigen::MatrixXd(Eigen::VectorXd(-psd[bi].sigma.array().square()).asDiagonal());
      }
    }
    Eigen::VectorXd dx_a, dy_a, ds_a;
    direction(dtil_psd, dtil_nn, dx_a, dy_a, ds_a);

    const double ap_aff = std::min(1.0, step_to_boundary(x, dx_a));
    const double ad_aff = std::min(1.0, step_to_boundary(s, ds_a));
    double mu_aff = 0.0;
    if (nu_ > 0)
      mu_aff =
          std::max(cone_inner(x + ap_aff * dx_a, s + ad_aff * ds_a), 0.0) / double(nu_);
    double sigma_c = mu > 0 ? std::pow(mu_aff / mu, 3.0) : 0.0;
    sigma_c = std::clamp(sigma_c, 1e-12, 1.0);

    // Mehrotra combined direction: dtil = sigma mu e - lambda o lambda - corr
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const auto& blk = blocks_[bi];
      const int off = offsets_[bi];
      if (blk.kind == BlockKind::Nonneg) {
        for (int i = 0; i < blk.size; ++i) {
          const double w = nn_w[off + i];
          const double corr = (dx_a[off + i] / w) * (ds_a[off + i] * w);
          dtil_nn[off + i] = sigma_c * mu - x[off + i] * s[off + i] - corr;
        }
      } else if (blk.kind == BlockKind::Psd) {
        const auto& sc = psd[bi];
        const Eigen::MatrixXd dxm = unsvec_block(dx_a.segment(off, blk.dim()), blk.size);
        const Eigen::MatrixXd dsm = unsvec_block(ds_a.segment(off, blk.dim()), blk.size);
        const Eigen::MatrixXd dxt = sc.rinv * dxm * sc.rinv.transpose();
        const Eigen::MatrixXd dst = sc.r.transpose() * dsm * sc.r;
        Eigen::MatrixXd d = -0.5 * (dxt * dst + dst * dxt);
        for (int p = 0; p < blk.size; ++p) d(p, p) += sigma_c * mu - sc.sigma[p] * sc.sigma[p];
        dtil_psd[bi] = 0.5 * (d + d.transpose());
      }
    }
    Eigen::VectorXd dx, dy, ds;
    direction(dtil_psd, dtil_nn, dx, dy, ds);

    const double ap = std::min(1.0, kStepFraction * step_to_boundary(x, dx));
    const double ad = std::min(1.0, kStepFraction * step_to_boundary(s, ds));
    x += ap * dx;
    y += ad * dy;
    s += ad * ds;
    best.iterations = iter + 1;
  }
  if (best.message.empty()) best.message = "iteration limit reached";
  return best;
}

}  // namespace

ConicSolution solve(const ConicProblem& p, double tol, int max_iter) {
  const int n = p.num_vars();
  const int m = p.num_rows();
  Eigen::MatrixXd a = p.a_float();
  Eigen::VectorXd b = p.b_float();
  Eigen::VectorXd c = p.c_float();
  const bool pure_feasibility = (c.size() == 0 || c.lpNorm<Eigen::Infinity>() == 0.0);
  if (c.size() == 0) c = Eigen::VectorXd::Zero(n);

  ConicSolution out;

  if (!pure_feasibility) {
    Ipm ipm(a, b, c, p.layout.blocks, tol, max_iter);
    auto res = ipm.run();
    out.x = res.x;
    out.y = res.y;
    out.iterations = res.iterations;
    out.primal_residual = res.rp_rel;
    out.dual_residual = res.rd_rel;
    out.objective = c.dot(res.x);
    out.status = res.converged ? SolveStatus::Optimal : SolveStatus::Unknown;
    out.message = res.message;
    out.min_cone_margin = check_solution(p, out.x).min_cone_margin;
    return out;
  }

  // pure feasibility: max-min-margin embedding over (z, t, u):
  // maximize t  s.t.  A z + t (A e) = b,  t + u = 1,  z in K, u >= 0, t free;
  // the original point is x = z + t e, whose cone margin is at least t
  std::vector<Block> blocks = p.layout.blocks;
  blocks.push_back({BlockKind::Free, 1});
  blocks.push_back({BlockKind::Nonneg, 1});

  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  {
    int off = 0;
    for (const auto& blk : p.layout.blocks) {
      if (blk.kind == BlockKind::Nonneg) {
        e.segment(off, blk.dim()).setOnes();
      } else if (blk.kind == BlockKind::Psd) {
        int idx = off;
        for (int i = 0; i < blk.size; ++i)
          for (int j = i; j < blk.size; ++j, ++idx) e[idx] = (i == j) ? 1.0 : 0.0;
      }
      off += blk.dim();
    }
  }

  Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(m + 1, n + 2);
  a2.block(0, 0, m, n) = a;
  a2.block(0, n, m, 1) = a * e;
  a2(m, n) = 1.0;
  a2(m, n + 1) = 1.0;
  Eigen::VectorXd b2(m + 1);
  b2.head(m) = b;
  b2[m] = 1.0;
  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n + 2);
  c2[n] = -1.0;  // maximize t

  Ipm ipm(a2, b2, c2, blocks, tol, max_iter);
  auto res = ipm.run();
  const double t_star = res.x.size() == n + 2 ? res.x[n] : 0.0;

  out.x = res.x.head(n) + t_star * e;
  out.y = res.y.head(m);
  out.iterations = res.iterations;
  out.primal_residual = res.rp_rel;
  out.dual_residual = res.rd_rel;
  out.feasibility_margin = t_star;
  out.min_cone_margin = check_solution(p, out.x).min_cone_margin;

  const double thresh = std::max(1e-7, 10 * tol);
  if (!res.converged) {
    out.status = SolveStatus::Unknown;
    out.message = res.message.empty() ? "no convergence" : res.message;
  } else if (t_star > thresh) {
    out.status = SolveStatus::Feasible;
    out.message = "strictly feasible point found";
  } else if (t_star < -thresh) {
    out.status = SolveStatus::InfeasibleEvidence;
    out.message = "maximum cone margin is negative (t* = " + std::to_string(t_star) + ")";
  } else {
    out.status = SolveStatus::Unknown;
    out.message =
        "feasibility margin indistinguishable from zero (t* = " + std::to_string(t_star) + ")";
  }
  return out;
}

}  // namespace excone
