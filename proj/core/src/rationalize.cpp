#include "excone/rationalize.hpp"

#include <cmath>
#include <stdexcept>

namespace excone {

namespace {

// best approximation of the exact rational v with denominator <= bound
Rat best_approx(const Rat& v, const BigInt& bound, int depth) {
  if (v.den() <= bound) return v;
  // continued fraction state: p_{k-1}/q_{k-1}, p_k/q_k
  BigInt num = v.num(), den = v.den();
  BigInt p_prev = 1, q_prev = 0;  // k-1
  BigInt p_cur, q_cur;            // k
  {
    BigInt a = num / den;  // floor for positive den; fix for negatives below
    if (num < 0 && a * den != num) a -= 1;
    p_cur = a;
    q_cur = 1;
    BigInt rem = num - a * den;
    num = den;
    den = rem;
  }
  for (int it = 0; it < depth && den != 0; ++it) {
    BigInt a = num / den;
    BigInt p_next = a * p_cur + p_prev;
    BigInt q_next = a * q_cur + q_prev;
    if (q_next > bound) {
      // semiconvergent: largest t with q_prev + t q_cur <= bound
      const BigInt t = (bound - q_prev) / q_cur;
      const Rat conv(p_cur, q_cur);
      if (t <= 0) return conv;
      const Rat semi(p_prev + t * p_cur, q_prev + t * q_cur);
      const Rat e1 = abs(v - conv), e2 = abs(v - semi);
      if (e2 < e1) return semi;
      if (e1 < e2) return conv;
      return conv.den() <= semi.den() ? conv : semi;
    }
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    BigInt rem = num - a * den;
    num = den;
    den = rem;
  }
  return Rat(p_cur, q_cur);
}

}  // namespace

Rat round_rational(double x, const RoundingSpec& spec) {
  if (spec.denominator_bound < 1)
    throw std::invalid_argument("round_rational: denominator bound must be >= 1");
  const Rat exact = Rat::from_double_exact(x);
  return best_approx(exact, BigInt(spec.denominator_bound), spec.continued_fraction_depth);
}

QSqrt2 round_scalar(double x, const RoundingSpec& spec) {
  if (!std::isfinite(x)) throw std::domain_error("round_scalar: non-finite input");
  const QSqrt2 plain(round_rational(x, spec));
  if (!spec.allow_sqrt2) return plain;

  static const double kSqrt2 = std::sqrt(2.0);
  std::vector<QSqrt2> cands;
  cands.push_back(plain);
  const Rat q_only = round_rational(x / kSqrt2, spec);
  cands.emplace_back(Rat(0), q_only);
  {
    // integer part plus a sqrt2 remainder
    const double p0 = std::nearbyint(x);
    const Rat q = round_rational((x - p0) / kSqrt2, spec);
    cands.emplace_back(Rat::from_double_exact(p0), q);
  }
  {
    // sqrt2 part first, rational remainder
    const Rat p = round_rational(x - q_only.to_double() * kSqrt2, spec);
    cands.emplace_back(p, q_only);
  }

  const QSqrt2* best = nullptr;
  double best_err = 0.0;
  BigInt best_den = 0;
  for (const auto& c : cands) {
    const double err = std::abs(x - c.to_double());
    BigInt den = c.rational_part().den();
    if (c.sqrt2_part().den() > den) den = c.sqrt2_part().den();
    if (!best || err < best_err || (err == best_err && den < best_den)) {
      best = &c;
      best_err = err;
      best_den = den;
    }
  }
  return *best;
}

std::vector<QSqrt2> round_point(const Eigen::VectorXd& x, const ConicProblem& p,
                                const RoundingSpec& spec) {
  if (x.size() != p.num_vars()) throw std::invalid_argument("round_point: dimension mismatch");
  std::vector<QSqrt2> out(p.num_vars());
  const QSqrt2 r2 = QSqrt2::sqrt2();
  const double fr2 = std::sqrt(2.0);
  for (std::size_t bi = 0; bi < p.layout.blocks.size(); ++bi) {
    const auto& blk = p.layout.blocks[bi];
    const int off = p.layout.block_offset(int(bi));
    if (blk.kind == BlockKind::Psd) {
      int idx = off;
      for (int i = 0; i < blk.size; ++i) {
        for (int j = i; j < blk.size; ++j, ++idx) {
          if (i == j) {
            out[idx] = round_scalar(x[idx], spec);
          } else {
            const QSqrt2 entry = round_scalar(x[idx] / fr2, spec);
            out[idx] = r2 * entry;
          }
        }
      }
    } else {
      for (int i = 0; i < blk.dim(); ++i) out[off + i] = round_scalar(x[off + i], spec);
    }
  }
  return out;
}

ProjectionOutcome project_and_certify(const std::vector<QSqrt2>& candidate,
                                      const ConicProblem& p) {
  ProjectionOutcome out;
  std::vector<QSqrt2> residual = p.residual_exact(candidate);
  bool zero = true;
  for (const auto& r : residual)
    if (!r.is_zero()) {
      zero = false;
      break;
    }

  std::vector<QSqrt2> x = candidate;
  if (!zero) {
    const ExactMatrix m = p.equality_matrix();
    const LinearSolveResult delta = solve_linear_exact(m, residual);
    if (!delta.consistent) {
      out.failure = "projection inconsistent";
      return out;
    }
    double norm2 = 0.0;
    for (int i = 0; i < p.num_vars(); ++i) {
      x[i] += delta.x[i];
      const double d = delta.x[i].to_double();
      norm2 += d * d;
    }
    out.correction_norm = std::sqrt(norm2);
    // the projected point must satisfy the rows exactly
    for (const auto& r : p.residual_exact(x)) {
      if (!r.is_zero()) {
        out.failure = "projection inconsistent";
        return out;
      }
    }
  }

  for (std::size_t bi = 0; bi < p.layout.blocks.size(); ++bi) {
    const auto& blk = p.layout.blocks[bi];
    const int off = p.layout.block_offset(int(bi));
    const std::string name =
        bi < p.layout.names.size() && !p.layout.names[bi].empty()
            ? p.layout.names[bi]
            : "block" + std::to_string(bi);
    if (blk.kind == BlockKind::Nonneg) {
      for (int i = 0; i < blk.dim(); ++i) {
        if (sign_of(x[off + i]) < 0) {
          out.failure =
              "cone check failed: " + name + ", coordinate " + std::to_string(i);
          return out;
        }
      }
    } else if (blk.kind == BlockKind::Psd) {
      const ExactSymMatrix mat = unsvec_exact(blk.size, &x[off]);
      if (!is_psd_exact(mat).psd) {
        out.failure = "cone check failed: " + name + ", PSD";
        return out;
      }
    }
  }
  out.ok = true;
  out.x = std::move(x);
  return out;
}

ExactSymMatrix block_matrix(const ConicProblem& p, const std::vector<QSqrt2>& x, int block) {
  const auto& blk = p.layout.blocks.at(block);
  const int off = p.layout.block_offset(block);
  const int side = blk.kind == BlockKind::Psd
                       ? blk.size
                       : int((std::sqrt(8.0 * blk.dim() + 1) - 1) / 2);
  return unsvec_exact(side, &x[off]);
}

}  // namespace excone
