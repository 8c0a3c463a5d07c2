#include "excone/solver.hpp"

#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace excone {

using ordered_json = nlohmann::ordered_json;

int svec_dim(int side) { return side * (side + 1) / 2; }

int svec_index(int i, int j, int side) {
  if (i > j) std::swap(i, j);
  return i * (2 * side - i + 1) / 2 + (j - i);
}

std::vector<QSqrt2> svec_exact(const ExactSymMatrix& m) {
  const int n = m.size();
  std::vector<QSqrt2> v(svec_dim(n));
  const QSqrt2 r2 = QSqrt2::sqrt2();
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++idx) v[idx] = (i == j) ? m.at(i, j) : r2 * m.at(i, j);
  return v;
}

ExactSymMatrix unsvec_exact(int side, const QSqrt2* coords) {
  ExactSymMatrix m(side);
  const QSqrt2 r2 = QSqrt2::sqrt2();
  int idx = 0;
  for (int i = 0; i < side; ++i)
    for (int j = i; j < side; ++j, ++idx)
      m.set(i, j, (i == j) ? coords[idx] : coords[idx] / r2);
  return m;
}

Eigen::MatrixXd unsvec_float(int side, const Eigen::VectorXd& coords) {
  Eigen::MatrixXd m(side, side);
  const double inv_r2 = 1.0 / std::sqrt(2.0);
  int idx = 0;
  for (int i = 0; i < side; ++i) {
    for (int j = i; j < side; ++j, ++idx) {
      if (i == j)
        m(i, i) = coords[idx];
      else
        m(i, j) = m(j, i) = coords[idx] * inv_r2;
    }
  }
  return m;
}

Eigen::VectorXd svec_float(const Eigen::MatrixXd& m) {
  const int side = int(m.rows());
  Eigen::VectorXd v(svec_dim(side));
  const double r2 = std::sqrt(2.0);
  int idx = 0;
  for (int i = 0; i < side; ++i)
    for (int j = i; j < side; ++j, ++idx) v[idx] = (i == j) ? m(i, i) : m(i, j) * r2;
  return v;
}

int VarLayout::add(BlockKind kind, int size, std::string name) {
  Block blk{kind, size};
  offsets.push_back(total);
  blocks.push_back(blk);
  names.push_back(std::move(name));
  total += blk.dim();
  return int(blocks.size()) - 1;
}

Eigen::MatrixXd ConicProblem::a_float() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_rows(), num_vars());
  for (int r = 0; r < num_rows(); ++r)
    for (const auto& [idx, coef] : rows[r].terms) a(r, idx) += coef.to_double();
  return a;
}

Eigen::VectorXd ConicProblem::b_float() const {
  Eigen::VectorXd b(num_rows());
  for (int r = 0; r < num_rows(); ++r) b[r] = rows[r].rhs.to_double();
  return b;
}

Eigen::VectorXd ConicProblem::c_float() const {
  if (objective.empty()) return Eigen::VectorXd();
  Eigen::VectorXd c(num_vars());
  for (int i = 0; i < num_vars(); ++i) c[i] = objective[i].to_double();
  return c;
}

ExactMatrix ConicProblem::equality_matrix() const {
  ExactMatrix m(num_rows(), num_vars());
  for (int r = 0; r < num_rows(); ++r)
    for (const auto& [idx, coef] : rows[r].terms) m.at(r, idx) += coef;
  return m;
}

std::vector<QSqrt2> ConicProblem::residual_exact(const std::vector<QSqrt2>& x) const {
  if (int(x.size()) != num_vars())
    throw std::invalid_argument("residual_exact: point has wrong dimension");
  std::vector<QSqrt2> res(num_rows());
  for (int r = 0; r < num_rows(); ++r) {
    QSqrt2 acc = rows[r].rhs;
    for (const auto& [idx, coef] : rows[r].terms) acc -= coef * x[idx];
    res[r] = std::move(acc);
  }
  return res;
}

std::string ConicProblem::to_json() const {
  ordered_json j;
  j["blocks"] = ordered_json::array();
  for (std::size_t i = 0; i < layout.blocks.size(); ++i) {
    const auto& blk = layout.blocks[i];
    const char* kind = blk.kind == BlockKind::Nonneg  ? "nonneg"
                       : blk.kind == BlockKind::Psd ? "psd"
                                                    : "free";
    j["blocks"].push_back({{"kind", kind},
                           {"size", blk.size},
                           {"name", i < layout.names.size() ? layout.names[i] : ""}});
  }
  if (!objective.empty()) {
    auto& c = j["c"] = ordered_json::array();
    for (const auto& v : objective) c.push_back(v.str());
  }
  auto& rws = j["rows"] = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json dense = ordered_json::array();
    std::vector<QSqrt2> full(num_vars());
    for (const auto& [idx, coef] : row.terms) full[idx] += coef;
    for (const auto& v : full) dense.push_back(v.str());
    rws.push_back({{"name", row.name}, {"a", dense}, {"b", row.rhs.str()}});
  }
  return j.dump(2);
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::InfeasibleEvidence: return "infeasible-evidence";
    default: return "unknown";
  }
}

SolutionCheck check_solution(const ConicProblem& p, const Eigen::VectorXd& x) {
  SolutionCheck out;
  if (x.size() != p.num_vars()) {
    out.equality_residual = std::numeric_limits<double>::infinity();
    out.min_cone_margin = -std::numeric_limits<double>::infinity();
    return out;
  }
  const Eigen::VectorXd r = p.b_float() - p.a_float() * x;
  out.equality_residual = r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t bi = 0; bi < p.layout.blocks.size(); ++bi) {
    const auto& blk = p.layout.blocks[bi];
    const int off = p.layout.block_offset(int(bi));
    if (blk.kind == BlockKind::Nonneg) {
      margin = std::min(margin, x.segment(off, blk.dim()).minCoeff());
    } else if (blk.kind == BlockKind::Psd) {
      const Eigen::MatrixXd m = unsvec_float(blk.size, x.segment(off, blk.dim()));
      SymMatrix sm(blk.size);
      for (int i = 0; i < blk.size; ++i)
        for (int j = i; j < blk.size; ++j) sm.set(i, j, m(i, j));
      const auto ev = eig_sym(sm);
      margin = std::min(margin, ev.front());
    }
  }
  if (margin == std::numeric_limits<double>::infinity()) margin = 0.0;
  out.min_cone_margin = margin;
  return out;
}

namespace {

const QSqrt2 kHalf(Rat(1, 2));
const QSqrt2 kSqrt2Half(Rat(0), Rat(1, 2));  // sqrt2 / 2

// Adds the cosine-coefficient contributions of v^T G v (cosine basis
// 0..m') to per-frequency coefficient accumulators over svec(G).
// An unordered pair {j,k}, j != k, contributes G_jk = svec/sqrt2 to the
// frequencies k-j and j+k; a diagonal entry contributes G_jj/2 to 0 and 2j.
void accumulate_cos_gram(int m_prime, int block_offset,
                         std::vector<std::vector<std::pair<int, QSqrt2>>>& freq_terms) {
  for (int j = 0; j <= m_prime; ++j) {
    for (int k = j; k <= m_prime; ++k) {
      const int coord = block_offset + svec_index(j, k, m_prime + 1);
      const QSqrt2 w = (j == k) ? kHalf : kSqrt2Half;
      freq_terms[k - j].emplace_back(coord, w);
      freq_terms[j + k].emplace_back(coord, w);
    }
  }
}

void accumulate_sin_gram(int m_prime, int block_offset,
                         std::vector<std::vector<std::pair<int, QSqrt2>>>& freq_terms) {
  for (int j = 1; j <= m_prime; ++j) {
    for (int k = j; k <= m_prime; ++k) {
      const int coord = block_offset + svec_index(j - 1, k - 1, m_prime);
      const QSqrt2 w = (j == k) ? kHalf : kSqrt2Half;
      freq_terms[k - j].emplace_back(coord, w);
      freq_terms[j + k].emplace_back(coord, -w);
    }
  }
}

}  // namespace

ConicProblem build_seed_problem(const Rat& eps, int m, int m_prime, SeedMode mode,
                                int family_n) {
  if (m < 1 || m_prime < 1 || m_prime > m)
    throw std::invalid_argument("build_seed_problem: need 1 <= m' <= m");
  ConicProblem p;
  const int a_blk = p.layout.add(BlockKind::Nonneg, m, "a");
  const int a_off = p.layout.block_offset(a_blk);

  const bool sos_mode = (mode == SeedMode::SosCos || mode == SeedMode::SosFull);
  if (sos_mode) {
    const int bc = p.layout.add(BlockKind::Psd, m_prime + 1, "B_cos");
    const int bc_off = p.layout.block_offset(bc);
    int bs_off = -1;
    if (mode == SeedMode::SosFull) {
      const int bs = p.layout.add(BlockKind::Psd, m_prime, "B_sin");
      bs_off = p.layout.block_offset(bs);
    }
    const int top = std::max(2 * m_prime, m);
    std::vector<std::vector<std::pair<int, QSqrt2>>> freq_terms(top + 1);
    accumulate_cos_gram(m_prime, bc_off, freq_terms);
    if (bs_off >= 0) accumulate_sin_gram(m_prime, bs_off, freq_terms);
    for (int l = 0; l <= top; ++l) {
      ConicProblem::Row row;
      row.name = "coeff[" + std::to_string(l) + "]";
      row.terms = freq_terms[l];
      if (l == 0) {
        row.rhs = QSqrt2(1);
      } else if (l <= m) {
        row.terms.emplace_back(a_off + (l - 1), QSqrt2(-2));
        row.rhs = QSqrt2(0);
      } else {
        row.rhs = QSqrt2(0);
      }
      p.add_row(std::move(row));
    }
  } else {
    const int nn = (mode == SeedMode::Psd5) ? 5 : family_n;
    if (nn < 5) throw std::invalid_argument("build_seed_problem: family size must be >= 5");
    const int pb = p.layout.add(BlockKind::Psd, nn, "A_compression");
    const int p_off = p.layout.block_offset(pb);
    const QSqrt2 r2 = QSqrt2::sqrt2();
    for (int i = 0; i < nn; ++i) {
      for (int j = i; j < nn; ++j) {
        ConicProblem::Row row;
        row.name = "entry[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
        row.terms.emplace_back(p_off + svec_index(i, j, nn), QSqrt2(1));
        // compression pattern: row/col 1 carries sqrt2 a_k, the rest
        // a_{|i-j|} + a_{i+j}; indices here are 0-based
        if (i == 0 && j == 0) {
          row.rhs = QSqrt2(1);
        } else if (i == 0) {
          // entry sqrt2 a_j; svec coordinate = sqrt2 * entry = 2 a_j
          if (j <= m) row.terms.emplace_back(a_off + (j - 1), QSqrt2(-2));
          row.rhs = QSqrt2(0);
        } else {
          const QSqrt2 scale = (i == j) ? QSqrt2(1) : r2;
          const int d1 = j - i, d2 = i + j;
          if (d1 >= 1 && d1 <= m) row.terms.emplace_back(a_off + (d1 - 1), -scale);
          if (d2 >= 1 && d2 <= m) row.terms.emplace_back(a_off + (d2 - 1), -scale);
          row.rhs = (i == j) ? QSqrt2(1) : QSqrt2(0);  // a_0 = 1 on the diagonal
        }
        p.add_row(std::move(row));
      }
    }
  }

  // pairing equality <A5(a), H> = -eps, linear in a
  {
    const ExactSymMatrix h = horn_matrix();
    ConicProblem::Row row;
    row.name = "horn-pairing";
    for (int k = 1; k <= m; ++k) {
      FourierCoeffs unit;
      unit.a.assign(k, QSqrt2(0));
      unit.a[k - 1] = QSqrt2(1);
      const QSqrt2 w = frobenius_exact(compression(unit, 5), h) - QSqrt2(5);
      if (!w.is_zero()) row.terms.emplace_back(a_off + (k - 1), w);
    }
    row.rhs = QSqrt2(Rat(0) - eps) - QSqrt2(5);
    p.add_row(std::move(row));
  }
  return p;
}

ConicProblem build_ecop_problem(const ExactSymMatrix& a, int k, const Rat& eps_prime) {
  if (k < 1 || k > 2) throw std::invalid_argument("build_ecop_problem: k must be 1 or 2");
  const int n = a.size();
  ConicProblem p;
  const int c_blk = p.layout.add(BlockKind::Free, svec_dim(n), "C");
  const int c_off = p.layout.block_offset(c_blk);
  const MonomialBasis basis(n, 2 + k);
  const int g_blk = p.layout.add(BlockKind::Psd, basis.size(), "G");
  const int g_off = p.layout.block_offset(g_blk);
  const QSqrt2 r2 = QSqrt2::sqrt2();

  // per-monomial rows: Gram expansion minus target expansion = 0
  const MonomialBasis out_basis(n, 4 + 2 * k);
  std::vector<ConicProblem::Row> rows(out_basis.size());
  for (int mu = 0; mu < out_basis.size(); ++mu) {
    rows[mu].name = "match[" + std::to_string(mu) + "]";
    rows[mu].rhs = QSqrt2(0);
  }
  std::vector<int> mu(n);
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = i; j < basis.size(); ++j) {
      const auto& ea = basis.exponent(i);
      const auto& eb = basis.exponent(j);
      for (int v = 0; v < n; ++v) mu[v] = ea[v] + eb[v];
      const int idx = out_basis.index_of(mu);
      // diagonal contributes G_ii, off-diagonal 2 G_ij = sqrt2 * svec
      rows[idx].terms.emplace_back(g_off + svec_index(i, j, basis.size()),
                                   (i == j) ? QSqrt2(1) : r2);
    }
  }
  // target side: coefficient of (sum x^2)^k q_C per C entry (svec coords)
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      ExactSymMatrix unit(n);
      unit.set(i, j, QSqrt2(1));
      const auto target = expand_target(unit, k);
      const QSqrt2 scale = (i == j) ? QSqrt2(1) : QSqrt2(1) / r2;  // entry per svec coord
      const int coord = c_off + svec_index(i, j, n);
      for (int muI = 0; muI < out_basis.size(); ++muI) {
        if (!target[muI].is_zero()) rows[muI].terms.emplace_back(coord, -(target[muI] * scale));
      }
    }
  }
  for (auto& row : rows) p.add_row(std::move(row));

  // pairing equality <C, A> = -eps'
  ConicProblem::Row pairing;
  pairing.name = "dnn-pairing";
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const QSqrt2 coef = (i == j) ? a.at(i, i) : r2 * a.at(i, j);
      if (!coef.is_zero()) pairing.terms.emplace_back(c_off + svec_index(i, j, n), coef);
    }
  }
  pairing.rhs = QSqrt2(Rat(0) - eps_prime);
  p.add_row(std::move(pairing));
  return p;
}

ConicProblem build_poly_sos_problem(const std::vector<QSqrt2>& target, int n, int d) {
  const MonomialBasis basis(n, d);
  const MonomialBasis out_basis(n, 2 * d);
  if (int(target.size()) != out_basis.size())
    throw std::invalid_argument("build_poly_sos_problem: target length mismatch");
  ConicProblem p;
  const int g_blk = p.layout.add(BlockKind::Psd, basis.size(), "G");
  const int g_off = p.layout.block_offset(g_blk);
  const QSqrt2 r2 = QSqrt2::sqrt2();
  std::vector<ConicProblem::Row> rows(out_basis.size());
  for (int muI = 0; muI < out_basis.size(); ++muI) {
    rows[muI].name = "match[" + std::to_string(muI) + "]";
    rows[muI].rhs = target[muI];
  }
  std::vector<int> mu(n);
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = i; j < basis.size(); ++j) {
      const auto& ea = basis.exponent(i);
      const auto& eb = basis.exponent(j);
      for (int v = 0; v < n; ++v) mu[v] = ea[v] + eb[v];
      rows[out_basis.index_of(mu)].terms.emplace_back(
          g_off + svec_index(i, j, basis.size()), (i == j) ? QSqrt2(1) : r2);
    }
  }
  for (auto& row : rows) p.add_row(std::move(row));
  return p;
}

ConicProblem build_trig_sos_problem(const TrigPoly& target, int m_prime, bool with_sine) {
  if (target.max_freq() > 2 * m_prime)
    throw std::invalid_argument("build_trig_sos_problem: basis too small for target");
  ConicProblem p;
  const int bc = p.layout.add(BlockKind::Psd, m_prime + 1, "B_cos");
  const int bc_off = p.layout.block_offset(bc);
  int bs_off = -1;
  if (with_sine) {
    const int bs = p.layout.add(BlockKind::Psd, m_prime, "B_sin");
    bs_off = p.layout.block_offset(bs);
  }
  std::vector<std::vector<std::pair<int, QSqrt2>>> freq_terms(2 * m_prime + 1);
  accumulate_cos_gram(m_prime, bc_off, freq_terms);
  if (bs_off >= 0) accumulate_sin_gram(m_prime, bs_off, freq_terms);
  for (int l = 0; l <= 2 * m_prime; ++l) {
    ConicProblem::Row row;
    row.name = "coeff[" + std::to_string(l) + "]";
    row.terms = std::move(freq_terms[l]);
    row.rhs = target.coeff(l);
    p.add_row(std::move(row));
  }
  return p;
}

ConicProblem build_spn_problem(const SymMatrix& a) {
  const int n = a.size();
  ConicProblem p;
  const int pb = p.layout.add(BlockKind::Psd, n, "P");
  const int p_off = p.layout.block_offset(pb);
  const int nb = p.layout.add(BlockKind::Nonneg, svec_dim(n), "N");
  const int n_off = p.layout.block_offset(nb);
  const QSqrt2 r2 = QSqrt2::sqrt2();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      ConicProblem::Row row;
      row.name = "split[" + std::to_string(i) + "," + std::to_string(j) + "]";
      const int idx = svec_index(i, j, n);
      const QSqrt2 aij = QSqrt2(Rat::from_double_exact(a.at(i, j)));
      if (i == j) {
        row.terms.emplace_back(p_off + idx, QSqrt2(1));
        row.terms.emplace_back(n_off + idx, QSqrt2(1));
        row.rhs = aij;
      } else {
        row.terms.emplace_back(p_off + idx, QSqrt2(1));   // svec(P)
        row.terms.emplace_back(n_off + idx, r2);          // plain N entry
        row.rhs = r2 * aij;
      }
      p.add_row(std::move(row));
    }
  }
  return p;
}

}  // namespace excone
