#include "excone/sos.hpp"

#include <cmath>
#include <stdexcept>

namespace excone {

TrigPoly TrigPoly::from_coeffs(const FourierCoeffs& f) {
  TrigPoly t;
  t.c.resize(f.m() + 1);
  t.c[0] = QSqrt2(1);
  for (int k = 1; k <= f.m(); ++k) t.c[k] = f.a[k - 1] + f.a[k - 1];
  return t;
}

bool TrigPoly::operator==(const TrigPoly& o) const {
  const int top = std::max(max_freq(), o.max_freq());
  for (int k = 0; k <= top; ++k)
    if (coeff(k) != o.coeff(k)) return false;
  return true;
}

double TrigPoly::eval(double x) const {
  double acc = 0.0;
  for (int k = 0; k < int(c.size()); ++k) acc += c[k].to_double() * std::cos(2.0 * M_PI * k * x);
  return acc;
}

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 0) throw std::invalid_argument("MonomialBasis: bad arguments");
  std::vector<int> cur(n, 0);
  // descending lexicographic enumeration of compositions of d into n parts
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n - 1) {
      cur[pos] = rem;
      list_.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rem - e);
    }
  };
  rec(rec, 0, d);
  for (int i = 0; i < int(list_.size()); ++i) index_[list_[i]] = i;
}

int MonomialBasis::index_of(const std::vector<int>& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? -1 : it->second;
}

TrigPoly trig_gram_expand(const ExactSymMatrix& g) {
  const int mp = g.size() - 1;
  TrigPoly out;
  out.c.assign(2 * mp + 1, QSqrt2(0));
  for (int j = 0; j <= mp; ++j) {
    for (int k = 0; k <= mp; ++k) {
      const QSqrt2 half = g.at(j, k) / QSqrt2(2);
      out.c[std::abs(j - k)] += half;
      out.c[j + k] += half;
    }
  }
  return out;
}

TrigPoly sine_gram_expand(const ExactSymMatrix& g) {
  const int mp = g.size();
  TrigPoly out;
  out.c.assign(2 * mp + 1, QSqrt2(0));
  for (int j = 1; j <= mp; ++j) {
    for (int k = 1; k <= mp; ++k) {
      const QSqrt2 half = g.at(j - 1, k - 1) / QSqrt2(2);
      out.c[std::abs(j - k)] += half;
      out.c[j + k] -= half;
    }
  }
  return out;
}

std::vector<QSqrt2> poly_gram_expand(const ExactSymMatrix& g, const MonomialBasis& basis) {
  if (g.size() != basis.size())
    throw std::invalid_argument("poly_gram_expand: Gram size does not match basis");
  const int n = basis.vars();
  MonomialBasis out_basis(n, 2 * basis.degree());
  std::vector<QSqrt2> out(out_basis.size());
  std::vector<int> mu(n);
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = i; j < basis.size(); ++j) {
      const auto& a = basis.exponent(i);
      const auto& b = basis.exponent(j);
      for (int v = 0; v < n; ++v) mu[v] = a[v] + b[v];
      const int idx = out_basis.index_of(mu);
      if (i == j)
        out[idx] += g.at(i, j);
      else
        out[idx] += g.at(i, j) + g.at(i, j);
    }
  }
  return out;
}

std::vector<QSqrt2> expand_target(const ExactSymMatrix& c, int k) {
  if (k < 0) throw std::invalid_argument("expand_target: k must be nonnegative");
  const int n = c.size();
  // q_C as an exponent-vector map
  std::map<std::vector<int>, QSqrt2> poly;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 4;
    poly[e] = c.at(i, i);
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> e2(n, 0);
      e2[i] = 2;
      e2[j] = 2;
      poly[e2] = c.at(i, j) + c.at(i, j);
    }
  }
  for (int round = 0; round < k; ++round) {
    std::map<std::vector<int>, QSqrt2> next;
    for (const auto& [e, coef] : poly) {
      for (int v = 0; v < n; ++v) {
        std::vector<int> e2 = e;
        e2[v] += 2;
        next[e2] += coef;
      }
    }
    poly = std::move(next);
  }
  MonomialBasis out_basis(n, 4 + 2 * k);
  std::vector<QSqrt2> out(out_basis.size());
  for (const auto& [e, coef] : poly) out[out_basis.index_of(e)] = coef;
  return out;
}

bool verify_sos_identity(const GramCertificate& cert, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (cert.kind == GramCertificate::Kind::Trig) {
    TrigPoly expanded = trig_gram_expand(cert.gram);
    if (cert.gram_sin) {
      const TrigPoly sines = sine_gram_expand(*cert.gram_sin);
      const int top = std::max(expanded.max_freq(), sines.max_freq());
      expanded.c.resize(top + 1);
      for (int f = 0; f <= top; ++f) expanded.c[f] += sines.coeff(f);
    }
    if (!(expanded == cert.trig_target)) return fail("trig expansion does not match target");
    if (!is_psd_exact(cert.gram).psd) return fail("cosine Gram is not PSD");
    if (cert.gram_sin && !is_psd_exact(*cert.gram_sin).psd)
      return fail("sine Gram is not PSD");
    return true;
  }
  const auto expanded = poly_gram_expand(cert.gram, cert.basis);
  if (expanded.size() != cert.poly_target.size())
    return fail("polynomial target length mismatch");
  for (std::size_t i = 0; i < expanded.size(); ++i)
    if (expanded[i] != cert.poly_target[i]) return fail("polynomial expansion does not match target");
  if (!is_psd_exact(cert.gram).psd) return fail("Gram is not PSD");
  return true;
}

}  // namespace excone
