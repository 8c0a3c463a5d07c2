#include "excone/qsqrt2.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace excone {

Rat Rat::from_double_exact(double x) {
  if (!std::isfinite(x)) throw std::domain_error("Rat::from_double_exact: non-finite");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return Rat(q);
}

Rat Rat::parse(const std::string& input) {
  const std::string s = (!input.empty() && input[0] == '+') ? input.substr(1) : input;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(mpq_class(BigInt(s), BigInt(1)));
    }
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rat::parse: malformed rational '" + s + "'");
  }
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

int QSqrt2::sign() const {
  const int sp = p_.sign();
  const int sq = q_.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // signs differ: p + q*sqrt2 has the sign of p iff p^2 > 2 q^2
  const Rat delta = p_ * p_ - Rat(2) * q_ * q_;
  // delta == 0 would force p = q = 0, excluded above
  return sp * delta.sign();
}

double QSqrt2::to_double() const {
  // one extended-precision fused step keeps the cast faithful to ~1 ulp
  static const double kSqrt2 = std::sqrt(2.0);
  return p_.to_double() + q_.to_double() * kSqrt2;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
  // (p1 + q1 r)(p2 + q2 r) = p1 p2 + 2 q1 q2 + (p1 q2 + q1 p2) r
  Rat p = p_ * o.p_ + Rat(2) * q_ * o.q_;
  Rat q = p_ * o.q_ + q_ * o.p_;
  p_ = std::move(p);
  q_ = std::move(q);
  return *this;
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) {
  if (o.is_zero()) throw std::domain_error("QSqrt2: division by zero");
  // multiply by the conjugate: 1/(p + q r) = (p - q r)/(p^2 - 2 q^2)
  const Rat norm = o.p_ * o.p_ - Rat(2) * o.q_ * o.q_;
  const QSqrt2 conj(o.p_ / norm, -o.q_ / norm);
  return *this *= conj;
}

std::string QSqrt2::str() const {
  if (q_.is_zero()) return p_.str();
  std::string tail = q_.str() + "*sqrt2";
  if (p_.is_zero()) return tail;
  if (q_.sign() > 0) return p_.str() + "+" + tail;
  return p_.str() + "-" + abs(q_).str() + "*sqrt2";
}

namespace {

// strips spaces; the grammar allows optional whitespace around the sign
std::string strip_spaces(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

QSqrt2 QSqrt2::parse(const std::string& input) {
  const std::string s = strip_spaces(input);
  if (s.empty()) throw std::invalid_argument("QSqrt2::parse: empty string");
  const std::string suffix = "*sqrt2";

  // find a '+' or '-' separating the two terms (skip a leading sign)
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }

  auto ends_with_suffix = [&](const std::string& t) {
    return t.size() > suffix.size() &&
           t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0;
  };

  if (split == std::string::npos) {
    if (ends_with_suffix(s)) {
      return QSqrt2(Rat(0), Rat::parse(s.substr(0, s.size() - suffix.size())));
    }
    return QSqrt2(Rat::parse(s));
  }

  const std::string head = s.substr(0, split);
  std::string tail = s.substr(split);  // includes the sign
  if (!ends_with_suffix(tail))
    throw std::invalid_argument("QSqrt2::parse: expected '*sqrt2' term in '" + input + "'");
  tail = tail.substr(0, tail.size() - suffix.size());
  return QSqrt2(Rat::parse(head), Rat::parse(tail));
}

}  // namespace excone
