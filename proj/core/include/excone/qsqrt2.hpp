#pragma once

#include <string>

#include "excone/rational.hpp"

namespace excone {

/// Element of the ordered field Q(sqrt2), stored as p + q*sqrt(2) with
/// reduced rational components. Equality is componentwise (the
/// representation is unique since sqrt(2) is irrational).
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long n) : p_(n) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(const Rat& p) : p_(p) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rat p, Rat q) : p_(std::move(p)), q_(std::move(q)) {}

  static QSqrt2 sqrt2() { return QSqrt2(Rat(0), Rat(1)); }

  const Rat& rational_part() const { return p_; }
  const Rat& sqrt2_part() const { return q_; }

  bool is_rational() const { return q_.is_zero(); }
  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }

  /// Exact sign of the real number p + q*sqrt(2).
  /// When p and q disagree in sign the decision reduces to comparing
  /// p^2 with 2 q^2.
  int sign() const;

  double to_double() const;

  QSqrt2 operator-() const { return QSqrt2(-p_, -q_); }
  QSqrt2& operator+=(const QSqrt2& o) { p_ += o.p_; q_ += o.q_; return *this; }
  QSqrt2& operator-=(const QSqrt2& o) { p_ -= o.p_; q_ -= o.q_; return *this; }
  QSqrt2& operator*=(const QSqrt2& o);
  QSqrt2& operator/=(const QSqrt2& o);

  friend QSqrt2 operator+(QSqrt2 a, const QSqrt2& b) { a += b; return a; }
  friend QSqrt2 operator-(QSqrt2 a, const QSqrt2& b) { a -= b; return a; }
  friend QSqrt2 operator*(QSqrt2 a, const QSqrt2& b) { a *= b; return a; }
  friend QSqrt2 operator/(QSqrt2 a, const QSqrt2& b) { a /= b; return a; }
  friend bool operator==(const QSqrt2& a, const QSqrt2& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  friend bool operator!=(const QSqrt2& a, const QSqrt2& b) { return !(a == b); }
  friend bool operator<(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() <= 0; }
  friend bool operator>(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() > 0; }
  friend bool operator>=(const QSqrt2& a, const QSqrt2& b) { return (a - b).sign() >= 0; }

  /// Canonical text form of the grammar
  ///   QS := RAT | RAT ("+"|"-") RAT "*sqrt2" | RAT "*sqrt2"
  /// e.g. "16/27", "-2413803/3254580+1777340/3254580*sqrt2".
  /// Printing and parsing round-trip bit-exactly.
  std::string str() const;
  static QSqrt2 parse(const std::string& s);

 private:
  Rat p_, q_;
};

/// Exact sign in {-1, 0, +1} of x = p + q*sqrt(2).
inline int sign_of(const QSqrt2& x) { return x.sign(); }

}  // namespace excone
