#pragma once

#include "qsln/qlaurent.hpp"

namespace qsln {

// Rational function in q: quotient of two QLaurent. The denominator is
// nonzero and unit-scaled (lowest term 1*q^0); gcd reduction runs lazily once
// the representation grows past a size threshold, so equality goes through
// cross-multiplication.
class QRational {
 public:
  QRational() : num_(), den_(Rat(1)) {}
  QRational(const Rat& c) : num_(c), den_(Rat(1)) {}
  QRational(long n) : num_(Rat(n)), den_(Rat(1)) {}
  QRational(const QLaurent& n) : num_(n), den_(Rat(1)) {}
  QRational(QLaurent n, QLaurent d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static QRational q_pow(const Rat& e) { return QRational(QLaurent::q_pow(e)); }

  const QLaurent& num() const { return num_; }
  const QLaurent& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_rat() const { return den_.is_one() && num_.is_constant(); }
  Rat as_rat() const { return num_.is_zero() ? Rat(0) : num_.lead_low_coeff(); }

  // q-adic valuation (lowest exponent); den is normalized to valuation 0.
  Rat q_valuation() const { return num_.is_zero() ? Rat(0) : num_.min_exp(); }

  bool is_monomial_poly() const { return den_.is_one() && num_.is_monomial(); }
  void mul_rat(const Rat& c) { num_.mul_rat(c); }

  QRational operator-() const;
  QRational& operator+=(const QRational& o);
  QRational& operator-=(const QRational& o);
  QRational& operator*=(const QRational& o);
  QRational& operator/=(const QRational& o);
  friend QRational operator+(QRational a, const QRational& b) { return a += b; }
  friend QRational operator-(QRational a, const QRational& b) { return a -= b; }
  friend QRational operator*(QRational a, const QRational& b) { return a *= b; }
  friend QRational operator/(QRational a, const QRational& b) { return a /= b; }

  QRational inverse() const;

  bool operator==(const QRational& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    return num_ * o.den_ == o.num_ * den_;
  }
  bool operator!=(const QRational& o) const { return !(*this == o); }

  // force full gcd reduction (used before printing/serialization)
  void reduce();

  QRational substitute_power(const Rat& s) const {
    return QRational(num_.substitute_power(s), den_.substitute_power(s));
  }
  QRational bar() const { return substitute_power(Rat(-1)); }

  std::string str() const;

 private:
  void normalize();
  QLaurent num_, den_;
};

inline QRational qr_qint(long n) { return QRational(qint(n)); }

}  // namespace qsln
