#include "qsln/qrational.hpp"

#include <stdexcept>

namespace qsln {

void QRational::normalize() {
  if (den_.is_zero()) throw std::domain_error("QRational with zero denominator");
  if (num_.is_zero()) {
    den_ = QLaurent(Rat(1));
    return;
  }
  if (den_.is_monomial()) {
    num_.mul_monomial(Rat(1) / den_.lead_low_coeff(), -den_.min_exp());
    den_ = QLaurent(Rat(1));
    return;
  }
  if (num_.size() + den_.size() > 24) {
    QLaurent g = qlaurent_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = qlaurent_div_exact(num_, g);
      den_ = qlaurent_div_exact(den_, g);
    }
    if (den_.is_monomial()) {
      num_.mul_monomial(Rat(1) / den_.lead_low_coeff(), -den_.min_exp());
      den_ = QLaurent(Rat(1));
      return;
    }
  }
  // unit scaling: denominator's lowest term becomes 1*q^0
  Rat c = den_.lead_low_coeff();
  Rat e = den_.min_exp();
  if (c != 1 || e != 0) {
    den_.mul_monomial(Rat(1) / c, -e);
    num_.mul_monomial(Rat(1) / c, -e);
  }
}

void QRational::reduce() {
  if (num_.is_zero() || den_.is_one()) return;
  QLaurent g = qlaurent_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = qlaurent_div_exact(num_, g);
    den_ = qlaurent_div_exact(den_, g);
  }
  Rat c = den_.lead_low_coeff();
  Rat e = den_.min_exp();
  if (c != 1 || e != 0) {
    den_.mul_monomial(Rat(1) / c, -e);
    num_.mul_monomial(Rat(1) / c, -e);
  }
}

QRational QRational::operator-() const {
  QRational r = *this;
  r.num_ = -r.num_;
  return r;
}

QRational& QRational::operator+=(const QRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (num_.is_zero()) den_ = QLaurent(Rat(1));
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

QRational& QRational::operator-=(const QRational& o) { return *this += -o; }

QRational& QRational::operator*=(const QRational& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = QRational();
  if (o.is_monomial_poly()) {
    num_.mul_monomial(o.num_.lead_low_coeff(), o.num_.min_exp());
    return *this;
  }
  if (is_monomial_poly()) {
    Rat c = num_.lead_low_coeff(), e = num_.min_exp();
    num_ = o.num_;
    num_.mul_monomial(c, e);
    den_ = o.den_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

QRational& QRational::operator/=(const QRational& o) {
  if (o.is_zero()) throw std::domain_error("QRational division by zero");
  if (is_zero()) return *this;
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

QRational QRational::inverse() const {
  if (is_zero()) throw std::domain_error("QRational inverse of zero");
  return QRational(den_, num_);
}

std::string QRational::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace qsln
