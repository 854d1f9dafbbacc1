#include "qsln/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace qsln {

namespace {

// Reduce a power-basis polynomial in zeta_n modulo the n-th cyclotomic
// polynomial; result has size phi(n).
void reduce_mod_cyclotomic(std::vector<QRational>& p, long n) {
  const auto& phi_poly = cyclotomic_poly(n);
  const long deg = (long)phi_poly.size() - 1;
  for (long i = (long)p.size() - 1; i >= deg; --i) {
    if (p[i].is_zero()) continue;
    QRational c = p[i];
    for (long k = 0; k <= deg; ++k) {
      if (phi_poly[k] == 0) continue;
      p[i - deg + k] -= c * QRational(Rat(phi_poly[k]));
    }
  }
  p.resize(deg);
}

}  // namespace

Scalar Scalar::phase(const Phase& p) {
  Rat r = p.r;  // already in [0,2)
  long den = to_long(rat_den(r));
  long num = to_long(rat_num(r));
  long n = 2 * den;
  std::vector<QRational> c(std::max<long>((long)euler_phi(n), num + 1));
  c[num] = QRational(Rat(1));
  reduce_mod_cyclotomic(c, n);
  return make(n, std::move(c));
}

bool Scalar::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool Scalar::is_rational_function() const {
  for (size_t j = 1; j < c_.size(); ++j)
    if (!c_[j].is_zero()) return false;
  return true;
}

void Scalar::rebase(long m) {
  if (m == n_) return;
  if (m % n_ != 0) throw std::logic_error("Scalar rebase: order mismatch");
  long k = m / n_;
  std::vector<QRational> p((c_.size() - 1) * k + 1);
  for (size_t j = 0; j < c_.size(); ++j) p[j * k] = c_[j];
  reduce_mod_cyclotomic(p, m);
  n_ = m;
  c_ = std::move(p);
}

void Scalar::shrink() {
  if (n_ == 2) return;
  if (is_rational_function()) {
    QRational r = c_[0];
    n_ = 2;
    c_.assign(1, std::move(r));
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (n_ == o.n_) {
    for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    shrink();
    return *this;
  }
  long m = to_long(lcm_int(Int(n_), Int(o.n_)));
  rebase(m);
  Scalar t = o;
  t.rebase(m);
  for (size_t j = 0; j < c_.size(); ++j) c_[j] += t.c_[j];
  shrink();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (n_ == 2 && o.n_ == 2) {
    c_[0] *= o.c_[0];
    return *this;
  }
  if (o.n_ == 2) {
    if (o.c_[0].is_zero()) return *this = Scalar();
    for (auto& x : c_) x *= o.c_[0];
    return *this;
  }
  if (n_ == 2) {
    QRational f = c_[0];
    *this = o;
    if (f.is_zero()) return *this = Scalar();
    for (auto& x : c_) x *= f;
    return *this;
  }
  long m = to_long(lcm_int(Int(n_), Int(o.n_)));
  rebase(m);
  Scalar t = o;
  t.rebase(m);
  std::vector<QRational> p(2 * c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < t.c_.size(); ++j) {
      if (t.c_[j].is_zero()) continue;
      p[i + j] += c_[i] * t.c_[j];
    }
  }
  reduce_mod_cyclotomic(p, m);
  c_ = std::move(p);
  shrink();
  return *this;
}

namespace {

using QPoly = std::vector<QRational>;

long qp_deg(const QPoly& p) {
  for (long i = (long)p.size() - 1; i >= 0; --i)
    if (!p[i].is_zero()) return i;
  return -1;
}

// a mod b with quotient tracked against the cofactor pair.
void qp_divstep(QPoly& a, const QPoly& b, QPoly& sa, const QPoly& sb) {
  long db = qp_deg(b);
  while (qp_deg(a) >= db && qp_deg(a) >= 0) {
    long da = qp_deg(a);
    QRational f = a[da] / b[db];
    long shift = da - db;
    for (long k = 0; k <= db; ++k) a[shift + k] -= f * b[k];
    a[da] = QRational();  // guard against residue from inexact cancellation
    if ((long)sa.size() < (long)sb.size() + shift) sa.resize(sb.size() + shift);
    for (long k = 0; k < (long)sb.size(); ++k) sa[shift + k] -= f * sb[k];
  }
}

}  // namespace

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar inverse of zero");
  if (n_ == 2) return Scalar(c_[0].inverse());
  // extended Euclid against the cyclotomic polynomial over Q(q)
  const auto& phc = cyclotomic_poly(n_);
  QPoly r0(phc.size());
  for (size_t i = 0; i < phc.size(); ++i) r0[i] = QRational(Rat(phc[i]));
  QPoly r1(c_.begin(), c_.end());
  QPoly s0(1), s1(1);
  s1[0] = QRational(Rat(1));
  while (qp_deg(r1) > 0) {
    qp_divstep(r0, r1, s0, s1);
    std::swap(r0, r1);
    std::swap(s0, s1);
  }
  if (qp_deg(r1) != 0) throw std::logic_error("Scalar inverse: unexpected gcd");
  QRational g = r1[0];
  QPoly tmp = std::move(s1);
  reduce_mod_cyclotomic(tmp, n_);
  std::vector<QRational> out(euler_phi(n_));
  for (size_t i = 0; i < out.size(); ++i) out[i] = tmp[i] / g;
  return make(n_, std::move(out));
}

Rat Scalar::q_valuation() const {
  bool any = false;
  Rat v(0);
  for (const auto& x : c_) {
    if (x.is_zero()) continue;
    Rat xv = x.q_valuation();
    if (!any || xv < v) v = xv;
    any = true;
  }
  return any ? v : q_val_infinity();
}

Scalar Scalar::substitute_power(const Rat& s) const {
  Scalar r = *this;
  for (auto& x : r.c_) x = x.substitute_power(s);
  return r;
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (j == 0) {
      os << c_[j].str();
    } else {
      os << "(" << c_[j].str() << ")*ph(" << Rat(2 * (long)j, n_).str() << ")";
    }
  }
  return os.str();
}

}  // namespace qsln
