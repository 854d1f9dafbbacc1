#pragma once

#include "qsln/cyclotomic.hpp"
#include "qsln/qrational.hpp"

#include <vector>

namespace qsln {

// Root-of-unity phase e^{i*pi*r} with rational r taken mod 2.
struct Phase {
  Rat r;  // in [0,2)
  Phase() : r(0) {}
  explicit Phase(const Rat& x) : r(rat_mod(x, Rat(2))) {}
  friend Phase operator*(const Phase& a, const Phase& b) { return Phase(a.r + b.r); }
  bool operator==(const Phase& o) const { return r == o.r; }
  bool is_one() const { return r == 0; }
  bool is_minus_one() const { return r == 1; }
};

inline Phase phase_mul(const Phase& a, const Phase& b) { return a * b; }

// Element of Q(q^(1/m))[zeta_n]: a rational function of q with coefficients
// extended by a root of unity. Stored in the power basis zeta^j, j < phi(n),
// reduced modulo the n-th cyclotomic polynomial, so the zero test is exact.
class Scalar {
 public:
  Scalar() : n_(2), c_(1) {}
  Scalar(const Rat& r) : n_(2), c_{QRational(r)} {}
  Scalar(long v) : n_(2), c_{QRational(v)} {}
  Scalar(const QRational& r) : n_(2), c_{r} {}
  Scalar(const QLaurent& p) : n_(2), c_{QRational(p)} {}

  static Scalar phase(const Phase& p);
  static Scalar phase(const Rat& r) { return phase(Phase(r)); }
  static Scalar q_pow(const Rat& e) { return Scalar(QRational::q_pow(e)); }

  long order() const { return n_; }
  const std::vector<QRational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational_function() const;  // lies in Q(q), i.e. no root-of-unity part
  const QRational& rational_part() const { return c_[0]; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;

  bool operator==(const Scalar& o) const { return (*this - o).is_zero(); }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // min q-adic valuation over components; zero scalar returns +huge.
  Rat q_valuation() const;

  // q -> q^s on every component (phases untouched).
  Scalar substitute_power(const Rat& s) const;

  std::string str() const;

  // Internal: adopt order and reduced coefficient vector.
  static Scalar make(long n, std::vector<QRational> c) {
    Scalar s;
    s.n_ = n;
    s.c_ = std::move(c);
    s.shrink();
    return s;
  }

 private:
  void rebase(long m);          // n_ must divide m
  void shrink();                // drop root-of-unity order when unused
  long n_;                      // cyclotomic order (even)
  std::vector<QRational> c_;    // size phi(n_)
};

// q-adic valuation sentinel for exact data ("+infinity").
inline Rat q_val_infinity() { return Rat(1073741824); }

}  // namespace qsln
