#pragma once

#include "qsln/errors.hpp"
#include "qsln/numeric.hpp"
#include "qsln/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsln {

// Truncated Puiseux series in one spectral variable with Scalar coefficients.
//
// A series knows two truncation bounds:
//   hi    - coefficients are only tracked for exponents <= hi;
//   qord  - each tracked coefficient is accurate modulo q^{qord}.
// Exact data uses the +infinity sentinel for both. Coefficients below the
// lowest stored exponent are zero (mod q^{qord}). Arithmetic intersects the
// bounds so an identity verified on a series holds on the surviving window.
class PuiseuxSeries {
 public:
  PuiseuxSeries() : hi_(q_val_infinity()), qord_(q_val_infinity()) {}

  static PuiseuxSeries monomial(const Scalar& c, const Rat& e);
  static PuiseuxSeries one() { return monomial(Scalar(1), Rat(0)); }

  const std::map<Rat, Scalar>& terms() const { return c_; }
  bool known_zero() const { return c_.empty(); }

  const Rat& hi() const { return hi_; }
  const Rat& qord() const { return qord_; }
  void set_hi(const Rat& h);
  void set_qord(const Rat& o) { qord_ = std::min(qord_, o); }

  bool exact() const { return qord_ >= q_val_infinity(); }

  Scalar coeff(const Rat& e) const;      // throws TruncationError above hi
  Scalar residue() const;                // coefficient of z^{-1}

  // lcm of exponent denominators of the stored support.
  Int lattice() const;

  // min q-adic valuation over stored coefficients (qord if none).
  Rat min_coeff_valuation() const;

  PuiseuxSeries operator-() const;
  PuiseuxSeries& operator+=(const PuiseuxSeries& o);
  PuiseuxSeries& operator-=(const PuiseuxSeries& o);
  friend PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }
  friend PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b) { return a -= b; }
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  PuiseuxSeries& operator*=(const PuiseuxSeries& o) { return *this = *this * o; }

  void mul_scalar(const Scalar& c);
  void add_term(const Rat& e, const Scalar& c);

  // z -> q^a z (each coefficient picks up q^{a*e}).
  PuiseuxSeries scale_argument(const Rat& a) const;

  // True when every tracked coefficient vanishes modulo q^{qord}.
  bool is_zero_on_window() const;

  Cplx eval(const NumericContext& ctx, const Cplx& z0) const;

  // Canonical text form: sorted "coeff * z^e" lines.
  std::string str(const std::string& var = "z") const;

 private:
  void clip();
  std::map<Rat, Scalar> c_;
  Rat hi_;
  Rat qord_;
};

inline Scalar series_residue(const PuiseuxSeries& f) { return f.residue(); }

// prod over n >= 0 of (1 - head * ratio^n) truncated at q-order `order`;
// multi-ratio version iterates over all multi-indices. Every ratio must have
// positive q-adic valuation or the product does not truncate.
PuiseuxSeries infinite_product(const PuiseuxSeries& head, const std::vector<QLaurent>& ratios,
                               long order);

// {z}_inf = (z; q^{2(N-1)}, q^{2(N-1)})_inf convenience wrapper.
PuiseuxSeries curly_product(const PuiseuxSeries& head, long N, long order);

// (c q^b z^e ; q^step)_inf as a Global-truncated series.
PuiseuxSeries pochhammer(const Scalar& c, const Rat& zexp, const Rat& base, const Rat& step,
                         long order);

// Inverse of a series of the form 1 + u where every term of u has positive
// q-adic valuation; truncated at q-order `order`.
PuiseuxSeries unit_series_inverse(const PuiseuxSeries& s, long order);

}  // namespace qsln
