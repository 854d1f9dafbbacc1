#pragma once

#include "qsln/rational.hpp"

#include <utility>
#include <vector>

namespace qsln {

// Laurent polynomial in q with rational exponents and exact rational
// coefficients. Terms are kept sorted by exponent with no zero coefficients.
class QLaurent {
 public:
  using Term = std::pair<Rat, Rat>;  // (exponent, coefficient)

  QLaurent() = default;
  explicit QLaurent(const Rat& c) {
    if (c != 0) t_.emplace_back(Rat(0), c);
  }
  QLaurent(long num, long den) : QLaurent(Rat(num, den)) {}

  static QLaurent monomial(const Rat& coeff, const Rat& exp) {
    QLaurent p;
    if (coeff != 0) p.t_.emplace_back(exp, coeff);
    return p;
  }
  static QLaurent q_pow(const Rat& exp) { return monomial(Rat(1), exp); }

  bool is_zero() const { return t_.empty(); }
  bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }
  bool is_monomial() const { return t_.size() == 1; }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }

  size_t size() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }

  // Lowest/highest exponent; caller must check !is_zero().
  const Rat& min_exp() const { return t_.front().first; }
  const Rat& max_exp() const { return t_.back().first; }
  const Rat& lead_low_coeff() const { return t_.front().second; }

  Rat coeff(const Rat& exp) const;

  QLaurent operator-() const;
  QLaurent& operator+=(const QLaurent& o);
  QLaurent& operator-=(const QLaurent& o);
  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
  QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

  void mul_monomial(const Rat& coeff, const Rat& exp);
  void mul_rat(const Rat& c);

  bool operator==(const QLaurent& o) const { return t_ == o.t_; }
  bool operator!=(const QLaurent& o) const { return !(*this == o); }

  // q -> q^s substitution (scales every exponent).
  QLaurent substitute_power(const Rat& s) const;

  // q -> q^{-1} (negates exponents).
  QLaurent bar() const;

  // lcm of the exponent denominators (1 if empty).
  Int exponent_lattice() const;

  std::string str() const;

  // Internal: adopt a sorted, zero-free term vector.
  static QLaurent from_sorted(std::vector<Term> t) {
    QLaurent p;
    p.t_ = std::move(t);
    return p;
  }

 private:
  std::vector<Term> t_;
};

// Symmetric q-integer [n] = (q^n - q^{-n})/(q - q^{-1}).
QLaurent qint(long n);

// q^n + q^{-n} style helper, [2n]/[n].
QLaurent qpow_sum(const Rat& a, const Rat& b);  // q^a + q^b

// gcd of two Laurent polynomials, canonicalized so the lowest term is 1*q^0.
QLaurent qlaurent_gcd(const QLaurent& a, const QLaurent& b);

// Exact division; aborts if not divisible.
QLaurent qlaurent_div_exact(const QLaurent& a, const QLaurent& b);

}  // namespace qsln
