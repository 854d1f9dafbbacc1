#pragma once

#include "qsln/scalar.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace qsln {

using Real = boost::multiprecision::cpp_bin_float_50;
using Cplx = boost::multiprecision::cpp_complex_50;

// Evaluation of exact scalars at a numeric q in (0,1), 50 decimal digits.
class NumericContext {
 public:
  explicit NumericContext(const Rat& q0);

  const Real& q0() const { return q0_; }
  Real q_pow(const Rat& e) const;           // q0^e for rational e
  Cplx root_of_unity(long j, long n) const; // e^{2*pi*i*j/n}

  Cplx eval(const QLaurent& p) const;
  Cplx eval(const QRational& r) const;
  Cplx eval(const Scalar& s) const;

 private:
  Real q0_;
  Real logq_;
  Real pi_;
};

Real abs_c(const Cplx& z);

}  // namespace qsln
