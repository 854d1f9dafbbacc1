#include "qsln/numeric.hpp"

#include <boost/math/constants/constants.hpp>

namespace qsln {

NumericContext::NumericContext(const Rat& q0)
    : q0_(Real(rat_num(q0).str()) / Real(rat_den(q0).str())),
      logq_(log(q0_)),
      pi_(boost::math::constants::pi<Real>()) {}

Real NumericContext::q_pow(const Rat& e) const {
  if (e == 0) return Real(1);
  if (is_integer(e)) {
    Real r = pow(q0_, to_long(rat_num(e)));
    return r;
  }
  Real ex = Real(rat_num(e).str()) / Real(rat_den(e).str());
  return exp(ex * logq_);
}

Cplx NumericContext::root_of_unity(long j, long n) const {
  Real a = 2 * pi_ * j / n;
  return Cplx(cos(a), sin(a));
}

Cplx NumericContext::eval(const QLaurent& p) const {
  Cplx acc(0);
  for (const auto& t : p.terms()) {
    Real c = Real(rat_num(t.second).str()) / Real(rat_den(t.second).str());
    acc += Cplx(c * q_pow(t.first));
  }
  return acc;
}

Cplx NumericContext::eval(const QRational& r) const {
  return eval(r.num()) / eval(r.den());
}

Cplx NumericContext::eval(const Scalar& s) const {
  Cplx acc(0);
  for (size_t j = 0; j < s.coeffs().size(); ++j) {
    if (s.coeffs()[j].is_zero()) continue;
    acc += eval(s.coeffs()[j]) * root_of_unity((long)j, s.order());
  }
  return acc;
}

Real abs_c(const Cplx& z) { return abs(z); }

}  // namespace qsln
