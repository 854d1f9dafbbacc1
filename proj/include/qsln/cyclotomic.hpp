#pragma once

#include <vector>

namespace qsln {

long euler_phi(long n);

// Coefficients of the n-th cyclotomic polynomial, index = degree (monic).
const std::vector<long long>& cyclotomic_poly(long n);

}  // namespace qsln
