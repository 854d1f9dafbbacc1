#pragma once

#include "qsln/gradedmatrix.hpp"

namespace qsln {

// (N+1)-dimensional level-zero evaluation representation at spectral point z,
// Chevalley matrices for i = 0..N (index 0 = affine node).
struct EvalRep {
  int N = 0;
  Scalar z;
  std::vector<GMat<Scalar>> e, f, t, tinv;  // size N+1, index = node
};

EvalRep evaluation_rep(int N, const Scalar& z);

// supertransposition of a one-leg matrix, (A^{st})_{k i} = A_{i k} (-1)^{[i]([i]+[k])}
GMat<Scalar> supertranspose(const GMat<Scalar>& a);

// left dual module: pi(a) = pi(S(a))^{st}
EvalRep dual_rep(int N, const Scalar& z);

// Chevalley relations of the rep (graded commutators, q-Cartan conjugations)
bool check_rep_relations(const EvalRep& rep, std::string* note = nullptr);

// S^2(a) = q^{-2 rho} a q^{2 rho} on the Chevalley matrices (node 0 carries
// the extra q^{-2(N-1)} from the derivation part of rho)
bool check_antipode_square(int N, const Scalar& z, std::string* note = nullptr);

// two-site coproduct matrices at equal spectral points (finite nodes)
GMat<Scalar> coproduct_e(const EvalRep& rep, int i);
GMat<Scalar> coproduct_f(const EvalRep& rep, int i);
GMat<Scalar> coproduct_t(const EvalRep& rep, int i);

}  // namespace qsln
