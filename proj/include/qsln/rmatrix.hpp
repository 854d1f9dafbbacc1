#pragma once

#include "qsln/gradedmatrix.hpp"
#include "qsln/fock.hpp"
#include "qsln/puiseux.hpp"

namespace qsln {

enum class RKind { I, II };

// matrix elements of Rbar(z); exact in any scalar argument
Scalar rbar_entry(int N, int i, int j, int k, int l, const Scalar& z);
// d/dz of the entry at z = 1 (quotient rule on the displayed cases)
Scalar rbar_entry_dz1(int N, int i, int j, int k, int l);

GMat<Scalar> rbar_matrix(int N, const Scalar& z);
GMat<Scalar> graded_permutation(int N);

// numeric entries and scalar factors (infinite products to working precision)
Cplx rbar_entry_num(int N, int i, int j, int k, int l, const NumericContext& ctx, const Cplx& z);
Cplx scalar_factor_num(int N, RKind kind, const NumericContext& ctx, const Cplx& z);
Cplx tau_num(int N, const NumericContext& ctx, const Cplx& z);
GMat<Cplx> rmatrix_num(int N, RKind kind, const NumericContext& ctx, const Cplx& z);

// q^{2 rho_i} diagonal: (q^{N-2}, q^{N-4}, ..., q^{-N}, q^{-N})
Rat two_rho(int N, int i);

// exact checks over Q(q) (scalar factors cancel): proven by evaluating on a
// rational (z, w) grid exceeding the entry degree bounds
bool rbar_initial_condition(int N, std::string* note = nullptr);       // Rbar(1) = P
bool rbar_ybe_exact(int N, std::string* note = nullptr);               // graded YBE
bool rbar_unitarity_exact(int N, std::string* note = nullptr);         // R12(z) R21(1/z) = 1

// numeric residuals at a point (40+ digit arithmetic)
Real ybe_residual(int N, RKind kind, const NumericContext& ctx, const Cplx& z, const Cplx& w);
Real unitarity_residual(int N, RKind kind, const NumericContext& ctx, const Cplx& z);
Real crossing_residual(int N, RKind kind, const NumericContext& ctx, const Cplx& z);

// supertranspose on the first leg, (R^{st_1})^{kl}_{ij} = R^{il}_{kj} (-1)^{[i]([i]+[k])}
GMat<Cplx> supertranspose_leg1(const GMat<Cplx>& m);

// measured sign of R^{(kind)}(1) against the graded permutation (+1/-1, 0 = neither)
int rmatrix_initial_sign(int N, RKind kind, const NumericContext& ctx);

// Hamiltonian density h = d/du [P Rbar(e^u)] at u = 0, exact entries
GMat<Scalar> hamiltonian_density(int N);
// [Delta(x), h] = 0 for x = e_i, f_i, t_i, i = 1..N (exact)
bool hamiltonian_symmetry(int N, std::string* note = nullptr);

}  // namespace qsln
