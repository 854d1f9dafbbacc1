#pragma once

#include "qsln/characters.hpp"
#include "qsln/rmatrix.hpp"
#include "qsln/vertexops.hpp"

namespace qsln {

// double-sliced data: coefficient of z1^{e1} z2^{e2}
using Sliced2 = std::map<std::pair<Rat, Rat>, FockVector>;

// scalar factors as exact-mod-q^order series in x = z1/z2
PuiseuxSeries r_factor_series(int N, RKind kind, long order);
PuiseuxSeries tau_series(int N, long order);
// Rbar entries as one-sided series in x
PuiseuxSeries rbar_entry_series(int N, int k, int l, int i, int j, long order);
// g = e^{i pi N / (2(N-1))} (q^2; p)_inf / (p; p)_inf and its inverse, p = q^{2(N-1)}
PuiseuxSeries g_constant_series(int N, long order);
PuiseuxSeries g_inverse_series(int N, long order);

enum class FzType { TypeI, TypeII, Mixed };

struct FzReport {
  std::string id;
  bool skipped = false;
  std::string skip_reason;
  bool ok = true;
  Rat qorder;        // residuals vanish modulo q^{qorder}
  long keys = 0;     // (e1, e2) coefficient pairs compared
  std::string witness;
};

// Faddeev-Zamolodchikov exchange relation for the bosonized vertex operators,
// compared coefficientwise in (z1, z2) slices on the truncated module, with
// the scalar-factor series truncated at q-order `qord` and x-window `xorder`.
FzReport fz_exchange_check(const VertexCache& vc, FzType type, int i, int j, const Sector& sec,
                           long xorder, long qord, long D);

struct InvertReport {
  std::string id;
  bool ok = true;
  Rat qorder;
  std::string witness;
};

// first invertibility: phi_i(z) phi*_j(z) = g^{-1} (-1)^{[i]} delta_ij,
// sum_k (-1)^{[k]} phi*_k(z) phi_k(z) = g^{-1};
// second invertibility: phi*_i(z q^{2(N-1)}) phi_j(z) = -g^{-1} q^{2 rho_i} delta_ij,
// sum_k q^{-2 rho_k} phi_k(z) phi*_k(z q^{2(N-1)}) = -g^{-1}
std::vector<InvertReport> invertibility_check(const VertexCache& vc, const Sector& sec,
                                              long qord, long D);

}  // namespace qsln
