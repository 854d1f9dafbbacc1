#pragma once

#include "qsln/fock.hpp"

namespace qsln {

// The free fields entering currents and vertex operators: h^i, their duals
// h*_i, the ghost boson c and the elementary b. A field packages its mode
// decomposition over the oscillator families, its zero-mode p-form over the
// elementary slots (a^1..a^N, b, c) and its Q-shift vector.
enum class FieldKind { H, HStar, C, B };

struct FieldId {
  FieldKind kind;
  int index = 0;  // 1..N for H/HStar
  auto operator<=>(const FieldId&) const = default;
};

inline FieldId fid_h(int i) { return {FieldKind::H, i}; }
inline FieldId fid_hstar(int i) { return {FieldKind::HStar, i}; }
inline FieldId fid_c() { return {FieldKind::C, 0}; }
inline FieldId fid_b() { return {FieldKind::B, 0}; }

// coefficient of the dual field h*_i over h^j at mode m (m != 0):
// [min(i,j) m][ (N-1-max(i,j)) m ] / ([ (N-1) m ][ m ])
QRational hstar_mode_coeff(const Ctx& ctx, int i, int j, long m);

// oscillator-family decomposition of field modes at |mode| = n > 0
std::vector<std::pair<int, QRational>> field_modes(const Ctx& ctx, const FieldId& f, long n);

// zero-mode p-form over elementary slots (a^1..a^N, b, c)
std::vector<Rat> field_pvec(const Ctx& ctx, const FieldId& f);

// Q-shift vector over slots (Q_{a^1}..Q_{a^N}, Q_b, Q_c)
std::vector<Rat> field_qvec(const Ctx& ctx, const FieldId& f);

// [f_0, Q_g] pairing
Rat field_pairing(const Ctx& ctx, const FieldId& f, const FieldId& g);

// momentum eigenvalue of a p-form (slots paired as a: +lambda_i, b: -lambda_{N+1},
// c: +lambda_{N+2})
Rat pform_eig(const Ctx& ctx, const std::vector<Rat>& pvec, const Momenta& mom);

// [f_m, g_{-m}] two-point commutator for m > 0 (independent contraction oracle)
QRational mode_contraction_oracle(const Ctx& ctx, const FieldId& f, const FieldId& g, long m);

}  // namespace qsln
