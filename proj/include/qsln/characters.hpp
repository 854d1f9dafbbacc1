#pragma once

#include "qsln/vertexops.hpp"

namespace qsln {

// Graded character data: q-exponent on a rational lattice times an integer
// x_1..x_N exponent vector, with exact rational coefficients. `order` is the
// absolute q-exponent below which the series is complete.
class CharacterSeries {
 public:
  using Key = std::pair<Rat, std::vector<long>>;

  std::map<Key, Rat>& terms() { return c_; }
  const std::map<Key, Rat>& terms() const { return c_; }

  Rat order = q_val_infinity();

  void add(const Rat& qexp, const std::vector<long>& xexp, const Rat& coeff);
  bool is_zero() const { return c_.empty(); }
  Rat min_qexp() const;

  // all coefficients nonnegative (plain characters count states)
  bool nonnegative() const;

  // sorted "coeff q^a x1^e1 ... xN^eN" lines
  std::string str() const;

 private:
  std::map<Key, Rat> c_;
};

// result of comparing two series up to one global q-shift and constant
struct SeriesMatch {
  bool equal = false;
  Rat qshift;      // rhs shifted by q^{qshift} matches lhs
  Rat factor;      // and scaled by this constant
  Rat order;       // comparison was complete below this q-exponent
  std::string first_discrepancy;
};

enum class Projector { Ker, Coker };

// trace over the projected truncated sector basis of q^{-d} x^{h}, with
// (-1)^{N_f} inserted for the super version; exact and complete below the
// returned series' order. Throws when a super run hits non-integer parity.
CharacterSeries brute_character(const Ctx& ctx, const Sector& sec, Projector proj, long K,
                                bool super);

// the closed-form BRST-resolution series: alternating lattice sums over the
// ghost levels, evaluated per x-monomial (each weight receives finitely many
// levels). `xset` fixes the x-window; use x_window_of to derive it from a
// reference series plus a safety shell on which the sum must cancel to zero.
CharacterSeries closed_character(int N, long alpha, Projector proj, long K, bool super,
                                 const std::vector<std::vector<long>>& xset);
CharacterSeries closed_character_depth(int N, long alpha, Projector proj, long K, bool super,
                                       const std::vector<std::vector<long>>& xset,
                                       const Rat& extra_depth);
CharacterSeries brute_character_bounded(const Ctx& ctx, const Sector& sec, Projector proj,
                                        const Rat& bound, bool super);

std::vector<std::vector<long>> x_window_of(const CharacterSeries& ref, int margin);

SeriesMatch compare_characters(const CharacterSeries& brute, const CharacterSeries& closed);

struct BrstIdentityReport {
  bool closed_equal = false;
  bool brute_equal = false;
  bool lattice_equal = false;   // F^{(1)}_{(alpha-(N-1);beta+1)} = F_{(alpha;beta)}
  Rat factor;                   // measured global factor (=+1 plain, -1 super)
  std::string note;
};

// Ch_Coker_{F(alpha-(N-1);beta+1)} = Ch_Ker_{F(alpha;beta)} and the super
// version, checked on closed forms, on brute traces, and at lattice level.
BrstIdentityReport brst_identity_check(const Ctx& ctx, long alpha, const Rat& beta, long K,
                                       bool super);

// one-variable exact q-series (used for specializations such as chi_alpha)
struct QSeries {
  std::map<Rat, Rat> c;
  Rat order = q_val_infinity();

  void add(const Rat& e, const Rat& v);
  bool matches(const QSeries& o, Rat* where = nullptr) const;
  std::string str() const;
};

// chi_alpha = Ch_{Ker F_(alpha;beta)}(q^{2(N-1)}; x_l = q^{-l(N-1-l)}), computed
// as a direct trace with the weight q^{2(N-1)(-d)} q^{-2h_rho}; complete below
// `bound` in the absolute weight exponent.
QSeries chi_alpha_trace(const Ctx& ctx, const Sector& sec, const Rat& bound);

// the same specialization applied to a CharacterSeries (cross-check route);
// complete below scale*series.order plus the x-weight correction implied by
// the terms present.
QSeries specialize_character(const CharacterSeries& ch, int N, long scale,
                             const std::vector<Rat>& xweights);

}  // namespace qsln
