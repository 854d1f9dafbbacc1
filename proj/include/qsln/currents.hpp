#pragma once

#include "qsln/nop.hpp"

#include <functional>
#include <string>

namespace qsln {

// Level-one bosonized Drinfeld currents X^{+-,i}(z) and the psi fields.
FieldOp current_x(const Ctx& ctx, int sign, int i);  // sign = +1 / -1

// process-wide memoized currents (keyed by rank)
const FieldOp& cached_current(const Ctx& ctx, int sign, int i);

// X^{+-,i}_n = oint z^{n} X(z) dz: the z^{-n-1} slice.
FockVector current_mode(const Ctx& ctx, const FieldOp& x, long n, const FockVector& v);
FockVector current_mode(const Ctx& ctx, int sign, int i, long n, const FockVector& v);

// psi^{+-,j}(z) = q^{+-h^j_0} exp(+-(q-q^{-1}) sum_{n>0} h^j_{+-n} z^{-+n});
// psi^{+-,j}_k is the z^{-k} slice.
FieldOp psi_field(const Ctx& ctx, int sign, int j);
FockVector psi_mode(const Ctx& ctx, int sign, int j, long k, const FockVector& v);

// H^i_n ladder action (n != 0) / eigenvalue (n == 0).
FockVector hmode(const Ctx& ctx, int i, long n, const FockVector& v);

// q^{m * h_i} for i = 0..N (i = 0 uses h_0 = 1 - sum H^k_0 at level one).
FockVector qh_apply(const Ctx& ctx, int i, const Rat& m, const FockVector& v);

// Chevalley generators; e_0/f_0 are the nested q-commutators times q^{-+sum H}.
FockVector chevalley_e(const Ctx& ctx, int i, const FockVector& v);
FockVector chevalley_f(const Ctx& ctx, int i, const FockVector& v);
int chevalley_grade(const Ctx& ctx, int i);

// Drinfeld relation families.
enum class Rel {
  HH,          // [H^i_n, H^j_m] = delta_{n+m,0} [a_ij n][n]/n
  QHX,         // q^{H^j_0} X^{+-,i}_n q^{-H^j_0} = q^{+-a_ij} X
  HX,          // [H^i_n, X^{+-,j}_m] = +-([a_ij n]/n) X_{n+m} q^{-+|n|/2}
  XPXM,        // [X^{+,i}_n, X^{-,j}_m] with psi right-hand side
  XXZero,      // [X^{+-,i}_n, X^{+-,j}_m] = 0 for a_ij = 0
  XXQuad,      // q-commutator symmetry for a_ij != 0
  Serre,       // Sym_{l,m}[X_l,[X_m,X^j_n]_{q^-1}]_q = 0, a_ij = 0, i != N
  DGrading,    // [d, X^{+-,i}_n] = n X^{+-,i}_n, [d, H^i_n] = n H^i_n
  Chevalley    // h_0 value, [e_i,f_j] relations including the affine node
};

std::string rel_name(Rel r);

struct RelReport {
  Rel rel;
  std::string params;
  bool skipped = false;
  std::string skip_reason;
  bool zero = true;           // exact-zero residual
  long states = 0;            // basis states covered
  std::string witness;        // first discrepancy, when !zero
};

// Applies both sides of the relation instance to every basis state of the
// sector whose degree leaves room for the relation's mode depth; exact
// comparison. Out-of-window instances are reported skipped, never passed.
RelReport verify_drinfeld(const Ctx& ctx, const Sector& sec, Rel rel, int sign, int i, int j,
                          long n, long m, long D);

RelReport serre_check(const Ctx& ctx, const Sector& sec, int sign, int i, int j, long n, long m,
                      long l, long D);

// Appendix-level normal-ordering rules: the closed-form two-point functions.
struct OpeRule {
  std::string name;
  FieldId f, g;
  // log-coefficient of the closed form at x^m (x = w/z) and the z-power
  std::function<QRational(const Ctx&, const Rat& beta, long m)> log_coeff;
  std::function<Rat(const Ctx&)> zpow;
};

// the Appendix rule table instantiated for the context's rank
std::vector<OpeRule> appendix_a_rules(const Ctx& ctx);

// checks engine contraction against a rule, to x-order `order`, at
// kappa arguments beta1, beta2 (verified for a spread of rational values)
bool check_ope_rule(const Ctx& ctx, const OpeRule& rule, const Rat& beta1, const Rat& beta2,
                    long order, std::string* note = nullptr);

}  // namespace qsln
