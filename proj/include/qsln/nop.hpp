#pragma once

#include "qsln/fields.hpp"
#include "qsln/puiseux.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace qsln {

// Normal-ordered exponential operator at one spectral argument:
//
//   c * z^{zpow} * e^{<qshift, Q>} * z^{<zdiag, p>} q^{<qdiag, p>}
//     * exp(creation modes) * exp(annihilation modes) * e^{i pi <cocycle, p>}
//
// p-forms are over the elementary zero-mode slots (a^1..a^N, b, c); momenta
// shifts over the matching Q slots. Mode content comes from field parts
// (canonical -f_n/[n] q^{kappa n} z^{-n} expansion with scaled argument) or
// bare parts (explicit scalar coefficient, used by the psi fields).
struct ExpOp {
  struct Part {
    FieldId f;
    bool field_style = true;
    Rat coef;         // epsilon for field style
    Rat kappa;        // field style only
    QRational bare;   // bare style coefficient
    Rat argshift;     // argument is q^{argshift} * z
    int filter = 0;   // 0 both, 1 annihilation only, 2 creation only
  };

  explicit ExpOp(int nslots) : qshift(nslots, Rat(0)), cocycle(nslots, Rat(0)),
                               zdiag(nslots, Rat(0)), qdiag(nslots, Rat(0)) {}

  Scalar c = Scalar(1);
  Rat zpow = Rat(0);
  int grade = 0;
  std::vector<Rat> qshift, cocycle, zdiag, qdiag;
  std::vector<Part> parts;

  // adds e^{coef * F(q^{argshift} z; kappa)} content for a standard field
  void add_field(const Ctx& ctx, const FieldId& f, const Rat& coef, const Rat& argshift,
                 const Rat& kappa);

  // annihilation/creation coefficient vectors at |mode| = n > 0; cached,
  // so the operator must not be mutated after its first application
  const std::vector<std::pair<int, QRational>>& ann_coeffs(const Ctx& ctx, long n) const;
  const std::vector<std::pair<int, QRational>>& cre_coeffs(const Ctx& ctx, long n) const;

 private:
  struct ModeCache {
    std::mutex mu;
    std::map<long, std::vector<std::pair<int, QRational>>> ann, cre;
  };
  mutable std::shared_ptr<ModeCache> cache_;
  std::vector<std::pair<int, QRational>> ann_raw(const Ctx& ctx, long n) const;
  std::vector<std::pair<int, QRational>> cre_raw(const Ctx& ctx, long n) const;
};

// slices keyed by the z-exponent
using Sliced = std::map<Rat, FockVector>;

// Apply the operator to a vector keeping every slice with z-exponent in
// [lo, hi]; exact on the kept slices. Throws TruncationError when a kept
// slice would need states beyond ctx.Dmax().
Sliced apply_expop(const Ctx& ctx, const ExpOp& op, const FockVector& v, const Rat& lo,
                   const Rat& hi);

// Operator given as a sum of exponentials with a fixed slice extraction.

// A current-like operator: finite sum of ExpOps sharing one spectral variable.
struct FieldOp {
  std::vector<ExpOp> terms;
  int grade = 0;

  Sliced apply(const Ctx& ctx, const FockVector& v, const Rat& lo, const Rat& hi) const;
  // single z-exponent slice
  FockVector slice(const Ctx& ctx, const FockVector& v, const Rat& e) const;
};

// Diagonal operator q^{<form, p(mom)>} (form over elementary p slots).
FockVector apply_qdiag(const Ctx& ctx, const std::vector<Rat>& form, const Rat& scale,
                       const FockVector& v);

// log of the contraction kernel between the annihilation side of a and the
// creation side of b: coefficient of (w/z)^m, plus the zero-mode z-power.
QRational contraction_log_coeff(const Ctx& ctx, const ExpOp& a, const ExpOp& b, long m);
Rat contraction_zpow(const Ctx& ctx, const ExpOp& a, const ExpOp& b);

}  // namespace qsln
