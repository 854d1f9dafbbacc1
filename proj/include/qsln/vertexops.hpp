#pragma once

#include "qsln/currents.hpp"

#include <mutex>

namespace qsln {

enum class VertexKind { TypeI, TypeIDual, TypeII, TypeIIDual };  // phi, phi*, psi, psi*

std::string vertex_kind_name(VertexKind k);

// Z2 grading of the j-th basis vector / vertex component, j = 1..N+1.
inline int component_grade(int N, int j) { return j <= N ? 1 : 0; }
inline long nu(int N, int j) { return j <= N ? 1 : -1; }

// A vertex component as a finite composition tree flattened to terms
//   coeff * (left mode ops) o seed(z) o (right mode ops),
// the q-commutator recursions evaluated lazily against vectors.
struct VertexComponent {
  struct ModeStep {
    int sign;  // current X^{sign,i}
    int i;
    long mode;
  };
  struct Term {
    Scalar c;
    std::vector<ModeStep> left;   // applied after the seed, index 0 first
    std::vector<ModeStep> right;  // applied before the seed, back() first
  };
  VertexKind kind;
  int j = 0;
  int grade = 0;
  FieldOp seed;
  std::vector<Term> terms;

  Sliced apply(const Ctx& ctx, const FockVector& v, const Rat& lo, const Rat& hi) const;
  FockVector slice(const Ctx& ctx, const FockVector& v, const Rat& e) const;

  // z-exponent offset of the slice lattice on a given state
  Rat base_exponent(const Ctx& ctx, const FockState& s) const;
};

// Memoized construction of the bosonized components.
class VertexCache {
 public:
  explicit VertexCache(const Ctx& ctx) : ctx_(ctx) {}
  const VertexComponent& get(VertexKind k, int j) const;
  const Ctx& ctx() const { return ctx_; }

 private:
  const Ctx& ctx_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, VertexComponent> cache_;
};

VertexComponent build_vertex(const Ctx& ctx, VertexKind k, int j);

// ghost modes eta_n (z^{-n-1} slice of :e^{c}:) and xi_n (z^{-n} of :e^{-c}:);
// defined on sectors with integer c-momentum only.
FockVector ghost_eta(const Ctx& ctx, long n, const FockVector& v);
FockVector ghost_xi(const Ctx& ctx, long n, const FockVector& v);

// v = ker + coker with ker = eta_0 xi_0 v, coker = xi_0 eta_0 v.
std::pair<FockVector, FockVector> brst_project(const Ctx& ctx, const FockVector& v);

// per-degree dimensions of Ker(eta_0) on F^{(l)} and Im(eta_0) from F^{(l-1)}
struct BrstDegreeReport {
  Rat weight;           // -d eigenvalue above the sector floor
  long dim_ker = 0;
  long dim_im = 0;
};
std::vector<BrstDegreeReport> brst_exactness(const Ctx& ctx, const Sector& sec, long l, long D);

// Appendix-B intertwining relations, exact on the truncated basis.
struct AppBReport {
  std::string id;
  bool skipped = false;
  std::string skip_reason;
  bool ok = true;
  long slices = 0;
  std::string witness;
};

std::vector<AppBReport> check_appendix_b(const VertexCache& vc, VertexKind kind,
                                         const Sector& sec, long D);

// the operator kernel identity behind the first invertibility relations:
// :e^{-h*_N(zq^N;1/2)+h*_1(zq;1/2)-h^1(zq^2;1/2)-...-h^N(zq^{N+1};1/2)}: = 1
bool invertibility_kernel_is_identity(const Ctx& ctx, long order, std::string* note = nullptr);

}  // namespace qsln
