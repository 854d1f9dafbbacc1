#pragma once

#include "qsln/errors.hpp"
#include "qsln/scalar.hpp"

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qsln {

// Oscillator families. The h-fields h^1..h^N together with the ghost boson c
// generate the module the algebra actually sees; the elementary a^i, b
// oscillators are kept for low-level commutator checks.
struct Fam {
  static int h(int i) { return i - 1; }            // h^i, i = 1..N  ->  0..N-1
  static int c(int N) { return N; }                // ghost boson
  static int a(int i, int N) { return N + i; }     // a^i, i = 1..N
  static int b(int N) { return 2 * N + 1; }
  static int count(int N) { return 2 * N + 2; }
};

struct OscId {
  int fam;
  long mode;  // nonzero for excitation/annihilation modes
  auto operator<=>(const OscId&) const = default;
};

// Immutable shared momenta tuple; ladder operators never copy the payload.
class Momenta {
 public:
  Momenta() = default;
  Momenta(std::vector<Rat> v) : p_(std::make_shared<const std::vector<Rat>>(std::move(v))) {}
  const Rat& operator[](size_t i) const { return (*p_)[i]; }
  size_t size() const { return p_ ? p_->size() : 0; }
  const std::vector<Rat>& vec() const { return *p_; }
  Momenta shifted(const std::vector<Rat>& delta) const {
    std::vector<Rat> v = *p_;
    for (size_t i = 0; i < delta.size(); ++i) v[i] += delta[i];
    return Momenta(std::move(v));
  }
  bool operator==(const Momenta& o) const { return p_ == o.p_ || *p_ == *o.p_; }
  std::weak_ordering operator<=>(const Momenta& o) const {
    if (p_ == o.p_) return std::weak_ordering::equivalent;
    return *p_ <=> *o.p_;
  }

 private:
  std::shared_ptr<const std::vector<Rat>> p_;
};

// Basis state: zero-mode momenta (lambda_1..lambda_{N+1}; lambda_{N+2})
// and a multiset of negative-mode excitations. The tag is inert bookkeeping
// carried through every operator, used to batch per-state verifications into
// one application.
struct FockState {
  long tag = 0;
  Momenta mom;                              // size N+2
  std::vector<std::pair<OscId, int>> exc;   // sorted by OscId, mode < 0, mult > 0

  long degree() const;                      // sum |mode| * multiplicity
  auto operator<=>(const FockState&) const = default;
  std::string str() const;
};

class FockVector {
 public:
  using Map = std::map<FockState, Scalar>;

  FockVector() = default;
  static FockVector basis(const FockState& s) {
    FockVector v;
    v.t_[s] = Scalar(1);
    return v;
  }

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  void add(const FockState& s, const Scalar& c);
  FockVector operator-() const;
  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  FockVector& operator*=(const Scalar& c);
  friend FockVector operator*(FockVector v, const Scalar& c) { return v *= c; }

  bool operator==(const FockVector& o) const { return t_ == o.t_; }

  Scalar coeff(const FockState& s) const;
  long max_degree() const;

  // min q-adic valuation over coefficients (infinity sentinel when zero).
  Rat min_valuation() const;

  std::string str() const;

 private:
  Map t_;
};

// Shared exact-arithmetic context for a fixed rank N and truncation depth.
class Ctx {
 public:
  Ctx(int N, long Dmax);

  int N() const { return N_; }
  long Dmax() const { return Dmax_; }

  // Cartan matrix of the finite block, i,j = 1..N.
  long cartan(int i, int j) const;
  // (alpha_ij beta_ij)/(N-1) with alpha = min(i,j), beta = N-1-max(i,j).
  Rat inv_pairing(int i, int j) const;

  // [x_m, y_{-m}] for m > 0 between families.
  const QRational& gram(int fam_a, int fam_b, long m) const;

  const QLaurent& qint_l(long n) const;
  QRational qint_r(long n) const { return QRational(qint_l(n)); }

  // momentum eigenvalues of the p-type zero modes
  Rat eig_a(const Momenta& mom, int i) const { return mom[i - 1]; }
  Rat eig_b(const Momenta& mom) const { return -mom[N_]; }
  Rat eig_c(const Momenta& mom) const { return mom[N_ + 1]; }
  Rat eig_h(const Momenta& mom, int i) const;   // h^i_0
  Rat eig_hstar(const Momenta& mom, int i) const;

  // -d eigenvalue of a pure zero-mode state (the quadratic form).
  Rat zero_mode_weight(const Momenta& mom) const;

  // eagerly builds mode tables 1..mmax; afterwards the context is strictly
  // read-only (thread-safe), and out-of-range lookups throw
  void warm_up(long mmax) const;

 private:
  int N_;
  long Dmax_;
  mutable long warm_limit_ = 0;
  // deques: appending keeps references to existing entries valid
  mutable std::deque<QLaurent> qints_;
  // gram cache: [m-1][fam_a][fam_b]
  mutable std::deque<std::vector<std::vector<QRational>>> gram_;
  void build_mode(long m) const;
};

FockVector vacuum_vector(const Momenta& lambda);

// Ladder/zero-mode action of a single oscillator. Creation modes append an
// excitation (checked against Dmax), annihilation modes contract through the
// Gram matrix, and mode 0 acts diagonally by the momentum eigenvalue.
FockVector apply_oscillator(const Ctx& ctx, const OscId& id, const FockVector& v);

// Q-type shift: mom[slot] += amount (slot over Q_{a^1}..Q_{a^N}, Q_b, Q_c).
FockVector apply_momentum_shift(const std::vector<Rat>& shift, const FockVector& v);

// Diagonal derivation d (bosonized); defined on h/c-excited states.
FockVector d_apply(const Ctx& ctx, const FockVector& v);
Rat d_eigenvalue(const Ctx& ctx, const FockState& s);

// Fermi number operator N_f (diagonal); eigenvalue per state.
Rat fermi_number_eig(const Ctx& ctx, const FockState& s);
FockVector fermi_number(const Ctx& ctx, const FockVector& v);
// (-1)^{N_f} as an exact phase (integrality is the caller's concern).
FockVector parity_apply(const Ctx& ctx, const FockVector& v);

// Fock sector F^{(l)}_{(alpha;beta)}: momenta lattice of the direct sum.
struct Sector {
  int Nrank;
  long alpha;
  Rat beta;

  Momenta momenta(const std::vector<long>& is, long ghost_level) const;
  // inverse map; nullopt when not on the lattice
  struct Coords {
    std::vector<long> is;
    long ghost_level;
  };
  std::optional<Coords> locate(const Momenta& mom) const;
};

// All states of the sector at the given ghost level with normalized grading
// (-d eigenvalue above the sector minimum) <= D. Exhaustive and duplicate
// free; the zero-mode quadratic form must be positive definite on the lattice.
std::vector<FockState> enumerate_basis(const Ctx& ctx, const Sector& s, long ghost_level, long D);

// Minimal -d eigenvalue over the sector lattice at the given ghost level.
Rat sector_weight_floor(const Ctx& ctx, const Sector& s, long ghost_level);

// Generic trace gradings: weight(state) = wd * (-d eigenvalue) + sum_l wh_l H_l.
// wd must be positive and the induced lattice form positive definite.
Rat state_trace_weight(const Ctx& ctx, const FockState& st, const Rat& wd,
                       const std::vector<Rat>& wh);
std::vector<FockState> enumerate_by_weight(const Ctx& ctx, const Sector& s, long ghost_level,
                                           const Rat& wd, const std::vector<Rat>& wh,
                                           const Rat& bound);
Rat weight_floor(const Ctx& ctx, const Sector& s, long ghost_level, const Rat& wd,
                 const std::vector<Rat>& wh);

// Exact integer-lattice tools for positive-definite quadratic polynomials
// (finite differencing + completed squares + bounded sweep).
struct LatticeMin {
  Rat value;
  std::vector<long> at;
};
LatticeMin lattice_quadratic_min(int n, const std::function<Rat(const std::vector<long>&)>& f);
std::vector<std::vector<long>> lattice_points_below(
    int n, const std::function<Rat(const std::vector<long>&)>& f, const Rat& bound);

enum class HwClass { None, Class1, Class2 };

struct HwClassification {
  HwClass cls = HwClass::None;
  int class1_index = 0;       // m for |Lambda_m>
  Rat class2_alpha;           // alpha for |lambda_alpha>
  std::vector<Rat> weights;   // (lambda^0, ..., lambda^N) h_i-eigenvalues
};

HwClassification classify_highest_weight(const Ctx& ctx, const Momenta& lambda);

}  // namespace qsln
