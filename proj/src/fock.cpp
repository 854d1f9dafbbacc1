#include "qsln/fock.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qsln {

long FockState::degree() const {
  long d = 0;
  for (const auto& [id, mult] : exc) d += -id.mode * mult;
  return d;
}

std::string FockState::str() const {
  std::ostringstream os;
  os << "|";
  for (size_t i = 0; i < mom.size(); ++i) {
    if (i) os << (i + 1 == mom.size() ? "; " : ", ");
    os << mom[i].str();
  }
  os << ">";
  for (const auto& [id, mult] : exc) {
    os << " ";
    if (id.fam <= (int)mom.size()) {
    }
    os << "f" << id.fam << "[" << id.mode << "]";
    if (mult > 1) os << "^" << mult;
  }
  return os.str();
}

void FockVector::add(const FockState& s, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

FockVector FockVector::operator-() const {
  FockVector r = *this;
  for (auto& [s, x] : r.t_) x = -x;
  return r;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  for (const auto& [s, c] : o.t_) add(s, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  for (const auto& [s, c] : o.t_) add(s, -c);
  return *this;
}

FockVector& FockVector::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [s, x] : t_) x *= c;
  return *this;
}

Scalar FockVector::coeff(const FockState& s) const {
  auto it = t_.find(s);
  return it == t_.end() ? Scalar() : it->second;
}

long FockVector::max_degree() const {
  long d = 0;
  for (const auto& [s, c] : t_) d = std::max(d, s.degree());
  return d;
}

Rat FockVector::min_valuation() const {
  Rat v = q_val_infinity();
  for (const auto& [s, c] : t_) v = std::min(v, c.q_valuation());
  return v;
}

std::string FockVector::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ") " << s.str();
  }
  return os.str();
}

Ctx::Ctx(int N, long Dmax) : N_(N), Dmax_(Dmax) {
  if (N < 2) throw std::domain_error("Ctx: N must be >= 2");
  if (Dmax < 0) throw std::domain_error("Ctx: negative truncation depth");
  warm_up(Dmax + 4);
}

void Ctx::warm_up(long mmax) const {
  warm_limit_ = 0;  // allow lazy fills during the warm-up itself
  for (long m = 1; m <= mmax; ++m) build_mode(m);
  for (long n = 0; n <= (N_ + 2) * (mmax + 2); ++n) {
    qint_l(n);
    qint_l(-n);
  }
  warm_limit_ = mmax;
}

long Ctx::cartan(int i, int j) const {
  if (i == j) return i == N_ ? 0 : 2;
  if (i - j == 1 || j - i == 1) return -1;
  return 0;
}

Rat Ctx::inv_pairing(int i, int j) const {
  long mn = std::min(i, j), mx = std::max(i, j);
  return Rat(mn * (N_ - 1 - mx), N_ - 1);
}

const QLaurent& Ctx::qint_l(long n) const {
  long a = n < 0 ? -n : n;
  size_t idx = n >= 0 ? 2 * a : 2 * a + 1;
  if ((long)qints_.size() <= 2 * a + 1) {
    if (warm_limit_ > 0)
      throw std::logic_error("Ctx::qint_l past the warmed range; raise warm_up");
    qints_.resize(2 * a + 2);
  }
  if (qints_[idx].is_zero() && n != 0) qints_[idx] = qint(n);
  return qints_[idx];
}

void Ctx::build_mode(long m) const {
  if ((long)gram_.size() < m) gram_.resize(m);
  auto& g = gram_[m - 1];
  if (!g.empty()) return;
  int F = Fam::count(N_);
  g.assign(F, std::vector<QRational>(F));
  QRational gamma(qint(m) * qint(m), QLaurent::monomial(Rat(m), Rat(0)));
  // elementary coefficients of each family: (a^1..a^N, b, c) slots
  auto elem = [&](int fam) {
    std::vector<QRational> co(N_ + 2);
    QRational qm = QRational(QLaurent::q_pow(Rat(-m, 2)));
    QRational qp = QRational(QLaurent::q_pow(Rat(m, 2)));
    if (fam == Fam::c(N_)) {
      co[N_ + 1] = QRational(Rat(1));
    } else if (fam == Fam::b(N_)) {
      co[N_] = QRational(Rat(1));
    } else if (fam >= Fam::a(1, N_)) {
      co[fam - N_ - 1] = QRational(Rat(1));
    } else {
      int i = fam + 1;  // h^i
      if (i < N_) {
        co[i - 1] = qm;
        co[i] = -qp;
      } else {
        co[N_ - 1] = qm;
        co[N_] = qm;
      }
    }
    return co;
  };
  // elementary pairings: a^i with a^i -> +gamma, b with b -> -gamma, c with c -> +gamma
  auto sign = [&](int slot) { return slot == N_ ? -1 : 1; };
  for (int fa = 0; fa < F; ++fa) {
    auto ca = elem(fa);
    for (int fb = 0; fb < F; ++fb) {
      auto cb = elem(fb);
      QRational acc;
      for (int s = 0; s < N_ + 2; ++s) {
        if (ca[s].is_zero() || cb[s].is_zero()) continue;
        acc += ca[s] * cb[s] * QRational(Rat(sign(s))) * gamma;
      }
      g[fa][fb] = acc;
    }
  }
}

const QRational& Ctx::gram(int fam_a, int fam_b, long m) const {
  assert(m > 0);
  if (warm_limit_ > 0 && m > warm_limit_)
    throw std::logic_error("Ctx::gram past the warmed range; raise warm_up");
  build_mode(m);
  return gram_[m - 1][fam_a][fam_b];
}

Rat Ctx::eig_h(const Momenta& mom, int i) const {
  if (i < N_) return mom[i - 1] - mom[i];
  return mom[N_ - 1] - mom[N_];
}

Rat Ctx::eig_hstar(const Momenta& mom, int i) const {
  Rat acc(0);
  for (int j = 1; j <= N_; ++j) acc += inv_pairing(i, j) * eig_h(mom, j);
  return acc;
}

Rat Ctx::zero_mode_weight(const Momenta& mom) const {
  Rat acc(0);
  for (int i = 1; i <= N_; ++i) acc += eig_h(mom, i) * eig_hstar(mom, i);
  Rat c = eig_c(mom);
  acc += c * (c + 1);
  return acc / 2;
}

FockVector vacuum_vector(const Momenta& lambda) {
  FockState s;
  s.mom = lambda;
  return FockVector::basis(s);
}

FockVector apply_oscillator(const Ctx& ctx, const OscId& id, const FockVector& v) {
  FockVector out;
  const int N = ctx.N();
  for (const auto& [s, c] : v.terms()) {
    if (id.mode == 0) {
      Rat eig;
      if (id.fam == Fam::c(N)) eig = ctx.eig_c(s.mom);
      else if (id.fam == Fam::b(N)) eig = ctx.eig_b(s.mom);
      else if (id.fam >= Fam::a(1, N)) eig = ctx.eig_a(s.mom, id.fam - N);
      else eig = ctx.eig_h(s.mom, id.fam + 1);
      out.add(s, c * Scalar(Rat(eig)));
    } else if (id.mode < 0) {
      if (s.degree() - id.mode > ctx.Dmax())
        throw TruncationError("apply_oscillator: degree overflow, raise D");
      FockState ns = s;
      auto it = std::lower_bound(ns.exc.begin(), ns.exc.end(), id,
                                 [](const auto& p, const OscId& x) { return p.first < x; });
      if (it != ns.exc.end() && it->first == id) it->second++;
      else ns.exc.insert(it, {id, 1});
      out.add(ns, c);
    } else {
      for (size_t k = 0; k < s.exc.size(); ++k) {
        const auto& [g, mult] = s.exc[k];
        if (g.mode != -id.mode) continue;
        const QRational& gr = ctx.gram(id.fam, g.fam, id.mode);
        if (gr.is_zero()) continue;
        FockState ns = s;
        if (mult == 1) ns.exc.erase(ns.exc.begin() + k);
        else ns.exc[k].second--;
        out.add(ns, c * Scalar(gr) * Scalar(Rat(mult)));
      }
    }
  }
  return out;
}

FockVector apply_momentum_shift(const std::vector<Rat>& shift, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) {
    FockState ns = s;
    ns.mom = s.mom.shifted(shift);
    out.add(ns, c);
  }
  return out;
}

Rat d_eigenvalue(const Ctx& ctx, const FockState& s) {
  for (const auto& [id, mult] : s.exc) {
    if (id.fam > Fam::c(ctx.N()))
      throw std::domain_error("d_apply: state carries raw a/b excitations");
    (void)mult;
  }
  return -(Rat(s.degree()) + ctx.zero_mode_weight(s.mom));
}

FockVector d_apply(const Ctx& ctx, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) out.add(s, c * Scalar(d_eigenvalue(ctx, s)));
  return out;
}

Rat fermi_number_eig(const Ctx& ctx, const FockState& s) {
  const int N = ctx.N();
  if (N % 2 == 0) return Rat(N - 1) * (-s.mom[N]);
  long L = (N - 1) / 2;
  Rat acc(0);
  for (int i = 1; i <= N; ++i) acc += s.mom[i - 1];
  acc += s.mom[N];  // -b_0 eigenvalue
  return Rat(L) * acc + s.mom[N + 1];
}

FockVector fermi_number(const Ctx& ctx, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) out.add(s, c * Scalar(fermi_number_eig(ctx, s)));
  return out;
}

FockVector parity_apply(const Ctx& ctx, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms())
    out.add(s, c * Scalar::phase(fermi_number_eig(ctx, s)));
  return out;
}

Momenta Sector::momenta(const std::vector<long>& is, long ghost_level) const {
  const int N = Nrank;
  std::vector<Rat> mom(N + 2);
  mom[0] = beta + Rat(is[0]);
  for (int k = 2; k <= N; ++k) mom[k - 1] = beta - Rat(is[k - 2]) + Rat(is[k - 1]);
  mom[N] = beta - Rat(alpha) + Rat(is[N - 1]);
  mom[N + 1] = Rat(-alpha) + Rat(is[N - 1]) + Rat(ghost_level);
  return mom;
}

std::optional<Sector::Coords> Sector::locate(const Momenta& mom) const {
  const int N = Nrank;
  Coords out;
  out.is.resize(N);
  Rat prev(0);
  for (int k = 1; k <= N; ++k) {
    Rat ik = mom[k - 1] - beta + prev;
    if (!is_integer(ik)) return std::nullopt;
    out.is[k - 1] = to_long(rat_num(ik));
    prev = ik;
  }
  if (mom[N] != beta - Rat(alpha) + Rat(out.is[N - 1])) return std::nullopt;
  Rat l = mom[N + 1] + Rat(alpha) - Rat(out.is[N - 1]);
  if (!is_integer(l)) return std::nullopt;
  out.ghost_level = to_long(rat_num(l));
  return out;
}

namespace {

// Z(i) = c + b.i + i^T Q i on the sector lattice (the -d zero-mode weight).
struct LatticeForm {
  int n;
  std::vector<std::vector<Rat>> Q;
  std::vector<Rat> b;
  Rat c;

  Rat eval(const std::vector<long>& i) const {
    Rat acc = c;
    for (int k = 0; k < n; ++k) {
      acc += b[k] * Rat(i[k]);
      for (int j = 0; j < n; ++j) acc += Q[k][j] * Rat(i[k]) * Rat(i[j]);
    }
    return acc;
  }
};

LatticeForm lattice_form_of(int N, const std::function<Rat(const std::vector<long>&)>& zval) {
  LatticeForm f;
  f.n = N;
  f.Q.assign(N, std::vector<Rat>(N, Rat(0)));
  f.b.assign(N, Rat(0));
  std::vector<long> zero(N, 0);
  f.c = zval(zero);
  for (int k = 0; k < N; ++k) {
    std::vector<long> ep = zero, em = zero;
    ep[k] = 1;
    em[k] = -1;
    Rat zp = zval(ep), zm = zval(em);
    f.Q[k][k] = (zp + zm - 2 * f.c) / 2;
    f.b[k] = (zp - zm) / 2;
  }
  for (int k = 0; k < N; ++k)
    for (int j = k + 1; j < N; ++j) {
      std::vector<long> e = zero;
      e[k] = 1;
      e[j] = 1;
      Rat v = zval(e) - f.c - f.b[k] - f.b[j] - f.Q[k][k] - f.Q[j][j];
      f.Q[k][j] = f.Q[j][k] = v / 2;
    }
  return f;
}

LatticeForm sector_form(const Ctx& ctx, const Sector& s, long ghost_level) {
  return lattice_form_of(ctx.N(), [&](const std::vector<long>& is) {
    return ctx.zero_mode_weight(s.momenta(is, ghost_level));
  });
}

Rat weighted_zero_form(const Ctx& ctx, const Sector& s, long ghost_level, const Rat& wd,
                       const std::vector<Rat>& wh, const std::vector<long>& is) {
  Momenta mom = s.momenta(is, ghost_level);
  Rat acc = wd * ctx.zero_mode_weight(mom);
  for (int l = 1; l <= ctx.N(); ++l)
    if (wh[l - 1] != 0) acc += wh[l - 1] * ctx.eig_h(mom, l);
  return acc;
}

// Completed-square data: Z = sum_k d_k (x_k + sum_{j>k} L_kj x_j + t_k)^2 + c0.
struct SquareForm {
  int n;
  std::vector<Rat> d, t;
  std::vector<std::vector<Rat>> L;
  Rat c0;
};

SquareForm complete_squares(const LatticeForm& f) {
  int n = f.n;
  SquareForm out;
  out.n = n;
  out.d.assign(n, Rat(0));
  out.t.assign(n, Rat(0));
  out.L.assign(n, std::vector<Rat>(n, Rat(0)));
  auto Q = f.Q;
  auto b = f.b;
  out.c0 = f.c;
  for (int k = 0; k < n; ++k) {
    Rat dk = Q[k][k];
    if (dk <= 0)
      throw std::domain_error("enumerate_basis: zero-mode form not positive definite");
    out.d[k] = dk;
    out.t[k] = b[k] / (2 * dk);
    out.c0 -= b[k] * b[k] / (4 * dk);
    for (int j = k + 1; j < n; ++j) out.L[k][j] = Q[k][j] / dk;
    // Schur complement update
    for (int i2 = k + 1; i2 < n; ++i2) {
      b[i2] -= b[k] * Q[k][i2] / dk;
      for (int j2 = k + 1; j2 < n; ++j2) Q[i2][j2] -= Q[k][i2] * Q[k][j2] / dk;
    }
  }
  return out;
}

// enumerate integer points with Z(i) <= bound (Fincke-Pohst style, exact).
void enumerate_points(const SquareForm& sq, const Rat& bound, std::vector<long>& cur, int k,
                      const Rat& used, std::vector<std::vector<long>>& out) {
  if (k < 0) {
    out.push_back(cur);
    return;
  }
  // offset of the k-th square given already-fixed coordinates j > k
  Rat off = sq.t[k];
  for (int j = k + 1; j < sq.n; ++j) off += sq.L[k][j] * Rat(cur[j]);
  Rat room = bound - used;
  if (room < 0) return;
  // |x + off| <= sqrt(room/d_k): integer sweep with exact per-point test
  Rat rad2 = room / sq.d[k];
  Int lo_num = rat_floor(-off), margin(1);
  Int radius = sqrt(rat_num(rad2) / rat_den(rad2)) + margin;
  for (Int x = lo_num - radius; x <= lo_num + radius + 1; ++x) {
    Rat y = Rat(x) + off;
    Rat add = sq.d[k] * y * y;
    if (add > room) continue;
    cur[k] = to_long(x);
    enumerate_points(sq, bound, cur, k - 1, used + add, out);
  }
  cur[k] = 0;
}

std::vector<std::vector<long>> lattice_below(const SquareForm& sq, const Rat& bound) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(sq.n, 0);
  enumerate_points(sq, bound, cur, sq.n - 1, sq.c0, out);
  return out;
}

void excitation_partitions(const Ctx& ctx, long budget, int fam_idx,
                           const std::vector<int>& fams, long mode,
                           std::vector<std::pair<OscId, int>>& cur,
                           std::vector<std::vector<std::pair<OscId, int>>>& out) {
  if (fam_idx == (int)fams.size()) {
    out.push_back(cur);
    return;
  }
  if (mode > budget) {
    excitation_partitions(ctx, budget, fam_idx + 1, fams, 1, cur, out);
    return;
  }
  // skip this (fam, mode)
  excitation_partitions(ctx, budget, fam_idx, fams, mode + 1, cur, out);
  // or take it with multiplicity >= 1
  for (int mult = 1; mode * mult <= budget; ++mult) {
    cur.emplace_back(OscId{fams[fam_idx], -mode}, mult);
    excitation_partitions(ctx, budget - mode * mult, fam_idx, fams, mode + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Rat sector_weight_floor(const Ctx& ctx, const Sector& s, long ghost_level) {
  LatticeForm f = sector_form(ctx, s, ghost_level);
  SquareForm sq = complete_squares(f);
  // c0 is the real minimum; scan lattice points within c0 + small slack
  Rat best;
  bool found = false;
  for (Rat slack(1); ; slack *= 2) {
    auto pts = lattice_below(sq, sq.c0 + slack);
    for (const auto& p : pts) {
      Rat v = f.eval(p);
      if (!found || v < best) best = v, found = true;
    }
    if (found) return best;
  }
}

std::vector<FockState> enumerate_basis(const Ctx& ctx, const Sector& s, long ghost_level,
                                       long D) {
  LatticeForm f = sector_form(ctx, s, ghost_level);
  SquareForm sq = complete_squares(f);
  Rat floor_val = sector_weight_floor(ctx, s, ghost_level);
  Rat bound = floor_val + Rat(D);
  std::vector<int> fams;
  for (int i = 1; i <= ctx.N(); ++i) fams.push_back(Fam::h(i));
  fams.push_back(Fam::c(ctx.N()));

  std::vector<FockState> out;
  for (const auto& pt : lattice_below(sq, bound)) {
    Rat z = f.eval(pt);
    Rat room = bound - z;
    if (room < 0) continue;
    long budget = to_long(rat_floor(room));
    std::vector<std::vector<std::pair<OscId, int>>> excs;
    std::vector<std::pair<OscId, int>> cur;
    excitation_partitions(ctx, budget, 0, fams, 1, cur, excs);
    Momenta mom = s.momenta(pt, ghost_level);
    for (auto& e : excs) {
      FockState st;
      st.mom = mom;
      std::sort(e.begin(), e.end());
      st.exc = std::move(e);
      out.push_back(std::move(st));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticeMin lattice_quadratic_min(int n, const std::function<Rat(const std::vector<long>&)>& f) {
  LatticeForm lf = lattice_form_of(n, f);
  SquareForm sq = complete_squares(lf);
  for (Rat slack(1);; slack *= 2) {
    auto pts = lattice_below(sq, sq.c0 + slack);
    bool found = false;
    LatticeMin best;
    for (const auto& p : pts) {
      Rat v = lf.eval(p);
      if (!found || v < best.value) best = {v, p}, found = true;
    }
    if (found) return best;
  }
}

std::vector<std::vector<long>> lattice_points_below(
    int n, const std::function<Rat(const std::vector<long>&)>& f, const Rat& bound) {
  LatticeForm lf = lattice_form_of(n, f);
  SquareForm sq = complete_squares(lf);
  std::vector<std::vector<long>> out;
  for (auto& p : lattice_below(sq, bound))
    if (lf.eval(p) <= bound) out.push_back(std::move(p));
  return out;
}

Rat state_trace_weight(const Ctx& ctx, const FockState& st, const Rat& wd,
                       const std::vector<Rat>& wh) {
  Rat acc = wd * (Rat(st.degree()) + ctx.zero_mode_weight(st.mom));
  for (int l = 1; l <= ctx.N(); ++l)
    if (wh[l - 1] != 0) acc += wh[l - 1] * ctx.eig_h(st.mom, l);
  return acc;
}

Rat weight_floor(const Ctx& ctx, const Sector& s, long ghost_level, const Rat& wd,
                 const std::vector<Rat>& wh) {
  if (wd <= 0) throw std::domain_error("weight_floor: wd must be positive");
  LatticeForm f = lattice_form_of(ctx.N(), [&](const std::vector<long>& is) {
    return weighted_zero_form(ctx, s, ghost_level, wd, wh, is);
  });
  SquareForm sq = complete_squares(f);
  for (Rat slack(1);; slack *= 2) {
    auto pts = lattice_below(sq, sq.c0 + slack);
    bool found = false;
    Rat best;
    for (const auto& p : pts) {
      Rat v = f.eval(p);
      if (!found || v < best) best = v, found = true;
    }
    if (found) return best;
  }
}

std::vector<FockState> enumerate_by_weight(const Ctx& ctx, const Sector& s, long ghost_level,
                                           const Rat& wd, const std::vector<Rat>& wh,
                                           const Rat& bound) {
  if (wd <= 0) throw std::domain_error("enumerate_by_weight: wd must be positive");
  LatticeForm f = lattice_form_of(ctx.N(), [&](const std::vector<long>& is) {
    return weighted_zero_form(ctx, s, ghost_level, wd, wh, is);
  });
  SquareForm sq = complete_squares(f);
  std::vector<int> fams;
  for (int i = 1; i <= ctx.N(); ++i) fams.push_back(Fam::h(i));
  fams.push_back(Fam::c(ctx.N()));

  std::vector<FockState> out;
  for (const auto& pt : lattice_below(sq, bound)) {
    Rat z = f.eval(pt);
    Rat room = bound - z;
    if (room < 0) continue;
    long budget = to_long(rat_floor(room / wd));
    if (budget > ctx.Dmax())
      throw TruncationError("enumerate_by_weight: bound needs states beyond the degree cutoff");
    std::vector<std::vector<std::pair<OscId, int>>> excs;
    std::vector<std::pair<OscId, int>> cur;
    excitation_partitions(ctx, budget, 0, fams, 1, cur, excs);
    Momenta mom = s.momenta(pt, ghost_level);
    for (auto& e : excs) {
      FockState st;
      st.mom = mom;
      std::sort(e.begin(), e.end());
      st.exc = std::move(e);
      out.push_back(std::move(st));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

HwClassification classify_highest_weight(const Ctx& ctx, const Momenta& lambda) {
  const int N = ctx.N();
  HwClassification res;
  res.weights.resize(N + 1);
  Rat sum(0);
  for (int i = 1; i <= N; ++i) {
    res.weights[i] = ctx.eig_h(lambda, i);
    sum += res.weights[i];
  }
  res.weights[0] = Rat(1) - sum;  // h_0 = c - sum H^k_0 at level one

  // class 1: (beta+1, ..., beta+1, beta, ..., beta; 0) with the step at m
  if (lambda[N + 1] == 0) {
    Rat base = lambda[N];  // beta
    int m = 0;
    bool ok = true;
    for (int i = 0; i <= N && ok; ++i) {
      if (lambda[i] == base + 1) {
        if (m != i) ok = false;  // must be a prefix
        else m = i + 1;
      } else if (lambda[i] != base) {
        ok = false;
      }
    }
    if (ok && m >= 1 && m <= N) {
      res.cls = HwClass::Class1;
      res.class1_index = m;
      return res;
    }
  }
  // class 2: (beta, ..., beta, beta - alpha; -alpha)
  {
    Rat base = lambda[0];
    bool ok = true;
    for (int i = 1; i < N && ok; ++i)
      if (lambda[i] != base) ok = false;
    Rat alpha = -lambda[N + 1];
    if (ok && lambda[N] == base - alpha) {
      res.cls = HwClass::Class2;
      res.class2_alpha = alpha;
      return res;
    }
  }
  res.cls = HwClass::None;
  return res;
}

}  // namespace qsln
