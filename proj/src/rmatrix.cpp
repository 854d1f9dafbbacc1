#include "qsln/rmatrix.hpp"

#include "qsln/evalrep.hpp"

#include <sstream>

namespace qsln {

namespace {

// entries are (A + B z)/(C + D z) with Laurent-polynomial coefficients
struct LinFrac {
  QLaurent A, B, C, D;
  bool zero = true;

  Scalar eval(const Scalar& z) const {
    if (zero) return Scalar();
    Scalar num = Scalar(A) + Scalar(B) * z;
    Scalar den = Scalar(C) + Scalar(D) * z;
    return num / den;
  }
  // d/dz at z = 1: (BC - AD)/(C + D)^2
  Scalar dz_at_one() const {
    if (zero) return Scalar();
    Scalar num = Scalar(B * C - A * D);
    Scalar den = Scalar(C + D) * Scalar(C + D);
    return num / den;
  }
};

LinFrac rbar_linfrac(int N, int i, int j, int k, int l) {
  LinFrac r;
  QLaurent one(Rat(1));
  QLaurent q = QLaurent::q_pow(Rat(1)), qi = QLaurent::q_pow(Rat(-1));
  QLaurent qmq = q - qi;
  auto sgn = [&](QLaurent v) {
    if ((vgrade(N, i) * vgrade(N, j)) % 2) return v;  // (-1)^{[i][j]} with both odd
    return v;
  };
  (void)sgn;
  long sign_ij = (vgrade(N, i) * vgrade(N, j)) % 2 ? -1 : 1;
  if (i == j && k == i && l == i) {
    r.zero = false;
    if (i <= N) {
      r.A = -one;
      r.C = one;
    } else {
      // -(z q^{-1} - q)/(z q - q^{-1})
      r.A = q;
      r.B = -qi;
      r.C = -qi;
      r.D = q;
    }
    return r;
  }
  if (i != j && k == i && l == j) {
    // measured against the coproduct intertwining (and the FZ exchange):
    // (1 - z)/(zq - q^{-1}); the display's (z-1) numerator fails both
    r.zero = false;
    r.A = one;
    r.B = -one;
    r.C = -qi;
    r.D = q;
    return r;
  }
  if (i != j && k == j && l == i) {
    // display convention: upper pair = input; the z-free exchange entry sends
    // v_j (x) v_i to v_i (x) v_j for i < j, i.e. in = (i,j) with i > j here
    r.zero = false;
    if (i > j) {
      r.A = QLaurent(Rat(sign_ij)) * qmq;
    } else {
      r.B = QLaurent(Rat(sign_ij)) * qmq;
    }
    r.C = -qi;
    r.D = q;
    return r;
  }
  return r;
}

}  // namespace

Scalar rbar_entry(int N, int i, int j, int k, int l, const Scalar& z) {
  return rbar_linfrac(N, i, j, k, l).eval(z);
}

Scalar rbar_entry_dz1(int N, int i, int j, int k, int l) {
  return rbar_linfrac(N, i, j, k, l).dz_at_one();
}

GMat<Scalar> rbar_matrix(int N, const Scalar& z) {
  GMat<Scalar> m(N, 2);
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j)
      for (int k = 1; k <= N + 1; ++k)
        for (int l = 1; l <= N + 1; ++l) {
          Scalar v = rbar_entry(N, i, j, k, l, z);
          if (!v.is_zero())
            m.at(m.index({k, l}), m.index({i, j})) = v;
        }
  return m;
}

GMat<Scalar> graded_permutation(int N) {
  GMat<Scalar> p(N, 2);
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j) {
      Scalar v(Rat((vgrade(N, i) * vgrade(N, j)) % 2 ? -1 : 1));
      p.at(p.index({j, i}), p.index({i, j})) = v;
    }
  return p;
}

Cplx rbar_entry_num(int N, int i, int j, int k, int l, const NumericContext& ctx,
                    const Cplx& z) {
  LinFrac f = rbar_linfrac(N, i, j, k, l);
  if (f.zero) return Cplx(0);
  Cplx num = ctx.eval(f.A) + ctx.eval(f.B) * z;
  Cplx den = ctx.eval(f.C) + ctx.eval(f.D) * z;
  return num / den;
}

namespace {

// (a; p)_inf numerically, |p| < 1
Cplx poch_num(const Cplx& a, const Real& p) {
  Cplx acc(1);
  Real pk(1);
  for (int n = 0; n < 4000; ++n) {
    Cplx factor = Cplx(1) - a * pk;
    acc *= factor;
    pk *= p;
    if (pk < Real("1e-90")) break;
  }
  return acc;
}

Cplx cpow(const Cplx& z, const Rat& e) {
  Real er = Real(rat_num(e).str()) / Real(rat_den(e).str());
  return pow(z, Cplx(er));
}

}  // namespace

Cplx scalar_factor_num(int N, RKind kind, const NumericContext& ctx, const Cplx& z) {
  Real p = ctx.q_pow(Rat(2 * (N - 1)));
  Cplx zi = Cplx(1) / z;
  if (kind == RKind::I) {
    Cplx num = poch_num(z * ctx.q_pow(Rat(2)), p) * poch_num(zi * ctx.q_pow(Rat(2 * N - 2)), p);
    Cplx den = poch_num(zi * ctx.q_pow(Rat(2)), p) * poch_num(z * ctx.q_pow(Rat(2 * N - 2)), p);
    return cpow(z, Rat(2 - N, N - 1)) * num / den;
  }
  Cplx num = poch_num(z * ctx.q_pow(Rat(2 * N - 4)), p) * poch_num(zi * ctx.q_pow(Rat(2 * N - 2)), p);
  Cplx den = poch_num(zi * ctx.q_pow(Rat(2 * N - 4)), p) * poch_num(z * ctx.q_pow(Rat(2 * N - 2)), p);
  return -cpow(z, Rat(-1, N - 1)) * num / den;
}

Cplx tau_num(int N, const NumericContext& ctx, const Cplx& z) {
  Real p = ctx.q_pow(Rat(2 * (N - 1)));
  Cplx zi = Cplx(1) / z;
  Cplx num = poch_num(z * ctx.q_pow(Rat(1)), p) * poch_num(zi * ctx.q_pow(Rat(2 * N - 3)), p);
  Cplx den = poch_num(zi * ctx.q_pow(Rat(1)), p) * poch_num(z * ctx.q_pow(Rat(2 * N - 3)), p);
  return -cpow(z, Rat(2 - N, N - 1)) * num / den;
}

GMat<Cplx> rmatrix_num(int N, RKind kind, const NumericContext& ctx, const Cplx& z) {
  Cplx sf = scalar_factor_num(N, kind, ctx, z);
  GMat<Cplx> m(N, 2);
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j)
      for (int k = 1; k <= N + 1; ++k)
        for (int l = 1; l <= N + 1; ++l) {
          Cplx v = rbar_entry_num(N, i, j, k, l, ctx, z);
          if (v != Cplx(0)) m.at(m.index({k, l}), m.index({i, j})) = sf * v;
        }
  return m;
}

Rat two_rho(int N, int i) { return i <= N ? Rat(N - 2 * i) : Rat(-N); }

namespace {

// graded flip embedded plainly on adjacent legs (pos, pos+1) of 3
template <class T>
GMat<T> flip3(int N, int pos) {
  GMat<T> p(N, 2);
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j)
      p.at(p.index({j, i}), p.index({i, j})) = T((vgrade(N, i) * vgrade(N, j)) % 2 ? -1 : 1);
  return embed_map_adjacent(p, 3, pos);
}

std::vector<Rat> grid_points() {
  return {Rat(2), Rat(3), Rat(5, 2), Rat(7, 3), Rat(11, 5), Rat(13, 4), Rat(17, 6), Rat(9, 7)};
}

}  // namespace

bool rbar_initial_condition(int N, std::string* note) {
  GMat<Scalar> r = rbar_matrix(N, Scalar(1));
  GMat<Scalar> p = graded_permutation(N);
  if ((r - p).is_zero()) return true;
  if (note) *note = "Rbar(1) != P";
  return false;
}

bool rbar_ybe_exact(int N, std::string* note) {
  // both sides are rational in (z, w) with per-variable numerator degree <= 6
  // after clearing denominators; an 8x8 exact grid decides the identity
  auto pts = grid_points();
  for (const Rat& zr : pts)
    for (const Rat& wr : pts) {
      Scalar z(zr), w(wr), zw = Scalar(zr) * Scalar(wr);
      GMat<Scalar> p23 = flip3<Scalar>(N, 1);
      GMat<Scalar> r12 = embed_map_adjacent(rbar_matrix(N, z), 3, 0);
      GMat<Scalar> r13 = p23 * embed_map_adjacent(rbar_matrix(N, zw), 3, 0) * p23;
      GMat<Scalar> r23 = embed_map_adjacent(rbar_matrix(N, w), 3, 1);
      GMat<Scalar> lhs = r12 * r13 * r23;
      GMat<Scalar> rhs = r23 * r13 * r12;
      if (!(lhs - rhs).is_zero()) {
        if (note) *note = "YBE fails at z=" + zr.str() + " w=" + wr.str();
        return false;
      }
    }
  return true;
}

bool rbar_unitarity_exact(int N, std::string* note) {
  GMat<Scalar> p = graded_permutation(N);
  for (const Rat& zr : grid_points()) {
    Scalar z(zr), zi = Scalar(zr).inverse();
    GMat<Scalar> r = rbar_matrix(N, z);
    GMat<Scalar> r21 = p * rbar_matrix(N, zi) * p;
    GMat<Scalar> prod = r * r21;
    // Rbar12(z) Rbar21(1/z) must be the identity (the scalar factors of
    // R^{(i)} telescope to 1 on their own)
    if (!(prod - GMat<Scalar>::identity(N, 2)).is_zero()) {
      if (note) *note = "unitarity fails at z=" + zr.str();
      return false;
    }
  }
  return true;
}

namespace {

Real max_abs(const GMat<Cplx>& m) {
  Real best(0);
  for (long r = 0; r < m.dim(); ++r)
    for (long c = 0; c < m.dim(); ++c) best = std::max(best, abs_c(m.at(r, c)));
  return best;
}

GMat<Cplx> inverse_num(const GMat<Cplx>& m) {
  long n = m.dim();
  std::vector<std::vector<Cplx>> a(n, std::vector<Cplx>(2 * n, Cplx(0)));
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) a[r][c] = m.at(r, c);
    a[r][n + r] = Cplx(1);
  }
  for (long col = 0; col < n; ++col) {
    long piv = col;
    Real best = abs_c(a[col][col]);
    for (long r = col + 1; r < n; ++r)
      if (abs_c(a[r][col]) > best) best = abs_c(a[r][col]), piv = r;
    std::swap(a[col], a[piv]);
    Cplx lead = a[col][col];
    for (long c = col; c < 2 * n; ++c) a[col][c] /= lead;
    for (long r = 0; r < n; ++r) {
      if (r == col) continue;
      Cplx f = a[r][col];
      if (f == Cplx(0)) continue;
      for (long c = col; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  GMat<Cplx> out(m.N(), m.legs());
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) out.at(r, c) = a[r][n + c];
  return out;
}

GMat<Cplx> perm_num(int N) {
  GMat<Cplx> p(N, 2);
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j)
      p.at(p.index({j, i}), p.index({i, j})) =
          Cplx((vgrade(N, i) * vgrade(N, j)) % 2 ? -1 : 1);
  return p;
}

}  // namespace

Real ybe_residual(int N, RKind kind, const NumericContext& ctx, const Cplx& z, const Cplx& w) {
  auto rnum = [&](const Cplx& arg) {
    return [&, arg](int a, int c, int i, int j) {
      Cplx sf = scalar_factor_num(N, kind, ctx, arg);
      return sf * rbar_entry_num(N, a, c, i, j, ctx, arg);
    };
  };
  (void)rnum;
  GMat<Cplx> p23 = flip3<Cplx>(N, 1);
  GMat<Cplx> r12 = embed_map_adjacent(rmatrix_num(N, kind, ctx, z), 3, 0);
  GMat<Cplx> r13 = p23 * embed_map_adjacent(rmatrix_num(N, kind, ctx, z * w), 3, 0) * p23;
  GMat<Cplx> r23 = embed_map_adjacent(rmatrix_num(N, kind, ctx, w), 3, 1);
  return max_abs(r12 * r13 * r23 - r23 * r13 * r12);
}

Real unitarity_residual(int N, RKind kind, const NumericContext& ctx, const Cplx& z) {
  GMat<Cplx> r = rmatrix_num(N, kind, ctx, z);
  GMat<Cplx> p = perm_num(N);
  GMat<Cplx> r21 = p * rmatrix_num(N, kind, ctx, Cplx(1) / z) * p;
  GMat<Cplx> prod = r * r21;
  GMat<Cplx> id(N, 2);
  for (long d = 0; d < id.dim(); ++d) id.at(d, d) = Cplx(1);
  return max_abs(prod - id);
}

GMat<Cplx> supertranspose_leg1(const GMat<Cplx>& m) {
  const int N = m.N();
  GMat<Cplx> out(N, 2);
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j)
      for (int k = 1; k <= N + 1; ++k)
        for (int l = 1; l <= N + 1; ++l) {
          Cplx v = m.at(m.index({i, l}), m.index({k, j}));
          if (v == Cplx(0)) continue;
          if ((vgrade(N, i) * ((vgrade(N, i) + vgrade(N, k)) % 2)) % 2) v = -v;
          out.at(out.index({k, l}), out.index({i, j})) = v;
        }
  return out;
}

Real crossing_residual(int N, RKind kind, const NumericContext& ctx, const Cplx& z) {
  // (R^{-1})^{st_1}(z) ((q^{-2rho} (x) 1) R(z q^{2(1-N)}) (q^{2rho} (x) 1))^{st_1} = 1
  GMat<Cplx> r = rmatrix_num(N, kind, ctx, z);
  GMat<Cplx> rinv_st1 = supertranspose_leg1(inverse_num(r));
  Cplx zshift = z * Cplx(ctx.q_pow(Rat(2 * (1 - N))));
  GMat<Cplx> rs = rmatrix_num(N, kind, ctx, zshift);
  GMat<Cplx> wminus(N, 2), wplus(N, 2);
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j) {
      long d = wminus.index({i, j});
      wminus.at(d, d) = Cplx(ctx.q_pow(-two_rho(N, i)));
      wplus.at(d, d) = Cplx(ctx.q_pow(two_rho(N, i)));
    }
  GMat<Cplx> mid = supertranspose_leg1(wminus * rs * wplus);
  GMat<Cplx> prod = rinv_st1 * mid;
  GMat<Cplx> id(N, 2);
  for (long d = 0; d < id.dim(); ++d) id.at(d, d) = Cplx(1);
  return max_abs(prod - id);
}

int rmatrix_initial_sign(int N, RKind kind, const NumericContext& ctx) {
  GMat<Cplx> r = rmatrix_num(N, kind, ctx, Cplx(1));
  GMat<Cplx> p = perm_num(N);
  Real tol("1e-30");
  GMat<Cplx> dplus = r - p;
  if (max_abs(dplus) < tol) return +1;
  GMat<Cplx> mp = p;
  mp *= Cplx(-1);
  GMat<Cplx> dminus = r - mp;
  if (max_abs(dminus) < tol) return -1;
  return 0;
}

GMat<Scalar> hamiltonian_density(int N) {
  // P Rbar(e^u) = 1 + u h + ...; h = P * dRbar/dz at z = 1
  GMat<Scalar> dr(N, 2);
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j)
      for (int k = 1; k <= N + 1; ++k)
        for (int l = 1; l <= N + 1; ++l) {
          Scalar v = rbar_entry_dz1(N, i, j, k, l);
          if (!v.is_zero()) dr.at(dr.index({k, l}), dr.index({i, j})) = v;
        }
  return graded_permutation(N) * dr;
}

bool hamiltonian_symmetry(int N, std::string* note) {
  GMat<Scalar> h = hamiltonian_density(N);
  EvalRep rep = evaluation_rep(N, Scalar(1));
  for (int i = 1; i <= N; ++i) {
    for (auto [name, m] : {std::pair<const char*, GMat<Scalar>>{"e", coproduct_e(rep, i)},
                           {"f", coproduct_f(rep, i)},
                           {"t", coproduct_t(rep, i)}}) {
      GMat<Scalar> comm = m * h - h * m;
      if (!comm.is_zero()) {
        if (note) *note = std::string("[Delta(") + name + std::to_string(i) + "), h] != 0";
        return false;
      }
    }
  }
  return true;
}

}  // namespace qsln
