#include "qsln/exchange.hpp"

#include <sstream>

namespace qsln {

namespace {

PuiseuxSeries poch_inverse(const Scalar& c, const Rat& zexp, const Rat& base, const Rat& step,
                           long order) {
  return unit_series_inverse(pochhammer(c, zexp, base, step, order), order);
}

}  // namespace

PuiseuxSeries r_factor_series(int N, RKind kind, long order) {
  Rat p(2 * (N - 1));
  long a = kind == RKind::I ? 2 : 2 * N - 4;
  // (z q^a; p)(z^{-1} q^{2N-2}; p) / ((z^{-1} q^a; p)(z q^{2N-2}; p))
  PuiseuxSeries s = pochhammer(Scalar(1), Rat(1), Rat(a), p, order);
  s *= pochhammer(Scalar(1), Rat(-1), Rat(2 * N - 2), p, order);
  s *= poch_inverse(Scalar(1), Rat(-1), Rat(a), p, order);
  s *= poch_inverse(Scalar(1), Rat(1), Rat(2 * N - 2), p, order);
  // overall monomial: z^{(2-N)/(N-1)} for kind I, -z^{-1/(N-1)} for kind II
  PuiseuxSeries mono =
      kind == RKind::I
          ? PuiseuxSeries::monomial(Scalar(1), Rat(2 - N, N - 1))
          : PuiseuxSeries::monomial(Scalar(Rat(-1)), Rat(-1, N - 1));
  return s * mono;
}

PuiseuxSeries tau_series(int N, long order) {
  Rat p(2 * (N - 1));
  PuiseuxSeries s = pochhammer(Scalar(1), Rat(1), Rat(1), p, order);
  s *= pochhammer(Scalar(1), Rat(-1), Rat(2 * N - 3), p, order);
  s *= poch_inverse(Scalar(1), Rat(-1), Rat(1), p, order);
  s *= poch_inverse(Scalar(1), Rat(1), Rat(2 * N - 3), p, order);
  return s * PuiseuxSeries::monomial(Scalar(Rat(-1)), Rat(2 - N, N - 1));
}

PuiseuxSeries rbar_entry_series(int N, int k, int l, int i, int j, long order) {
  // entries are (A + Bx)/(-q^{-1})(1 - x q^2); expand the geometric factor
  Scalar x0 = rbar_entry(N, k, l, i, j, Scalar());  // value at x = 0 is A*(-q)
  (void)x0;
  PuiseuxSeries out;
  // reconstruct A + Bx from two evaluations
  Scalar at0 = rbar_entry(N, k, l, i, j, Scalar());          // A / (C) with C = -q^{-1}
  Scalar at1 = rbar_entry(N, k, l, i, j, Scalar(1));
  // direct approach: sample the linear fraction
  // (A + Bx) = entry(x) * (C + Dx); C = -q^{-1}, D = q
  Scalar C = Scalar::q_pow(Rat(-1)) * Scalar(Rat(-1));
  Scalar D = Scalar::q_pow(Rat(1));
  Scalar A = at0 * C;
  Scalar B = at1 * (C + D) - A;
  // geometric expansion (C + Dx)^{-1} = -q sum_k q^{2k} x^k
  long kmax = order / 2 + 2;
  PuiseuxSeries geo;
  geo.set_qord(Rat(order + 2));
  for (long t = 0; t <= kmax; ++t)
    geo.add_term(Rat(t), Scalar(Rat(-1)) * Scalar::q_pow(Rat(2 * t + 1)));
  PuiseuxSeries lin = PuiseuxSeries::monomial(A, Rat(0));
  lin += PuiseuxSeries::monomial(B, Rat(1));
  return lin * geo;
}

PuiseuxSeries g_constant_series(int N, long order) {
  Rat p(2 * (N - 1));
  PuiseuxSeries s = pochhammer(Scalar(1), Rat(0), Rat(2), p, order);
  s *= poch_inverse(Scalar(1), Rat(0), p, p, order);
  s.mul_scalar(Scalar::phase(Rat(N, 2 * (N - 1))));
  return s;
}

PuiseuxSeries g_inverse_series(int N, long order) {
  Rat p(2 * (N - 1));
  PuiseuxSeries s = pochhammer(Scalar(1), Rat(0), p, p, order);
  s *= poch_inverse(Scalar(1), Rat(0), Rat(2), p, order);
  s.mul_scalar(Scalar::phase(-Rat(N, 2 * (N - 1))));
  return s;
}

namespace {

// exact single slice of a component on a (possibly mixed) vector; truncation
// errors propagate to the caller
FockVector comp_slice(const VertexCache& vc, VertexKind kind, int idx, const FockVector& v,
                      const Rat& e) {
  return vc.get(kind, idx).slice(vc.ctx(), v, e);
}

struct KeyEval {
  Rat vmin = q_val_infinity();  // min valuation seen among contributions
  FockVector value;
};

}  // namespace

FzReport fz_exchange_check(const VertexCache& vc, FzType type, int i, int j, const Sector& sec,
                           long xorder, long qord, long D) {
  const Ctx& ctx = vc.ctx();
  const int N = ctx.N();
  FzReport rep;
  {
    std::ostringstream os;
    os << (type == FzType::TypeI ? "fz.typeI" : type == FzType::TypeII ? "fz.typeII" : "fz.mixed")
       << ".i" << i << ".j" << j;
    rep.id = os.str();
  }
  rep.qorder = Rat(qord);

  // scalar-factor series in x = z1/z2 and R entries as series
  PuiseuxSeries sf;
  std::map<std::pair<int, int>, PuiseuxSeries> rser;
  if (type == FzType::TypeI) {
    sf = r_factor_series(N, RKind::I, qord + 2);
    for (int k = 1; k <= N + 1; ++k)
      for (int l = 1; l <= N + 1; ++l) {
        PuiseuxSeries e = rbar_entry_series(N, k, l, i, j, qord + 2);
        if (!e.known_zero()) rser[{k, l}] = e * sf;
      }
  } else if (type == FzType::TypeII) {
    sf = r_factor_series(N, RKind::II, qord + 2);
    for (int k = 1; k <= N + 1; ++k)
      for (int l = 1; l <= N + 1; ++l) {
        // R^{(II)}(z1/z2)^{ij}_{kl}: upper pair = LHS component indices = input
        PuiseuxSeries e = rbar_entry_series(N, k, l, i, j, qord + 2);
        if (!e.known_zero()) rser[{k, l}] = e * sf;
      }
  } else {
    sf = tau_series(N, qord + 2);
  }

  VertexKind kindA = type == FzType::TypeI ? VertexKind::TypeI : VertexKind::TypeIIDual;
  VertexKind kindB = type == FzType::Mixed ? VertexKind::TypeI : kindA;

  auto basis = enumerate_basis(ctx, sec, 0, D);
  // batch by degree; slice extraction is exact per state
  std::map<long, FockVector> batches;
  long tag = 0;
  for (const auto& st : basis) {
    FockState t = st;
    t.tag = ++tag;
    batches[st.degree()].add(t, Scalar(1));
  }

  long compared = 0;
  Rat worst_val = q_val_infinity();
  for (const auto& [deg, v] : batches) {
    const FockState& rs = v.terms().begin()->first;
    // natural base exponents for the two applications
    Rat b1, b2;
    if (type == FzType::TypeI) {
      // LHS phi_j(z2) phi_i(z1)
      b1 = vc.get(VertexKind::TypeI, i).base_exponent(ctx, rs);
      b2 = vc.get(VertexKind::TypeI, j).base_exponent(ctx, rs);
    } else if (type == FzType::TypeII) {
      // LHS psi*_i(z1) psi*_j(z2)
      b1 = vc.get(VertexKind::TypeIIDual, i).base_exponent(ctx, rs);
      b2 = vc.get(VertexKind::TypeIIDual, j).base_exponent(ctx, rs);
    } else {
      // LHS psi*_i(z1) phi_j(z2)
      b1 = vc.get(VertexKind::TypeIIDual, i).base_exponent(ctx, rs);
      b2 = vc.get(VertexKind::TypeI, j).base_exponent(ctx, rs);
    }
    std::map<std::pair<int, Rat>, FockVector> slice_memo;  // (component, slice) on v
    auto memo_slice = [&](VertexKind kk, int idx, const Rat& e) -> const FockVector& {
      auto key = std::make_pair(idx * 8 + (int)kk, e);
      auto it = slice_memo.find(key);
      if (it == slice_memo.end()) it = slice_memo.emplace(key, comp_slice(vc, kk, idx, v, e)).first;
      return it->second;
    };
    for (long r1 = 0; r1 <= xorder; ++r1)
      for (long r2 = 0; r2 <= 1; ++r2) {
        Rat e1 = b1 + Rat(r1), e2;
        FockVector lhs, rhs;
        Rat vmin = q_val_infinity();
        try {
          if (type == FzType::TypeI) {
            // phi_j(z2) phi_i(z1) v  vs  sum R^{kl}_{ij} phi_k(z1) phi_l(z2) v (-1)^{[i][j]}
            FockVector inner = comp_slice(vc, VertexKind::TypeI, i, v, e1);
            if (inner.is_zero()) continue;
            e2 = vc.get(VertexKind::TypeI, j).base_exponent(ctx, inner.terms().begin()->first) +
                 Rat(r2);
            lhs = comp_slice(vc, VertexKind::TypeI, j, inner, e2);
            for (const auto& [kl, series] : rser) {
              for (const auto& [m, coeff] : series.terms()) {
                const FockVector& in2 = memo_slice(VertexKind::TypeI, kl.second, e2 + m);
                if (in2.is_zero()) continue;
                FockVector val = comp_slice(vc, VertexKind::TypeI, kl.first, in2, e1 - m);
                if (val.is_zero()) continue;
                vmin = std::min(vmin, val.min_valuation() + coeff.q_valuation());
                rhs += val * coeff;
              }
            }
            if ((vgrade(N, i) * vgrade(N, j)) % 2) rhs = -rhs;
          } else if (type == FzType::TypeII) {
            // psi*_i(z1) psi*_j(z2) v vs sum R^{ij}_{kl} psi*_l(z2) psi*_k(z1) v (-1)^{[i][j]}
            FockVector inner0 = comp_slice(vc, VertexKind::TypeIIDual, j, v, b2 + Rat(r2));
            if (inner0.is_zero()) continue;
            e2 = b2 + Rat(r2);
            e1 = vc.get(VertexKind::TypeIIDual, i)
                     .base_exponent(ctx, inner0.terms().begin()->first) +
                 Rat(r1);
            FockVector inner = inner0;
            lhs = comp_slice(vc, VertexKind::TypeIIDual, i, inner, e1);
            for (const auto& [kl, series] : rser) {
              for (const auto& [m, coeff] : series.terms()) {
                const FockVector& in2 = memo_slice(VertexKind::TypeIIDual, kl.first, e1 - m);
                if (in2.is_zero()) continue;
                FockVector val = comp_slice(vc, VertexKind::TypeIIDual, kl.second, in2, e2 + m);
                if (val.is_zero()) continue;
                vmin = std::min(vmin, val.min_valuation() + coeff.q_valuation());
                rhs += val * coeff;
              }
            }
            if ((vgrade(N, i) * vgrade(N, j)) % 2) rhs = -rhs;
          } else {
            // psi*_i(z1) phi_j(z2) v = tau(z1/z2) phi_j(z2) psi*_i(z1) v (-1)^{[i][j]}
            FockVector inner = comp_slice(vc, VertexKind::TypeI, j, v, b2 + Rat(r2));
            if (inner.is_zero()) continue;
            e2 = b2 + Rat(r2);
            e1 = vc.get(VertexKind::TypeIIDual, i)
                     .base_exponent(ctx, inner.terms().begin()->first) +
                 Rat(r1);
            lhs = comp_slice(vc, VertexKind::TypeIIDual, i, inner, e1);
            for (const auto& [m, coeff] : sf.terms()) {
              const FockVector& in2 = memo_slice(VertexKind::TypeIIDual, i, e1 - m);
              if (in2.is_zero()) continue;
              FockVector val = comp_slice(vc, VertexKind::TypeI, j, in2, e2 + m);
              if (val.is_zero()) continue;
              vmin = std::min(vmin, val.min_valuation() + coeff.q_valuation());
              rhs += val * coeff;
            }
            if ((vgrade(N, i) * vgrade(N, j)) % 2) rhs = -rhs;
          }
        } catch (const TruncationError&) {
          continue;
        }
        if (lhs.is_zero() && rhs.is_zero()) continue;
        ++compared;
        // residual must vanish modulo q^{qord + min(vmin, 0)}
        Rat qeff = Rat(qord) + std::min(vmin, Rat(0));
        worst_val = std::min(worst_val, qeff);
        FockVector res = lhs - rhs;
        if (!res.is_zero() && res.min_valuation() < qeff) {
          rep.ok = false;
          if (rep.witness.empty()) {
            std::ostringstream os;
            os << "key (z1^" << e1.str() << ", z2^" << e2.str() << ") residual val "
               << res.min_valuation().str() << " < " << qeff.str();
            rep.witness = os.str();
          }
        }
      }
  }
  rep.keys = compared;
  rep.qorder = worst_val;
  if (compared == 0) {
    rep.skipped = true;
    rep.skip_reason = "no nonzero coefficients in the window";
  }
  return rep;
}

std::vector<InvertReport> invertibility_check(const VertexCache& vc, const Sector& sec,
                                              long qord, long D) {
  const Ctx& ctx = vc.ctx();
  const int N = ctx.N();
  std::vector<InvertReport> out;
  PuiseuxSeries ginv = g_inverse_series(N, qord + 1);

  auto basis = enumerate_basis(ctx, sec, 0, std::min(D, ctx.Dmax() - 2));
  std::map<long, FockVector> batches;
  long tag = 0;
  std::map<long, FockState> by_tag;
  for (const auto& st : basis) {
    FockState t = st;
    t.tag = ++tag;
    by_tag[t.tag] = t;
    batches[st.degree()].add(t, Scalar(1));
  }

  // diagonal total-power products: returns per-tag scalars of the z^0 total
  // and checks all other totals vanish mod q^{qord}
  auto product_total = [&](VertexKind ka, int ia, const Rat& scale_a, VertexKind kb, int ib,
                           long depth, std::map<long, Scalar>& diag, InvertReport& rep) {
    for (const auto& [deg, v] : batches) {
      const FockState& rs = v.terms().begin()->first;
      Rat b2 = vc.get(kb, ib).base_exponent(ctx, rs);
      std::map<Rat, FockVector> totals;
      for (long r2 = 0; r2 <= depth; ++r2) {
        Rat e2 = b2 + Rat(r2);
        FockVector mid;
        try {
          mid = comp_slice(vc, kb, ib, v, e2);
        } catch (const TruncationError&) {
          break;
        }
        if (mid.is_zero()) continue;
        // targeted totals: the identity is z-free, so probe t = 0 and a ring
        // of neighbours that must vanish
        for (long t = -2; t <= 2; ++t) {
          Rat e1 = Rat(t) - e2;
          FockVector res;
          try {
            res = comp_slice(vc, ka, ia, mid, e1);
          } catch (const TruncationError&) {
            continue;
          }
          if (res.is_zero()) continue;
          // outer component at q^{scale_a} z: slice e1 gains q^{scale_a * e1}
          res *= Scalar::q_pow(scale_a * e1);
          totals[Rat(t)] += res;
        }
      }
      for (auto& [t, vec] : totals) {
        if (vec.is_zero()) continue;
        if (t == 0) {
          for (const auto& [s, c] : vec.terms()) {
            auto it = by_tag.find(s.tag);
            if (it != by_tag.end() && s == it->second) diag[s.tag] += c;
            else if (c.q_valuation() < Rat(qord)) {
              rep.ok = false;
              if (rep.witness.empty())
                rep.witness = "off-diagonal content at total power 0 (val " +
                              c.q_valuation().str() + ")";
            }
          }
        } else if (vec.min_valuation() < Rat(qord)) {
          rep.ok = false;
          if (rep.witness.empty())
            rep.witness = "content at total power " + t.str() + " (val " +
                          vec.min_valuation().str() + ")";
        }
      }
    }
  };

  auto expect_scalar = [&](const std::map<long, Scalar>& diag, const PuiseuxSeries& expect,
                           InvertReport& rep) {
    Scalar ex;
    for (const auto& [e, c] : expect.terms()) ex += c;  // z-free series
    for (const auto& [t, st] : by_tag) {
      auto it = diag.find(t);
      Scalar got = it == diag.end() ? Scalar() : it->second;
      Scalar res = got - ex;
      if (!res.is_zero() && res.q_valuation() < Rat(qord)) {
        rep.ok = false;
        if (rep.witness.empty())
          rep.witness = "diagonal value off at tag " + std::to_string(t) + ": residual val " +
                        res.q_valuation().str();
      }
    }
  };

  long depth = qord + 1;
  // first invertibility, component-by-component: phi_i phi*_j = g^{-1}(-1)^{[i]} delta_ij
  for (int i = 1; i <= N + 1; ++i)
    for (int j = 1; j <= N + 1; ++j) {
      bool keep = i == j || (i == 1 && j == 2) || (i == 2 && j == 1) ||
                  (i == 1 && j == N + 1) || (i == N + 1 && j == 1);
      if (!keep) continue;
      InvertReport rep;
      rep.id = "invert.first." + std::to_string(i) + std::to_string(j);
      rep.qorder = Rat(qord);
      std::map<long, Scalar> diag;
      product_total(VertexKind::TypeI, i, Rat(0), VertexKind::TypeIDual, j, depth, diag, rep);
      if (i == j) {
        PuiseuxSeries ex = ginv;
        if (vgrade(N, i) % 2) ex = -ex;
        expect_scalar(diag, ex, rep);
      } else {
        expect_scalar(diag, PuiseuxSeries(), rep);
      }
      out.push_back(std::move(rep));
    }
  // trace form: sum_k (-1)^{[k]} phi*_k phi_k = g^{-1}
  {
    InvertReport rep;
    rep.id = "invert.first.sum";
    rep.qorder = Rat(qord);
    std::map<long, Scalar> diag;
    for (int k = 1; k <= N + 1; ++k) {
      std::map<long, Scalar> dk;
      product_total(VertexKind::TypeIDual, k, Rat(0), VertexKind::TypeI, k, depth, dk, rep);
      for (auto& [t, c] : dk) {
        if (vgrade(N, k) % 2) diag[t] -= c;
        else diag[t] += c;
      }
    }
    expect_scalar(diag, ginv, rep);
    out.push_back(std::move(rep));
  }
  // second invertibility: phi*_i(z q^{2(N-1)}) phi_j(z) = -g^{-1} q^{2 rho_i} delta_ij
  for (int i = 1; i <= N + 1; ++i) {
    InvertReport rep;
    rep.id = "invert.second." + std::to_string(i) + std::to_string(i);
    rep.qorder = Rat(qord);
    std::map<long, Scalar> diag;
    product_total(VertexKind::TypeIDual, i, Rat(2 * (N - 1)), VertexKind::TypeI, i, depth, diag,
                  rep);
    PuiseuxSeries ex = -ginv;
    ex.mul_scalar(Scalar::q_pow(two_rho(N, i)));
    expect_scalar(diag, ex, rep);
    out.push_back(std::move(rep));
  }
  // and the dual sum: sum_k q^{-2 rho_k} phi_k(z) phi*_k(z q^{2(N-1)}) = -g^{-1}
  {
    InvertReport rep;
    rep.id = "invert.second.sum";
    rep.qorder = Rat(qord);
    std::map<long, Scalar> diag;
    for (int k = 1; k <= N + 1; ++k) {
      std::map<long, Scalar> dk;
      // inner component at scaled argument: phi*_k(z q^{2(N-1)}) applied first
      for (const auto& [deg, v] : batches) {
        const FockState& rs = v.terms().begin()->first;
        Rat b2 = vc.get(VertexKind::TypeIDual, k).base_exponent(ctx, rs);
        for (long r2 = 0; r2 <= depth; ++r2) {
          Rat e2 = b2 + Rat(r2);
          FockVector mid;
          try {
            mid = comp_slice(vc, VertexKind::TypeIDual, k, v, e2);
          } catch (const TruncationError&) {
            break;
          }
          if (mid.is_zero()) continue;
          mid *= Scalar::q_pow(Rat(2 * (N - 1)) * e2);
          Rat e1 = -e2;  // diagonal total only for the sum rule
          FockVector res;
          try {
            res = comp_slice(vc, VertexKind::TypeI, k, mid, e1);
          } catch (const TruncationError&) {
            continue;
          }
          for (const auto& [s, c] : res.terms()) {
            auto it = by_tag.find(s.tag);
            if (it != by_tag.end() && s == it->second) dk[s.tag] += c;
          }
        }
      }
      for (auto& [t, c] : dk) diag[t] += Scalar::q_pow(-two_rho(N, k)) * c;
    }
    PuiseuxSeries ex = -ginv;
    expect_scalar(diag, ex, rep);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace qsln
