#include "qsln/vertexops.hpp"

#include <sstream>

namespace qsln {

std::string vertex_kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::TypeI: return "phi";
    case VertexKind::TypeIDual: return "phi*";
    case VertexKind::TypeII: return "psi";
    case VertexKind::TypeIIDual: return "psi*";
  }
  return "?";
}

namespace {

QLaurent q_minus_qinv() { return QLaurent::q_pow(Rat(1)) - QLaurent::q_pow(Rat(-1)); }

// seed scalar factor (q^N z)^{(N-2)/(2(N-1))}
void add_seed_prefactor(const Ctx& ctx, ExpOp& op) {
  const int N = ctx.N();
  Rat e(N - 2, 2 * (N - 1));
  op.zpow += e;
  op.c *= Scalar::q_pow(Rat(N) * e);
}

void set_cocycle(const Ctx& ctx, ExpOp& op, int sgn) {
  const int N = ctx.N();
  for (int i = 1; i <= N; ++i) op.cocycle[i - 1] = Rat(sgn) * Rat(1 - i, N - 1);
}

FieldOp vertex_seed(const Ctx& ctx, VertexKind k) {
  const int N = ctx.N();
  FieldOp out;
  switch (k) {
    case VertexKind::TypeI: {  // phi_{N+1}
      ExpOp op(N + 2);
      op.add_field(ctx, fid_hstar(N), Rat(-1), Rat(N), Rat(1, 2));
      op.add_field(ctx, fid_c(), Rat(1), Rat(N), Rat(0));
      add_seed_prefactor(ctx, op);
      set_cocycle(ctx, op, +1);
      out.terms.push_back(std::move(op));
      out.grade = 0;
      break;
    }
    case VertexKind::TypeIDual: {  // phi*_1
      ExpOp op(N + 2);
      op.add_field(ctx, fid_hstar(1), Rat(1), Rat(1), Rat(1, 2));
      add_seed_prefactor(ctx, op);
      set_cocycle(ctx, op, -1);
      out.terms.push_back(std::move(op));
      out.grade = 1;
      break;
    }
    case VertexKind::TypeII: {  // psi_1
      ExpOp op(N + 2);
      op.add_field(ctx, fid_hstar(1), Rat(-1), Rat(1), Rat(-1, 2));
      add_seed_prefactor(ctx, op);
      set_cocycle(ctx, op, +1);
      out.terms.push_back(std::move(op));
      out.grade = 1;
      break;
    }
    case VertexKind::TypeIIDual: {  // psi*_{N+1} with the q-derivative ghost
      for (int u : {+1, -1}) {
        ExpOp op(N + 2);
        op.c = Scalar(QRational(QLaurent(Rat(u)), q_minus_qinv()));
        op.zpow = Rat(-1);
        op.add_field(ctx, fid_hstar(N), Rat(1), Rat(2 - N), Rat(-1, 2));
        op.add_field(ctx, fid_c(), Rat(-1), Rat(2 - N + u), Rat(0));
        add_seed_prefactor(ctx, op);
        set_cocycle(ctx, op, -1);
        out.terms.push_back(std::move(op));
      }
      out.grade = 0;
      break;
    }
  }
  return out;
}

}  // namespace

Sliced VertexComponent::apply(const Ctx& ctx, const FockVector& v, const Rat& lo,
                              const Rat& hi) const {
  Sliced out;
  for (const auto& t : terms) {
    FockVector w = v;
    for (auto it = t.right.rbegin(); it != t.right.rend() && !w.is_zero(); ++it)
      w = current_mode(ctx, it->sign, it->i, it->mode, w);
    if (w.is_zero()) continue;
    Sliced mid = seed.apply(ctx, w, lo, hi);
    for (auto& [e, vec] : mid) {
      for (const auto& l : t.left) {
        if (vec.is_zero()) break;
        vec = current_mode(ctx, l.sign, l.i, l.mode, vec);
      }
      vec *= t.c;
      if (vec.is_zero()) continue;
      auto [it2, fresh] = out.try_emplace(e, vec);
      if (!fresh) it2->second += vec;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

FockVector VertexComponent::slice(const Ctx& ctx, const FockVector& v, const Rat& e) const {
  Sliced s = apply(ctx, v, e, e);
  auto it = s.find(e);
  return it == s.end() ? FockVector() : it->second;
}

Rat VertexComponent::base_exponent(const Ctx& ctx, const FockState& s) const {
  const ExpOp& op = seed.terms.front();
  return op.zpow + pform_eig(ctx, op.zdiag, s.mom);
}

VertexComponent build_vertex(const Ctx& ctx, VertexKind k, int j) {
  const int N = ctx.N();
  if (j < 1 || j > N + 1) throw std::domain_error("build_vertex: component out of range");
  VertexComponent comp;
  comp.kind = k;
  comp.seed = vertex_seed(ctx, k);
  auto bracket_with_mode = [&](const VertexComponent& base, VertexComponent::ModeStep step,
                               int step_grade, const Scalar& x) {
    // [T, M]_x = T M - (-1)^{gT gM} x M T
    VertexComponent out;
    out.kind = base.kind;
    out.seed = base.seed;
    Scalar sgn = (base.grade * step_grade) % 2 ? Scalar(Rat(-1)) : Scalar(Rat(1));
    for (const auto& t : base.terms) {
      VertexComponent::Term a = t;
      a.right.push_back(step);
      out.terms.push_back(std::move(a));
      VertexComponent::Term b = t;
      b.left.push_back(step);
      b.c = -(b.c * sgn * x);
      out.terms.push_back(std::move(b));
    }
    out.grade = (base.grade + step_grade) % 2;
    return out;
  };

  switch (k) {
    case VertexKind::TypeI: {
      // seed phi_{N+1}; nu_l phi_l (-1)^{[f_l]([v_l]+[v_{l+1}])} = [phi_{l+1}, f_l]_{q^{nu_{l+1}}}
      VertexComponent cur;
      cur.kind = k;
      cur.seed = comp.seed;
      cur.grade = component_grade(N, N + 1);
      cur.terms.push_back({Scalar(1), {}, {}});
      for (int l = N; l >= j; --l) {
        int fg = l == N ? 1 : 0;
        Scalar x = Scalar::q_pow(Rat(nu(N, l + 1)));
        cur = bracket_with_mode(cur, {-1, l, 0}, fg, x);
        // divide by nu_l (-1)^{[f_l]([v_l]+[v_{l+1}])}
        long sgn = (fg * ((component_grade(N, l) + component_grade(N, l + 1)) % 2)) % 2 ? -1 : 1;
        Scalar fac = Scalar(Rat(sgn * nu(N, l)));
        for (auto& t : cur.terms) t.c = t.c * fac;  // nu_l, sgn are +-1
      }
      comp = std::move(cur);
      break;
    }
    case VertexKind::TypeIDual: {
      // seed phi*_1; phi*_{l+1} = -nu_l q^{-nu_l} (-1)^{...} [phi*_l, f_l]_{q^{nu_l}}
      VertexComponent cur;
      cur.kind = k;
      cur.seed = comp.seed;
      cur.grade = component_grade(N, 1);
      cur.terms.push_back({Scalar(1), {}, {}});
      for (int l = 1; l <= j - 1; ++l) {
        int fg = l == N ? 1 : 0;
        Scalar x = Scalar::q_pow(Rat(nu(N, l)));
        cur = bracket_with_mode(cur, {-1, l, 0}, fg, x);
        long sgn = (fg * ((component_grade(N, l) + component_grade(N, l + 1)) % 2)) % 2 ? -1 : 1;
        Scalar fac = Scalar(Rat(-sgn * nu(N, l))) * Scalar::q_pow(Rat(-nu(N, l)));
        for (auto& t : cur.terms) t.c = t.c * fac;
      }
      comp = std::move(cur);
      break;
    }
    case VertexKind::TypeII: {
      // seed psi_1; psi_{l+1} = [psi_l, e_l]_{q^{nu_l}}
      VertexComponent cur;
      cur.kind = k;
      cur.seed = comp.seed;
      cur.grade = component_grade(N, 1);
      cur.terms.push_back({Scalar(1), {}, {}});
      for (int l = 1; l <= j - 1; ++l) {
        int fg = l == N ? 1 : 0;
        cur = bracket_with_mode(cur, {+1, l, 0}, fg, Scalar::q_pow(Rat(nu(N, l))));
      }
      comp = std::move(cur);
      break;
    }
    case VertexKind::TypeIIDual: {
      // seed psi*_{N+1}; psi*_l = -(1/(nu_l nu_{l+1})) q^{nu_l} [psi*_{l+1}, e_l]_{q^{nu_{l+1}}}
      VertexComponent cur;
      cur.kind = k;
      cur.seed = comp.seed;
      cur.grade = component_grade(N, N + 1);
      cur.terms.push_back({Scalar(1), {}, {}});
      for (int l = N; l >= j; --l) {
        int fg = l == N ? 1 : 0;
        cur = bracket_with_mode(cur, {+1, l, 0}, fg, Scalar::q_pow(Rat(nu(N, l + 1))));
        Scalar fac = Scalar(Rat(-nu(N, l) * nu(N, l + 1))) * Scalar::q_pow(Rat(nu(N, l)));
        for (auto& t : cur.terms) t.c = t.c * fac;
      }
      comp = std::move(cur);
      break;
    }
  }
  comp.kind = k;
  comp.j = j;
  comp.grade = component_grade(N, j);
  return comp;
}

const VertexComponent& VertexCache::get(VertexKind k, int j) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto key = std::make_pair((int)k, j);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, build_vertex(ctx_, k, j)).first;
  return it->second;
}

namespace {

FieldOp ghost_field(const Ctx& ctx, int sgn) {
  FieldOp out;
  ExpOp op(ctx.N() + 2);
  op.add_field(ctx, fid_c(), Rat(sgn), Rat(0), Rat(0));
  out.terms.push_back(std::move(op));
  out.grade = 1;
  return out;
}

void require_integer_cmomentum(const Ctx& ctx, const FockVector& v) {
  for (const auto& [s, c] : v.terms())
    if (!is_integer(s.mom[ctx.N() + 1]))
      throw std::domain_error("ghost modes need an integer c-momentum sector");
}

}  // namespace

FockVector ghost_eta(const Ctx& ctx, long n, const FockVector& v) {
  require_integer_cmomentum(ctx, v);
  FieldOp eta = ghost_field(ctx, +1);
  return eta.slice(ctx, v, Rat(-n - 1));
}

FockVector ghost_xi(const Ctx& ctx, long n, const FockVector& v) {
  require_integer_cmomentum(ctx, v);
  FieldOp xi = ghost_field(ctx, -1);
  return xi.slice(ctx, v, Rat(-n));
}

std::pair<FockVector, FockVector> brst_project(const Ctx& ctx, const FockVector& v) {
  FockVector ker = ghost_eta(ctx, 0, ghost_xi(ctx, 0, v));
  FockVector coker = ghost_xi(ctx, 0, ghost_eta(ctx, 0, v));
  return {ker, coker};
}

namespace {

// rank of a set of vectors over the exact scalar field; pivots are kept
// mutually reduced so one elimination pass per column suffices
long exact_rank(std::vector<FockVector> cols) {
  std::vector<FockVector> pivots;  // each scaled to lead coefficient 1
  for (auto col : cols) {
    for (const auto& piv : pivots) {
      const FockState& lead = piv.terms().begin()->first;
      Scalar c = col.coeff(lead);
      if (!c.is_zero()) col -= piv * c;
    }
    if (col.is_zero()) continue;
    col *= col.terms().begin()->second.inverse();
    const FockState& lead = col.terms().begin()->first;
    for (auto& piv : pivots) {
      Scalar c = piv.coeff(lead);
      if (!c.is_zero()) piv -= col * c;
    }
    pivots.push_back(std::move(col));
  }
  return (long)pivots.size();
}

}  // namespace

std::vector<BrstDegreeReport> brst_exactness(const Ctx& ctx, const Sector& sec, long l, long D) {
  // Ker(eta_0) on F^{(l)} vs Im(eta_0 : F^{(l-1)} -> F^{(l)}), per weight
  auto basis_l = enumerate_basis(ctx, sec, l, D);
  auto basis_lm1 = enumerate_basis(ctx, sec, l - 1, D);
  Rat floor_l = sector_weight_floor(ctx, sec, l);

  std::map<Rat, std::vector<FockVector>> ker_by_wt, im_by_wt;
  for (const auto& st : basis_l) {
    Rat wt = -d_eigenvalue(ctx, st) - floor_l;
    FockVector kv = ghost_eta(ctx, 0, ghost_xi(ctx, 0, FockVector::basis(st)));
    if (!kv.is_zero()) ker_by_wt[wt].push_back(std::move(kv));
  }
  for (const auto& st : basis_lm1) {
    FockVector iv = ghost_eta(ctx, 0, FockVector::basis(st));
    if (iv.is_zero()) continue;
    Rat wt = -d_eigenvalue(ctx, iv.terms().begin()->first) - floor_l;
    im_by_wt[wt].push_back(std::move(iv));
  }
  std::vector<BrstDegreeReport> out;
  for (auto& [wt, cols] : ker_by_wt) {
    if (wt > Rat(D)) continue;
    BrstDegreeReport rep;
    rep.weight = wt;
    rep.dim_ker = exact_rank(std::move(cols));
    auto it = im_by_wt.find(wt);
    rep.dim_im = it == im_by_wt.end() ? 0 : exact_rank(std::move(it->second));
    out.push_back(rep);
  }
  return out;
}

namespace {

struct SideResult {
  bool truncated = false;
  FockVector vec;
};

using Side = std::function<SideResult(const FockVector&, const Rat&)>;

}  // namespace

std::vector<AppBReport> check_appendix_b(const VertexCache& vc, VertexKind kind,
                                         const Sector& sec, long D) {
  const Ctx& ctx = vc.ctx();
  const int N = ctx.N();
  std::vector<AppBReport> out;
  auto basis = enumerate_basis(ctx, sec, 0, D);

  auto comp_win = [&](int j, const FockVector& v, const Rat& lo, const Rat& hi) {
    return vc.get(kind, j).apply(ctx, v, lo, hi);
  };
  auto mode_op = [&](int sign, int l, const FockVector& v) {
    return current_mode(ctx, sign, l, 0, v);
  };
  auto mode_sliced = [&](int sign, int l, Sliced s) {
    for (auto& [e, vec] : s) vec = current_mode(ctx, sign, l, 0, vec);
    return s;
  };
  auto qh_sliced = [&](int l, const Rat& p, Sliced s) {
    for (auto& [e, vec] : s) vec = qh_apply(ctx, l, p, vec);
    return s;
  };
  auto scale_sliced = [](Sliced s, const Scalar& c) {
    for (auto& [e, vec] : s) vec *= c;
    return s;
  };
  auto add_sliced = [](Sliced a, const Sliced& b) {
    for (auto& [e, vec] : b) {
      auto [it, fresh] = a.try_emplace(e, vec);
      if (!fresh) it->second += vec;
    }
    return a;
  };

  // batch states sharing (degree, seed base exponent); the seed is common to
  // all components of a kind, so one window fits the whole group
  std::map<std::pair<long, Rat>, FockVector> groups;
  {
    long tag = 0;
    const VertexComponent& ref = vc.get(kind, 1);
    for (const auto& st : basis) {
      FockState t = st;
      t.tag = ++tag;
      groups[{st.degree(), ref.base_exponent(ctx, st)}].add(t, Scalar(1));
    }
  }

  using Fn = std::function<Sliced(const FockVector&, const Rat&, const Rat&)>;
  auto run_check = [&](std::string id, const Fn& lhs, const Fn& rhs, int jref) {
    (void)jref;
    AppBReport rep;
    rep.id = vertex_kind_name(kind) + "." + id;
    for (const auto& [key, v] : groups) {
      Rat base = key.second;
      // widest window the cutoff allows, from one slice below base
      for (long width = 3; width >= 1; --width) {
        Rat lo = base - 1, hi = base - 2 + width;
        try {
          Sliced L = lhs(v, lo, hi);
          Sliced R = rhs(v, lo, hi);
          rep.slices += width * (long)v.size();
          for (auto& [e, vec] : R) {
            auto [it, fresh] = L.try_emplace(e, -vec);
            if (!fresh) it->second -= vec;
          }
          for (auto& [e, vec] : L) {
            if (vec.is_zero()) continue;
            rep.ok = false;
            if (rep.witness.empty())
              rep.witness = "input tag " + std::to_string(vec.terms().begin()->first.tag) +
                            " slice z^(" + e.str() + ")";
            break;
          }
          break;
        } catch (const TruncationError&) {
          continue;  // shrink the window
        }
      }
    }
    if (rep.slices == 0) {
      rep.skipped = true;
      rep.skip_reason = "window exhausted on every basis state";
    }
    out.push_back(std::move(rep));
  };
  auto zero_fn = [](const FockVector&, const Rat&, const Rat&) { return Sliced(); };

  // graded bracket of component k with the Chevalley mode (sign, l), optionally
  // q-twisted: [comp_k(z), x_l]_{q^xexp}
  auto brk = [&](int k, int sign, int l, const Rat& xexp) {
    int gk = component_grade(N, k);
    int fg = l == N ? 1 : 0;
    return Fn([=](const FockVector& v, const Rat& lo, const Rat& hi) {
      Sliced ab = comp_win(k, mode_op(sign, l, v), lo, hi);
      Sliced ba = mode_sliced(sign, l, comp_win(k, v, lo, hi));
      Scalar sg = (gk * fg) % 2 ? Scalar(Rat(-1)) : Scalar(Rat(1));
      return add_sliced(std::move(ab), scale_sliced(std::move(ba), -(sg * Scalar::q_pow(xexp))));
    });
  };
  auto scaled_comp = [&](int k, const Scalar& c) {
    return Fn([=](const FockVector& v, const Rat& lo, const Rat& hi) {
      return scale_sliced(comp_win(k, v, lo, hi), c);
    });
  };
  auto qh_comp = [&](int l, const Rat& hpow, int k, const Scalar& c) {
    return Fn([=](const FockVector& v, const Rat& lo, const Rat& hi) {
      return scale_sliced(qh_sliced(l, hpow, comp_win(k, v, lo, hi)), c);
    });
  };
  auto weight_check = [&](int l) {
    for (int k = 1; k <= N + 1; ++k) {
      Rat w(0);
      bool dual = kind == VertexKind::TypeIDual || kind == VertexKind::TypeIIDual;
      if (k == l) w = Rat((dual ? 1 : -1) * nu(N, l));
      else if (k == l + 1) w = Rat((dual ? -1 : 1) * nu(N, l + 1));
      run_check("weight.k" + std::to_string(k) + ".l" + std::to_string(l),
                Fn([=](const FockVector& v, const Rat& lo, const Rat& hi) {
                  return qh_sliced(l, Rat(1), comp_win(k, qh_apply(ctx, l, Rat(-1), v), lo, hi));
                }),
                scaled_comp(k, Scalar::q_pow(w)), k);
    }
  };

  for (int l = 1; l <= N; ++l) {
    int gl = component_grade(N, l), gl1 = component_grade(N, l + 1);
    int fg = l == N ? 1 : 0;
    long sgn_f = (fg * ((gl + gl1) % 2)) % 2 ? -1 : 1;  // (-1)^{[f_l]([v_l]+[v_{l+1}])}
    std::string sl = ".l" + std::to_string(l);

    if (kind == VertexKind::TypeI) {
      for (int k = 1; k <= N + 1; ++k) {
        if (k != l && k != l + 1)
          run_check("f-commute.k" + std::to_string(k) + sl, brk(k, -1, l, Rat(0)), zero_fn, k);
        if (k != l)
          run_check("e-commute.k" + std::to_string(k) + sl, brk(k, +1, l, Rat(0)), zero_fn, k);
      }
      run_check("f-recursion" + sl, brk(l + 1, -1, l, Rat(nu(N, l + 1))),
                scaled_comp(l, Scalar(Rat(sgn_f * nu(N, l)))), l + 1);
      run_check("f-null" + sl, brk(l, -1, l, Rat(-nu(N, l))), zero_fn, l);
      run_check("e-step" + sl, brk(l, +1, l, Rat(0)),
                qh_comp(l, Rat(1), l + 1, Scalar(Rat(sgn_f))), l);
      weight_check(l);
    } else if (kind == VertexKind::TypeIDual) {
      for (int k = 1; k <= N + 1; ++k) {
        if (k != l && k != l + 1)
          run_check("f-commute.k" + std::to_string(k) + sl, brk(k, -1, l, Rat(0)), zero_fn, k);
        if (k != l + 1)
          run_check("e-commute.k" + std::to_string(k) + sl, brk(k, +1, l, Rat(0)), zero_fn, k);
      }
      run_check("f-null" + sl, brk(l + 1, -1, l, Rat(-nu(N, l + 1))), zero_fn, l + 1);
      run_check("e-step" + sl, brk(l + 1, +1, l, Rat(0)),
                qh_comp(l, Rat(1), l,
                        Scalar(Rat(-sgn_f * nu(N, l) * nu(N, l + 1))) *
                            Scalar::q_pow(Rat(-nu(N, l)))),
                l + 1);
      run_check("f-recursion" + sl, brk(l, -1, l, Rat(nu(N, l))),
                scaled_comp(l + 1, Scalar(Rat(-sgn_f * nu(N, l))) *
                                        Scalar::q_pow(Rat(nu(N, l)))),
                l);
      weight_check(l);
    } else if (kind == VertexKind::TypeII) {
      for (int k = 1; k <= N + 1; ++k) {
        if (k != l && k != l + 1)
          run_check("e-commute.k" + std::to_string(k) + sl, brk(k, +1, l, Rat(0)), zero_fn, k);
        if (k != l + 1)
          run_check("f-commute.k" + std::to_string(k) + sl, brk(k, -1, l, Rat(0)), zero_fn, k);
      }
      run_check("e-null" + sl, brk(l + 1, +1, l, Rat(-nu(N, l + 1))), zero_fn, l + 1);
      run_check("e-recursion" + sl, brk(l, +1, l, Rat(nu(N, l))), scaled_comp(l + 1, Scalar(1)),
                l);
      run_check("f-step" + sl, brk(l + 1, -1, l, Rat(0)),
                qh_comp(l, Rat(-1), l, Scalar(Rat(nu(N, l)))), l + 1);
      weight_check(l);
    } else {
      for (int k = 1; k <= N + 1; ++k) {
        if (k != l && k != l + 1)
          run_check("e-commute.k" + std::to_string(k) + sl, brk(k, +1, l, Rat(0)), zero_fn, k);
        if (k != l)
          run_check("f-commute.k" + std::to_string(k) + sl, brk(k, -1, l, Rat(0)), zero_fn, k);
      }
      run_check("e-null" + sl, brk(l, +1, l, Rat(-nu(N, l))), zero_fn, l);
      run_check("f-step" + sl, brk(l, -1, l, Rat(0)),
                qh_comp(l, Rat(-1), l + 1,
                        Scalar(Rat(-nu(N, l))) * Scalar::q_pow(Rat(nu(N, l)))),
                l);
      run_check("e-recursion" + sl, brk(l + 1, +1, l, Rat(nu(N, l + 1))),
                scaled_comp(l, Scalar(Rat(-nu(N, l) * nu(N, l + 1))) *
                                   Scalar::q_pow(Rat(-nu(N, l)))),
                l + 1);
      weight_check(l);
    }
  }
  return out;
}

bool invertibility_kernel_is_identity(const Ctx& ctx, long order, std::string* note) {
  const int N = ctx.N();
  ExpOp op(N + 2);
  op.add_field(ctx, fid_hstar(N), Rat(-1), Rat(N), Rat(1, 2));
  op.add_field(ctx, fid_hstar(1), Rat(1), Rat(1), Rat(1, 2));
  for (int i = 1; i <= N; ++i) op.add_field(ctx, fid_h(i), Rat(-1), Rat(i + 1), Rat(1, 2));
  for (int k = 0; k < N + 2; ++k) {
    if (op.qshift[k] != 0 || op.zdiag[k] != 0 || op.qdiag[k] != 0) {
      if (note) *note = "zero-mode content survives at slot " + std::to_string(k);
      return false;
    }
  }
  for (long n = 1; n <= order; ++n) {
    if (!op.ann_coeffs(ctx, n).empty() || !op.cre_coeffs(ctx, n).empty()) {
      if (note) *note = "mode content survives at n = " + std::to_string(n);
      return false;
    }
  }
  return true;
}

}  // namespace qsln
