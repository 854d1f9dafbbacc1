#include "qsln/nop.hpp"

#include <algorithm>

namespace qsln {

void ExpOp::add_field(const Ctx& ctx, const FieldId& f, const Rat& coef, const Rat& argshift,
                      const Rat& kappa) {
  Part p;
  p.f = f;
  p.coef = coef;
  p.kappa = kappa;
  p.argshift = argshift;
  parts.push_back(p);
  auto pv = field_pvec(ctx, f);
  auto qv = field_qvec(ctx, f);
  for (size_t k = 0; k < pv.size(); ++k) {
    zdiag[k] += coef * pv[k];
    qdiag[k] += coef * argshift * pv[k];
    qshift[k] += coef * qv[k];
  }
}

const std::vector<std::pair<int, QRational>>& ExpOp::ann_coeffs(const Ctx& ctx, long n) const {
  if (!cache_) cache_ = std::make_shared<ModeCache>();
  std::lock_guard<std::mutex> lk(cache_->mu);
  auto it = cache_->ann.find(n);
  if (it == cache_->ann.end()) it = cache_->ann.emplace(n, ann_raw(ctx, n)).first;
  return it->second;
}

const std::vector<std::pair<int, QRational>>& ExpOp::cre_coeffs(const Ctx& ctx, long n) const {
  if (!cache_) cache_ = std::make_shared<ModeCache>();
  std::lock_guard<std::mutex> lk(cache_->mu);
  auto it = cache_->cre.find(n);
  if (it == cache_->cre.end()) it = cache_->cre.emplace(n, cre_raw(ctx, n)).first;
  return it->second;
}

std::vector<std::pair<int, QRational>> ExpOp::ann_raw(const Ctx& ctx, long n) const {
  std::map<int, QRational> acc;
  for (const auto& p : parts) {
    if (p.filter == 2) continue;
    QRational factor;
    if (p.field_style) {
      factor = QRational(QLaurent::monomial(-p.coef, (p.kappa - p.argshift) * Rat(n))) /
               ctx.qint_r(n);
    } else {
      factor = p.bare * QRational(QLaurent::q_pow(-p.argshift * Rat(n)));
    }
    if (factor.is_zero()) continue;
    for (const auto& [fam, co] : field_modes(ctx, p.f, n)) acc[fam] += factor * co;
  }
  std::vector<std::pair<int, QRational>> out;
  for (auto& [fam, co] : acc)
    if (!co.is_zero()) out.emplace_back(fam, std::move(co));
  return out;
}

std::vector<std::pair<int, QRational>> ExpOp::cre_raw(const Ctx& ctx, long n) const {
  std::map<int, QRational> acc;
  for (const auto& p : parts) {
    if (p.filter == 1) continue;
    QRational factor;
    if (p.field_style) {
      factor = QRational(QLaurent::monomial(p.coef, (p.kappa + p.argshift) * Rat(n))) /
               ctx.qint_r(n);
    } else {
      factor = p.bare * QRational(QLaurent::q_pow(p.argshift * Rat(n)));
    }
    if (factor.is_zero()) continue;
    for (const auto& [fam, co] : field_modes(ctx, p.f, n)) acc[fam] += factor * co;
  }
  std::vector<std::pair<int, QRational>> out;
  for (auto& [fam, co] : acc)
    if (!co.is_zero()) out.emplace_back(fam, std::move(co));
  return out;
}

namespace {

// one annihilation step: sum_fam coeff_fam * x_{fam, +n} acting on exc
FockVector apply_mode_vector(const Ctx& ctx, const std::vector<std::pair<int, QRational>>& co,
                             long n, bool creation, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) {
    for (const auto& [fam, qc] : co) {
      Scalar sc = c * Scalar(qc);
      if (creation) {
        FockState ns = s;
        OscId id{fam, -n};
        auto it = std::lower_bound(ns.exc.begin(), ns.exc.end(), id,
                                   [](const auto& p, const OscId& x) { return p.first < x; });
        if (it != ns.exc.end() && it->first == id) it->second++;
        else ns.exc.insert(it, {id, 1});
        out.add(ns, sc);
      } else {
        for (size_t k = 0; k < s.exc.size(); ++k) {
          const auto& [g, mult] = s.exc[k];
          if (g.mode != -n) continue;
          const QRational& gr = ctx.gram(fam, g.fam, n);
          if (gr.is_zero()) continue;
          FockState ns = s;
          if (mult == 1) ns.exc.erase(ns.exc.begin() + k);
          else ns.exc[k].second--;
          QRational grm = gr;
          grm.mul_rat(Rat(mult));
          out.add(ns, sc * Scalar(grm));
        }
      }
    }
  }
  return out;
}

}  // namespace

Sliced apply_expop(const Ctx& ctx, const ExpOp& op, const FockVector& v, const Rat& lo,
                   const Rat& hi) {
  Sliced out;
  if (op.c.is_zero()) return out;
  const long D = ctx.Dmax();

  auto ann_at = [&](long n) -> const auto& { return op.ann_coeffs(ctx, n); };
  auto cre_at = [&](long n) -> const auto& { return op.cre_coeffs(ctx, n); };

  for (const auto& [s, cin] : v.terms()) {
    Rat peig_cocycle(0), peig_z(0), peig_q(0);
    peig_cocycle = pform_eig(ctx, op.cocycle, s.mom);
    peig_z = pform_eig(ctx, op.zdiag, s.mom);
    peig_q = pform_eig(ctx, op.qdiag, s.mom);
    Scalar base = cin * op.c * Scalar::phase(peig_cocycle) * Scalar::q_pow(peig_q);
    if (base.is_zero()) continue;
    Rat zshift = op.zpow + peig_z;

    FockState shifted = s;
    bool has_shift = false;
    for (const auto& x : op.qshift)
      if (x != 0) { has_shift = true; break; }
    if (has_shift) shifted.mom = s.mom.shifted(op.qshift);

    // relative integer window for the mode content
    Rat tlo_r = lo - zshift, thi_r = hi - zshift;
    long deg = s.degree();
    long thi = to_long(rat_floor(thi_r));
    long tlo = to_long(rat_ceil(tlo_r));
    if (thi < -deg) continue;
    if (deg + std::max<long>(thi, 0) > D)
      throw TruncationError("apply_expop: window needs states beyond the degree cutoff");

    // annihilation stages
    std::map<long, FockVector> work;  // rel z-power -> vector
    {
      FockVector v0;
      v0.add(shifted, base);
      work[0] = std::move(v0);
    }
    for (long n = 1; n <= deg; ++n) {
      const auto& co = ann_at(n);
      if (co.empty()) continue;
      std::map<long, FockVector> next;
      for (auto& [rel, vec] : work) {
        FockVector cur = std::move(vec);
        long k = 0;
        Rat fact(1);
        while (!cur.is_zero()) {
          FockVector contrib = fact == 1 ? cur : cur * Scalar(Rat(1) / fact);
          auto [it, fresh] = next.try_emplace(rel - n * k, std::move(contrib));
          if (!fresh) it->second += fact == 1 ? cur : cur * Scalar(Rat(1) / fact);
          cur = apply_mode_vector(ctx, co, n, false, cur);
          ++k;
          fact *= k;
        }
      }
      work = std::move(next);
    }
    // creation stages; annihilation can pull rel down to -deg, so modes up
    // to thi + deg still land inside the window
    for (long n = 1; n <= thi + deg; ++n) {
      const auto& co = cre_at(n);
      if (co.empty()) continue;
      std::map<long, FockVector> next;
      for (auto& [rel, vec] : work) {
        FockVector cur = std::move(vec);
        long k = 0;
        Rat fact(1);
        while (!cur.is_zero() && rel + n * k <= thi) {
          FockVector contrib = fact == 1 ? cur : cur * Scalar(Rat(1) / fact);
          auto [it, fresh] = next.try_emplace(rel + n * k, std::move(contrib));
          if (!fresh) it->second += fact == 1 ? cur : cur * Scalar(Rat(1) / fact);
          if (rel + n * (k + 1) > thi) break;
          cur = apply_mode_vector(ctx, co, n, true, cur);
          ++k;
          fact *= k;
        }
      }
      work = std::move(next);
    }
    for (auto& [rel, vec] : work) {
      if (rel < tlo || rel > thi || vec.is_zero()) continue;
      Rat e = zshift + Rat(rel);
      if (e < lo || e > hi) continue;
      auto [it, fresh] = out.try_emplace(e, vec);
      if (!fresh) it->second += vec;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

Sliced FieldOp::apply(const Ctx& ctx, const FockVector& v, const Rat& lo, const Rat& hi) const {
  Sliced out;
  for (const auto& t : terms) {
    Sliced part = apply_expop(ctx, t, v, lo, hi);
    for (auto& [e, vec] : part) {
      auto [it, fresh] = out.try_emplace(e, vec);
      if (!fresh) it->second += vec;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

FockVector FieldOp::slice(const Ctx& ctx, const FockVector& v, const Rat& e) const {
  Sliced s = apply(ctx, v, e, e);
  auto it = s.find(e);
  return it == s.end() ? FockVector() : it->second;
}

FockVector apply_qdiag(const Ctx& ctx, const std::vector<Rat>& form, const Rat& scale,
                       const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms())
    out.add(s, c * Scalar::q_pow(scale * pform_eig(ctx, form, s.mom)));
  return out;
}

QRational contraction_log_coeff(const Ctx& ctx, const ExpOp& a, const ExpOp& b, long m) {
  QRational acc;
  for (const auto& pa : a.parts) {
    if (pa.filter == 2) continue;
    for (const auto& pb : b.parts) {
      if (pb.filter == 1) continue;
      if (!pa.field_style || !pb.field_style)
        throw std::logic_error("contraction_log_coeff: field-style parts only");
      QRational gamma = mode_contraction_oracle(ctx, pa.f, pb.f, m);
      if (gamma.is_zero()) continue;
      Rat ex = (pa.kappa - pa.argshift + pb.kappa + pb.argshift) * Rat(m);
      QRational co = QRational(QLaurent::monomial(-pa.coef * pb.coef, ex)) /
                     (ctx.qint_r(m) * ctx.qint_r(m));
      acc += co * gamma;
    }
  }
  return acc;
}

Rat contraction_zpow(const Ctx& ctx, const ExpOp& a, const ExpOp& b) {
  Rat acc(0);
  for (const auto& pa : a.parts)
    for (const auto& pb : b.parts) acc += pa.coef * pb.coef * field_pairing(ctx, pa.f, pb.f);
  return acc;
}

}  // namespace qsln
