#include "qsln/fields.hpp"

namespace qsln {

QRational hstar_mode_coeff(const Ctx& ctx, int i, int j, long m) {
  const int N = ctx.N();
  long a = std::min(i, j), b = N - 1 - std::max(i, j);
  if (a == 0 || b == 0) return QRational();
  QLaurent num = ctx.qint_l(a * m) * ctx.qint_l(b * m);
  QLaurent den = ctx.qint_l((N - 1) * m) * ctx.qint_l(m);
  return QRational(num, den);
}

std::vector<std::pair<int, QRational>> field_modes(const Ctx& ctx, const FieldId& f, long n) {
  const int N = ctx.N();
  std::vector<std::pair<int, QRational>> out;
  switch (f.kind) {
    case FieldKind::H:
      out.emplace_back(Fam::h(f.index), QRational(Rat(1)));
      break;
    case FieldKind::HStar:
      for (int j = 1; j <= N; ++j) {
        QRational c = hstar_mode_coeff(ctx, f.index, j, n);
        if (!c.is_zero()) out.emplace_back(Fam::h(j), c);
      }
      break;
    case FieldKind::C:
      out.emplace_back(Fam::c(N), QRational(Rat(1)));
      break;
    case FieldKind::B:
      out.emplace_back(Fam::b(N), QRational(Rat(1)));
      break;
  }
  return out;
}

std::vector<Rat> field_pvec(const Ctx& ctx, const FieldId& f) {
  const int N = ctx.N();
  std::vector<Rat> p(N + 2, Rat(0));
  switch (f.kind) {
    case FieldKind::H:
      if (f.index < N) {
        p[f.index - 1] = 1;
        p[f.index] = -1;
      } else {
        p[N - 1] = 1;
        p[N] = 1;  // b slot
      }
      break;
    case FieldKind::HStar:
      for (int j = 1; j <= N; ++j) {
        Rat c = ctx.inv_pairing(f.index, j);
        if (c == 0) continue;
        auto hp = field_pvec(ctx, fid_h(j));
        for (int k = 0; k < N + 2; ++k) p[k] += c * hp[k];
      }
      break;
    case FieldKind::C:
      p[N + 1] = 1;
      break;
    case FieldKind::B:
      p[N] = 1;
      break;
  }
  return p;
}

std::vector<Rat> field_qvec(const Ctx& ctx, const FieldId& f) {
  // Q-shifts coincide with the p-form slot pattern for every field here
  return field_pvec(ctx, f);
}

Rat field_pairing(const Ctx& ctx, const FieldId& f, const FieldId& g) {
  const int N = ctx.N();
  auto p = field_pvec(ctx, f);
  auto q = field_qvec(ctx, g);
  Rat acc(0);
  for (int k = 0; k < N + 2; ++k) {
    Rat sgn = (k == N) ? Rat(-1) : Rat(1);  // [b_0, Q_b] = -1
    acc += p[k] * q[k] * sgn;
  }
  return acc;
}

Rat pform_eig(const Ctx& ctx, const std::vector<Rat>& pvec, const Momenta& mom) {
  const int N = ctx.N();
  Rat acc(0);
  for (int i = 0; i < N; ++i) acc += pvec[i] * mom[i];
  acc += pvec[N] * (-mom[N]);
  acc += pvec[N + 1] * mom[N + 1];
  return acc;
}

QRational mode_contraction_oracle(const Ctx& ctx, const FieldId& f, const FieldId& g, long m) {
  auto mf = field_modes(ctx, f, m);
  auto mg = field_modes(ctx, g, m);
  QRational acc;
  for (const auto& [fa, ca] : mf)
    for (const auto& [fb, cb] : mg) {
      const QRational& gr = ctx.gram(fa, fb, m);
      if (gr.is_zero()) continue;
      acc += ca * cb * gr;
    }
  return acc;
}

}  // namespace qsln
