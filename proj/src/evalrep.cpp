#include "qsln/evalrep.hpp"

#include <sstream>

namespace qsln {

namespace {

GMat<Scalar> unit_matrix_entry(int N, int a, int b, const Scalar& c) {
  GMat<Scalar> m(N, 1);
  m.at(a - 1, b - 1) = c;
  return m;
}

}  // namespace

EvalRep evaluation_rep(int N, const Scalar& z) {
  EvalRep rep;
  rep.N = N;
  rep.z = z;
  rep.e.resize(N + 1);
  rep.f.resize(N + 1);
  rep.t.resize(N + 1);
  rep.tinv.resize(N + 1);
  for (int i = 1; i <= N; ++i) {
    long nu_i = 1;  // nu_j = 1 for j != N+1
    rep.e[i] = unit_matrix_entry(N, i, i + 1, Scalar(1));
    rep.f[i] = unit_matrix_entry(N, i + 1, i, Scalar(Rat(nu_i)));
    GMat<Scalar> t = GMat<Scalar>::identity(N, 1), ti = t;
    long nu_ip1 = (i + 1 == N + 1) ? -1 : 1;
    t.at(i - 1, i - 1) = Scalar::q_pow(Rat(nu_i));
    t.at(i, i) = Scalar::q_pow(Rat(-nu_ip1));
    ti.at(i - 1, i - 1) = Scalar::q_pow(Rat(-nu_i));
    ti.at(i, i) = Scalar::q_pow(Rat(nu_ip1));
    rep.t[i] = std::move(t);
    rep.tinv[i] = std::move(ti);
  }
  rep.e[0] = unit_matrix_entry(N, N + 1, 1, -z);
  rep.f[0] = unit_matrix_entry(N, 1, N + 1, z.inverse());
  GMat<Scalar> t0 = GMat<Scalar>::identity(N, 1), t0i = t0;
  t0.at(0, 0) = Scalar::q_pow(Rat(-1));
  t0.at(N, N) = Scalar::q_pow(Rat(-1));
  t0i.at(0, 0) = Scalar::q_pow(Rat(1));
  t0i.at(N, N) = Scalar::q_pow(Rat(1));
  rep.t[0] = std::move(t0);
  rep.tinv[0] = std::move(t0i);
  return rep;
}

GMat<Scalar> supertranspose(const GMat<Scalar>& a) {
  const int N = a.N();
  GMat<Scalar> out(N, 1);
  for (int k = 1; k <= N + 1; ++k)
    for (int i = 1; i <= N + 1; ++i) {
      Scalar v = a.at(i - 1, k - 1);
      if (v.is_zero()) continue;
      if ((vgrade(N, i) * ((vgrade(N, i) + vgrade(N, k)) % 2)) % 2) v = -v;
      out.at(k - 1, i - 1) = v;
    }
  return out;
}

EvalRep dual_rep(int N, const Scalar& z) {
  EvalRep rep = evaluation_rep(N, z);
  EvalRep dual;
  dual.N = N;
  dual.z = z;
  dual.e.resize(N + 1);
  dual.f.resize(N + 1);
  dual.t.resize(N + 1);
  dual.tinv.resize(N + 1);
  for (int i = 0; i <= N; ++i) {
    // S(e_i) = -q^{-h_i} e_i, S(f_i) = -f_i q^{h_i}, S(t_i) = t_i^{-1}
    GMat<Scalar> se = rep.tinv[i] * rep.e[i];
    se *= Scalar(Rat(-1));
    GMat<Scalar> sf = rep.f[i] * rep.t[i];
    sf *= Scalar(Rat(-1));
    dual.e[i] = supertranspose(se);
    dual.f[i] = supertranspose(sf);
    dual.t[i] = supertranspose(rep.tinv[i]);
    dual.tinv[i] = supertranspose(rep.t[i]);
  }
  return dual;
}

namespace {

int node_grade(int N, int i) { return (i == 0 || i == N) ? 1 : 0; }

long cartan_affine(int N, int i, int j) {
  if (i == j) return (i == 0 || i == N) ? 0 : 2;
  int d = i - j;
  if (d == 1 || d == -1) return -1;
  if ((i == 0 && j == N) || (i == N && j == 0)) return 1;
  return 0;
}

}  // namespace

bool check_rep_relations(const EvalRep& rep, std::string* note) {
  const int N = rep.N;
  QLaurent qmq = QLaurent::q_pow(Rat(1)) - QLaurent::q_pow(Rat(-1));
  Scalar denom = Scalar(QRational(QLaurent(Rat(1)), qmq));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      // [e_i, f_j] = delta_ij (t_i - t_i^{-1})/(q - q^{-1})
      GMat<Scalar> ab = rep.e[i] * rep.f[j];
      GMat<Scalar> ba = rep.f[j] * rep.e[i];
      if ((node_grade(N, i) * node_grade(N, j)) % 2) ab = ab + ba;
      else ab = ab - ba;
      if (i == j) {
        GMat<Scalar> rhs = rep.t[i] - rep.tinv[i];
        rhs *= denom;
        ab = ab - rhs;
      }
      if (!ab.is_zero()) {
        if (note) *note = "[e,f] fails at i=" + std::to_string(i) + " j=" + std::to_string(j);
        return false;
      }
      // t_i e_j t_i^{-1} = q^{a_ij} e_j
      GMat<Scalar> conj = rep.t[i] * rep.e[j] * rep.tinv[i];
      GMat<Scalar> expect = rep.e[j];
      expect *= Scalar::q_pow(Rat(cartan_affine(N, i, j)));
      if (!(conj - expect).is_zero()) {
        if (note) *note = "t e t^-1 fails at i=" + std::to_string(i) + " j=" + std::to_string(j);
        return false;
      }
    }
  return true;
}

bool check_antipode_square(int N, const Scalar& z, std::string* note) {
  EvalRep rep = evaluation_rep(N, z);
  // q^{2 rho_bar} = diag(q^{N-2}, q^{N-4}, ..., q^{-N}, q^{-N})
  GMat<Scalar> w(N, 1), winv(N, 1);
  for (int i = 1; i <= N + 1; ++i) {
    Rat e = i <= N ? Rat(N - 2 * i) : Rat(-N);
    w.at(i - 1, i - 1) = Scalar::q_pow(e);
    winv.at(i - 1, i - 1) = Scalar::q_pow(-e);
  }
  for (int i = 0; i <= N; ++i) {
    // S^2(e_i) = q^{-h_i} e_i q^{h_i} (two antipode applications)
    GMat<Scalar> s2e = rep.tinv[i] * rep.e[i] * rep.t[i];
    GMat<Scalar> expect = winv * rep.e[i] * w;
    if (i == 0) expect *= Scalar::q_pow(Rat(-2 * (N - 1)));
    if (!(s2e - expect).is_zero()) {
      if (note) *note = "S^2 on e_" + std::to_string(i);
      return false;
    }
  }
  return true;
}

GMat<Scalar> coproduct_e(const EvalRep& rep, int i) {
  const int N = rep.N;
  // Delta(e_i) = e_i (x) 1 + t_i (x) e_i
  auto eij = [&](const GMat<Scalar>& m, int a, int b) { return m.at(a - 1, b - 1); };
  GMat<Scalar> left = embed_two_leg<Scalar>(N, 2, 0, 1, [&](int a, int c, int i2, int k2) {
    Scalar v = eij(rep.e[i], a, i2);
    return c == k2 ? v : Scalar();
  });
  GMat<Scalar> right = embed_two_leg<Scalar>(N, 2, 0, 1, [&](int a, int c, int i2, int k2) {
    Scalar t = eij(rep.t[i], a, i2);
    Scalar e = eij(rep.e[i], c, k2);
    return t * e;
  });
  return left + right;
}

GMat<Scalar> coproduct_f(const EvalRep& rep, int i) {
  const int N = rep.N;
  // Delta(f_i) = f_i (x) t_i^{-1} + 1 (x) f_i
  auto eij = [&](const GMat<Scalar>& m, int a, int b) { return m.at(a - 1, b - 1); };
  GMat<Scalar> left = embed_two_leg<Scalar>(N, 2, 0, 1, [&](int a, int c, int i2, int k2) {
    return eij(rep.f[i], a, i2) * eij(rep.tinv[i], c, k2);
  });
  GMat<Scalar> right = embed_two_leg<Scalar>(N, 2, 0, 1, [&](int a, int c, int i2, int k2) {
    Scalar v = eij(rep.f[i], c, k2);
    return a == i2 ? v : Scalar();
  });
  return left + right;
}

GMat<Scalar> coproduct_t(const EvalRep& rep, int i) {
  const int N = rep.N;
  auto eij = [&](const GMat<Scalar>& m, int a, int b) { return m.at(a - 1, b - 1); };
  return embed_two_leg<Scalar>(N, 2, 0, 1, [&](int a, int c, int i2, int k2) {
    return eij(rep.t[i], a, i2) * eij(rep.t[i], c, k2);
  });
}

}  // namespace qsln
