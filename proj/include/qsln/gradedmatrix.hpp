#pragma once

#include "qsln/numeric.hpp"
#include "qsln/scalar.hpp"

#include <vector>

namespace qsln {

// Z2 grading of the basis vectors of V = C^{N+1}: [v_i] = 1 for i <= N, 0 for
// i = N+1 (1-based indices).
inline int vgrade(int N, int i) { return i <= N ? 1 : 0; }

namespace GMatDetail {
inline bool is_zero(const Scalar& v) { return v.is_zero(); }
inline bool is_zero(const Cplx& v) { return v == Cplx(0); }
}  // namespace GMatDetail

// Dense operator on V^{otimes legs} with row = output index. Graded signs are
// applied when operators are embedded leg-wise, so composition is plain
// matrix multiplication.
template <class T>
class GMat {
 public:
  GMat() = default;
  GMat(int N, int legs)
      : N_(N), legs_(legs), dim_(1) {
    for (int k = 0; k < legs; ++k) dim_ *= N + 1;
    a_.assign((size_t)dim_ * dim_, T());
  }

  int N() const { return N_; }
  int legs() const { return legs_; }
  long dim() const { return dim_; }

  T& at(long r, long c) { return a_[(size_t)r * dim_ + c]; }
  const T& at(long r, long c) const { return a_[(size_t)r * dim_ + c]; }

  static GMat identity(int N, int legs) {
    GMat m(N, legs);
    for (long d = 0; d < m.dim_; ++d) m.at(d, d) = T(1);
    return m;
  }

  friend GMat operator*(const GMat& x, const GMat& y) {
    GMat r(x.N_, x.legs_);
    for (long i = 0; i < x.dim_; ++i)
      for (long k = 0; k < x.dim_; ++k) {
        const T& v = x.at(i, k);
        if (GMatDetail::is_zero(v)) continue;
        for (long j = 0; j < x.dim_; ++j) {
          const T& w = y.at(k, j);
          if (GMatDetail::is_zero(w)) continue;
          r.at(i, j) += v * w;
        }
      }
    return r;
  }

  friend GMat operator-(GMat x, const GMat& y) {
    for (size_t t = 0; t < x.a_.size(); ++t) x.a_[t] -= y.a_[t];
    return x;
  }
  friend GMat operator+(GMat x, const GMat& y) {
    for (size_t t = 0; t < x.a_.size(); ++t) x.a_[t] += y.a_[t];
    return x;
  }
  GMat& operator*=(const T& c) {
    for (auto& v : a_) v *= c;
    return *this;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!GMatDetail::is_zero(v)) return false;
    return true;
  }

  // decode multi-index (1-based digits)
  std::vector<int> digits(long idx) const {
    std::vector<int> d(legs_);
    for (int k = legs_ - 1; k >= 0; --k) {
      d[k] = (int)(idx % (N_ + 1)) + 1;
      idx /= (N_ + 1);
    }
    return d;
  }
  long index(const std::vector<int>& d) const {
    long idx = 0;
    for (int k = 0; k < legs_; ++k) idx = idx * (N_ + 1) + (d[k] - 1);
    return idx;
  }

 private:
  int N_ = 0, legs_ = 0;
  long dim_ = 0;
  std::vector<T> a_;
};

// Embed a two-leg operator (entries through the callback out(i,j)->in(k,l))
// into legs (p, q) of V^{otimes legs}, with the Z2-graded tensor signs
// (a (x) b)(x (x) y) = (-1)^{[b][x]} ax (x) by generalized leg-wise.
template <class T, class F>
GMat<T> embed_two_leg(int N, int legs, int p, int q, F entry) {
  GMat<T> out(N, legs);
  long dim = out.dim();
  for (long cin = 0; cin < dim; ++cin) {
    auto din = out.digits(cin);
    for (int a = 1; a <= N + 1; ++a)
      for (int c = 1; c <= N + 1; ++c) {
        T e = entry(a, c, din[p], din[q]);
        if (GMatDetail::is_zero(e)) continue;
        auto dout = din;
        dout[p] = a;
        dout[q] = c;
        // signs from moving E_{a,i} (leg p) and E_{c,k} (leg q) into place
        int s = 0;
        int gp = (vgrade(N, a) + vgrade(N, din[p])) % 2;
        int gq = (vgrade(N, c) + vgrade(N, din[q])) % 2;
        for (int t = 0; t < p; ++t) s += gp * vgrade(N, din[t]);
        for (int t = 0; t < q; ++t) s += gq * vgrade(N, din[t]);
        T v = e;
        if (s % 2) v = -v;
        out.at(out.index(dout), cin) += v;
      }
  }
  return out;
}

// Embed the matrix of a two-leg MAP into adjacent legs (pos, pos+1) of a
// larger product: plain Kronecker with identities (composite maps carry no
// spectator signs; those belong to elementary operator tensors only).
template <class T>
GMat<T> embed_map_adjacent(const GMat<T>& s, int legs, int pos) {
  const int N = s.N();
  GMat<T> out(N, legs);
  long dim = out.dim();
  for (long cin = 0; cin < dim; ++cin) {
    auto din = out.digits(cin);
    for (int a = 1; a <= N + 1; ++a)
      for (int c = 1; c <= N + 1; ++c) {
        const T& e = s.at(s.index({a, c}), s.index({din[pos], din[pos + 1]}));
        if (GMatDetail::is_zero(e)) continue;
        auto dout = din;
        dout[pos] = a;
        dout[pos + 1] = c;
        out.at(out.index(dout), cin) += e;
      }
  }
  return out;
}

// Single-leg embedding with the same sign convention.
template <class T, class F>
GMat<T> embed_one_leg(int N, int legs, int p, F entry) {
  GMat<T> out(N, legs);
  long dim = out.dim();
  for (long cin = 0; cin < dim; ++cin) {
    auto din = out.digits(cin);
    for (int a = 1; a <= N + 1; ++a) {
      T e = entry(a, din[p]);
      if (GMatDetail::is_zero(e)) continue;
      auto dout = din;
      dout[p] = a;
      int g = (vgrade(N, a) + vgrade(N, din[p])) % 2;
      int s = 0;
      for (int t = 0; t < p; ++t) s += g * vgrade(N, din[t]);
      T v = e;
      if (s % 2) v = -v;
      out.at(out.index(dout), cin) += v;
    }
  }
  return out;
}

}  // namespace qsln
