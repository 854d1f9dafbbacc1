#include "qsln/qlaurent.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace qsln {

Rat QLaurent::coeff(const Rat& exp) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), exp,
                             [](const Term& t, const Rat& e) { return t.first < e; });
  if (it != t_.end() && it->first == exp) return it->second;
  return Rat(0);
}

QLaurent QLaurent::operator-() const {
  QLaurent r = *this;
  for (auto& t : r.t_) t.second = -t.second;
  return r;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
  if (o.t_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  auto a = t_.cbegin();
  auto b = o.t_.cbegin();
  while (a != t_.cend() || b != o.t_.cend()) {
    if (b == o.t_.cend() || (a != t_.cend() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == t_.cend() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rat c = a->second + b->second;
      if (c != 0) out.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  t_ = std::move(out);
  return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) {
  return *this += -o;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  if (a.is_zero() || b.is_zero()) return QLaurent();
  if (b.is_monomial()) {
    QLaurent r = a;
    r.mul_monomial(b.t_[0].second, b.t_[0].first);
    return r;
  }
  if (a.is_monomial()) {
    QLaurent r = b;
    r.mul_monomial(a.t_[0].second, a.t_[0].first);
    return r;
  }
  // merge-add shifted copies of a, term by term of b
  QLaurent acc;
  for (const auto& y : b.t_) {
    QLaurent shifted = a;
    shifted.mul_monomial(y.second, y.first);
    acc += shifted;
  }
  return acc;
}

void QLaurent::mul_monomial(const Rat& coeff, const Rat& exp) {
  if (coeff == 0) {
    t_.clear();
    return;
  }
  for (auto& t : t_) {
    t.first += exp;
    t.second *= coeff;
  }
}

void QLaurent::mul_rat(const Rat& c) { mul_monomial(c, Rat(0)); }

QLaurent QLaurent::substitute_power(const Rat& s) const {
  if (s == 0) {
    Rat tot(0);
    for (const auto& t : t_) tot += t.second;
    return QLaurent(tot);
  }
  std::vector<Term> out = t_;
  for (auto& t : out) t.first *= s;
  if (s < 0) std::reverse(out.begin(), out.end());
  return from_sorted(std::move(out));
}

QLaurent QLaurent::bar() const { return substitute_power(Rat(-1)); }

Int QLaurent::exponent_lattice() const {
  Int l(1);
  for (const auto& t : t_) l = lcm_int(l, rat_den(t.first));
  return l;
}

std::string QLaurent::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const Rat& e = it->first;
    const Rat& c = it->second;
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rat ac = abs(c);
    if (e == 0) {
      os << ac.str();
    } else {
      if (ac != 1) os << ac.str() << "*";
      os << "q";
      if (e != 1) os << "^" << (rat_den(e) == 1 ? e.str() : "(" + e.str() + ")");
    }
  }
  return os.str();
}

QLaurent qint(long n) {
  if (n == 0) return QLaurent();
  long a = n > 0 ? n : -n;
  std::vector<QLaurent::Term> out;
  for (long k = -(a - 1); k <= a - 1; k += 2) out.emplace_back(Rat(k), Rat(n > 0 ? 1 : -1));
  return QLaurent::from_sorted(std::move(out));
}

QLaurent qpow_sum(const Rat& a, const Rat& b) {
  QLaurent r = QLaurent::q_pow(a);
  r += QLaurent::q_pow(b);
  return r;
}

namespace {

// Dense integer-coefficient polynomial, index = exponent (after rebasing a
// Laurent polynomial onto N with a fixed exponent lattice).
using ZPoly = std::vector<Int>;

Int zp_content(const ZPoly& p) {
  Int g(0);
  for (const auto& c : p) g = gcd(g, c);
  return g == 0 ? Int(1) : g;
}

void zp_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zp_primitive(ZPoly p) {
  zp_trim(p);
  Int g = zp_content(p);
  if (!p.empty() && p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

// Pseudo-remainder of a by b (deg a >= deg b, b nonzero).
ZPoly zp_prem(ZPoly a, const ZPoly& b) {
  zp_trim(a);
  const long db = (long)b.size() - 1;
  const Int& lb = b.back();
  while ((long)a.size() - 1 >= db && !a.empty()) {
    long da = (long)a.size() - 1;
    Int la = a.back();
    for (auto& c : a) c *= lb;
    for (long i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
    zp_trim(a);
  }
  return a;
}

ZPoly zp_gcd(ZPoly a, ZPoly b) {
  a = zp_primitive(std::move(a));
  b = zp_primitive(std::move(b));
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() < b.size()) std::swap(a, b);
  // primitive PRS; fine for the modest degrees seen here
  while (!b.empty()) {
    ZPoly r = zp_prem(a, b);
    a = std::move(b);
    b = zp_primitive(std::move(r));
  }
  return a;
}

struct Rebased {
  ZPoly poly;   // primitive integer polynomial
  Rat shift;    // q-exponent of poly[0]
  Int lattice;  // exponents of the original = shift + index/lattice... index*(1/lattice)
};

Rebased rebase(const QLaurent& p, const Int& lattice) {
  Rebased r;
  r.lattice = lattice;
  r.shift = p.min_exp();
  Int deg = rat_num((p.max_exp() - p.min_exp()) * Rat(lattice));
  r.poly.assign(to_long(deg) + 1, Int(0));
  Int den(1);
  for (const auto& t : p.terms()) den = lcm_int(den, rat_den(t.second));
  for (const auto& t : p.terms()) {
    long idx = to_long(rat_num((t.first - r.shift) * Rat(lattice)));
    r.poly[idx] = rat_num(t.second * Rat(den));
  }
  return r;
}

QLaurent debase(const ZPoly& p, const Int& lattice) {
  std::vector<QLaurent::Term> out;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) out.emplace_back(Rat(Int(i), lattice), Rat(p[i]));
  return QLaurent::from_sorted(std::move(out));
}

}  // namespace

QLaurent qlaurent_gcd(const QLaurent& a, const QLaurent& b) {
  if (a.is_zero() || b.is_zero() || a.is_monomial() || b.is_monomial())
    return QLaurent(Rat(1));
  Int lattice = lcm_int(a.exponent_lattice(), b.exponent_lattice());
  ZPoly g = zp_gcd(rebase(a, lattice).poly, rebase(b, lattice).poly);
  QLaurent r = debase(g, lattice);
  // canonical unit: lowest term 1*q^0
  r.mul_monomial(Rat(1) / r.lead_low_coeff(), -r.min_exp());
  return r;
}

QLaurent qlaurent_div_exact(const QLaurent& a, const QLaurent& b) {
  if (a.is_zero()) return QLaurent();
  if (b.is_zero()) throw std::domain_error("QLaurent division by zero");
  if (b.is_monomial()) {
    QLaurent r = a;
    r.mul_monomial(Rat(1) / b.lead_low_coeff(), -b.min_exp());
    return r;
  }
  // long division from the bottom exponent up, over Q
  QLaurent rem = a;
  std::vector<QLaurent::Term> quot;
  while (!rem.is_zero()) {
    if (rem.max_exp() - b.max_exp() < rem.min_exp() - b.min_exp())
      throw std::domain_error("QLaurent division not exact");
    Rat e = rem.min_exp() - b.min_exp();
    Rat c = rem.lead_low_coeff() / b.lead_low_coeff();
    quot.emplace_back(e, c);
    QLaurent t = b;
    t.mul_monomial(-c, e);
    rem += t;
  }
  std::sort(quot.begin(), quot.end(),
            [](const QLaurent::Term& x, const QLaurent::Term& y) { return x.first < y.first; });
  return QLaurent::from_sorted(std::move(quot));
}

}  // namespace qsln
