#include "qsln/puiseux.hpp"

#include <sstream>

namespace qsln {

PuiseuxSeries PuiseuxSeries::monomial(const Scalar& c, const Rat& e) {
  PuiseuxSeries s;
  if (!c.is_zero()) s.c_[e] = c;
  return s;
}

void PuiseuxSeries::set_hi(const Rat& h) {
  hi_ = std::min(hi_, h);
  clip();
}

void PuiseuxSeries::clip() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->first > hi_ || it->second.is_zero())
      it = c_.erase(it);
    else
      ++it;
  }
}

Scalar PuiseuxSeries::coeff(const Rat& e) const {
  if (e > hi_)
    throw TruncationError("PuiseuxSeries: coefficient beyond truncation window");
  auto it = c_.find(e);
  return it == c_.end() ? Scalar() : it->second;
}

Scalar PuiseuxSeries::residue() const { return coeff(Rat(-1)); }

Int PuiseuxSeries::lattice() const {
  Int l(1);
  for (const auto& t : c_) l = lcm_int(l, rat_den(t.first));
  return l;
}

Rat PuiseuxSeries::min_coeff_valuation() const {
  Rat v = qord_;
  for (const auto& t : c_) v = std::min(v, t.second.q_valuation());
  return v;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries r = *this;
  for (auto& t : r.c_) t.second = -t.second;
  return r;
}

PuiseuxSeries& PuiseuxSeries::operator+=(const PuiseuxSeries& o) {
  hi_ = std::min(hi_, o.hi_);
  qord_ = std::min(qord_, o.qord_);
  for (const auto& t : o.c_) {
    auto [it, fresh] = c_.try_emplace(t.first, t.second);
    if (!fresh) it->second += t.second;
  }
  clip();
  return *this;
}

PuiseuxSeries& PuiseuxSeries::operator-=(const PuiseuxSeries& o) { return *this += -o; }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries r;
  const Rat inf = q_val_infinity();
  // window rule: reliable up to min(hiA + loB, hiB + loA)
  Rat loA = a.c_.empty() ? (a.hi_ < inf ? a.hi_ : Rat(0)) : a.c_.begin()->first;
  Rat loB = b.c_.empty() ? (b.hi_ < inf ? b.hi_ : Rat(0)) : b.c_.begin()->first;
  r.hi_ = inf;
  if (a.hi_ < inf) r.hi_ = std::min(r.hi_, a.hi_ + loB);
  if (b.hi_ < inf) r.hi_ = std::min(r.hi_, b.hi_ + loA);
  Rat va = a.min_coeff_valuation();
  Rat vb = b.min_coeff_valuation();
  r.qord_ = inf;
  if (a.qord_ < inf && vb < inf) r.qord_ = std::min(r.qord_, a.qord_ + vb);
  if (b.qord_ < inf && va < inf) r.qord_ = std::min(r.qord_, b.qord_ + va);
  for (const auto& x : a.c_) {
    for (const auto& y : b.c_) {
      Rat e = x.first + y.first;
      if (e > r.hi_) continue;
      Scalar v = x.second * y.second;
      if (v.is_zero()) continue;
      auto [it, fresh] = r.c_.try_emplace(e, v);
      if (!fresh) it->second += v;
    }
  }
  r.clip();
  return r;
}

void PuiseuxSeries::mul_scalar(const Scalar& c) {
  if (c.is_zero()) {
    c_.clear();
    return;
  }
  Rat vc = c.q_valuation();
  if (qord_ < q_val_infinity()) qord_ += vc;
  for (auto& t : c_) t.second *= c;
  clip();
}

void PuiseuxSeries::add_term(const Rat& e, const Scalar& c) {
  if (e > hi_ || c.is_zero()) return;
  auto [it, fresh] = c_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

PuiseuxSeries PuiseuxSeries::scale_argument(const Rat& a) const {
  PuiseuxSeries r = *this;
  for (auto& t : r.c_) t.second *= Scalar::q_pow(a * t.first);
  return r;
}

bool PuiseuxSeries::is_zero_on_window() const {
  for (const auto& t : c_) {
    if (exact()) {
      if (!t.second.is_zero()) return false;
    } else if (t.second.q_valuation() < qord_) {
      return false;
    }
  }
  return true;
}

Cplx PuiseuxSeries::eval(const NumericContext& ctx, const Cplx& z0) const {
  Cplx acc(0);
  for (const auto& t : c_) {
    Cplx zp = pow(z0, Cplx(Real(rat_num(t.first).str()) / Real(rat_den(t.first).str())));
    acc += ctx.eval(t.second) * zp;
  }
  return acc;
}

std::string PuiseuxSeries::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.second.str() << ") * " << var;
    os << "^(" << t.first.str() << ")";
  }
  if (hi_ < q_val_infinity()) os << "  [" << var << "-window <= " << hi_.str() << "]";
  if (qord_ < q_val_infinity()) os << "  [mod q^" << qord_.str() << "]";
  return os.str();
}

PuiseuxSeries infinite_product(const PuiseuxSeries& head, const std::vector<QLaurent>& ratios,
                               long order) {
  for (const auto& r : ratios) {
    if (r.is_zero() || r.min_exp() <= 0)
      throw std::domain_error(
          "infinite_product: ratio has non-positive q-adic valuation, product does not truncate");
  }
  PuiseuxSeries acc = PuiseuxSeries::one();
  acc.set_qord(Rat(order));
  if (head.known_zero()) return acc;

  // enumerate multi-indices n with val(head * prod ratios^n) below the q-order
  Rat head_val = head.min_coeff_valuation();
  auto rec = [&](auto&& self, size_t i, const QLaurent& cur) -> void {
    if (head_val + cur.min_exp() >= Rat(order)) return;
    if (i == ratios.size()) {
      PuiseuxSeries f = PuiseuxSeries::one();
      PuiseuxSeries h = head;
      h.mul_scalar(Scalar(QRational(cur)));
      f -= h;
      acc *= f;
      return;
    }
    QLaurent c = cur;
    while (head_val + c.min_exp() < Rat(order)) {
      self(self, i + 1, c);
      c = c * ratios[i];
    }
  };
  rec(rec, 0, QLaurent(Rat(1)));
  return acc;
}

PuiseuxSeries curly_product(const PuiseuxSeries& head, long N, long order) {
  QLaurent p = QLaurent::q_pow(Rat(2 * (N - 1)));
  return infinite_product(head, {p, p}, order);
}

PuiseuxSeries pochhammer(const Scalar& c, const Rat& zexp, const Rat& base, const Rat& step,
                         long order) {
  PuiseuxSeries head = PuiseuxSeries::monomial(c * Scalar::q_pow(base), zexp);
  return infinite_product(head, {QLaurent::q_pow(step)}, order);
}

PuiseuxSeries unit_series_inverse(const PuiseuxSeries& s, long order) {
  Scalar c0 = s.coeff(Rat(0));
  if (c0.is_zero()) throw std::domain_error("unit_series_inverse: vanishing constant term");
  PuiseuxSeries u = s;
  u.add_term(Rat(0), -c0);
  u.mul_scalar(c0.inverse());
  if (!u.known_zero() && u.min_coeff_valuation() <= 0)
    throw std::domain_error("unit_series_inverse: correction term has non-positive valuation");
  // Neumann sum: (c0(1+u))^{-1} = c0^{-1} sum_k (-u)^k
  PuiseuxSeries acc = PuiseuxSeries::one();
  acc.set_qord(std::min(Rat(order), s.qord()));
  PuiseuxSeries term = PuiseuxSeries::one();
  term.set_qord(acc.qord());
  PuiseuxSeries mu = -u;
  while (true) {
    term *= mu;
    if (term.known_zero()) break;
    if (term.min_coeff_valuation() >= acc.qord()) break;
    acc += term;
  }
  acc.mul_scalar(c0.inverse());
  return acc;
}

}  // namespace qsln
