#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <numeric>
#include <string>

namespace qsln {

using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                           boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline long to_long(const Int& n) { return n.convert_to<long>(); }

// r reduced into [0, m) for positive rational modulus m.
inline Rat rat_mod(const Rat& r, const Rat& m) {
  Rat q = r / m;
  return r - Rat(rat_floor(q)) * m;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = e > 0 ? base : Rat(1) / base;
  unsigned long n = e > 0 ? e : -e;
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

inline std::string rat_str(const Rat& r) { return r.str(); }

}  // namespace qsln
