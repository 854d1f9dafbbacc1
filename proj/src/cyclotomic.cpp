#include "qsln/cyclotomic.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qsln {

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r -= r / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

using Poly = std::vector<long long>;

// Exact division of integer polynomials (b monic), index = degree.
Poly div_monic(Poly a, const Poly& b) {
  Poly q(a.size() - b.size() + 1, 0);
  for (long i = (long)q.size() - 1; i >= 0; --i) {
    long long c = a[i + b.size() - 1];
    q[i] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  for (auto c : a) assert(c == 0);
  return q;
}

Poly compute_cyclotomic(long n);

std::map<long, Poly> g_cache;
std::mutex g_mut;

Poly compute_cyclotomic(long n) {
  Poly p(n + 1, 0);  // x^n - 1
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = div_monic(std::move(p), cyclotomic_poly(d));
  return p;
}

}  // namespace

const std::vector<long long>& cyclotomic_poly(long n) {
  if (n < 1 || n > 4096) throw std::domain_error("cyclotomic order out of range");
  {
    std::lock_guard<std::mutex> lk(g_mut);
    auto it = g_cache.find(n);
    if (it != g_cache.end()) return it->second;
  }
  Poly p = compute_cyclotomic(n);
  std::lock_guard<std::mutex> lk(g_mut);
  return g_cache.emplace(n, std::move(p)).first->second;
}

}  // namespace qsln
