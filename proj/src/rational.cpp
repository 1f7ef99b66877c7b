#include "shq/rational.hpp"

#include <numeric>

namespace shq {

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factor_long(long n) {
  if (n < 1) throw std::domain_error("factor_long: n must be positive");
  std::vector<std::pair<long, int>> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) n /= d, ++e;
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

long euler_phi(long n) {
  long r = 1;
  for (auto [p, e] : factor_long(n)) {
    long pe = 1;
    for (int i = 0; i < e - 1; ++i) pe *= p;
    r *= pe * (p - 1);
  }
  return r;
}

long pow_mod(long base, long exp, long mod) {
  if (mod == 1) return 0;
  unsigned __int128 r = 1, b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) r = r * b % static_cast<unsigned long>(mod);
    b = b * b % static_cast<unsigned long>(mod);
    exp >>= 1;
  }
  return static_cast<long>(r);
}

long inv_mod(long a, long m) {
  long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  return ((t % m) + m) % m;
}

long crt_pair(long r1, long m1, long r2, long m2) {
  long m = m1 * m2;
  long diff = (((r2 - r1) % m2) + m2) % m2;
  long x = r1 + m1 * ((diff * inv_mod(m1 % m2, m2)) % m2);
  return ((x % m) + m) % m;
}

long smallest_primitive_root(long pe) {
  long phi = euler_phi(pe);
  auto qs = factor_long(phi);
  for (long g = 2; g < pe; ++g) {
    if (std::gcd(g, pe) != 1) continue;
    bool ok = true;
    for (auto [q, e] : qs) {
      (void)e;
      if (pow_mod(g, phi / q, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::domain_error("smallest_primitive_root: no generator (modulus not a cyclic unit group?)");
}

long padic_valuation_int(const Int& n, long p) {
  if (n == 0) throw std::domain_error("padic_valuation_int: zero");
  Int m = abs(n);
  long v = 0;
  Int q, r;
  while (true) {
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
    if (r != 0) break;
    m = q;
    ++v;
  }
  return v;
}

Valuation padic_valuation(const Rational& x, long p) {
  if (!is_prime_long(p)) throw std::domain_error("padic_valuation: p must be prime");
  Valuation v;
  if (x.is_zero()) {
    v.infinite = true;
    return v;
  }
  v.value = Rational(padic_valuation_int(x.num(), p) - padic_valuation_int(x.den(), p));
  return v;
}

}  // namespace shq
