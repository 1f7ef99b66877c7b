#include "shq/factor.hpp"

#include <algorithm>
#include <random>

namespace shq {

namespace {

// ---------- arithmetic mod a word-size prime ----------

using u64 = unsigned long long;
using u128 = unsigned __int128;

struct FpCtx {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(u128(a) * b % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

using FpPoly = std::vector<u64>;  // constant term first, trimmed

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mul(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  return c;
}

void fp_divrem(const FpCtx& F, const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  r = a;
  fp_trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  u64 lead_inv = F.inv(b.back());
  for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
    if (r.size() < b.size() + k) continue;
    u64 c = F.mul(r[k + b.size() - 1], lead_inv);
    q[k] = c;
    if (c)
      for (size_t i = 0; i + 1 < b.size(); ++i) r[k + i] = F.sub(r[k + i], F.mul(c, b[i]));
    r.resize(k + b.size() - 1);
    fp_trim(r);
  }
}

FpPoly fp_mod(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  fp_divrem(F, a, b, q, r);
  return r;
}

FpPoly fp_gcd(const FpCtx& F, FpPoly a, FpPoly b) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 li = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, li);
  }
  return a;
}

// s*a + t*b = gcd (monic)
void fp_xgcd(const FpCtx& F, FpPoly a, FpPoly b, FpPoly& g, FpPoly& s, FpPoly& t) {
  FpPoly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly q, r;
    fp_divrem(F, a, b, q, r);
    FpPoly qs = fp_mul(F, q, s1), qt = fp_mul(F, q, t1);
    FpPoly s2 = s0, t2 = t0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
    for (size_t i = 0; i < qs.size(); ++i) s2[i] = F.sub(s2[i], qs[i]);
    if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
    for (size_t i = 0; i < qt.size(); ++i) t2[i] = F.sub(t2[i], qt[i]);
    fp_trim(s2);
    fp_trim(t2);
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 li = F.inv(a.back());
  g = a;
  for (auto& c : g) c = F.mul(c, li);
  s = s0;
  t = t0;
  for (auto& c : s) c = F.mul(c, li);
  for (auto& c : t) c = F.mul(c, li);
}

FpPoly fp_powmod(const FpCtx& F, FpPoly base, Int e, const FpPoly& mod) {
  FpPoly r = {1};
  base = fp_mod(F, base, mod);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fp_mod(F, fp_mul(F, r, base), mod);
    base = fp_mod(F, fp_mul(F, base, base), mod);
    e >>= 1;
  }
  return r;
}

// Equal-degree splitting: f squarefree monic, all irreducible factors of degree d.
void fp_edf(const FpCtx& F, const FpPoly& f, long d, std::vector<FpPoly>& out,
            std::mt19937_64& rng) {
  long n = static_cast<long>(f.size()) - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  Int e = 1;
  for (long i = 0; i < d; ++i) e *= static_cast<long>(F.p);
  e = (e - 1) / 2;
  while (true) {
    FpPoly r(n, 0);
    for (auto& c : r) c = rng() % F.p;
    fp_trim(r);
    if (r.empty()) continue;
    FpPoly w = fp_powmod(F, r, e, f);
    if (w.empty()) continue;
    w[0] = F.sub(w[0], 1);
    fp_trim(w);
    FpPoly g = fp_gcd(F, w, f);
    long dg = static_cast<long>(g.size()) - 1;
    if (dg > 0 && dg < n) {
      FpPoly q, rem;
      fp_divrem(F, f, g, q, rem);
      fp_edf(F, g, d, out, rng);
      fp_edf(F, q, d, out, rng);
      return;
    }
  }
}

// Cantor-Zassenhaus on a squarefree monic polynomial over Fp, p odd.
void fp_factor_squarefree(const FpCtx& F, const FpPoly& f, std::vector<FpPoly>& out,
                          std::mt19937_64& rng) {
  long n = static_cast<long>(f.size()) - 1;
  if (n <= 0) return;
  if (n == 1) {
    out.push_back(f);
    return;
  }
  // distinct-degree, then split each block
  FpPoly h = {0, 1};  // x
  FpPoly rest = f;
  for (long d = 1; 2 * d <= static_cast<long>(rest.size()) - 1; ++d) {
    h = fp_powmod(F, h, Int(static_cast<long>(F.p)), rest);
    FpPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = F.sub(hx[1], 1);
    fp_trim(hx);
    FpPoly g = fp_gcd(F, hx, rest);
    if (g.size() > 1) {
      fp_edf(F, g, d, out, rng);
      FpPoly q, rem;
      fp_divrem(F, rest, g, q, rem);
      rest = q;
      h = fp_mod(F, h, rest);
    }
  }
  if (rest.size() > 1) out.push_back(rest);
}

// ---------- Z[x] helpers (dense Int vectors, constant first) ----------

using ZPoly = std::vector<Int>;

void z_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

void z_mod_coeffs(ZPoly& f, const Int& m) {
  for (auto& c : f) {
    c %= m;
    if (c < 0) c += m;
  }
  z_trim(f);
}

void z_balance(ZPoly& f, const Int& m) {
  Int half = m / 2;
  for (auto& c : f) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  z_trim(f);
}

// divrem against monic divisor, coefficients reduced mod m
void z_divrem_monic_mod(const ZPoly& a, const ZPoly& b, const Int& m, ZPoly& q, ZPoly& r) {
  r = a;
  z_mod_coeffs(r, m);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, Int(0));
  for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
    if (r.size() < b.size() + k) continue;
    Int c = r[k + b.size() - 1] % m;
    q[k] = c;
    if (c != 0)
      for (size_t i = 0; i + 1 < b.size(); ++i) r[k + i] = (r[k + i] - c * b[i]) % m;
    r.resize(k + b.size() - 1);
    z_trim(r);
  }
  z_mod_coeffs(q, m);
  z_mod_coeffs(r, m);
}

ZPoly z_mul_mod(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly c = z_mul(a, b);
  z_mod_coeffs(c, m);
  return c;
}

ZPoly z_add_mod(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly c = a;
  if (c.size() < b.size()) c.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  z_mod_coeffs(c, m);
  return c;
}

ZPoly z_sub_mod(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly c = a;
  if (c.size() < b.size()) c.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  z_mod_coeffs(c, m);
  return c;
}

// One quadratic Hensel step: f = g*h, s*g + t*h = 1 (mod m), h monic, all monic here.
// Returns the data mod m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Int& m) {
  Int m2 = m * m;
  ZPoly e = z_sub_mod(f, z_mul(g, h), m2);
  ZPoly q, r;
  z_divrem_monic_mod(z_mul_mod(s, e, m2), h, m2, q, r);
  ZPoly gstar = z_add_mod(g, z_add_mod(z_mul_mod(t, e, m2), z_mul_mod(q, g, m2), m2), m2);
  ZPoly hstar = z_add_mod(h, r, m2);
  ZPoly b = z_sub_mod(z_add_mod(z_mul_mod(s, gstar, m2), z_mul_mod(t, hstar, m2), m2), {Int(1)}, m2);
  ZPoly c, d;
  z_divrem_monic_mod(z_mul_mod(s, b, m2), hstar, m2, c, d);
  ZPoly sstar = z_sub_mod(s, d, m2);
  ZPoly tstar = z_sub_mod(z_sub_mod(t, z_mul_mod(t, b, m2), m2), z_mul_mod(c, gstar, m2), m2);
  g = std::move(gstar);
  h = std::move(hstar);
  s = std::move(sstar);
  t = std::move(tstar);
}

// Lift a list of pairwise-coprime monic factors of monic f from mod p to mod >= target.
// Returns the modulus reached.
Int hensel_lift_list(const ZPoly& f, std::vector<ZPoly>& factors, u64 p, const Int& target) {
  if (factors.size() == 1) {
    factors[0] = f;
    Int m(static_cast<long>(p));
    while (m < target) m *= m;
    return m;
  }
  // split in halves: g = prod(first), h = prod(rest)
  size_t half = factors.size() / 2;
  FpCtx F{p};
  auto to_fp = [&](const ZPoly& a) {
    FpPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
      Int c = a[i] % static_cast<long>(p);
      if (c < 0) c += static_cast<long>(p);
      r[i] = c.get_ui();
    }
    fp_trim(r);
    return r;
  };
  FpPoly gp = {1}, hp = {1};
  for (size_t i = 0; i < half; ++i) gp = fp_mul(F, gp, to_fp(factors[i]));
  for (size_t i = half; i < factors.size(); ++i) hp = fp_mul(F, hp, to_fp(factors[i]));
  FpPoly gg, ss, tt;
  fp_xgcd(F, gp, hp, gg, ss, tt);
  if (gg.size() != 1) throw std::runtime_error("hensel: factors not coprime mod p");
  auto to_z = [&](const FpPoly& a) {
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<long>(a[i]));
    return r;
  };
  ZPoly g = to_z(gp), h = to_z(hp), s = to_z(ss), t = to_z(tt);
  Int m(static_cast<long>(p));
  while (m < target) {
    hensel_step(f, g, h, s, t, m);
    m *= m;
  }
  std::vector<ZPoly> left(factors.begin(), factors.begin() + half);
  std::vector<ZPoly> right(factors.begin() + half, factors.end());
  Int ml = hensel_lift_list(g, left, p, target);
  Int mr = hensel_lift_list(h, right, p, target);
  (void)ml;
  (void)mr;
  factors.clear();
  for (auto& x : left) factors.push_back(std::move(x));
  for (auto& x : right) factors.push_back(std::move(x));
  return m;
}

Int z_norm_inf(const ZPoly& f) {
  Int m = 0;
  for (const auto& c : f) {
    Int a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

bool z_divides(const ZPoly& g, const ZPoly& f) {
  // g monic: exact division test in Z[x]
  ZPoly r = f;
  z_trim(r);
  if (g.empty()) return r.empty();
  while (r.size() >= g.size()) {
    Int c = r.back();
    size_t shift = r.size() - g.size();
    for (size_t i = 0; i < g.size(); ++i) r[shift + i] -= c * g[i];
    z_trim(r);
    if (!r.empty() && r.size() >= g.size() && r.back() == 0) z_trim(r);
    if (r.size() < g.size()) break;
  }
  return r.empty();
}

ZPoly z_div_exact(const ZPoly& f, const ZPoly& g) {
  // g monic
  ZPoly q(f.size() - g.size() + 1, Int(0));
  ZPoly r = f;
  for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
    Int c = r[k + g.size() - 1];
    q[k] = c;
    if (c != 0)
      for (size_t i = 0; i < g.size(); ++i) r[k + i] -= c * g[i];
  }
  z_trim(r);
  if (!r.empty()) throw std::runtime_error("z_div_exact: not divisible");
  return q;
}

// Factor a squarefree monic integer polynomial into monic irreducibles over Z.
std::vector<ZPoly> factor_squarefree_monic(const ZPoly& f) {
  long n = static_cast<long>(f.size()) - 1;
  if (n <= 1) return {f};
  // pick a prime where f stays squarefree
  static const u64 primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                               47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103};
  u64 p = 0;
  FpPoly fp;
  for (u64 cand : primes) {
    FpCtx F{cand};
    FpPoly g(f.size());
    bool lead_ok = true;
    for (size_t i = 0; i < f.size(); ++i) {
      Int c = f[i] % static_cast<long>(cand);
      if (c < 0) c += static_cast<long>(cand);
      g[i] = c.get_ui();
    }
    if (g.back() == 0) lead_ok = false;  // cannot happen for monic, kept for safety
    if (!lead_ok) continue;
    FpPoly d(g.size() - 1);
    for (size_t i = 1; i < g.size(); ++i) d[i - 1] = F.mul(g[i], i % cand);
    fp_trim(d);
    if (d.empty()) continue;
    if (fp_gcd(F, g, d).size() == 1) {
      p = cand;
      fp = g;
      break;
    }
  }
  if (p == 0) throw std::runtime_error("factor: no good prime found");
  FpCtx F{p};
  std::mt19937_64 rng(0x5eed0001ULL);
  std::vector<FpPoly> modular;
  fp_factor_squarefree(F, fp, modular, rng);
  if (modular.size() == 1) return {f};

  // Hensel lift to above twice the Mignotte bound.
  Int norm2_sq = 0;
  for (const auto& c : f) norm2_sq += c * c;
  Int bound = 1;
  mpz_sqrt(bound.get_mpz_t(), norm2_sq.get_mpz_t());
  bound += 1;
  Int target = (bound + 1) * 2;
  for (long i = 0; i < n; ++i) target *= 2;  // 2^n * ||f||_2 * 2
  std::vector<ZPoly> lifted;
  lifted.reserve(modular.size());
  for (auto& g : modular) {
    ZPoly z(g.size());
    for (size_t i = 0; i < g.size(); ++i) z[i] = Int(static_cast<long>(g[i]));
    lifted.push_back(std::move(z));
  }
  Int pk = hensel_lift_list(f, lifted, p, target);

  // subset recombination
  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::vector<int> alive(lifted.size(), 1);
  long alive_count = static_cast<long>(lifted.size());
  for (long card = 1; card <= alive_count; ++card) {
    bool progress = true;
    while (progress) {
      progress = false;
      // enumerate subsets of size `card` of alive indices
      std::vector<long> idx;
      for (size_t i = 0; i < lifted.size(); ++i)
        if (alive[i]) idx.push_back(static_cast<long>(i));
      if (static_cast<long>(idx.size()) < card) break;
      std::vector<long> sel(card);
      std::function<bool(long, long)> rec = [&](long pos, long start) -> bool {
        if (pos == card) {
          ZPoly cand = {Int(1)};
          for (long j = 0; j < card; ++j) cand = z_mul_mod(cand, lifted[sel[j]], pk);
          z_balance(cand, pk);
          if (z_divides(cand, rest)) {
            out.push_back(cand);
            rest = z_div_exact(rest, cand);
            for (long j = 0; j < card; ++j) alive[sel[j]] = 0;
            alive_count -= card;
            return true;
          }
          return false;
        }
        for (long i = start; i < static_cast<long>(idx.size()); ++i) {
          sel[pos] = idx[i];
          if (rec(pos + 1, i + 1)) return true;
        }
        return false;
      };
      if (rec(0, 0)) progress = true;
      if (2 * card > alive_count) break;
    }
    if (2 * card > alive_count) break;
  }
  z_trim(rest);
  if (rest.size() > 1) out.push_back(rest);
  return out;
}

ZPoly to_zpoly_primitive(const Poly& f, Int& content_den_out) {
  auto rc = f.rational_coeffs();
  Int den = 1;
  for (const auto& c : rc) den = lcm(den, c.den());
  ZPoly z(rc.size());
  for (size_t i = 0; i < rc.size(); ++i) z[i] = rc[i].num() * (den / rc[i].den());
  Int g = 0;
  for (const auto& c : z) g = gcd(g, c);
  if (g != 0)
    for (auto& c : z) c /= g;
  if (!z.empty() && z.back() < 0)
    for (auto& c : z) c = -c;
  content_den_out = den;
  return z;
}

Poly zpoly_to_poly(const ZPoly& z) {
  std::vector<Rational> rc(z.size());
  for (size_t i = 0; i < z.size(); ++i) rc[i] = Rational(z[i]);
  return Poly::from_rationals(rc);
}

}  // namespace

std::vector<QFactor> factor_rational(const Poly& f_in) {
  if (!f_in.is_rational()) throw std::domain_error("factor_rational: non-rational coefficients");
  if (f_in.is_zero()) throw std::domain_error("factor_rational: zero polynomial");
  Poly f = f_in.to_rational_poly();

  std::vector<QFactor> out;
  // split off x^k
  long k0 = 0;
  while (f.coeff(k0).is_zero()) ++k0;
  if (k0 > 0) {
    out.push_back({Poly::from_rationals({Rational(0), Rational(1)}), k0});
    std::vector<CycloElem> shifted(f.coeffs().begin() + k0, f.coeffs().end());
    f = Poly(1, std::move(shifted));
  }
  if (f.degree() == 0) return out;

  // squarefree decomposition (Yun)
  std::vector<std::pair<Poly, long>> sqf;
  {
    Poly a = f.monic();
    Poly d = a.derivative();
    Poly g = poly_gcd(a, d);
    Poly b = poly_div_exact(a, g);
    Poly c = poly_div_exact(d, g);
    long i = 1;
    while (b.degree() > 0) {
      Poly t = c - b.derivative();
      Poly h = poly_gcd(b, t);
      if (h.degree() > 0) sqf.emplace_back(h, i);
      b = poly_div_exact(b, h);
      c = poly_div_exact(t, h);
      ++i;
    }
  }

  for (auto& [part, mult] : sqf) {
    Int den;
    ZPoly z = to_zpoly_primitive(part, den);
    // monicize: F(x) = L^{n-1} f(x/L), so F[i] = z[i] * L^{n-1-i}
    Int L = z.back();
    ZPoly F = z;
    long n = static_cast<long>(z.size()) - 1;
    if (L != 1) {
      Int pw = 1;
      for (long i = n - 1; i >= 0; --i) {
        F[i] *= pw;
        pw *= L;
      }
      F[n] = 1;
    }
    auto irr = factor_squarefree_monic(F);
    for (auto& gz : irr) {
      ZPoly back = gz;
      if (L != 1) {
        // g(x) of F corresponds to primitive part of L^{deg g} g(L x ... ) inverse map:
        // factor of f: g*(x) = g(L x) made primitive
        Int pw = 1;
        for (size_t i = 1; i < back.size(); ++i) {
          pw *= L;
          back[i] *= pw;
        }
        Int g = 0;
        for (const auto& c : back) g = gcd(g, c);
        if (g != 0)
          for (auto& c : back) c /= g;
        if (back.back() < 0)
          for (auto& c : back) c = -c;
      }
      out.push_back({zpoly_to_poly(back), mult});
    }
  }
  return out;
}

namespace {

Poly poly_compose_xplus(const Poly& f, const CycloElem& delta) {
  // f(x + delta) by Horner
  long M = lcm_long(f.order(), delta.order());
  Poly shift(M, {delta.promoted(M), CycloElem::one(M)});
  Poly r(M);
  for (long i = f.degree(); i >= 0; --i) r = r * shift + Poly::constant(f.coeff(i).promoted(M));
  return r;
}

Poly conj_poly(const Poly& f, long a) {
  std::vector<CycloElem> c;
  c.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) c.push_back(x.galois(a));
  return Poly(f.order(), std::move(c));
}

}  // namespace

std::vector<CFactor> factor_cyclo(const Poly& f_in) {
  if (f_in.is_zero()) throw std::domain_error("factor_cyclo: zero polynomial");
  long m = f_in.order();
  if (f_in.is_rational() && m == 1) {
    std::vector<CFactor> out;
    for (auto& qf : factor_rational(f_in)) out.push_back({qf.factor.monic(), qf.multiplicity});
    return out;
  }
  Poly f = f_in.monic();

  // squarefree decomposition over the field (Yun, char 0)
  std::vector<std::pair<Poly, long>> sqf;
  {
    Poly a = f;
    Poly d = a.derivative();
    Poly g = poly_gcd(a, d);
    Poly b = poly_div_exact(a, g);
    Poly c = poly_div_exact(d, g);
    long i = 1;
    while (b.degree() > 0) {
      Poly t = c - b.derivative();
      Poly h = poly_gcd(b, t);
      if (h.degree() > 0) sqf.emplace_back(h, i);
      b = poly_div_exact(b, h);
      c = poly_div_exact(t, h);
      ++i;
    }
  }

  std::vector<CFactor> out;
  std::vector<long> units;
  for (long a = 1; a < m; ++a)
    if (gcd_long(a, m) == 1) units.push_back(a);
  if (m == 1) units = {0};

  for (auto& [part0, mult] : sqf) {
    if (part0.degree() == 1) {
      out.push_back({part0.monic(), mult});
      continue;
    }
    // Trager: shift until the norm is squarefree
    CycloElem zeta = CycloElem::root_of_unity(m, 1);
    for (long shift = 0;; ++shift) {
      CycloElem delta = CycloElem(Rational(shift), 1) * zeta;
      Poly part = shift == 0 ? part0 : poly_compose_xplus(part0, delta);
      Poly norm = Poly::constant(CycloElem::one(m));
      for (long a : units) norm = norm * conj_poly(part, a);
      if (!norm.is_rational()) {
        if (shift > 16) throw std::runtime_error("factor_cyclo: norm not rational");
        continue;
      }
      Poly normQ = norm.to_rational_poly();
      if (poly_gcd(normQ, normQ.derivative()).degree() != 0) {
        if (shift > 64) throw std::runtime_error("factor_cyclo: no squarefree shift found");
        continue;
      }
      Poly remaining = part;
      for (auto& qf : factor_rational(normQ)) {
        Poly g = poly_gcd(remaining, qf.factor.promoted(m));
        if (g.degree() > 0) {
          Poly gm = g.monic();
          Poly unshifted = shift == 0 ? gm : poly_compose_xplus(gm, -delta);
          out.push_back({unshifted.monic(), mult});
          remaining = poly_div_exact(remaining, gm);
        }
      }
      if (remaining.degree() != 0)
        throw std::runtime_error("factor_cyclo: incomplete norm descent");
      break;
    }
  }
  return out;
}

}  // namespace shq
