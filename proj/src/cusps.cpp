#include "shq/cusps.hpp"

#include "shq/qseries.hpp"

#include <array>
#include <mutex>

namespace shq {

namespace {

using Mat2 = std::array<long, 4>;  // row-major (a b; c d)

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Mat2 inv_sl2(const Mat2& x) { return {x[3], -x[1], -x[2], x[0]}; }

// extend coprime (a, c) to (a b; c d) in SL2(Z)
Mat2 cusp_matrix(long a, long c) {
  long old_r = a, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long q = old_r / r;
    std::swap(old_r -= q * r, r);
    std::swap(old_s -= q * s, s);
    std::swap(old_t -= q * t, t);
  }
  // old_s * a + old_t * c = old_r = +-1
  if (old_r == -1) {
    old_s = -old_s;
    old_t = -old_t;
    old_r = 1;
  }
  if (old_r != 1) throw std::domain_error("cusp_matrix: inputs not coprime");
  // det (a, -old_t; c, old_s) = a*old_s + c*old_t = 1
  return {a, -old_t, c, old_s};
}

long mod_pos(long x, long m) { return ((x % m) + m) % m; }

}  // namespace

std::pair<long, long> CuspData::canonical_key(long a, long c) const {
  // orbit of (a, c) under (a, c) -> +-(a + j c, c) mod N; key = lexmin (c, a)
  long best_c = -1, best_a = -1;
  for (int s = 0; s < 2; ++s) {
    long sa = s ? mod_pos(-a, N_) : mod_pos(a, N_);
    long sc = s ? mod_pos(-c, N_) : mod_pos(c, N_);
    for (long j = 0; j < N_; ++j) {
      long ja = mod_pos(sa + j * sc, N_);
      if (best_c < 0 || sc < best_c || (sc == best_c && ja < best_a)) {
        best_c = sc;
        best_a = ja;
      }
    }
  }
  return {best_c, best_a};
}

CuspData::CuspData(long N) : N_(N) {
  if (N <= 4) throw std::domain_error("CuspData: N > 4 required");
  // enumerate canonical keys and pick coprime representatives
  std::map<std::pair<long, long>, std::pair<long, long>> reps;
  for (long c = 0; c < N; ++c) {
    for (long a = 0; a < N; ++a) {
      if (gcd_long(gcd_long(a, c), N) != 1) continue;
      auto key = canonical_key(a, c);
      if (reps.count(key)) continue;
      // lift to a coprime integer pair (a', c'), c' in [1, N]
      long cc = c == 0 ? N : c;
      long aa = a;
      while (gcd_long(aa, cc) != 1) aa += N;
      reps[key] = {aa, cc};
    }
  }
  for (auto& [key, rep] : reps) {
    CuspClass x;
    x.a = rep.first;
    x.c = rep.second;
    x.width = N / gcd_long(N, x.c);
    if (mod_pos(x.c, 4) == 2) {
      x.sigma = Rational(Int(x.width), Int(4));
      x.integral_sigma = (x.width % 4 == 0);
    } else {
      x.sigma = Rational(0);
      x.integral_sigma = true;
    }
    class_of_[key] = static_cast<long>(cusps_.size());
    cusps_.push_back(x);
  }
  build_orbits();
}

long CuspData::classify(long a, long c) const {
  auto it = class_of_.find(canonical_key(a, c));
  if (it == class_of_.end()) throw std::domain_error("CuspData::classify: not a cusp pair");
  return it->second;
}

long CuspData::diamond(long d, long idx) const {
  const CuspClass& x = cusps_[idx];
  long dinv = inv_mod(mod_pos(d, N_), N_);
  return classify(mod_pos(dinv * x.a, N_), mod_pos(d * x.c, N_));
}

void CuspData::build_orbits() {
  // unit classes mod +-1
  std::vector<long> gmod;
  {
    std::vector<bool> seen(N_, false);
    for (long d = 1; d < N_; ++d) {
      if (gcd_long(d, N_) != 1 || seen[d]) continue;
      seen[d] = seen[mod_pos(-d, N_)] = true;
      gmod.push_back(d);
    }
  }
  std::vector<bool> assigned(cusps_.size(), false);
  for (long i = 0; i < static_cast<long>(cusps_.size()); ++i) {
    if (assigned[i]) continue;
    CuspOrbit orbit;
    for (long d : gmod) {
      long j = diamond(d, i);
      if (std::find(orbit.members.begin(), orbit.members.end(), j) == orbit.members.end())
        orbit.members.push_back(j);
      if (j == i) orbit.stab.push_back(d);
    }
    for (long j : orbit.members) assigned[j] = true;
    orbit.e = static_cast<long>(orbit.stab.size());
    if (orbit.e * static_cast<long>(orbit.members.size()) != static_cast<long>(gmod.size()))
      throw std::runtime_error("CuspData: orbit-stabilizer mismatch");

    // inertia character values omega(d) in Z/width at the base cusp i
    const CuspClass& x = cusps_[i];
    Mat2 sigma = cusp_matrix(x.a, x.c);
    Mat2 sigma_inv = inv_sl2(sigma);
    for (long d : orbit.stab) {
      // gamma_d = (d^{-1} *; N d) in SL2(Z): y = (d^{-1} d - 1)/N
      long dinv = inv_mod(d, N_);
      Mat2 gamma_d{dinv, (dinv * d - 1) / N_, N_, d};

      Mat2 A = mul(gamma_d, sigma);
      Mat2 Ainv = inv_sl2(A);
      // The Gamma1-witness freedom shifts m by multiples of the width, so a
      // valid m lies in [0, width): g(m) = sigma (1 m; 0 1) A^{-1} = +-(1 *; 0 1) mod N.
      bool found = false;
      long m_found = 0;
      for (long m = 0; m < x.width && !found; ++m) {
        Mat2 U{1, m, 0, 1};
        Mat2 g = mul(mul(sigma, U), Ainv);
        long g11 = mod_pos(g[0], N_), g21 = mod_pos(g[2], N_), g22 = mod_pos(g[3], N_);
        if (g21 == 0 && ((g11 == 1 && g22 == 1) || (g11 == N_ - 1 && g22 == N_ - 1))) {
          found = true;
          m_found = m;
        }
      }
      if (!found) throw std::runtime_error("CuspData: inertia translation not found");
      orbit.omega.push_back(m_found);
    }

    // validation: the inertia image in Z/width is the subgroup of order e,
    // and omega is faithful (omega(d) = 0 only for d = 1)
    long h = x.width;
    if (h % orbit.e != 0) throw std::runtime_error("CuspData: inertia order does not divide width");
    long step = h / orbit.e;
    bool has_generator = orbit.e == 1;
    for (size_t k = 0; k < orbit.omega.size(); ++k) {
      if (orbit.omega[k] % step != 0) throw std::runtime_error("CuspData: inertia not in subgroup");
      if (orbit.omega[k] == 0 && orbit.stab[k] != 1)
        throw std::runtime_error("CuspData: inertia character not faithful");
      if (orbit.e > 1 && gcd_long(orbit.omega[k] / step, orbit.e) == 1) has_generator = true;
    }
    if (!has_generator) throw std::runtime_error("CuspData: inertia not cyclic");
    orbits_.push_back(std::move(orbit));
  }
}

long CuspData::euler_characteristic_slice(const std::vector<long>& orbit_coeffs,
                                          const DirichletChar& eps_in) const {
  if (orbit_coeffs.size() != orbits_.size())
    throw std::domain_error("euler_characteristic_slice: coefficient count mismatch");
  DirichletChar eps = eps_in.modulus() == N_ ? eps_in : eps_in.extended(N_);
  if (!eps.is_even())
    throw std::domain_error("euler_characteristic_slice: even character required");
  long card = euler_phi(N_) / 2;  // |G_eff|

  // identity term: deg D + 1 - genus
  long deg = 0;
  for (size_t i = 0; i < orbits_.size(); ++i)
    deg += orbit_coeffs[i] * static_cast<long>(orbits_[i].members.size());
  CycloElem total = CycloElem(Rational(deg + 1 - genus_x1()), 1);

  // Atiyah-Bott terms over nontrivial diamonds: fixed points are the cusps
  // whose stabilizer contains d (4 | N levels have no interior fixed points).
  for (size_t oi = 0; oi < orbits_.size(); ++oi) {
    const CuspOrbit& orbit = orbits_[oi];
    if (orbit.e == 1) continue;
    const CuspClass& x = cusps_[orbit.members.front()];
    long h = x.width;
    long a = orbit_coeffs[oi];
    for (size_t k = 0; k < orbit.stab.size(); ++k) {
      long d = orbit.stab[k];
      if (d == 1) continue;
      CycloElem omega = CycloElem::root_of_unity(h, orbit.omega[k]);
      CycloElem term = CycloElem::root_of_unity(h, mod_pos(-a * orbit.omega[k], h)) *
                       (CycloElem::one(h) - omega).inverse();
      CycloElem epsbar = eps.eval(inv_mod(d, N_));
      total += CycloElem(Rational(static_cast<long>(orbit.members.size())), 1) * epsbar * term;
    }
  }
  CycloElem avg = (CycloElem(Rational(1, card), 1) * total).minimized();
  if (!avg.is_rational() || !avg.to_rational().is_integer())
    throw std::runtime_error("euler_characteristic_slice: non-integral character average");
  return static_cast<long>(avg.to_rational().num().get_si());
}

long CuspData::genus_x1() const { return genus_gamma1(N_); }
long CuspData::genus_x0() const { return genus_gamma0(N_); }

const CuspData& cusp_data(long N) {
  static std::map<long, CuspData> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  return cache.emplace(N, CuspData(N)).first->second;
}

long num_cusps_gamma1(long N) {
  if (N < 5) throw std::domain_error("num_cusps_gamma1: N >= 5 supported");
  long s = 0;
  for (long d = 1; d <= N; ++d)
    if (N % d == 0) s += euler_phi(d) * euler_phi(N / d);
  return s / 2;
}

long num_cusps_gamma0(long N) {
  long s = 0;
  for (long d = 1; d <= N; ++d)
    if (N % d == 0) s += euler_phi(gcd_long(d, N / d));
  return s;
}

long genus_gamma1(long N) {
  if (N < 5) return 0;
  long ipsl = gamma1_index(N) / 2;
  // no elliptic points for N >= 5: 12(g - 1) = ipsl - 6 c
  long twelve_g = 12 + ipsl - 6 * num_cusps_gamma1(N);
  if (twelve_g % 12 != 0) throw std::runtime_error("genus_gamma1: nonintegral formula");
  return twelve_g / 12;
}

long genus_gamma0(long N) {
  if (N == 1) return 0;
  long mu = gamma0_index(N);
  long nu2 = 1, nu3 = 1;
  for (auto [p, e] : factor_long(N)) {
    (void)e;
    nu2 *= 1 + kronecker_symbol(-4, p);
    nu3 *= 1 + kronecker_symbol(-3, p);
  }
  if (N % 4 == 0) nu2 = 0;
  if (N % 9 == 0) nu3 = 0;
  long nu_inf = num_cusps_gamma0(N);
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 nu_inf
  long twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * nu_inf;
  if (twelve_g % 12 != 0) throw std::runtime_error("genus_gamma0: nonintegral formula");
  return twelve_g / 12;
}

}  // namespace shq
