#include "shq/dims.hpp"

#include "shq/qseries.hpp"

namespace shq {

namespace {

long lambda_factor(long r, long s, long p) {
  if (2 * s <= r) {
    if (r % 2 == 0) {
      long ph = 1;
      for (long i = 0; i < r / 2 - 1; ++i) ph *= p;
      return ph * p + ph;  // p^{r/2} + p^{r/2 - 1}
    }
    long ph = 1;
    for (long i = 0; i < (r - 1) / 2; ++i) ph *= p;
    return 2 * ph;
  }
  long ph = 1;
  for (long i = 0; i < r - s; ++i) ph *= p;
  return 2 * ph;
}

// sum of eps(x) over solutions of x^2 + bx + c = 0 mod N; must come out rational.
Rational char_sum_roots(const DirichletChar& eps, long N, long b, long c) {
  CycloElem s = CycloElem::zero(1);
  for (long x = 0; x < N; ++x) {
    if (((x * x + b * x + c) % N + N) % N == 0) s += eps.eval(x);
  }
  CycloElem m = s.minimized();
  if (!m.is_rational())
    throw OracleError("dimension formula: elliptic character sum not rational");
  return m.to_rational();
}

}  // namespace

long dim_integral(long k, long N, const DirichletChar& eps_in, bool cuspidal) {
  if (k < 2) throw OracleError("dim_integral: weight >= 2 required");
  DirichletChar eps = eps_in.modulus() == N ? eps_in : eps_in.extended(N);
  bool even_char = eps.is_even();
  if (even_char != (k % 2 == 0)) return 0;  // parity forces the zero space

  long cond = eps.conductor();
  Rational dim = Rational(Int(k - 1) * gamma0_index(N), Int(12));
  long nu = 1;
  for (auto [p, e] : factor_long(N)) nu *= lambda_factor(e, padic_valuation_int(Int(cond), p), p);
  dim -= Rational(Int(nu), Int(2));

  Rational g4(0), g3(0);
  if (k % 4 == 2)
    g4 = Rational(Int(-1), Int(4));
  else if (k % 4 == 0)
    g4 = Rational(Int(1), Int(4));
  if (k % 3 == 2)
    g3 = Rational(Int(-1), Int(3));
  else if (k % 3 == 0)
    g3 = Rational(Int(1), Int(3));
  if (!g4.is_zero()) dim += g4 * char_sum_roots(eps, N, 0, 1);    // x^2 = -1
  if (!g3.is_zero()) dim += g3 * char_sum_roots(eps, N, 1, 1);    // x^2 + x + 1 = 0
  if (k == 2 && eps.is_trivial()) dim += Rational(1);
  if (!dim.is_integer())
    throw OracleError("dim_integral: formula did not produce an integer");
  long dS = static_cast<long>(dim.num().get_si());
  if (dS < 0) dS = 0;
  if (cuspidal) return dS;
  return dS + dim_eisenstein(k, N, eps);
}

std::vector<EisTag> eisenstein_basis_tags(long k, long N, const DirichletChar& eps_in) {
  if (k < 1) throw OracleError("eisenstein_basis_tags: k >= 1 required");
  DirichletChar eps = eps_in.modulus() == N ? eps_in : eps_in.extended(N);
  std::vector<EisTag> out;
  if (eps.is_even() != (k % 2 == 0)) return out;
  for (long u = 1; u <= N; ++u) {
    if (N % u != 0) continue;
    for (auto& chi : primitive_characters(u)) {
      for (long v = 1; u * v <= N; ++v) {
        if (N % (u * v) != 0) continue;
        for (auto& psi : primitive_characters(v)) {
          if (!(char_product(chi, psi).extended(N) == eps)) continue;
          long t_max = N / (u * v);
          for (long t = 1; t <= t_max; ++t) {
            if (t_max % t != 0) continue;
            if (k == 1) {
              // E_1^{chi,psi} = E_1^{psi,chi}: count unordered pairs once
              if (u > v) continue;
              if (u == v && chi.label() > psi.label()) continue;
            }
            if (k == 2 && u == 1 && v == 1 && t == 1) continue;  // E_2 itself not modular
            out.push_back({chi, psi, t});
          }
        }
      }
    }
  }
  return out;
}

long dim_eisenstein(long k, long N, const DirichletChar& eps) {
  return static_cast<long>(eisenstein_basis_tags(k, N, eps).size());
}

CycloElem eis_tag_eigenvalue(const EisTag& tag, long k, long ell) {
  Rational lp(1);
  for (long i = 0; i < k - 1; ++i) lp *= Rational(ell);
  return tag.chi.eval(ell) + CycloElem(lp, 1) * tag.psi.eval(ell);
}

namespace {

// Divisor-coefficient function per cusp for the half-integral model:
// cusp forms:    floor(k2 sigma) - [sigma integral]
// full space:    floor(k2 sigma)
long half_div_coeff(const CuspClass& x, long k2, bool cuspidal) {
  // floor(k2 * sigma)
  Rational ks = Rational(k2) * x.sigma;
  Int fl = Int(ks.num() / ks.den());
  if (ks.num() < 0 && ks.num() % ks.den() != 0) fl -= 1;
  long a = static_cast<long>(fl.get_si());
  if (cuspidal && x.integral_sigma) a -= 1;
  return a;
}

}  // namespace

long dim_weight_half(long N, const DirichletChar& eps, bool cuspidal) {
  return static_cast<long>(weight_half_basis_tags(N, eps, cuspidal).size());
}

std::vector<ThetaSeriesTag> weight_half_basis_tags(long N, const DirichletChar& eps_in,
                                                   bool cuspidal) {
  if (N % 4 != 0) throw OracleError("weight_half_basis_tags: 4 | N required");
  DirichletChar eps = eps_in.modulus() == N ? eps_in : eps_in.extended(N);
  std::vector<ThetaSeriesTag> out;
  for (long r = 1; 4 * r * r <= N; ++r) {
    if (N % (4 * r * r) != 0) continue;
    for (auto& psi : primitive_characters(r)) {
      if (!psi.is_even()) continue;
      if (cuspidal && psi.is_trivial()) continue;
      long t_max = N / (4 * r * r);
      for (long t = 1; t <= t_max; ++t) {
        if (t_max % t != 0) continue;
        // nebentypus of theta_{psi,t} is psi * (4t/.)
        DirichletChar neb = char_product(psi, DirichletChar::quadratic(4 * t));
        if (neb.extended(N) == eps) out.push_back({psi, t});
      }
    }
  }
  return out;
}

std::vector<ThetaSeriesTag> weight_three_half_theta_tags(long N, const DirichletChar& eps_in) {
  if (N % 4 != 0) throw OracleError("weight_three_half_theta_tags: 4 | N required");
  DirichletChar eps = eps_in.modulus() == N ? eps_in : eps_in.extended(N);
  DirichletChar chi_m1 = DirichletChar::quadratic(-4);
  std::vector<ThetaSeriesTag> out;
  for (long r = 1; 4 * r * r <= N; ++r) {
    if (N % (4 * r * r) != 0) continue;
    for (auto& psi : primitive_characters(r)) {
      if (psi.is_even()) continue;
      long t_max = N / (4 * r * r);
      for (long t = 1; t <= t_max; ++t) {
        if (t_max % t != 0) continue;
        DirichletChar neb =
            char_product(char_product(psi, chi_m1), DirichletChar::quadratic(4 * t));
        if (neb.extended(N) == eps) out.push_back({psi, t});
      }
    }
  }
  return out;
}

long dim_half_integral(long k2, long N, const DirichletChar& eps_in, bool cuspidal) {
  if (k2 < 3 || k2 % 2 == 0) throw OracleError("dim_half_integral: odd k2 >= 3 required");
  if (N % 4 != 0) throw OracleError("dim_half_integral: 4 | N required");
  DirichletChar eps = eps_in.modulus() == N ? eps_in : eps_in.extended(N);
  if (!eps.is_even()) return 0;  // odd nebentypus: empty space

  if (N == 4) {
    // X_1(4) = X_0(4), genus 0, trivial diamond group; cusps infty, 0 (sigma = 0)
    // and 1/2 with sigma = 1/4 (the quarter coefficient of the theta divisor).
    Rational ks = Rational(k2) * Rational(Int(1), Int(4));
    long a_half = static_cast<long>(Int(ks.num() / ks.den()).get_si());
    long chi = a_half + 2 * (cuspidal ? -1 : 0) + 1;
    long h1 = 0;
    if (k2 == 3) h1 = dim_weight_half(N, char_inverse(eps), !cuspidal);
    long dim = chi + h1;
    if (dim < 0) throw OracleError("dim_half_integral: level-4 h^1 model violated");
    return dim;
  }

  const CuspData& cd = cusp_data(N);
  std::vector<long> coeffs;
  coeffs.reserve(cd.orbits().size());
  for (const auto& orbit : cd.orbits())
    coeffs.push_back(half_div_coeff(cd.cusps()[orbit.members.front()], k2, cuspidal));
  long chi = cd.euler_characteristic_slice(coeffs, eps);
  // Dual term: for k2 = 3 Serre duality pairs the space with weight-1/2 forms
  // (their forced vanishing at the fractional cusps is automatic); for k2 >= 5
  // the dual weight is negative and h^1 = 0.
  long h1 = 0;
  if (k2 == 3) h1 = dim_weight_half(N, char_inverse(eps), !cuspidal);
  long dim = chi + h1;
  if (dim < 0) throw OracleError("dim_half_integral: negative dimension (h^1 model violated)");
  return dim;
}

long dim_integral_rr(long k, long N, const DirichletChar& eps_in, bool cuspidal) {
  if (k < 2) throw OracleError("dim_integral_rr: weight >= 2 required");
  if (N % 4 != 0) throw OracleError("dim_integral_rr: 4 | N required");
  DirichletChar eps = eps_in.modulus() == N ? eps_in : eps_in.extended(N);
  if (eps.is_even() != (k % 2 == 0)) return 0;
  // model: f = F theta^{2k}, F a function with div(F) >= -2k Sigma (+ cusp vanishing);
  // the function slice is eps * chi_{-1}^k (even whenever the parity is consistent)
  DirichletChar slice = k % 2 == 0 ? eps : char_product(eps, DirichletChar::quadratic(-4));
  const CuspData& cd = cusp_data(N);
  std::vector<long> coeffs;
  for (const auto& orbit : cd.orbits()) {
    const CuspClass& x = cd.cusps()[orbit.members.front()];
    Rational ks = Rational(2 * k) * x.sigma;
    long a = static_cast<long>(Int(ks.num() / ks.den()).get_si());  // sigma >= 0
    if (cuspidal) a -= 1;
    coeffs.push_back(a);
  }
  long chi = cd.euler_characteristic_slice(coeffs, slice);
  long h1 = (k == 2 && cuspidal && eps.is_trivial()) ? 1 : 0;
  long dim = chi + h1;
  if (dim < 0) throw OracleError("dim_integral_rr: negative dimension (h^1 model violated)");
  return dim;
}

long dimension_oracle(long k2, long N, const DirichletChar& eps, bool cuspidal) {
  if (k2 % 2 == 0) {
    long k = k2 / 2;
    if (k < 2) throw OracleError("dimension_oracle: weight-1 integral spaces rejected");
    return dim_integral(k, N, eps, cuspidal);
  }
  if (k2 < 3) throw OracleError("dimension_oracle: weight-1/2 spaces rejected");
  return dim_half_integral(k2, N, eps, cuspidal);
}

}  // namespace shq
