#pragma once

#include "shq/cusps.hpp"

namespace shq {

// Closed-form dimensions (no basis construction anywhere in this header).

// dim S_k / M_k (Gamma0(N) with character eps mod N), integral weight k >= 2.
long dim_integral(long k, long N, const DirichletChar& eps, bool cuspidal);

// dim of the weight-k2/2 classical space at level N (4 | N), nebentypus eps,
// via Riemann-Roch on the theta divisor plus the weight-1/2 dual term.
long dim_half_integral(long k2, long N, const DirichletChar& eps, bool cuspidal);

// Same Riemann-Roch engine for integral weight at 4 | N (model f = F theta^{2k}).
// Independent of dim_integral; used to cross-validate the cusp machinery.
long dim_integral_rr(long k, long N, const DirichletChar& eps, bool cuspidal);

// Serre-Stark: dimension of the weight-1/2 space (cuspidal: psi nontrivial only).
long dim_weight_half(long N, const DirichletChar& eps, bool cuspidal);
// The weight-1/2 basis data: theta_{psi,t} with psi even primitive mod r, 4 r^2 t | N.
struct ThetaSeriesTag {
  DirichletChar psi;
  long t;
};
std::vector<ThetaSeriesTag> weight_half_basis_tags(long N, const DirichletChar& eps,
                                                   bool cuspidal);
// Weight-3/2 unary thetas in a slice (psi odd primitive): lower-bound witnesses.
std::vector<ThetaSeriesTag> weight_three_half_theta_tags(long N, const DirichletChar& eps);

// Explicit Eisenstein basis of E_k(N, eps) (k >= 1): tags (chi, psi, t) meaning
// V_t E_k^{chi,psi}, with (chi,psi,t) = (1,1,t) at k = 2 meaning E_2 - t V_t E_2.
struct EisTag {
  DirichletChar chi, psi;  // primitive
  long t;
};
std::vector<EisTag> eisenstein_basis_tags(long k, long N, const DirichletChar& eps);
long dim_eisenstein(long k, long N, const DirichletChar& eps);
// T_ell eigenvalue (ell coprime to the ambient level) of V_t E_k^{chi,psi}.
CycloElem eis_tag_eigenvalue(const EisTag& tag, long k, long ell);

// Spec surface: weight_num = k2 (weight k2/2; even k2 = integral weight k2/2).
// Rejects k2 <= 2 (weight <= 1) and odd k2 = 1.
long dimension_oracle(long k2, long N, const DirichletChar& eps, bool cuspidal);

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace shq
