#pragma once

#include "shq/dirichlet.hpp"

#include <map>

namespace shq {

// Truncated q-expansion over Q(zeta_m): coefficients known for n < prec.
// Sparse storage; arithmetic tracks precision pessimistically.
class QSeries {
 public:
  QSeries() : prec_(0), order_(1) {}
  QSeries(long prec, long order) : prec_(prec), order_(order) {}

  long prec() const { return prec_; }
  long field_order() const { return order_; }
  const std::map<long, CycloElem>& terms() const { return coeffs_; }

  CycloElem coeff(long n) const;
  void set_coeff(long n, const CycloElem& c);
  bool is_zero() const { return coeffs_.empty(); }

  QSeries truncated(long prec) const;  // prec <= prec_
  QSeries promoted(long order) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const CycloElem& c, const QSeries& a);
  QSeries operator-() const;

  std::string str(long upto = 12) const;

 private:
  long prec_;
  long order_;
  std::map<long, CycloElem> coeffs_;
};

// Truncated Cauchy product, prec = min of operand precisions.
QSeries qs_mul(const QSeries& f, const QSeries& g);
// Division by a unit series (g(0) != 0), prec = min of operand precisions.
QSeries qs_div(const QSeries& f, const QSeries& g);
// Coefficient-wise equality below n < bound (bound must not exceed precisions).
bool qs_agree_below(const QSeries& f, const QSeries& g, long bound);

// Jacobi theta: sum_{n in Z} q^{n^2}.
QSeries theta(long prec);
// theta_2-type companion: sum over odd n of q^{n^2} = theta(q) - theta(q^4).
QSeries theta_odd(long prec);
// theta_psi = (1/2) sum_{n in Z} psi(n) n q^{n^2}, psi odd primitive.
QSeries theta_psi(const DirichletChar& psi, long prec);
// theta_{psi,t}(q) = theta_psi(q^t).
QSeries theta_psi_t(const DirichletChar& psi, long t, long prec);

// Two-character Eisenstein series: a_n = sum_{d|n} psi(d) chi(n/d) d^{k-1};
// constant term -B_{k,psi}/(2k) when chi is trivial mod 1, else 0.
// Parity (chi psi)(-1) = (-1)^k enforced. Characters are taken primitive.
QSeries eisenstein(const DirichletChar& chi, const DirichletChar& psi, long k, long prec);
// E_2 - t V_t E_2, the weight-2 level-t Eisenstein series (t > 1).
QSeries eisenstein2_level(long t, long prec);

// Coefficient re-indexings.
QSeries u_ell(const QSeries& f, long ell);                       // a_n -> a_{ell n}
QSeries v_ell(const QSeries& f, long ell, long prec_cap = -1);   // a_n -> coefficient at ell*n

// ceil((k2/2) [SL2(Z) : Gamma1(M)] / 12) + 1
long sturm_bound(long k2, long M);
long gamma1_index(long M);   // [SL2(Z) : Gamma1(M)]
long gamma0_index(long M);   // [SL2(Z) : Gamma0(M)]

}  // namespace shq
