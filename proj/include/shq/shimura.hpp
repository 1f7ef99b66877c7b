#pragma once

#include "shq/hecke.hpp"

namespace shq {

// Coefficient-formula lift of a half-integral eigenform of weight k2/2
// (lambda = (k2-1)/2, nebentypus eps): A_n = sum_{d|n} psi(d) d^{lambda-1} a_{t (n/d)^2}
// normalized by a_t, with psi the primitive character of eps (-1/.)^lambda (t/.).
// The t = 1 instance requires a_1(F) != 0.
QSeries lift_coefficients(const QSeries& F, const DirichletChar& eps, long lambda, long prec,
                          long t = 1);

// Multiplicativity and the ell-power recursion, re-checked as theorems on an
// arbitrary q-expansion (A_1 = 1 expected): returns the first failing index or
// -1. psi_sq is the square of the primitive formula character, taken mod its
// conductor (so it vanishes at the ramified primes). Primes in power_rule
// follow A_{l^{r+1}} = A_l A_{l^r} (p-stabilized primes).
long verify_lift_recursion(const QSeries& A, const DirichletChar& psi_sq, long lambda,
                           long bound, const std::vector<long>& power_rule = {});

// Roots of X^2 - A_p X + psi~^2(p) p^{2 lambda - 1}: the p-stabilization
// eigenvalue candidates attached to a good-prime eigenvalue A_p.
std::vector<CycloElem> stabilization_roots(const CycloElem& a_p, const DirichletChar& eps_full,
                                           long lambda, long p);
// Replace the T(p^2) eigenvalue by the chosen U(p^2) stabilization root.
EigenSystem p_stabilize(const EigenSystem& sys, long p, const CycloElem& alpha);

struct LiftRecord {
  EigenSystem source;
  EigenSystem target;
  QSeries target_qexp;  // normalized A_1 = 1
  bool membership = false;
  bool eigen_match = false;
  bool recursion = false;
  bool cuspidal_target = false;
  long failing_exponent = -1;  // when membership fails
};

// Eigenvalue-driven lift: target coefficients from the source Hecke eigenvalues
// (T at good primes; U at bad primes, de-stabilized away from p when the
// recursion character does not vanish), membership checked in target_space.
LiftRecord lift_from_eigensystem(const EigenSystem& src, const DirichletChar& src_nebentypus,
                                 const ModularFormSpace& target_space, long prec);

// The map Sh on classical points: weight (lambda, j) -> (2 lambda, 2j), tame
// character squared, eigenvalues relabeled T(l^2) -> T(l), U(l^2) -> U(l).
EigenSystem sh_on_points(const EigenSystem& src);

// The relabeling on operator labels.
std::string sh_relabel(const std::string& op_label);

}  // namespace shq
