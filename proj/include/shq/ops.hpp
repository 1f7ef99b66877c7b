#pragma once

#include "shq/qseries.hpp"

namespace shq {

// Coefficient-level Hecke actions on q-expansions. Output precision shrinks by
// the index scaling of the operator; callers supply enough input precision.

// Integral weight k, character eps: a_n -> a_{ln} + eps(l) l^{k-1} a_{n/l}.
QSeries act_t_ell_integral(const QSeries& f, long ell, long k, const DirichletChar& eps);
// a_n -> a_{ln}
QSeries act_u_ell(const QSeries& f, long ell);

// Half-integral weight k2/2, lambda = (k2-1)/2, nebentypus eps:
// b_n = a_{l^2 n} + eps(l) (-1/l)^lambda (n/l) l^{lambda-1} a_n + eps(l^2) l^{2 lambda - 1} a_{n/l^2}.
QSeries act_t_ellsq_half(const QSeries& f, long ell, long k2, const DirichletChar& eps);

}  // namespace shq
