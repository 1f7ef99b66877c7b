#pragma once

#include "shq/poly.hpp"

#include <Eigen/Core>

namespace shq {

using MatC = Eigen::Matrix<CycloElem, Eigen::Dynamic, Eigen::Dynamic>;
using VecC = Eigen::Matrix<CycloElem, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

// In-place reduced row echelon form; returns pivot column indices.
std::vector<long> rref_in_place(MatC& a);

// Basis of the right kernel (columns of the returned matrix).
MatC kernel_basis(const MatC& a);

// Solve a*x = b; empty optional if inconsistent. When the solution space is
// positive-dimensional any solution is returned.
std::optional<VecC> solve_linear(const MatC& a, const VecC& b);

// det(xI - M), exact, Hessenberg reduction over the field.
Poly charpoly(const MatC& m);

// det(1 - M T), constant term 1 (reversal of the characteristic polynomial).
Poly fredholm_poly(const MatC& m);

// Characteristic polynomial over Q of M viewed as a Q-linear map on
// K^n with K = Q(zeta_m), dim_Q = n*phi(m).
Poly restrict_scalars_charpoly(const MatC& m);

// Common field order of a matrix (lcm of entry orders).
long matrix_order(const MatC& m);
MatC promote_matrix(const MatC& m, long order);

}  // namespace shq
