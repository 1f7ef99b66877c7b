#pragma once

#include "shq/poly.hpp"

namespace shq {

// Irreducible factorization over Q. Factors are primitive integer polynomials
// with positive leading coefficient; f = unit * prod factor^mult.
struct QFactor {
  Poly factor;  // order 1
  long multiplicity;
};
std::vector<QFactor> factor_rational(const Poly& f);

// Irreducible factorization over Q(zeta_m) (Trager norm descent through the
// rational factorization). Factors are monic.
struct CFactor {
  Poly factor;
  long multiplicity;
};
std::vector<CFactor> factor_cyclo(const Poly& f);

}  // namespace shq
