#pragma once

#include "shq/poly.hpp"

#include <map>

namespace shq {

// Lower convex hull of {(i, v_p(c_i))} for a rational-coefficient polynomial.
// A side of slope s with horizontal length l certifies l reciprocal-root
// valuations equal to s for Fredholm-normalized input (constant term 1).
struct NewtonPolygon {
  long prime = 0;
  std::vector<std::pair<long, Rational>> vertices;  // strictly increasing index
  std::map<Rational, long> slopes;                  // slope -> multiplicity (sorted)

  long total_multiplicity() const {
    long t = 0;
    for (auto& [s, m] : slopes) t += m;
    return t;
  }
};

// Rejects zero and non-rational input (use restrict_scalars_charpoly first).
NewtonPolygon newton_polygon(const Poly& f, long p);

// The factor of f (over Q, f(0) = 1) whose polygon is pure of slope sigma;
// the complementary factor carries no side of slope sigma. Throws
// SlopeFactorError when the slope factorization does not exist over Q
// (an irreducible factor with a broken polygon).
struct SlopeFactorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
Poly pure_slope_factor(const Poly& f, long p, const Rational& sigma);

// All pure-slope factors at once: slope -> factor, product = f.
std::map<Rational, Poly> slope_factorization(const Poly& f, long p);

}  // namespace shq
