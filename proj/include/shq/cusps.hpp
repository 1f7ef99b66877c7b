#pragma once

#include "shq/dirichlet.hpp"

#include <map>

namespace shq {

// A cusp class of Gamma1(N), N > 4: pairs (a : c) modulo
// (a, c) ~ +-(a + j c, c) mod N. Carries the theta-divisor data.
struct CuspClass {
  long a = 1, c = 0;     // canonical coprime representative, 1 <= c <= N
  long width = 1;        // N / gcd(N, c)
  Rational sigma;        // theta-divisor coefficient: width/4 when c = 2 mod 4, else 0
  bool integral_sigma = true;  // whether sigma is an integer (membership in C)
};

// Orbit of the diamond action on cusp classes with inertia data. The local
// parameter at a fixed cusp of width h transforms as t -> zeta_h^{omega(d)} t
// under <d>; omega is constant along the orbit.
struct CuspOrbit {
  std::vector<long> members;    // indices into the cusp list
  long e = 1;                   // inertia order (common stabilizer size)
  std::vector<long> stab;      // stabilizing unit classes d (mod N, one per +-pair)
  std::vector<long> omega;     // omega(d) in Z/width for each stabilizer element
};

class CuspData {
 public:
  explicit CuspData(long N);

  long level() const { return N_; }
  const std::vector<CuspClass>& cusps() const { return cusps_; }
  const std::vector<CuspOrbit>& orbits() const { return orbits_; }
  long genus_x1() const;
  long genus_x0() const;

  // index of the cusp class containing (a : c)
  long classify(long a, long c) const;
  // diamond action <d> on a cusp class index
  long diamond(long d, long idx) const;

  // Holomorphic Lefschetz dimension count: the eps-eigenspace of the diamond
  // action on H^0(X_1(N), O(D)) minus its H^1 term, for a diamond-invariant
  // divisor D supported on cusps (coefficients constant on orbits).
  // div_coeff(orbit) gives the coefficient a on that orbit.
  long euler_characteristic_slice(const std::vector<long>& orbit_coeffs,
                                  const DirichletChar& eps) const;

 private:
  long N_;
  std::vector<CuspClass> cusps_;
  std::vector<CuspOrbit> orbits_;
  std::map<std::pair<long, long>, long> class_of_;  // canonical key -> index
  std::pair<long, long> canonical_key(long a, long c) const;
  void build_orbits();
};

// Cached access (cusp enumeration is deterministic).
const CuspData& cusp_data(long N);

long genus_gamma0(long N);
long genus_gamma1(long N);
long num_cusps_gamma0(long N);
long num_cusps_gamma1(long N);

}  // namespace shq
