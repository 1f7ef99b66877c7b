#pragma once

#include "shq/dims.hpp"
#include "shq/linalg.hpp"
#include "shq/qseries.hpp"

#include <variant>

namespace shq {

struct SpanDeficiencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OracleMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A regenerable generator: exact q-expansion at any requested precision.
struct GenRecipe {
  enum Kind { kEis, kEis2, kProduct } kind = kEis;
  // kEis: V_t E_k^{chi,psi}; kEis2: E_2 - t V_t E_2; kProduct: parts multiply.
  DirichletChar chi, psi;
  long k = 0;
  long t = 1;
  std::vector<GenRecipe> parts;

  QSeries materialize(long prec) const;
  std::string describe() const;
};

// A modular form space realized as a coordinate lattice of q-expansions to a
// Sturm-rigorous precision, with an echelonized (pivots increasing) basis.
class ModularFormSpace {
 public:
  long weight_num = 0;  // k2; weight = k2/2 (even k2: integral weight k2/2)
  long level = 0;
  DirichletChar character;  // mod level
  bool cuspidal = true;
  long prec = 0;
  long field_order = 1;
  std::vector<QSeries> basis;  // reduced echelon by leading exponent
  std::vector<long> pivots;

  // regeneration data: basis = coord * generators (row i of coord gives basis[i]),
  // divided by theta for half-integral spaces
  std::vector<GenRecipe> generators;
  MatC coord;
  bool divide_by_theta = false;

  long dim() const { return static_cast<long>(basis.size()); }
  bool is_integral_weight() const { return weight_num % 2 == 0; }

  // exact basis q-expansions at a (possibly higher) precision
  std::vector<QSeries> basis_at(long prec_target) const;

  // coordinates of f in the echelon basis, or NotMember with the offending exponent
  struct Coordinates {
    bool member = false;
    long failing_exponent = -1;
    VecC coords;
  };
  Coordinates coordinates(const QSeries& f) const;

  std::string cache_key() const;
};

// Integral weight k >= 2 builder (Eisenstein products; cusp cut via the
// Eisenstein-eigenvalue polynomial of a Hecke probe).
ModularFormSpace build_integral_space(long k, long M, const DirichletChar& eps, bool cuspidal,
                                      long prec = -1);

// Half-integral weight k2/2 (odd k2 >= 3) at level 4 | M4, theta-quotient model:
// F = g/theta with g in the shifted integral space, holomorphy at all cusps
// imposed through the auxiliary pair condition g theta_odd = theta h.
ModularFormSpace build_half_integral_space(long k2, long M4, const DirichletChar& eps,
                                           long prec = -1, bool cuspidal = true);

// Uniform entry point keyed by weight_num.
ModularFormSpace build_space(long k2, long M, const DirichletChar& eps, bool cuspidal,
                             long prec = -1);

}  // namespace shq
