#pragma once

#include "shq/factor.hpp"
#include "shq/newton.hpp"
#include "shq/spaces.hpp"

namespace shq {

struct NotMemberError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact matrix of an operator in the echelon bases: row i holds the target
// coordinates of the image of source basis vector i.
struct HeckeMatrix {
  std::string label;
  MatC matrix;
  std::string source_key, target_key;
  bool endo() const { return source_key == target_key; }
};

HeckeMatrix t_ell_integral(const ModularFormSpace& space, long ell);
HeckeMatrix u_ell_integral(const ModularFormSpace& space, long ell);
HeckeMatrix t_ellsq_half(const ModularFormSpace& space, long ell);
HeckeMatrix u_ellsq_half(const ModularFormSpace& space, long ell);

enum class DiamondPart { kFull, kTame, kPPart };
// <d> on a fixed-nebentypus space is the scalar eps(d') with d' the CRT
// representative of the requested part; N and p factor the level as 4Np (or
// 2Np on the integral side).
HeckeMatrix diamond(const ModularFormSpace& space, long d, DiamondPart part, long N, long p);

// U_p between half-integral slices: source at tau^{j+(p-1)/2} twist, target at
// tau^j; the target nebentypus must be the (p/.)-twist of the source.
HeckeMatrix up_half(const ModularFormSpace& source, const ModularFormSpace& target, long p);

// det(1 - M T) (fredholm) or det(T - M).
Poly hecke_charpoly(const HeckeMatrix& op, bool fredholm);

// A classical point: weight point, tame character, eigenvalue map, slope.
struct EigenSystem {
  long lambda = 0;
  long j = 0;
  long p = 0;
  DirichletChar tame;
  bool half_side = true;
  std::string distinguished;             // label of the U operator fixing the slope

  Poly combo_minpoly;                    // irreducible over the coefficient field
  std::map<std::string, Poly> op_value;  // operator -> polynomial in the combo root
  long multiplicity = 1;

  bool slope_pure = true;
  Rational slope;                        // v_p of the distinguished U eigenvalue
  std::map<Rational, long> slope_multiset;  // restriction-of-scalars polygon slopes

  bool rational() const { return combo_minpoly.degree() == 1; }
  // exact eigenvalue when the system is defined over the coefficient field
  CycloElem eigenvalue(const std::string& op) const;
  // minimal polynomial of the eigenvalue of `op` over the coefficient field
  Poly eigen_minpoly(const std::string& op) const;
};

// Recompute the slope fields from the distinguished eigenvalue (restriction of
// scalars Newton polygon when the value is irrational).
void attach_slope(EigenSystem& sys);

// Eigenvalue of a series-level operator on an explicit eigenform: op(f) = c f
// verified coefficient-for-coefficient below check_bound (throws otherwise).
CycloElem eigenvalue_on_series(const QSeries& f, const QSeries& image, long check_bound);

// Simultaneous eigen-systems of commuting operators, split along irreducible
// factors of a seeded random combination; systems with zero distinguished
// eigenvalue are dropped (phi-finiteness).
std::vector<EigenSystem> eigensystems(const ModularFormSpace& space,
                                      const std::vector<HeckeMatrix>& ops,
                                      const std::string& distinguished_label, long p,
                                      unsigned long seed);

}  // namespace shq
