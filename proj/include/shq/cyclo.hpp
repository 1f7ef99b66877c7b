#pragma once

#include "shq/rational.hpp"

#include <vector>

namespace shq {

// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
std::vector<Int> cyclotomic_polynomial(long m);

// Element of Q(zeta_m) in the power basis 1, z, ..., z^{phi(m)-1} mod Phi_m.
// Arithmetic between elements of different orders promotes both to the lcm.
class CycloElem {
 public:
  CycloElem() : order_(1), coords_(1, Rational(0)) {}
  explicit CycloElem(const Rational& x, long order = 1);
  CycloElem(long order, std::vector<Rational> coords);

  static CycloElem zero(long order = 1) { return CycloElem(Rational(0), order); }
  static CycloElem one(long order = 1) { return CycloElem(Rational(1), order); }
  // zeta_m^k
  static CycloElem root_of_unity(long m, long k);

  long order() const { return order_; }
  long degree() const { return static_cast<long>(coords_.size()); }  // phi(order)
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational to_rational() const;  // throws if not rational

  // Rewrite in Q(zeta_M) for order_ | M.
  CycloElem promoted(long M) const;
  // Smallest cyclotomic subfield containing the element (order shrinks when possible).
  CycloElem minimized() const;

  CycloElem operator-() const;
  CycloElem& operator+=(const CycloElem& o);
  CycloElem& operator-=(const CycloElem& o);
  CycloElem& operator*=(const CycloElem& o);
  CycloElem& operator/=(const CycloElem& o);

  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(CycloElem a, const CycloElem& b) { return a *= b; }
  friend CycloElem operator/(CycloElem a, const CycloElem& b) { return a /= b; }
  friend bool operator==(const CycloElem& a, const CycloElem& b);
  friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

  CycloElem inverse() const;
  // Galois action zeta -> zeta^a, gcd(a, order) = 1.
  CycloElem galois(long a) const;
  CycloElem conj() const { return galois(order_ - 1); }

  std::string str() const;

 private:
  long order_;
  std::vector<Rational> coords_;
  void reduce_tail(std::vector<Rational>& c) const;  // reduce degree >= phi coords mod Phi_m
};

inline CycloElem operator*(const Rational& a, CycloElem b) { return b *= CycloElem(a); }

}  // namespace shq

namespace Eigen {
template <>
struct NumTraits<shq::CycloElem> {
  using Real = shq::CycloElem;
  using NonInteger = shq::CycloElem;
  using Nested = shq::CycloElem;
  using Literal = shq::CycloElem;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 20,
    MulCost = 40
  };
  static inline shq::CycloElem epsilon() { return shq::CycloElem(); }
  static inline shq::CycloElem dummy_precision() { return shq::CycloElem(); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
