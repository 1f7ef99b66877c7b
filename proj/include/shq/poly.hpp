#pragma once

#include "shq/cyclo.hpp"

#include <optional>

namespace shq {

// Univariate polynomial over Q(zeta_m), constant term first, trimmed
// (leading coefficient nonzero unless the polynomial is zero).
class Poly {
 public:
  Poly() : order_(1) {}
  explicit Poly(long order) : order_(order) {}
  Poly(long order, std::vector<CycloElem> coeffs);
  static Poly constant(const CycloElem& c);
  static Poly from_rationals(const std::vector<Rational>& coeffs);

  long order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }  // -1 for zero poly
  const std::vector<CycloElem>& coeffs() const { return coeffs_; }
  CycloElem coeff(long i) const;
  CycloElem leading() const;

  bool is_rational() const;
  std::vector<Rational> rational_coeffs() const;  // throws if not rational
  Poly to_rational_poly() const { return from_rationals(rational_coeffs()); }

  Poly promoted(long M) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const CycloElem& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  CycloElem eval(const CycloElem& x) const;
  Poly derivative() const;
  Poly monic() const;

  // x^n * p(1/x), n = degree
  Poly reversed() const;

  std::string str() const;

 private:
  long order_;
  std::vector<CycloElem> coeffs_;
  void trim();
};

// Quotient and remainder, b nonzero.
void poly_divrem(const Poly& a, const Poly& b, Poly& q, Poly& r);
// Exact division; throws if remainder nonzero.
Poly poly_div_exact(const Poly& a, const Poly& b);
// Monic gcd (1 for coprime, 0 only if both zero).
Poly poly_gcd(const Poly& a, const Poly& b);

// f / gcd(f, f'), normalized monic, or to constant term 1 when f(0) = 1.
Poly squarefree_part(const Poly& f);

// True iff a divides b exactly.
bool poly_divides(const Poly& a, const Poly& b);

}  // namespace shq
