#include "shq/poly.hpp"

#include <sstream>

namespace shq {

Poly::Poly(long order, std::vector<CycloElem> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_)
    if (c.order() != order_) c = c.promoted(order_);
  trim();
}

Poly Poly::constant(const CycloElem& c) {
  Poly p(c.order());
  if (!c.is_zero()) p.coeffs_ = {c};
  return p;
}

Poly Poly::from_rationals(const std::vector<Rational>& coeffs) {
  std::vector<CycloElem> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.emplace_back(c, 1);
  return Poly(1, std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

CycloElem Poly::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(coeffs_.size())) return CycloElem::zero(order_);
  return coeffs_[i];
}

CycloElem Poly::leading() const {
  if (is_zero()) return CycloElem::zero(order_);
  return coeffs_.back();
}

bool Poly::is_rational() const {
  for (const auto& c : coeffs_)
    if (!c.is_rational()) return false;
  return true;
}

std::vector<Rational> Poly::rational_coeffs() const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.to_rational());
  return out;
}

Poly Poly::promoted(long M) const {
  std::vector<CycloElem> v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) v.push_back(c.promoted(M));
  return Poly(M, std::move(v));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  long M = lcm_long(a.order_, b.order_);
  Poly r(M);
  r.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), CycloElem::zero(M));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  long M = lcm_long(a.order_, b.order_);
  if (a.is_zero() || b.is_zero()) return Poly(M);
  Poly r(M);
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, CycloElem::zero(M));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

Poly operator*(const CycloElem& c, const Poly& a) { return Poly::constant(c) * a; }

bool operator==(const Poly& a, const Poly& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  return true;
}

CycloElem Poly::eval(const CycloElem& x) const {
  CycloElem r = CycloElem::zero(order_);
  for (long i = degree(); i >= 0; --i) r = r * x + coeffs_[i];
  return r;
}

Poly Poly::derivative() const {
  Poly r(order_);
  if (degree() < 1) return r;
  r.coeffs_.resize(coeffs_.size() - 1, CycloElem::zero(order_));
  for (size_t i = 1; i < coeffs_.size(); ++i)
    r.coeffs_[i - 1] = CycloElem(Rational(static_cast<long>(i)), 1) * coeffs_[i];
  r.trim();
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return leading().inverse() * *this;
}

Poly Poly::reversed() const {
  Poly r = *this;
  std::reverse(r.coeffs_.begin(), r.coeffs_.end());
  r.trim();
  return r;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[i].str() << ")";
    if (i == 1) os << "*T";
    if (i > 1) os << "*T^" << i;
    first = false;
  }
  return os.str();
}

void poly_divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::domain_error("poly_divrem: division by zero polynomial");
  long M = lcm_long(a.order(), b.order());
  Poly aa = a.promoted(M), bb = b.promoted(M);
  q = Poly(M);
  r = aa;
  if (r.degree() < bb.degree()) return;
  CycloElem lead_inv = bb.leading().inverse();
  std::vector<CycloElem> qc(r.degree() - bb.degree() + 1, CycloElem::zero(M));
  std::vector<CycloElem> rc = r.coeffs();
  for (long k = static_cast<long>(qc.size()) - 1; k >= 0; --k) {
    long top = k + bb.degree();
    if (top >= static_cast<long>(rc.size()) || rc[top].is_zero()) continue;
    CycloElem c = rc[top] * lead_inv;
    qc[k] = c;
    for (long i = 0; i <= bb.degree(); ++i) rc[k + i] -= c * bb.coeff(i);
  }
  q = Poly(M, std::move(qc));
  r = Poly(M, std::move(rc));
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divrem(a, b, q, r);
  if (!r.is_zero()) throw std::domain_error("poly_div_exact: nonzero remainder");
  return q;
}

bool poly_divides(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero();
  Poly q, r;
  poly_divrem(b, a, q, r);
  return r.is_zero();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  long M = lcm_long(a.order(), b.order());
  Poly r0 = a.promoted(M), r1 = b.promoted(M);
  while (!r1.is_zero()) {
    Poly q, r;
    poly_divrem(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  if (r0.is_zero()) return r0;
  return r0.monic();
}

Poly squarefree_part(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
  Poly g = poly_gcd(f, f.derivative());
  Poly s = g.is_zero() ? f : poly_div_exact(f, g);
  // Normalization: constant term 1 when f has it (Fredholm convention), else monic.
  if (f.coeff(0) == CycloElem::one(f.order())) return s.coeff(0).inverse() * s;
  return s.monic();
}

}  // namespace shq
