#include "shq/newton.hpp"

#include "shq/factor.hpp"

namespace shq {

NewtonPolygon newton_polygon(const Poly& f, long p) {
  if (f.is_zero()) throw std::domain_error("newton_polygon: zero polynomial");
  if (!f.is_rational())
    throw std::domain_error(
        "newton_polygon: non-rational coefficients; take restrict_scalars_charpoly first");
  if (!is_prime_long(p)) throw std::domain_error("newton_polygon: p must be prime");

  std::vector<std::pair<long, Rational>> pts;
  auto rc = f.rational_coeffs();
  for (long i = 0; i < static_cast<long>(rc.size()); ++i) {
    if (rc[i].is_zero()) continue;
    pts.emplace_back(i, padic_valuation(rc[i], p).value);
  }

  // lower convex hull, left to right
  NewtonPolygon np;
  np.prime = p;
  std::vector<std::pair<long, Rational>>& hull = np.vertices;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // keep b only if it lies strictly below segment a-pt
      Rational lhs = (b.second - a.second) * Rational(pt.first - a.first);
      Rational rhs = (pt.second - a.second) * Rational(b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    Rational slope = (hull[i + 1].second - hull[i].second) / Rational(hull[i + 1].first - hull[i].first);
    np.slopes[slope] += hull[i + 1].first - hull[i].first;
  }
  return np;
}

std::map<Rational, Poly> slope_factorization(const Poly& f, long p) {
  if (f.coeff(0) != CycloElem::one(f.order()))
    throw std::domain_error("slope_factorization: constant term must be 1");
  std::map<Rational, Poly> out;
  for (auto& qf : factor_rational(f)) {
    NewtonPolygon np = newton_polygon(qf.factor, p);
    if (np.slopes.size() != 1)
      throw SlopeFactorError(
          "slope factorization does not exist over Q: irreducible factor with mixed slopes");
    Rational sigma = np.slopes.begin()->first;
    // normalize the factor to constant term 1 (possible: f(0) = 1 forces factor(0) != 0)
    Poly g = qf.factor.coeff(0).inverse() * qf.factor;
    auto it = out.find(sigma);
    Poly acc = (it == out.end()) ? Poly::constant(CycloElem::one(1)) : it->second;
    for (long i = 0; i < qf.multiplicity; ++i) acc = acc * g;
    out[sigma] = acc;
  }
  return out;
}

Poly pure_slope_factor(const Poly& f, long p, const Rational& sigma) {
  auto m = slope_factorization(f, p);
  auto it = m.find(sigma);
  if (it == m.end()) return Poly::constant(CycloElem::one(1));
  return it->second;
}

}  // namespace shq
