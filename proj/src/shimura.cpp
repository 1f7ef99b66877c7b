#include "shq/shimura.hpp"

#include <sstream>

namespace shq {

namespace {

DirichletChar lift_formula_character(const DirichletChar& eps, long lambda, long t) {
  DirichletChar psi = eps;
  if (lambda % 2 == 1) psi = char_product(psi, DirichletChar::quadratic(-4));
  if (t > 1) psi = char_product(psi, DirichletChar::quadratic(4 * t));
  return psi.primitive();
}

Rational pow_long(long b, long e) {
  Rational r(1);
  for (long i = 0; i < e; ++i) r *= Rational(b);
  return r;
}

}  // namespace

QSeries lift_coefficients(const QSeries& F, const DirichletChar& eps, long lambda, long prec,
                          long t) {
  if (t < 1) throw std::domain_error("lift_coefficients: t >= 1 required");
  CycloElem at = F.coeff(t);
  if (at.is_zero())
    throw std::domain_error("lift_coefficients: cannot normalize, a_t vanishes (choose another squarefree t)");
  DirichletChar psi = lift_formula_character(eps, lambda, t);
  long ord = lcm_long(F.field_order(), psi.value_order());
  QSeries out(prec, ord);
  CycloElem inv = at.inverse();
  for (long n = 1; n < prec; ++n) {
    CycloElem s = CycloElem::zero(ord);
    for (long d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      CycloElem c = psi.eval(d);
      if (c.is_zero()) continue;
      long m = n / d;
      if (t * m * m >= F.prec())
        throw std::domain_error("lift_coefficients: source precision too small (need prec^2 scale)");
      CycloElem a = F.coeff(t * m * m);
      if (a.is_zero()) continue;
      s += CycloElem(pow_long(d, lambda - 1), 1) * c * a;
    }
    if (!s.is_zero()) out.set_coeff(n, s * inv);
  }
  return out;
}

long verify_lift_recursion(const QSeries& A, const DirichletChar& psi_sq, long lambda,
                           long bound, const std::vector<long>& power_rule) {
  // A_{mn} = A_m A_n for coprime m, n; A_{l^{r+1}} = A_l A_{l^r} - psi_sq(l) l^{2 lambda - 1} A_{l^{r-1}}
  for (long n = 2; n < bound; ++n) {
    auto fs = factor_long(n);
    if (fs.size() > 1) {
      long m1 = 1;
      for (int i = 0; i < fs[0].second; ++i) m1 *= fs[0].first;
      long m2 = n / m1;
      if (!(A.coeff(n) == A.coeff(m1) * A.coeff(m2))) return n;
    } else if (fs.size() == 1 && fs[0].second >= 2) {
      long ell = fs[0].first;
      long nl = n / ell, nll = n / (ell * ell);
      CycloElem want;
      if (std::find(power_rule.begin(), power_rule.end(), ell) != power_rule.end()) {
        want = A.coeff(ell) * A.coeff(nl);
      } else {
        want = A.coeff(ell) * A.coeff(nl) -
               CycloElem(pow_long(ell, 2 * lambda - 1), 1) * psi_sq.eval(ell) * A.coeff(nll);
      }
      if (!(A.coeff(n) == want)) return n;
    }
  }
  return -1;
}

std::vector<CycloElem> stabilization_roots(const CycloElem& a_p, const DirichletChar& eps_full,
                                           long lambda, long p) {
  DirichletChar psi = lift_formula_character(eps_full, lambda, 1);
  CycloElem c = char_product(psi, psi).primitive().eval(p) * CycloElem(pow_long(p, 2 * lambda - 1), 1);
  // X^2 - a_p X + c over the coefficient field
  long ord = lcm_long(a_p.order(), c.order());
  Poly quad(ord, {c.promoted(ord), -a_p.promoted(ord), CycloElem::one(ord)});
  std::vector<CycloElem> roots;
  for (auto& f : factor_cyclo(quad)) {
    if (f.factor.degree() == 1) {
      CycloElem r = -f.factor.coeff(0) / f.factor.coeff(1);
      for (long i = 0; i < f.multiplicity; ++i) roots.push_back(r);
    }
  }
  return roots;
}

EigenSystem p_stabilize(const EigenSystem& sys, long p, const CycloElem& alpha) {
  if (!sys.rational())
    throw std::domain_error("p_stabilize: rational eigen-system required");
  EigenSystem out = sys;
  std::ostringstream t_label, u_label;
  t_label << "T(" << p * p << ")";
  u_label << "U(" << p * p << ")";
  out.op_value.erase(t_label.str());
  out.op_value[u_label.str()] = Poly::constant(alpha);
  out.distinguished = u_label.str();
  out.p = p;
  attach_slope(out);
  return out;
}

std::string sh_relabel(const std::string& op_label) {
  auto open = op_label.find('(');
  auto close = op_label.find(')');
  if (open == std::string::npos || close == std::string::npos) return op_label;
  std::string head = op_label.substr(0, open);
  if (head != "T" && head != "U") return op_label;
  long n = std::stol(op_label.substr(open + 1, close - open - 1));
  long r = 1;
  while (r * r < n) ++r;
  if (r * r != n) throw std::domain_error("sh_relabel: operator index is not a square");
  std::ostringstream os;
  os << head << "(" << r << ")";
  return os.str();
}

EigenSystem sh_on_points(const EigenSystem& src) {
  if (src.op_value.count(src.distinguished) == 0 || src.op_value.at(src.distinguished).is_zero())
    throw std::domain_error("sh_on_points: phi-finite source required");
  EigenSystem out = src;
  out.half_side = false;
  out.lambda = 2 * src.lambda;
  out.j = src.p > 2 ? ((2 * src.j) % (src.p - 1)) : 0;
  out.tame = char_product(src.tame, src.tame);
  out.distinguished = sh_relabel(src.distinguished);
  out.op_value.clear();
  for (auto& [label, val] : src.op_value) out.op_value[sh_relabel(label)] = val;
  return out;
}

LiftRecord lift_from_eigensystem(const EigenSystem& src, const DirichletChar& src_nebentypus,
                                 const ModularFormSpace& target_space, long prec) {
  if (!src.rational())
    throw std::domain_error("lift_from_eigensystem: rational eigen-system required");
  long lambda = src.lambda;
  DirichletChar psi = lift_formula_character(src_nebentypus, lambda, 1);
  // the square of the primitive formula character, mod its conductor: it must
  // vanish at the ramified primes, so no re-primitivization here
  DirichletChar psi_sq = char_product(psi, psi);

  LiftRecord rec;
  rec.source = src;
  rec.target = sh_on_points(src);

  long ord = target_space.field_order;
  for (auto& [label, val] : src.op_value) ord = lcm_long(ord, val.order());
  QSeries A(prec, ord);
  A.set_coeff(1, CycloElem::one(ord));

  // prime coefficients from the eigenvalue map
  std::map<long, CycloElem> a_ell;
  std::map<long, bool> power_rule;
  for (long ell = 2; ell < prec; ++ell) {
    if (!is_prime_long(ell)) continue;
    std::ostringstream t_label, u_label;
    t_label << "T(" << ell * ell << ")";
    u_label << "U(" << ell * ell << ")";
    if (src.op_value.count(t_label.str())) {
      a_ell[ell] = src.eigenvalue(t_label.str());
      power_rule[ell] = false;
    } else if (src.op_value.count(u_label.str())) {
      CycloElem alpha = src.eigenvalue(u_label.str());
      CycloElem chi2 = psi_sq.eval(ell);
      if (ell != src.p && !chi2.is_zero() && !alpha.is_zero()) {
        // the U eigenvalue is a stabilization of a T eigenvalue prime to the
        // recursion character: recover A_l = alpha + psi~^2(l) l^{2 lambda-1} / alpha
        a_ell[ell] = alpha + chi2 * CycloElem(pow_long(ell, 2 * lambda - 1), 1) * alpha.inverse();
        power_rule[ell] = false;
      } else {
        a_ell[ell] = alpha;
        power_rule[ell] = true;
      }
    } else {
      throw std::domain_error("lift_from_eigensystem: missing eigenvalue for prime " +
                              std::to_string(ell));
    }
  }

  // extend multiplicatively with the ell-power recursion
  std::vector<CycloElem> coeff(prec, CycloElem::zero(ord));
  if (prec > 1) coeff[1] = CycloElem::one(ord);
  for (long n = 2; n < prec; ++n) {
    auto fs = factor_long(n);
    if (fs.size() > 1) {
      long m1 = 1;
      for (int i = 0; i < fs[0].second; ++i) m1 *= fs[0].first;
      coeff[n] = coeff[m1] * coeff[n / m1];
    } else {
      long ell = fs[0].first;
      int e = fs[0].second;
      if (e == 1) {
        coeff[n] = a_ell[ell].promoted(ord);
      } else if (power_rule[ell]) {
        coeff[n] = coeff[n / ell] * a_ell[ell];
      } else {
        CycloElem c2 = psi_sq.eval(ell) * CycloElem(pow_long(ell, 2 * lambda - 1), 1);
        coeff[n] = a_ell[ell] * coeff[n / ell] - c2.promoted(ord) * coeff[n / (ell * ell)];
      }
    }
    if (!coeff[n].is_zero()) A.set_coeff(n, coeff[n]);
  }
  rec.target_qexp = A;
  rec.cuspidal_target = target_space.cuspidal;

  // membership
  auto c = target_space.coordinates(A.truncated(target_space.prec));
  rec.membership = c.member;
  if (!c.member) {
    rec.failing_exponent = c.failing_exponent;
    return rec;
  }

  // eigen check: the lift is an eigenvector of the target Hecke operators with
  // the relabeled eigenvalues, for good probe primes and for p
  rec.eigen_match = true;
  std::vector<long> probes;
  for (long ell = 2; ell < 14; ++ell)
    if (is_prime_long(ell) && target_space.level % ell != 0) probes.push_back(ell);
  for (long ell : probes) {
    HeckeMatrix t = t_ell_integral(target_space, ell);
    VecC want(target_space.dim()), got(target_space.dim());
    MatC mt = t.matrix.transpose();
    for (long i = 0; i < target_space.dim(); ++i) {
      CycloElem s = CycloElem::zero(ord);
      for (long jj = 0; jj < target_space.dim(); ++jj) s += mt(i, jj).promoted(ord) * c.coords(jj).promoted(ord);
      got(i) = s;
      want(i) = coeff[ell] * c.coords(i).promoted(ord);
    }
    for (long i = 0; i < target_space.dim(); ++i)
      if (!(got(i) == want(i))) rec.eigen_match = false;
  }
  if (target_space.level % src.p == 0) {
    HeckeMatrix u = u_ell_integral(target_space, src.p);
    MatC mt = u.matrix.transpose();
    for (long i = 0; i < target_space.dim(); ++i) {
      CycloElem s = CycloElem::zero(ord);
      for (long jj = 0; jj < target_space.dim(); ++jj) s += mt(i, jj).promoted(ord) * c.coords(jj).promoted(ord);
      if (!(s == coeff[src.p] * c.coords(i).promoted(ord))) rec.eigen_match = false;
    }
  }

  // recursion laws re-verified on the output (p-stabilized primes use powers)
  std::vector<long> prule;
  for (auto& [ell, pr] : power_rule)
    if (pr) prule.push_back(ell);
  rec.recursion = verify_lift_recursion(A, psi_sq, lambda, prec, prule) < 0;
  return rec;
}

}  // namespace shq
