#include "shq/hecke.hpp"

#include "shq/ops.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace shq {

namespace {

constexpr long kMargin = 24;

// Matrix of a series-level operator between spaces; scale is the index scaling
// (input coefficients up to scale * n feed output coefficient n).
MatC operator_matrix(const ModularFormSpace& src, const ModularFormSpace& tgt,
                     const std::function<QSeries(const QSeries&)>& op, long scale,
                     const std::string& label) {
  long n = src.dim(), m = tgt.dim();
  MatC a(n, m);
  if (n == 0) return a;
  if (m == 0) throw NotMemberError(label + ": nonzero source maps to a zero target space");
  long ord = lcm_long(src.field_order, tgt.field_order);
  long maxpiv = tgt.pivots.empty() ? 0 : tgt.pivots.back();
  long need = scale * (maxpiv + kMargin) + 1;
  auto hi = src.basis_at(std::max(src.prec, need));
  long check_prec = std::min(tgt.prec, (std::max(src.prec, need)) / scale);
  auto tb = tgt.basis_at(check_prec);
  for (long i = 0; i < n; ++i) {
    QSeries img = op(hi[i]);
    QSeries res = img.truncated(check_prec);
    for (long jj = 0; jj < m; ++jj) {
      a(i, jj) = img.coeff(tgt.pivots[jj]).promoted(ord);
      if (!a(i, jj).is_zero()) res = res - a(i, jj) * tb[jj];
    }
    for (auto& [e, c] : res.terms()) {
      if (e >= check_prec) break;
      if (!c.is_zero())
        throw NotMemberError(label + ": image of basis vector " + std::to_string(i) +
                             " leaves the target space at exponent " + std::to_string(e));
    }
  }
  return a;
}

std::string op_label(const char* base, long arg) {
  std::ostringstream os;
  os << base << "(" << arg << ")";
  return os.str();
}

}  // namespace

HeckeMatrix t_ell_integral(const ModularFormSpace& space, long ell) {
  if (!space.is_integral_weight())
    throw std::domain_error("t_ell_integral: integral-weight space required");
  if (!is_prime_long(ell) || space.level % ell == 0)
    throw std::domain_error("t_ell_integral: prime ell not dividing the level required (use U)");
  long k = space.weight_num / 2;
  HeckeMatrix h;
  h.label = op_label("T", ell);
  h.source_key = h.target_key = space.cache_key();
  h.matrix = operator_matrix(
      space, space,
      [&](const QSeries& f) { return act_t_ell_integral(f, ell, k, space.character); }, ell,
      h.label);
  return h;
}

HeckeMatrix u_ell_integral(const ModularFormSpace& space, long ell) {
  if (!space.is_integral_weight())
    throw std::domain_error("u_ell_integral: integral-weight space required");
  if (!is_prime_long(ell) || space.level % ell != 0)
    throw std::domain_error("u_ell_integral: prime ell dividing the level required (use T)");
  HeckeMatrix h;
  h.label = op_label("U", ell);
  h.source_key = h.target_key = space.cache_key();
  h.matrix = operator_matrix(
      space, space, [&](const QSeries& f) { return act_u_ell(f, ell); }, ell, h.label);
  return h;
}

HeckeMatrix t_ellsq_half(const ModularFormSpace& space, long ell) {
  if (space.is_integral_weight())
    throw std::domain_error("t_ellsq_half: half-integral space required");
  if (!is_prime_long(ell) || space.level % ell == 0)
    throw std::domain_error("t_ellsq_half: prime ell not dividing the level required");
  HeckeMatrix h;
  h.label = op_label("T", ell * ell);
  h.source_key = h.target_key = space.cache_key();
  h.matrix = operator_matrix(
      space, space,
      [&](const QSeries& f) {
        return act_t_ellsq_half(f, ell, space.weight_num, space.character);
      },
      ell * ell, h.label);
  return h;
}

HeckeMatrix u_ellsq_half(const ModularFormSpace& space, long ell) {
  if (space.is_integral_weight())
    throw std::domain_error("u_ellsq_half: half-integral space required");
  if (!is_prime_long(ell) || space.level % ell != 0)
    throw std::domain_error("u_ellsq_half: prime ell dividing the level required");
  HeckeMatrix h;
  h.label = op_label("U", ell * ell);
  h.source_key = h.target_key = space.cache_key();
  h.matrix = operator_matrix(
      space, space, [&](const QSeries& f) { return act_u_ell(f, ell * ell); }, ell * ell,
      h.label);
  return h;
}

HeckeMatrix diamond(const ModularFormSpace& space, long d, DiamondPart part, long N, long p) {
  long level = space.level;
  if (gcd_long(((d % level) + level) % level, level) != 1)
    throw std::domain_error("diamond: d must be coprime to the level");
  long tame_mod = level / [&] {
    long pp = 1;
    long lv = level;
    while (lv % p == 0) lv /= p, pp *= p;
    return pp;
  }();
  (void)N;
  long rep = d;
  if (part == DiamondPart::kTame) {
    // d' = d mod tame part, 1 mod p-part
    long ppart = level / tame_mod;
    rep = ppart == 1 ? d : crt_pair(((d % tame_mod) + tame_mod) % tame_mod, tame_mod, 1 % ppart,
                                    ppart);
  } else if (part == DiamondPart::kPPart) {
    long ppart = level / tame_mod;
    rep = ppart == 1 ? 1 : crt_pair(1 % tame_mod, tame_mod, ((d % ppart) + ppart) % ppart, ppart);
  }
  CycloElem val = space.character.eval(rep);
  HeckeMatrix h;
  std::ostringstream os;
  os << "<" << d << ">"
     << (part == DiamondPart::kTame ? "_tame" : part == DiamondPart::kPPart ? "_p" : "");
  h.label = os.str();
  h.source_key = h.target_key = space.cache_key();
  h.matrix = MatC(space.dim(), space.dim());
  for (long i = 0; i < space.dim(); ++i)
    for (long jj = 0; jj < space.dim(); ++jj)
      h.matrix(i, jj) = i == jj ? val : CycloElem::zero(val.order());
  return h;
}

HeckeMatrix up_half(const ModularFormSpace& source, const ModularFormSpace& target, long p) {
  if (source.is_integral_weight() || target.is_integral_weight())
    throw std::domain_error("up_half: half-integral spaces required");
  if (source.level != target.level || source.weight_num != target.weight_num)
    throw std::domain_error("up_half: source and target must share level and weight");
  if (source.level % p != 0) throw std::domain_error("up_half: p must divide the level");
  // the target nebentypus is the (p/.)-twist of the source
  long sigma = (p - 1) / 2;
  DirichletChar twist = DirichletChar::trivial(1);
  for (long i = 0; i < sigma; ++i) twist = char_product(twist, teichmuller(p));
  if (sigma % 2 == 1) twist = char_product(twist, DirichletChar::quadratic(-4));
  DirichletChar expected = char_product(source.character, twist).extended(source.level);
  if (!(expected == target.character.extended(source.level)))
    throw std::domain_error("up_half: component mismatch (target is not the epsilon-twist)");
  HeckeMatrix h;
  h.label = op_label("Up", p);
  h.source_key = source.cache_key();
  h.target_key = target.cache_key();
  h.matrix = operator_matrix(
      source, target, [&](const QSeries& f) { return act_u_ell(f, p); }, p, h.label);
  return h;
}

Poly hecke_charpoly(const HeckeMatrix& op, bool fredholm) {
  if (!op.endo() || op.matrix.rows() != op.matrix.cols())
    throw std::domain_error("hecke_charpoly: endomorphism required");
  // rows hold images, so the action on coordinate columns is the transpose
  MatC m = op.matrix.transpose();
  return fredholm ? fredholm_poly(m) : charpoly(m);
}

CycloElem EigenSystem::eigenvalue(const std::string& op) const {
  auto it = op_value.find(op);
  if (it == op_value.end()) throw std::domain_error("EigenSystem: unknown operator " + op);
  if (!rational()) throw std::domain_error("EigenSystem: eigenvalue not in the coefficient field");
  // evaluate the polynomial at the root of the linear minpoly x + c
  CycloElem root = -combo_minpoly.coeff(0) / combo_minpoly.coeff(1);
  return it->second.eval(root);
}

Poly EigenSystem::eigen_minpoly(const std::string& op) const {
  auto it = op_value.find(op);
  if (it == op_value.end()) throw std::domain_error("EigenSystem: unknown operator " + op);
  // charpoly of multiplication by e_op(x) on K[x]/(m): compute the matrix
  long d = combo_minpoly.degree();
  long ord = combo_minpoly.order();
  MatC mult(d, d);
  for (long c = 0; c < d; ++c) {
    // column c: e_op(x) * x^c mod m
    Poly xc(ord, std::vector<CycloElem>(c + 1, CycloElem::zero(ord)));
    {
      auto v = std::vector<CycloElem>(c + 1, CycloElem::zero(ord));
      v[c] = CycloElem::one(ord);
      xc = Poly(ord, v);
    }
    Poly prod = it->second * xc;
    Poly q, r;
    poly_divrem(prod, combo_minpoly, q, r);
    for (long rr = 0; rr < d; ++rr) mult(rr, c) = r.coeff(rr).promoted(ord);
  }
  Poly cp = charpoly(mult);
  return squarefree_part(cp).monic();
}

CycloElem eigenvalue_on_series(const QSeries& f, const QSeries& image, long check_bound) {
  if (check_bound > f.prec() || check_bound > image.prec())
    throw std::domain_error("eigenvalue_on_series: insufficient precision");
  long lead = -1;
  for (auto& [n, c] : f.terms()) {
    if (!c.is_zero()) {
      lead = n;
      break;
    }
  }
  if (lead < 0) throw std::domain_error("eigenvalue_on_series: zero form");
  CycloElem c = image.coeff(lead) / f.coeff(lead);
  for (long n = 0; n < check_bound; ++n)
    if (!(image.coeff(n) == c * f.coeff(n)))
      throw std::domain_error("eigenvalue_on_series: not an eigenform (coefficient " +
                              std::to_string(n) + ")");
  return c;
}

void attach_slope(EigenSystem& sys) {
  Poly mp = sys.eigen_minpoly(sys.distinguished);
  Poly rs;
  if (mp.is_rational()) {
    rs = mp.to_rational_poly();
  } else {
    // restriction of scalars: Q-charpoly of multiplication by the eigenvalue
    long dmp = mp.degree();
    MatC mult(dmp, dmp);
    for (long c = 0; c < dmp; ++c) {
      std::vector<CycloElem> v(c + 2, CycloElem::zero(mp.order()));
      v[c + 1] = CycloElem::one(mp.order());
      Poly xc(mp.order(), v);  // x * x^c
      Poly q, r;
      poly_divrem(xc, mp, q, r);
      for (long rr = 0; rr < dmp; ++rr) mult(rr, c) = r.coeff(rr);
    }
    rs = restrict_scalars_charpoly(mult);
  }
  // slopes are valuations of the roots: use the Fredholm-normalized reversal
  Poly rev = rs.reversed();
  rev = rev.coeff(0).inverse() * rev;
  NewtonPolygon np = newton_polygon(rev, sys.p);
  sys.slope_multiset = np.slopes;
  sys.slope_pure = np.slopes.size() == 1;
  sys.slope = np.slopes.begin()->first;
}

std::vector<EigenSystem> eigensystems(const ModularFormSpace& space,
                                      const std::vector<HeckeMatrix>& ops,
                                      const std::string& distinguished_label, long p,
                                      unsigned long seed) {
  std::vector<EigenSystem> out;
  long n = space.dim();
  if (n == 0) return out;
  long ord = space.field_order;
  for (auto& op : ops) ord = lcm_long(ord, matrix_order(op.matrix));

  // commutation check (exact)
  std::vector<MatC> mats;
  for (auto& op : ops) {
    if (!op.endo()) throw std::domain_error("eigensystems: endomorphisms required");
    mats.push_back(promote_matrix(op.matrix.transpose(), ord));
  }
  for (size_t i = 0; i < mats.size(); ++i)
    for (size_t jj = i + 1; jj < mats.size(); ++jj) {
      MatC d1 = (mats[i] * mats[jj] - mats[jj] * mats[i]).eval();
      for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c)
          if (!d1(r, c).is_zero())
            throw std::domain_error("eigensystems: operators " + ops[i].label + " and " +
                                    ops[jj].label + " do not commute");
    }

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<long> coeffs(ops.size());
    for (auto& c : coeffs) c = 1 + static_cast<long>(rng() % 17);
    MatC combo(n, n);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c) combo(r, c) = CycloElem::zero(ord);
    for (size_t i = 0; i < mats.size(); ++i) {
      CycloElem ci = CycloElem(Rational(coeffs[i]), 1).promoted(ord);
      for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) combo(r, c) += ci * mats[i](r, c);
    }

    Poly cp = charpoly(combo);
    std::vector<CFactor> factors;
    try {
      factors = factor_cyclo(cp);
    } catch (const std::exception&) {
      continue;  // retry with a new combination
    }

    bool ok = true;
    std::vector<EigenSystem> found;
    for (auto& fac : factors) {
      const Poly& m = fac.factor;
      long dm = m.degree();
      // kernel of m(combo)
      MatC mc(n, n);
      for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) mc(r, c) = r == c ? m.coeff(dm).promoted(ord) : CycloElem::zero(ord);
      // Horner: mc = m(combo)
      for (long d = dm - 1; d >= 0; --d) {
        mc = (mc * combo).eval();
        for (long r = 0; r < n; ++r) mc(r, r) += m.coeff(d).promoted(ord);
      }
      MatC kerb = kernel_basis(mc);
      long kd = kerb.cols();
      if (kd == 0) {
        ok = false;
        break;
      }
      // restrict operators to the kernel and solve O = e_O(combo)
      // kernel basis columns K: combo * K = K * J for the induced action J
      MatC K = kerb;
      // solve K * J = combo * K column by column
      MatC CK = (combo * K).eval();
      MatC J(kd, kd);
      for (long c = 0; c < kd; ++c) {
        VecC col(n);
        for (long r = 0; r < n; ++r) col(r) = CK(r, c);
        auto sol = solve_linear(K, col);
        if (!sol) {
          ok = false;
          break;
        }
        for (long r = 0; r < kd; ++r) J(r, c) = (*sol)(r);
      }
      if (!ok) break;

      EigenSystem sys;
      sys.combo_minpoly = m.promoted(ord);
      sys.p = p;
      sys.half_side = !space.is_integral_weight();
      sys.distinguished = distinguished_label;
      if (kd % dm != 0) {
        ok = false;
        break;
      }
      sys.multiplicity = kd / dm;

      // powers of J as a basis for polynomials in the combo root
      std::vector<MatC> jpow(dm);
      jpow[0] = MatC(kd, kd);
      for (long r = 0; r < kd; ++r)
        for (long c = 0; c < kd; ++c) jpow[0](r, c) = r == c ? CycloElem::one(ord) : CycloElem::zero(ord);
      for (long d = 1; d < dm; ++d) jpow[d] = (jpow[d - 1] * J).eval();

      for (size_t oi = 0; oi < ops.size(); ++oi) {
        // O restricted to the kernel
        MatC OK = (mats[oi] * K).eval();
        MatC OJ(kd, kd);
        bool solved = true;
        for (long c = 0; c < kd && solved; ++c) {
          VecC col(n);
          for (long r = 0; r < n; ++r) col(r) = OK(r, c);
          auto sol = solve_linear(K, col);
          if (!sol) solved = false;
          else
            for (long r = 0; r < kd; ++r) OJ(r, c) = (*sol)(r);
        }
        if (!solved) {
          ok = false;
          break;
        }
        // solve OJ = sum_d e_d jpow[d] entrywise (kd^2 equations, dm unknowns)
        MatC sys_m(kd * kd, dm);
        VecC rhs(kd * kd);
        for (long r = 0; r < kd; ++r)
          for (long c = 0; c < kd; ++c) {
            for (long d = 0; d < dm; ++d) sys_m(r * kd + c, d) = jpow[d](r, c);
            rhs(r * kd + c) = OJ(r, c);
          }
        auto esol = solve_linear(sys_m, rhs);
        if (!esol) {
          ok = false;  // operator not a polynomial in the combo here: retry
          break;
        }
        std::vector<CycloElem> ecoef(dm);
        for (long d = 0; d < dm; ++d) ecoef[d] = (*esol)(d);
        sys.op_value[ops[oi].label] = Poly(ord, ecoef);
      }
      if (!ok) break;
      found.push_back(std::move(sys));
    }
    if (!ok) continue;

    // phi-finiteness and slopes via the distinguished operator
    std::vector<EigenSystem> kept;
    for (auto& sys : found) {
      auto it = sys.op_value.find(distinguished_label);
      if (it == sys.op_value.end())
        throw std::domain_error("eigensystems: distinguished operator missing from the list");
      if (it->second.is_zero()) continue;  // not phi-finite
      attach_slope(sys);
      kept.push_back(std::move(sys));
    }
    return kept;
  }
  throw std::domain_error("eigensystems: splitting failed after the retry budget");
}

}  // namespace shq
