#include "shq/spaces.hpp"

#include "shq/ops.hpp"

#include <sstream>

namespace shq {

QSeries GenRecipe::materialize(long prec) const {
  switch (kind) {
    case kEis: {
      QSeries e = eisenstein(chi, psi, k, prec);
      return t == 1 ? e : v_ell(e, t, prec);
    }
    case kEis2:
      return eisenstein2_level(t, prec);
    case kProduct: {
      QSeries r = parts.front().materialize(prec);
      for (size_t i = 1; i < parts.size(); ++i) r = qs_mul(r, parts[i].materialize(prec));
      return r;
    }
  }
  throw std::logic_error("GenRecipe: unknown kind");
}

std::string GenRecipe::describe() const {
  std::ostringstream os;
  switch (kind) {
    case kEis:
      os << "V" << t << " E" << k << "(" << chi.label() << ";" << psi.label() << ")";
      break;
    case kEis2:
      os << "E2^(" << t << ")";
      break;
    case kProduct:
      for (size_t i = 0; i < parts.size(); ++i) os << (i ? " * " : "") << parts[i].describe();
      break;
  }
  return os.str();
}

namespace {

long leading_exponent(const QSeries& f) {
  for (auto& [n, c] : f.terms())
    if (!c.is_zero()) return n;
  return -1;
}

// Echelon span of q-series with combination tracking over the generator list.
struct TrackedSpan {
  long prec;
  long order;
  std::vector<QSeries> rows;                       // reduced echelon rows
  std::vector<long> pivots;                        // increasing
  std::vector<std::vector<CycloElem>> combos;      // row i = sum_j combos[i][j] gen_j
  long n_gens;

  TrackedSpan(long prec_, long order_, long n_gens_) : prec(prec_), order(order_), n_gens(n_gens_) {}

  bool insert(QSeries v, std::vector<CycloElem> combo) {
    v = v.promoted(lcm_long(order, v.field_order()));
    order = v.field_order();
    // fully reduce against all existing pivot columns (rows satisfy RREF)
    for (size_t r = 0; r < rows.size(); ++r) {
      CycloElem f = v.coeff(pivots[r]);
      if (f.is_zero()) continue;
      v = v - f * rows[r];
      for (long j = 0; j < n_gens; ++j) combo[j] -= f * combos[r][j];
    }
    long piv = leading_exponent(v);
    if (piv < 0) return false;
    CycloElem inv = v.coeff(piv).inverse();
    v = inv * v;
    for (auto& c : combo) c = inv * c;
    // clear the new pivot column in the existing rows
    for (size_t r = 0; r < rows.size(); ++r) {
      CycloElem f = rows[r].coeff(piv);
      if (f.is_zero()) continue;
      rows[r] = rows[r] - f * v;
      for (long j = 0; j < n_gens; ++j) combos[r][j] -= f * combo[j];
    }
    auto it = std::lower_bound(pivots.begin(), pivots.end(), piv);
    size_t pos = static_cast<size_t>(it - pivots.begin());
    rows.insert(rows.begin() + pos, std::move(v));
    pivots.insert(pivots.begin() + pos, piv);
    combos.insert(combos.begin() + pos, std::move(combo));
    return true;
  }
};

std::vector<QSeries> regenerate(const std::vector<GenRecipe>& gens, const MatC& coord, long prec,
                                bool over_theta) {
  // materialize only the generators that actually appear in some basis row
  std::vector<char> needed(gens.size(), 0);
  for (long i = 0; i < coord.rows(); ++i)
    for (long j = 0; j < coord.cols(); ++j)
      if (!coord(i, j).is_zero()) needed[j] = 1;
  std::vector<QSeries> gen_series(gens.size());
  for (size_t j = 0; j < gens.size(); ++j)
    if (needed[j]) gen_series[j] = gens[j].materialize(prec);
  std::vector<QSeries> out;
  QSeries th = theta(prec);
  for (long i = 0; i < coord.rows(); ++i) {
    QSeries acc(prec, 1);
    for (long j = 0; j < coord.cols(); ++j) {
      if (coord(i, j).is_zero()) continue;
      acc = acc + coord(i, j) * gen_series[j];
    }
    out.push_back(over_theta ? qs_div(acc, th) : acc);
  }
  return out;
}

}  // namespace

std::vector<QSeries> ModularFormSpace::basis_at(long prec_target) const {
  if (prec_target <= prec) {
    std::vector<QSeries> out;
    for (auto& b : basis) out.push_back(b.truncated(prec_target));
    return out;
  }
  return regenerate(generators, coord, prec_target, divide_by_theta);
}

ModularFormSpace::Coordinates ModularFormSpace::coordinates(const QSeries& f) const {
  if (f.prec() < prec)
    throw std::domain_error("ModularFormSpace::coordinates: insufficient precision");
  Coordinates out;
  long ord = lcm_long(field_order, f.field_order());
  VecC c(dim());
  QSeries residual = f;
  for (long j = 0; j < dim(); ++j) {
    c(j) = residual.coeff(pivots[j]).promoted(ord);
    if (!c(j).is_zero()) residual = residual - c(j) * basis[j];
  }
  for (auto& [n, v] : residual.terms()) {
    if (n >= prec) break;
    if (!v.is_zero()) {
      out.member = false;
      out.failing_exponent = n;
      return out;
    }
  }
  out.member = true;
  out.coords = std::move(c);
  return out;
}

std::string ModularFormSpace::cache_key() const {
  std::ostringstream os;
  os << (cuspidal ? "S" : "M") << weight_num << "_L" << level << "_chi" << character.label()
     << "_p" << prec;
  return os.str();
}

namespace {

constexpr long kCoordMargin = 24;

// all Eisenstein tags of weight k at level dividing M, keyed by nothing --
// product-pool enumeration filters by total character.
std::vector<GenRecipe> weight_tags_any_char(long k, long M) {
  std::vector<GenRecipe> out;
  for (long u = 1; u <= M; ++u) {
    if (M % u != 0) continue;
    for (auto& chi : primitive_characters(u)) {
      for (long v = 1; u * v <= M; ++v) {
        if (M % (u * v) != 0) continue;
        for (auto& psi : primitive_characters(v)) {
          bool odd_prod = chi.is_even() == psi.is_even() ? false : true;
          if (odd_prod != (k % 2 == 1)) continue;
          long t_max = M / (u * v);
          for (long t = 1; t <= t_max; ++t) {
            if (t_max % t != 0) continue;
            if (k == 1 && (u > v || (u == v && chi.label() > psi.label()))) continue;
            if (k == 2 && u == 1 && v == 1) {
              if (t == 1) continue;
              GenRecipe g;
              g.kind = GenRecipe::kEis2;
              g.t = t;
              out.push_back(g);
              continue;
            }
            GenRecipe g;
            g.kind = GenRecipe::kEis;
            g.chi = chi;
            g.psi = psi;
            g.k = k;
            g.t = t;
            out.push_back(g);
          }
        }
      }
    }
  }
  return out;
}

DirichletChar recipe_character(const GenRecipe& g, long M) {
  switch (g.kind) {
    case GenRecipe::kEis:
      return char_product(g.chi, g.psi).extended(M);
    case GenRecipe::kEis2:
      return DirichletChar::trivial(M);
    case GenRecipe::kProduct: {
      DirichletChar c = DirichletChar::trivial(M);
      for (auto& p : g.parts) c = char_product(c, recipe_character(p, M));
      return c.extended(M);
    }
  }
  throw std::logic_error("recipe_character");
}

// T_ell matrix on an integral-weight span, computed by reading coordinates at
// the pivots and verifying the残 residual to the available precision.
MatC probe_matrix(const std::vector<GenRecipe>& gens, const MatC& coord,
                  const std::vector<long>& pivots, const std::vector<QSeries>& rows, long prec,
                  long ell, long k, const DirichletChar& eps, long ord) {
  long need = ell * (pivots.empty() ? 1 : pivots.back() + kCoordMargin) + 1;
  std::vector<QSeries> hi = regenerate(gens, coord, std::max(prec, need), false);
  long n = static_cast<long>(rows.size());
  MatC a(n, n);
  for (long i = 0; i < n; ++i) {
    QSeries img = act_t_ell_integral(hi[i], ell, k, eps);
    for (long j = 0; j < n; ++j) a(i, j) = img.coeff(pivots[j]).promoted(ord);
    // residual check below the available precision
    QSeries res = img;
    for (long j = 0; j < n; ++j)
      if (!a(i, j).is_zero()) res = res - a(i, j) * rows[j].truncated(std::min(prec, img.prec()));
    for (auto& [m, c] : res.terms()) {
      if (m >= std::min(prec, img.prec())) break;
      if (!c.is_zero())
        throw OracleMismatchError("Hecke probe image left the span at exponent " +
                                  std::to_string(m));
    }
  }
  return a;
}

}  // namespace

ModularFormSpace build_integral_space(long k, long M, const DirichletChar& eps_in, bool cuspidal,
                                      long prec) {
  if (k < 2) throw std::domain_error("build_integral_space: weight >= 2 required");
  DirichletChar eps = eps_in.modulus() == M ? eps_in : eps_in.extended(M);
  if (prec < 0) prec = sturm_bound(2 * k, M);
  long dim_m = dim_integral(k, M, eps, false);
  long dim_s = dim_integral(k, M, eps, true);
  long target = cuspidal ? dim_s : dim_m;

  ModularFormSpace sp;
  sp.weight_num = 2 * k;
  sp.level = M;
  sp.character = eps;
  sp.cuspidal = cuspidal;
  sp.prec = prec;

  if (eps.is_even() != (k % 2 == 0) || target == 0) {
    if (target != 0) throw OracleMismatchError("parity-zero space with nonzero oracle dimension");
    sp.coord = MatC(0, 0);
    return sp;
  }

  // generator pool: the Eisenstein basis itself, then products of two
  // Eisenstein series of complementary weights
  std::vector<GenRecipe> pool;
  for (auto& tag : eisenstein_basis_tags(k, M, eps)) {
    GenRecipe g;
    if (k == 2 && tag.chi.is_trivial() && tag.psi.is_trivial()) {
      g.kind = GenRecipe::kEis2;
      g.t = tag.t;
    } else {
      g.kind = GenRecipe::kEis;
      g.chi = tag.chi;
      g.psi = tag.psi;
      g.k = k;
      g.t = tag.t;
    }
    pool.push_back(g);
  }
  for (long k1 = 1; 2 * k1 <= k; ++k1) {
    long k2w = k - k1;
    auto left = weight_tags_any_char(k1, M);
    auto right = k2w == k1 ? left : weight_tags_any_char(k2w, M);
    for (size_t i = 0; i < left.size(); ++i) {
      DirichletChar cl = recipe_character(left[i], M);
      for (size_t j = (k2w == k1 ? i : size_t(0)); j < right.size(); ++j) {
        DirichletChar cr = recipe_character(right[j], M);
        if (!(char_product(cl, cr).extended(M) == eps)) continue;
        GenRecipe g;
        g.kind = GenRecipe::kProduct;
        g.parts = {left[i], right[j]};
        pool.push_back(g);
      }
    }
  }

  // span the full space M_k first
  TrackedSpan span(prec, eps.value_order(), static_cast<long>(pool.size()));
  std::vector<GenRecipe> used;
  std::vector<long> used_index;
  for (size_t gi = 0; gi < pool.size(); ++gi) {
    if (span.rows.size() == static_cast<size_t>(dim_m)) break;
    QSeries s = pool[gi].materialize(prec);
    std::vector<CycloElem> combo(pool.size(), CycloElem::zero(1));
    combo[gi] = CycloElem::one(1);
    span.insert(std::move(s), std::move(combo));
  }
  if (span.rows.size() < static_cast<size_t>(dim_m)) {
    std::ostringstream os;
    os << "span deficiency: M_" << k << "(Gamma1(" << M << "), " << eps.label() << ") needs dim "
       << dim_m << ", Eisenstein-product pool reached " << span.rows.size();
    throw SpanDeficiencyError(os.str());
  }
  if (span.rows.size() > static_cast<size_t>(dim_m))
    throw OracleMismatchError("generator span exceeds the oracle dimension of M_k");

  long ord = span.order;
  MatC coord_m(dim_m, static_cast<long>(pool.size()));
  for (long i = 0; i < dim_m; ++i)
    for (size_t j = 0; j < pool.size(); ++j) coord_m(i, j) = span.combos[i][j].promoted(ord);

  if (!cuspidal) {
    sp.field_order = ord;
    sp.basis = span.rows;
    sp.pivots = span.pivots;
    sp.generators = pool;
    sp.coord = coord_m;
    return sp;
  }

  // cuspidal cut: kernel of s(T_ell) where charpoly(T_ell) = e(x) s(x) and
  // e collects the Eisenstein eigenvalues
  auto eis_tags = eisenstein_basis_tags(k, M, eps);
  for (long ell = 2;; ++ell) {
    if (!is_prime_long(ell) || M % ell == 0) continue;
    if (ell > 50)
      throw OracleMismatchError("cuspidal cut failed: no probe prime separated the Eisenstein part");
    MatC a = probe_matrix(pool, coord_m, span.pivots, span.rows, prec, ell, k, eps, ord);
    // S = image of e(T_ell), e = product of (x - Eisenstein eigenvalue): the
    // Eisenstein part is diagonalized by the V_t E basis, so e kills it exactly.
    long n = dim_m;
    MatC at = a.transpose();
    MatC b(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) b(i, j) = i == j ? CycloElem::one(ord) : CycloElem::zero(ord);
    for (auto& tag : eis_tags) {
      CycloElem lam = eis_tag_eigenvalue(tag, k, ell).promoted(ord);
      MatC shifted = at;
      for (long i = 0; i < n; ++i) shifted(i, i) -= lam;
      b = (shifted * b).eval();
    }
    // image columns of b are cuspidal coordinate vectors
    TrackedSpan cusp_span(prec, ord, static_cast<long>(pool.size()));
    for (long j = 0; j < n; ++j) {
      QSeries v(prec, ord);
      std::vector<CycloElem> combo(pool.size(), CycloElem::zero(ord));
      bool nonzero = false;
      for (long i = 0; i < dim_m; ++i) {
        if (b(i, j).is_zero()) continue;
        nonzero = true;
        v = v + b(i, j) * span.rows[i];
        for (size_t g = 0; g < pool.size(); ++g) combo[g] += b(i, j) * coord_m(i, g);
      }
      if (nonzero) cusp_span.insert(std::move(v), std::move(combo));
    }
    if (static_cast<long>(cusp_span.rows.size()) != dim_s) continue;  // collision: next probe
    sp.field_order = cusp_span.order;
    sp.basis = cusp_span.rows;
    sp.pivots = cusp_span.pivots;
    sp.generators = pool;
    MatC coord_s(dim_s, static_cast<long>(pool.size()));
    for (long i = 0; i < dim_s; ++i)
      for (size_t j = 0; j < pool.size(); ++j) coord_s(i, j) = cusp_span.combos[i][j];
    sp.coord = coord_s;
    return sp;
  }
}

ModularFormSpace build_half_integral_space(long k2, long M4, const DirichletChar& eps_in,
                                           long prec, bool cuspidal) {
  if (k2 < 3 || k2 % 2 == 0)
    throw std::domain_error("build_half_integral_space: odd weight numerator >= 3 required");
  if (M4 % 4 != 0) throw std::domain_error("build_half_integral_space: level divisible by 4 required");
  DirichletChar eps = eps_in.modulus() == M4 ? eps_in : eps_in.extended(M4);
  if (prec < 0) prec = sturm_bound(k2, M4);
  long dim_target = dim_half_integral(k2, M4, eps, cuspidal);

  ModularFormSpace sp;
  sp.weight_num = k2;
  sp.level = M4;
  sp.character = eps;
  sp.cuspidal = cuspidal;
  sp.prec = prec;
  sp.divide_by_theta = true;
  if (!eps.is_even()) {
    if (dim_target != 0) throw OracleMismatchError("odd nebentypus with nonzero oracle dimension");
    sp.coord = MatC(0, 0);
    return sp;
  }

  long w = (k2 + 1) / 2;  // integral weight of g = F theta
  DirichletChar tw = char_product(eps, w % 2 == 0 ? DirichletChar::trivial(1)
                                                  : DirichletChar::quadratic(-4));
  long Lp = lcm_long(M4, 16);
  long pair_prec = (k2 + 2) * gamma0_index(Lp) / 24 + 2;
  long w_prec = std::max(prec, pair_prec);

  ModularFormSpace W = build_integral_space(w, M4, tw.extended(M4), cuspidal, w_prec);
  ModularFormSpace Wp = build_integral_space(w, Lp, tw.extended(Lp), cuspidal, pair_prec);

  // pair condition: g theta_odd = theta h with g in W, h in W'
  QSeries th = theta(pair_prec);
  QSeries th2 = theta_odd(pair_prec);
  long ord = lcm_long(W.field_order, Wp.field_order);
  long nw = W.dim(), np = Wp.dim();
  MatC sys(pair_prec, nw + np);
  auto wb = W.basis_at(pair_prec);
  auto pb = Wp.basis_at(pair_prec);
  for (long j = 0; j < nw; ++j) {
    QSeries u = qs_mul(wb[j], th2);
    for (long n = 0; n < pair_prec; ++n) sys(n, j) = u.coeff(n).promoted(ord);
  }
  for (long j = 0; j < np; ++j) {
    QSeries v = qs_mul(pb[j], th);
    for (long n = 0; n < pair_prec; ++n) sys(n, nw + j) = (-v.coeff(n)).promoted(ord);
  }
  MatC ker = kernel_basis(sys);

  TrackedSpan half_span(prec, ord, static_cast<long>(W.generators.size()));
  QSeries th_hi = theta(w_prec);
  auto wb_full = W.basis_at(w_prec);
  for (long j = 0; j < ker.cols(); ++j) {
    QSeries g(w_prec, ord);
    std::vector<CycloElem> combo(W.generators.size(), CycloElem::zero(ord));
    for (long i = 0; i < nw; ++i) {
      if (ker(i, j).is_zero()) continue;
      g = g + ker(i, j) * wb_full[i];
      for (long t = 0; t < W.coord.cols(); ++t) combo[t] += ker(i, j) * W.coord(i, t);
    }
    QSeries f = qs_div(g, th_hi).truncated(prec);
    half_span.insert(std::move(f), std::move(combo));
  }
  if (static_cast<long>(half_span.rows.size()) != dim_target) {
    std::ostringstream os;
    os << "half-integral space S~_" << k2 << "/2(" << M4 << ", " << eps.label()
       << "): theta-quotient construction reached dim " << half_span.rows.size()
       << " but the oracle requires " << dim_target;
    throw OracleMismatchError(os.str());
  }
  sp.field_order = half_span.order;
  sp.basis = half_span.rows;
  sp.pivots = half_span.pivots;
  sp.generators = W.generators;
  MatC coord(dim_target, static_cast<long>(W.generators.size()));
  for (long i = 0; i < dim_target; ++i)
    for (size_t j = 0; j < W.generators.size(); ++j) coord(i, j) = half_span.combos[i][j];
  sp.coord = coord;
  return sp;
}

ModularFormSpace build_space(long k2, long M, const DirichletChar& eps, bool cuspidal, long prec) {
  if (k2 % 2 == 0) return build_integral_space(k2 / 2, M, eps, cuspidal, prec);
  return build_half_integral_space(k2, M, eps, prec, cuspidal);
}

}  // namespace shq
