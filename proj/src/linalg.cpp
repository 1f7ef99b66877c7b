#include "shq/linalg.hpp"

namespace shq {

long matrix_order(const MatC& m) {
  long ord = 1;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) ord = lcm_long(ord, m(i, j).order());
  return ord;
}

MatC promote_matrix(const MatC& m, long order) {
  MatC r(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).promoted(order);
  return r;
}

std::vector<long> rref_in_place(MatC& a) {
  const long rows = a.rows(), cols = a.cols();
  std::vector<long> pivots;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long pr = -1;
    for (long i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r) a.row(pr).swap(a.row(r));
    CycloElem inv = a(r, c).inverse();
    for (long j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      CycloElem f = a(i, c);
      for (long j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

MatC kernel_basis(const MatC& a_in) {
  MatC a = a_in;
  auto pivots = rref_in_place(a);
  const long cols = a.cols();
  long ord = matrix_order(a);
  std::vector<long> free_cols;
  {
    std::vector<bool> is_pivot(cols, false);
    for (long p : pivots) is_pivot[p] = true;
    for (long c = 0; c < cols; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
  }
  MatC k(cols, static_cast<long>(free_cols.size()));
  for (long i = 0; i < k.rows(); ++i)
    for (long j = 0; j < k.cols(); ++j) k(i, j) = CycloElem::zero(ord);
  for (size_t j = 0; j < free_cols.size(); ++j) {
    long fc = free_cols[j];
    k(fc, j) = CycloElem::one(ord);
    for (size_t pi = 0; pi < pivots.size(); ++pi) k(pivots[pi], j) = -a(pi, fc);
  }
  return k;
}

std::optional<VecC> solve_linear(const MatC& a, const VecC& b) {
  const long rows = a.rows(), cols = a.cols();
  long ord = lcm_long(matrix_order(a), matrix_order(b));
  MatC aug(rows, cols + 1);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) aug(i, j) = a(i, j).promoted(ord);
    aug(i, cols) = b(i).promoted(ord);
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // inconsistent
  VecC x(cols);
  for (long j = 0; j < cols; ++j) x(j) = CycloElem::zero(ord);
  for (size_t pi = 0; pi < pivots.size(); ++pi) x(pivots[pi]) = aug(pi, cols);
  return x;
}

Poly charpoly(const MatC& m_in) {
  if (m_in.rows() != m_in.cols()) throw std::domain_error("charpoly: square matrix required");
  const long n = m_in.rows();
  long ord = matrix_order(m_in);
  if (n == 0) return Poly::constant(CycloElem::one(ord));
  MatC h = promote_matrix(m_in, ord);

  // Hessenberg reduction by exact similarity transformations.
  for (long c = 0; c + 2 < n; ++c) {
    long pr = -1;
    for (long i = c + 1; i < n; ++i)
      if (!h(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != c + 1) {
      h.row(pr).swap(h.row(c + 1));
      h.col(pr).swap(h.col(c + 1));
    }
    CycloElem inv = h(c + 1, c).inverse();
    for (long i = c + 2; i < n; ++i) {
      if (h(i, c).is_zero()) continue;
      CycloElem f = h(i, c) * inv;
      for (long j = 0; j < n; ++j) h(i, j) -= f * h(c + 1, j);
      for (long j = 0; j < n; ++j) h(j, c + 1) += f * h(j, i);
    }
  }

  // p_m = (x - h_mm) p_{m-1} - sum_i h_{i,m} (prod subdiagonals) p_{i-1}
  std::vector<Poly> p(n + 1, Poly(ord));
  p[0] = Poly::constant(CycloElem::one(ord));
  Poly x_poly(ord, {CycloElem::zero(ord), CycloElem::one(ord)});
  for (long mdim = 1; mdim <= n; ++mdim) {
    Poly acc = (x_poly - Poly::constant(h(mdim - 1, mdim - 1))) * p[mdim - 1];
    CycloElem subprod = CycloElem::one(ord);
    for (long i = mdim - 1; i >= 1; --i) {
      subprod *= h(i, i - 1);
      if (subprod.is_zero()) break;
      acc = acc - Poly::constant(h(i - 1, mdim - 1) * subprod) * p[i - 1];
    }
    p[mdim] = acc;
  }
  return p[n];
}

Poly fredholm_poly(const MatC& m) {
  const long n = m.rows();
  Poly cp = charpoly(m);
  // det(1 - MT) = T^n * cp(1/T); cp monic of degree n
  std::vector<CycloElem> rev(n + 1);
  for (long i = 0; i <= n; ++i) rev[i] = cp.coeff(n - i);
  return Poly(cp.order(), std::move(rev));
}

Poly restrict_scalars_charpoly(const MatC& m) {
  if (m.rows() != m.cols()) throw std::domain_error("restrict_scalars_charpoly: square required");
  const long n = m.rows();
  long ord = matrix_order(m);
  long phi = euler_phi(ord);
  MatC mm = promote_matrix(m, ord);
  MatC big(n * phi, n * phi);
  for (long i = 0; i < n * phi; ++i)
    for (long j = 0; j < n * phi; ++j) big(i, j) = CycloElem::zero(1);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const CycloElem& e = mm(i, j);
      if (e.is_zero()) continue;
      for (long k = 0; k < phi; ++k) {
        CycloElem col = e * CycloElem::root_of_unity(ord, k);
        const auto& coords = col.coords();
        for (long l = 0; l < phi; ++l)
          big(i * phi + l, j * phi + k) = CycloElem(coords[l], 1);
      }
    }
  }
  return charpoly(big);
}

}  // namespace shq
