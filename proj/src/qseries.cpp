#include "shq/qseries.hpp"

#include <sstream>

namespace shq {

CycloElem QSeries::coeff(long n) const {
  if (n < 0) return CycloElem::zero(order_);
  if (n >= prec_) throw std::out_of_range("QSeries::coeff: index beyond tracked precision");
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? CycloElem::zero(order_) : it->second;
}

void QSeries::set_coeff(long n, const CycloElem& c) {
  if (n < 0 || n >= prec_) throw std::out_of_range("QSeries::set_coeff: index beyond precision");
  if (c.is_zero())
    coeffs_.erase(n);
  else {
    CycloElem v = c;
    if (v.order() != order_) {
      order_ = lcm_long(order_, v.order());
      if (v.order() != order_) v = v.promoted(order_);
      // re-promote stored coefficients lazily: promote all now for uniformity
      for (auto& [k, x] : coeffs_) x = x.promoted(order_);
    }
    coeffs_[n] = v;
  }
}

QSeries QSeries::truncated(long prec) const {
  if (prec > prec_) throw std::domain_error("QSeries::truncated: cannot extend precision");
  QSeries r(prec, order_);
  for (auto& [n, c] : coeffs_) {
    if (n >= prec) break;
    r.coeffs_[n] = c;
  }
  return r;
}

QSeries QSeries::promoted(long order) const {
  QSeries r(prec_, order);
  for (auto& [n, c] : coeffs_) r.coeffs_[n] = c.promoted(order);
  return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  long ord = lcm_long(a.order_, b.order_);
  QSeries r(std::min(a.prec_, b.prec_), ord);
  for (auto& [n, c] : a.coeffs_) {
    if (n >= r.prec_) break;
    r.coeffs_[n] = c.promoted(ord);
  }
  for (auto& [n, c] : b.coeffs_) {
    if (n >= r.prec_) break;
    auto it = r.coeffs_.find(n);
    if (it == r.coeffs_.end())
      r.coeffs_[n] = c.promoted(ord);
    else {
      it->second += c;
      if (it->second.is_zero()) r.coeffs_.erase(it);
    }
  }
  return r;
}

QSeries QSeries::operator-() const {
  QSeries r(prec_, order_);
  for (auto& [n, c] : coeffs_) r.coeffs_[n] = -c;
  return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const CycloElem& c, const QSeries& a) {
  long ord = lcm_long(c.order(), a.order_);
  QSeries r(a.prec_, ord);
  if (c.is_zero()) return r;
  for (auto& [n, x] : a.coeffs_) {
    CycloElem v = c * x;
    if (!v.is_zero()) r.coeffs_[n] = v.promoted(ord);
  }
  return r;
}

QSeries qs_mul(const QSeries& f, const QSeries& g) {
  long ord = lcm_long(f.field_order(), g.field_order());
  long prec = std::min(f.prec(), g.prec());
  QSeries r(prec, ord);
  if (f.is_zero() || g.is_zero()) return r;
  std::map<long, CycloElem> acc;
  for (auto& [i, a] : f.terms()) {
    if (i >= prec) break;
    for (auto& [j, b] : g.terms()) {
      if (i + j >= prec) break;
      auto it = acc.find(i + j);
      if (it == acc.end())
        acc.emplace(i + j, a * b);
      else
        it->second += a * b;
    }
  }
  for (auto& [n, c] : acc)
    if (!c.is_zero()) r.set_coeff(n, c.promoted(ord));
  return r;
}

QSeries qs_div(const QSeries& f, const QSeries& g) {
  long prec = std::min(f.prec(), g.prec());
  if (prec <= 0) return QSeries(0, lcm_long(f.field_order(), g.field_order()));
  CycloElem g0 = g.coeff(0);
  if (g0.is_zero()) throw std::domain_error("qs_div: divisor must be a unit series (g(0) != 0)");
  long ord = lcm_long(f.field_order(), g.field_order());
  CycloElem inv0 = g0.inverse();
  // b_n = (f_n - sum_{0 < j <= n, g_j != 0} g_j b_{n-j}) / g_0, sparse over g's support
  std::vector<CycloElem> b(prec, CycloElem::zero(ord));
  std::vector<std::pair<long, CycloElem>> gterms;
  for (auto& [j, c] : g.terms()) {
    if (j == 0 || j >= prec) continue;
    gterms.emplace_back(j, c.promoted(ord));
  }
  QSeries r(prec, ord);
  for (long n = 0; n < prec; ++n) {
    CycloElem s = f.coeff(n).promoted(ord);
    for (auto& [j, c] : gterms) {
      if (j > n) break;
      if (!b[n - j].is_zero()) s -= c * b[n - j];
    }
    b[n] = s * inv0;
    if (!b[n].is_zero()) r.set_coeff(n, b[n]);
  }
  return r;
}

bool qs_agree_below(const QSeries& f, const QSeries& g, long bound) {
  if (bound > f.prec() || bound > g.prec())
    throw std::domain_error("qs_agree_below: bound exceeds tracked precision");
  for (long n = 0; n < bound; ++n)
    if (f.coeff(n) != g.coeff(n)) return false;
  return true;
}

std::string QSeries::str(long upto) const {
  std::ostringstream os;
  bool first = true;
  for (auto& [n, c] : coeffs_) {
    if (n >= std::min(prec_, upto)) break;
    if (!first) os << " + ";
    os << "(" << c.str() << ")*q^" << n;
    first = false;
  }
  if (first) os << "0";
  os << " + O(q^" << std::min(prec_, upto) << ")";
  return os.str();
}

QSeries theta(long prec) {
  if (prec < 1) throw std::domain_error("theta: prec >= 1 required");
  QSeries r(prec, 1);
  r.set_coeff(0, CycloElem::one(1));
  for (long n = 1; n * n < prec; ++n) r.set_coeff(n * n, CycloElem(Rational(2), 1));
  return r;
}

QSeries theta_odd(long prec) {
  QSeries r(prec, 1);
  for (long n = 1; n * n < prec; n += 2) r.set_coeff(n * n, CycloElem(Rational(2), 1));
  return r;
}

QSeries theta_psi(const DirichletChar& psi, long prec) {
  return theta_psi_t(psi, 1, prec);
}

QSeries theta_psi_t(const DirichletChar& psi, long t, long prec) {
  if (psi.is_even()) throw std::domain_error("theta_psi: psi must be odd (psi(-1) = -1)");
  DirichletChar p = psi.primitive();
  QSeries r(prec, p.value_order());
  for (long n = 1; t * n * n < prec; ++n) {
    CycloElem c = p.eval(n);
    if (c.is_zero()) continue;
    r.set_coeff(t * n * n, CycloElem(Rational(n), 1) * c);
  }
  return r;
}

QSeries eisenstein(const DirichletChar& chi_in, const DirichletChar& psi_in, long k, long prec) {
  if (k < 1) throw std::domain_error("eisenstein: k >= 1 required");
  DirichletChar chi = chi_in.primitive();
  DirichletChar psi = psi_in.primitive();
  bool chi_odd = !chi.is_even(), psi_odd = !psi.is_even();
  if (((chi_odd != psi_odd) ? 1 : 0) != (k % 2))
    throw std::domain_error("eisenstein: parity mismatch (chi psi)(-1) != (-1)^k");
  long ord = lcm_long(chi.value_order(), psi.value_order());
  QSeries r(prec, ord);
  // constant term
  if (chi.modulus() == 1 && prec > 0) {
    CycloElem b = bernoulli_generalized(k, psi);
    CycloElem c0 = CycloElem(Rational(Int(-1), Int(2 * k)), 1) * b;
    if (!c0.is_zero()) r.set_coeff(0, c0);
  }
  std::vector<CycloElem> psi_val(psi.modulus()), chi_val(chi.modulus());
  for (long a = 0; a < psi.modulus(); ++a) psi_val[a] = psi.eval(a);
  for (long a = 0; a < chi.modulus(); ++a) chi_val[a] = chi.eval(a);
  for (long n = 1; n < prec; ++n) {
    CycloElem s = CycloElem::zero(ord);
    for (long d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      long e = n / d;
      // term for divisor d
      CycloElem t1 = psi_val[d % psi.modulus()] * chi_val[e % chi.modulus()];
      if (!t1.is_zero()) {
        Rational dp(1);
        for (long i = 0; i < k - 1; ++i) dp *= Rational(d);
        s += CycloElem(dp, 1) * t1;
      }
      if (d != e) {
        CycloElem t2 = psi_val[e % psi.modulus()] * chi_val[d % chi.modulus()];
        if (!t2.is_zero()) {
          Rational ep(1);
          for (long i = 0; i < k - 1; ++i) ep *= Rational(e);
          s += CycloElem(ep, 1) * t2;
        }
      }
    }
    if (!s.is_zero()) r.set_coeff(n, s);
  }
  return r;
}

QSeries eisenstein2_level(long t, long prec) {
  if (t < 2) throw std::domain_error("eisenstein2_level: t >= 2 required");
  DirichletChar triv = DirichletChar::trivial(1);
  QSeries e2 = eisenstein(triv, triv, 2, prec);
  QSeries shifted = v_ell(e2, t, prec);
  return e2 - CycloElem(Rational(t), 1) * shifted;
}

QSeries u_ell(const QSeries& f, long ell) {
  if (ell < 1) throw std::domain_error("u_ell: ell >= 1 required");
  long prec = (f.prec() + ell - 1) / ell;
  QSeries r(prec, f.field_order());
  for (auto& [n, c] : f.terms()) {
    if (n % ell != 0) continue;
    if (n / ell >= prec) break;
    r.set_coeff(n / ell, c);
  }
  return r;
}

QSeries v_ell(const QSeries& f, long ell, long prec_cap) {
  if (ell < 1) throw std::domain_error("v_ell: ell >= 1 required");
  long prec = f.prec() * ell;
  if (prec_cap >= 0) {
    if (prec > prec_cap) prec = prec_cap;
  }
  QSeries r(prec, f.field_order());
  for (auto& [n, c] : f.terms()) {
    if (n * ell >= prec) break;
    r.set_coeff(n * ell, c);
  }
  return r;
}

long gamma1_index(long M) {
  if (M == 1) return 1;
  if (M == 2) return 3;
  long idx = M * M;
  for (auto [p, e] : factor_long(M)) {
    (void)e;
    idx = idx / (p * p) * (p * p - 1);
  }
  return idx;
}

long gamma0_index(long M) {
  long idx = M;
  for (auto [p, e] : factor_long(M)) {
    (void)e;
    idx = idx / p * (p + 1);
  }
  return idx;
}

long sturm_bound(long k2, long M) {
  if (k2 < 1 || M < 1) throw std::domain_error("sturm_bound: k2 >= 1, M >= 1 required");
  // ceil((k2/2) * index / 12) + 1 = ceil(k2 * index / 24) + 1
  long idx = gamma1_index(M);
  Int num = Int(k2) * idx;
  Int q = num / 24;
  if (num % 24 != 0) q += 1;
  return static_cast<long>(q.get_si()) + 1;
}

}  // namespace shq
