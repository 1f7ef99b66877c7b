#include "shq/ops.hpp"

namespace shq {

QSeries act_t_ell_integral(const QSeries& f, long ell, long k, const DirichletChar& eps) {
  long prec = f.prec() / ell + (f.prec() % ell ? 1 : 0);
  QSeries r(prec, f.field_order());
  CycloElem el = eps.eval(ell);
  Rational lk(1);
  for (long i = 0; i < k - 1; ++i) lk *= Rational(ell);
  CycloElem scale = CycloElem(lk, 1) * el;
  for (long n = 0; n < prec; ++n) {
    CycloElem c = f.coeff(ell * n);
    if (n % ell == 0 && !scale.is_zero()) c += scale * f.coeff(n / ell);
    if (!c.is_zero()) r.set_coeff(n, c);
  }
  return r;
}

QSeries act_u_ell(const QSeries& f, long ell) { return u_ell(f, ell); }

QSeries act_t_ellsq_half(const QSeries& f, long ell, long k2, const DirichletChar& eps) {
  if (k2 % 2 == 0) throw std::domain_error("act_t_ellsq_half: odd weight numerator required");
  long lambda = (k2 - 1) / 2;
  long prec = f.prec() / (ell * ell) + (f.prec() % (ell * ell) ? 1 : 0);
  QSeries r(prec, f.field_order());
  CycloElem el = eps.eval(ell);
  CycloElem el2 = eps.eval(ell * ell);
  long m1l = kronecker_symbol(-1, ell);
  Rational lpow1(1);  // l^{lambda-1}, lambda >= 1 here
  for (long i = 0; i < lambda - 1; ++i) lpow1 *= Rational(ell);
  Rational lpow2(1);  // l^{2 lambda - 1}
  for (long i = 0; i < 2 * lambda - 1; ++i) lpow2 *= Rational(ell);
  CycloElem mid_base = el * CycloElem(lpow1 * Rational(lambda % 2 == 1 ? m1l : 1), 1);
  CycloElem last = el2 * CycloElem(lpow2, 1);
  for (long n = 0; n < prec; ++n) {
    CycloElem c = f.coeff(ell * ell * n);
    long kron = kronecker_symbol(n, ell);
    if (kron != 0 && !mid_base.is_zero()) {
      CycloElem mid = mid_base * f.coeff(n);
      if (kron == -1) mid = -mid;
      c += mid;
    }
    if (n % (ell * ell) == 0 && !last.is_zero()) c += last * f.coeff(n / (ell * ell));
    if (!c.is_zero()) r.set_coeff(n, c);
  }
  return r;
}

}  // namespace shq
