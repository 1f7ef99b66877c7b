#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shq/ops.hpp"
#include "shq/spaces.hpp"

using namespace shq;

namespace {
DirichletChar triv(long M) { return DirichletChar::trivial(M); }
}  // namespace

TEST_CASE("qseries basics (spec examples)") {
  // (1+q)(1-q) = 1-q^2
  QSeries a(5, 1), b(5, 1);
  a.set_coeff(0, CycloElem::one(1));
  a.set_coeff(1, CycloElem::one(1));
  b.set_coeff(0, CycloElem::one(1));
  b.set_coeff(1, -CycloElem::one(1));
  QSeries prod = qs_mul(a, b);
  CHECK(prod.coeff(0) == CycloElem::one(1));
  CHECK(prod.coeff(1).is_zero());
  CHECK(prod.coeff(2) == -CycloElem::one(1));

  // theta^2 counts representations as sums of two squares
  QSeries th = theta(50);
  QSeries th2 = qs_mul(th, th);
  auto r2 = [](long n) {
    long c = 0;
    for (long x = -10; x <= 10; ++x)
      for (long y = -10; y <= 10; ++y)
        if (x * x + y * y == n) ++c;
    return c;
  };
  for (long n = 0; n < 50; ++n)
    CHECK(th2.coeff(n) == CycloElem(Rational(r2(n)), 1));

  CHECK(theta(26).coeff(25) == CycloElem(Rational(2), 1));
  CHECK(theta(1).coeff(0) == CycloElem::one(1));
}

TEST_CASE("theta_psi (paper example values)") {
  DirichletChar psi = DirichletChar::quadratic(-3);
  QSeries t = theta_psi(psi, 30);
  CHECK(t.coeff(1) == CycloElem(Rational(1), 1));
  CHECK(t.coeff(4) == CycloElem(Rational(-2), 1));
  CHECK(t.coeff(9).is_zero());
  CHECK(t.coeff(16) == CycloElem(Rational(4), 1));
  CHECK(t.coeff(25) == CycloElem(Rational(-5), 1));
  // support on squares, |a_{n^2}| in {0, n}
  for (long n = 0; n < 30; ++n) {
    long s = static_cast<long>(std::lround(std::sqrt(double(n))));
    if (s * s != n) CHECK(t.coeff(n).is_zero());
  }
  // psi = chi_{-4}: psi(2) = 0 kills q^4
  DirichletChar psi4 = DirichletChar::quadratic(-4);
  QSeries t4 = theta_psi(psi4, 10);
  CHECK(t4.coeff(1) == CycloElem(Rational(1), 1));
  CHECK(t4.coeff(4).is_zero());
  CHECK(t4.coeff(9) == CycloElem(Rational(-3), 1));
  CHECK_THROWS(theta_psi(DirichletChar::quadratic(12), 10));  // even psi rejected
}

TEST_CASE("eisenstein (spec examples)") {
  DirichletChar psi = DirichletChar::quadratic(-3);
  QSeries e = eisenstein(psi, psi, 2, 30);
  // a_n = psi(n) sigma(n)
  auto sigma = [](long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) s += d;
    return s;
  };
  for (long n = 1; n < 30; ++n) {
    long want = sigma(n) * (n % 3 == 0 ? 0 : kronecker_symbol(-3, n));
    CHECK(e.coeff(n) == CycloElem(Rational(want), 1));
  }
  CHECK(e.coeff(0).is_zero());
  // E4: a0 = 1/240 normalization, a1 = 1, a2 = 9
  QSeries e4 = eisenstein(triv(1), triv(1), 4, 10);
  CHECK(e4.coeff(0) == CycloElem(Rational(Int(1), Int(240)), 1));
  CHECK(e4.coeff(1) == CycloElem::one(1));
  CHECK(e4.coeff(2) == CycloElem(Rational(9), 1));
  CHECK_THROWS(eisenstein(triv(1), psi, 2, 10));  // parity mismatch
}

TEST_CASE("u_ell and v_ell") {
  QSeries th = theta(40);
  QSeries u4 = u_ell(th, 4);
  CHECK(u4.prec() == 10);
  CHECK(u4.coeff(0) == CycloElem::one(1));
  CHECK(u4.coeff(1) == CycloElem(Rational(2), 1));
  CHECK(u4.coeff(4) == CycloElem(Rational(2), 1));
  CHECK(u4.coeff(9) == CycloElem(Rational(2), 1));

  DirichletChar psi = DirichletChar::quadratic(-3);
  QSeries tpsi = theta_psi(psi, 26);
  CHECK(u_ell(tpsi, 25).coeff(1) == CycloElem(Rational(-5), 1));

  QSeries q(2, 1);
  q.set_coeff(1, CycloElem::one(1));
  CHECK(v_ell(q, 5).coeff(5) == CycloElem::one(1));

  // u_ell(v_ell(f)) = f and v(u(f)) = projection
  QSeries f = eisenstein(psi, psi, 2, 20);
  for (long ell : {2L, 3L, 5L}) {
    QSeries vv = v_ell(f, ell);
    QSeries uu = u_ell(vv, ell);
    CHECK(qs_agree_below(uu, f, std::min(uu.prec(), f.prec())));
  }
  CHECK(u_ell(f, 1).prec() == f.prec());
}

TEST_CASE("sturm bounds (spec examples)") {
  CHECK(sturm_bound(4, 36) == 145);
  CHECK(sturm_bound(1, 4) == 2);
  CHECK(sturm_bound(8, 1) == 2);
}

TEST_CASE("integral spaces: dimensions and canonical bases") {
  // S_2(Gamma0(36)): dim 1
  ModularFormSpace s36 = build_integral_space(2, 36, triv(36), true);
  CHECK(s36.dim() == 1);
  // the normalized generator is the conductor-36 elliptic form: q - 4q^7 + 2q^13 + 8q^19 ...
  CHECK(s36.basis[0].coeff(1) == CycloElem::one(1));
  CHECK(s36.basis[0].coeff(2).is_zero());
  CHECK(s36.basis[0].coeff(7) == CycloElem(Rational(-4), 1));
  CHECK(s36.basis[0].coeff(13) == CycloElem(Rational(2), 1));

  // rebuild reproduces the same basis (canonical echelon)
  ModularFormSpace again = build_integral_space(2, 36, triv(36), true);
  for (long i = 0; i < s36.dim(); ++i)
    CHECK(qs_agree_below(s36.basis[i], again.basis[i], s36.prec));

  // S_2(Gamma0(4)) = 0
  CHECK(build_integral_space(2, 4, triv(4), true).dim() == 0);
  // M_4(Gamma1(1)-like small level): dim M_4(SL2) realized at level 1
  ModularFormSpace m41 = build_integral_space(4, 1, triv(1), false);
  CHECK(m41.dim() == 1);
  CHECK(build_integral_space(4, 1, triv(1), true).dim() == 0);

  // higher precision regeneration agrees with the stored basis
  auto hi = s36.basis_at(s36.prec + 40);
  CHECK(hi[0].prec() >= s36.prec + 40);
  CHECK(qs_agree_below(hi[0].truncated(s36.prec), s36.basis[0], s36.prec));

  // oracle match across characters at level 20 weight 2 and 3
  for (auto& chi : all_characters(20)) {
    for (long k : {2L, 3L}) {
      if (chi.is_even() != (k % 2 == 0)) continue;
      ModularFormSpace sp = build_integral_space(k, 20, chi, true);
      CHECK(sp.dim() == dim_integral(k, 20, chi, true));
      ModularFormSpace mp = build_integral_space(k, 20, chi, false);
      CHECK(mp.dim() == dim_integral(k, 20, chi, false));
    }
  }
}

TEST_CASE("coordinates and membership") {
  ModularFormSpace s36 = build_integral_space(2, 36, triv(36), true);
  auto c0 = s36.coordinates(s36.basis[0]);
  CHECK(c0.member);
  CHECK(c0.coords(0) == CycloElem::one(1));

  QSeries zero(s36.prec, 1);
  auto cz = s36.coordinates(zero);
  CHECK(cz.member);

  // E_psi is not cuspidal at level 36
  DirichletChar psi = DirichletChar::quadratic(-3);
  QSeries e = eisenstein(psi, psi, 2, s36.prec);
  auto ce = s36.coordinates(e);
  CHECK(!ce.member);
}

TEST_CASE("half-integral spaces: the theta_psi anchor at level 36") {
  DirichletChar psi = DirichletChar::quadratic(-3);
  DirichletChar eps = char_product(psi, DirichletChar::quadratic(-4)).extended(36);
  ModularFormSpace hs = build_half_integral_space(3, 36, eps);
  CHECK(hs.dim() == 1);
  // the basis vector is theta_psi itself (normalized leading 1)
  QSeries tp = theta_psi(psi, hs.prec);
  CHECK(qs_agree_below(hs.basis[0], tp, hs.prec));
  auto c = hs.coordinates(tp);
  CHECK(c.member);

  // zero spaces at small levels
  CHECK(build_half_integral_space(3, 12, triv(12)).dim() == 0);
  CHECK(build_half_integral_space(3, 20, triv(20)).dim() == 0);
  CHECK(build_half_integral_space(3, 4 * 1, triv(4), 30).dim() == 0);

  // regeneration by recipe reproduces the stored basis
  auto hi = hs.basis_at(hs.prec + 50);
  CHECK(qs_agree_below(hi[0].truncated(hs.prec), hs.basis[0], hs.prec));
  CHECK(qs_agree_below(hi[0], theta_psi(psi, hi[0].prec()), hs.prec + 50));
}

TEST_CASE("half-integral spaces: oracle match and theta-embedding across slices") {
  for (long N : {12L, 20L, 36L}) {
    for (auto& chi : all_characters(N)) {
      for (long k2 : {3L, 5L}) {
        ModularFormSpace sp = build_half_integral_space(k2, N, chi);
        CHECK(sp.dim() == dim_half_integral(k2, N, chi, true));
        // every basis element times theta lies in the integral space of weight (k2+1)/2
        if (sp.dim() == 0) continue;
        long w = (k2 + 1) / 2;
        DirichletChar tw = w % 2 == 0 ? chi : char_product(chi, DirichletChar::quadratic(-4));
        ModularFormSpace target = build_integral_space(w, N, tw.extended(N), true);
        QSeries th = theta(target.prec);
        for (auto& b : sp.basis_at(target.prec)) {
          QSeries g = qs_mul(b, th);
          auto c = target.coordinates(g);
          CHECK(c.member);
        }
      }
    }
  }
}

TEST_CASE("half-integral Hecke stability spot check (T_{l^2} via coefficients)") {
  // level 36 slice containing theta_psi: T_{25} and T_{49} keep it in the space
  DirichletChar psi = DirichletChar::quadratic(-3);
  DirichletChar eps = char_product(psi, DirichletChar::quadratic(-4)).extended(36);
  ModularFormSpace hs = build_half_integral_space(3, 36, eps);
  for (long ell : {5L, 7L}) {
    auto hi = hs.basis_at(ell * ell * hs.prec);
    for (auto& b : hi) {
      QSeries img = act_t_ellsq_half(b, ell, 3, eps);
      auto c = hs.coordinates(img.truncated(hs.prec));
      CHECK(c.member);
    }
  }
}
