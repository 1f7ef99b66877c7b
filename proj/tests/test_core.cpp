#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shq/cyclo.hpp"
#include "shq/factor.hpp"
#include "shq/linalg.hpp"
#include "shq/newton.hpp"
#include "shq/poly.hpp"
#include "shq/rational.hpp"

#include <random>

using namespace shq;

namespace {

Rational Q(long n, long d = 1) { return Rational(Int(n), Int(d)); }

Poly poly_q(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.emplace_back(c);
  return Poly::from_rationals(v);
}

Rational random_rational(std::mt19937_64& rng) {
  long n = static_cast<long>(rng() % 41) - 20;
  long d = 1 + static_cast<long>(rng() % 9);
  return Q(n, d);
}

CycloElem random_cyclo(long m, std::mt19937_64& rng) {
  std::vector<Rational> c(euler_phi(m));
  for (auto& x : c) x = random_rational(rng);
  return CycloElem(m, std::move(c));
}

}  // namespace

TEST_CASE("rational basics and p-adic valuation") {
  CHECK(Q(45).str() == "45");
  CHECK(Q(6, 4) == Q(3, 2));
  CHECK((Q(1, 3) + Q(1, 6)) == Q(1, 2));

  CHECK(padic_valuation(Q(45), 3).value == Q(2));
  CHECK(padic_valuation(Q(1, 5), 5).value == Q(-1));
  CHECK(padic_valuation(Q(0), 7).infinite);
  CHECK_THROWS(padic_valuation(Q(4), 6));

  // v(xy) = v(x) + v(y), v(x+y) >= min(v(x), v(y))
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational x = random_rational(rng), y = random_rational(rng);
    if (x.is_zero() || y.is_zero()) continue;
    for (long p : {2L, 3L, 5L}) {
      auto vx = padic_valuation(x, p).value, vy = padic_valuation(y, p).value;
      CHECK(padic_valuation(x * y, p).value == vx + vy);
      if (!(x + y).is_zero()) {
        Rational vmin = vx < vy ? vx : vy;
        CHECK(padic_valuation(x + y, p).value >= vmin);
      }
    }
  }
}

TEST_CASE("cyclotomic embedding and identities") {
  CycloElem a(Q(3, 2), 4);
  CHECK(a.coords().size() == 2);
  CHECK(a.coords()[0] == Q(3, 2));
  CHECK(a.coords()[1] == Q(0));

  CHECK(CycloElem(Q(0), 12).is_zero());
  CycloElem one = CycloElem::one(1);
  CycloElem x = random_cyclo(12, *(new std::mt19937_64(3)));
  CHECK(one * x == x);

  // zeta_4^2 = -1, zeta_3^2 + zeta_3 + 1 = 0
  CycloElem i4 = CycloElem::root_of_unity(4, 1);
  CHECK(i4 * i4 == CycloElem(Q(-1), 4));
  CycloElem z3 = CycloElem::root_of_unity(3, 1);
  CHECK((z3 * z3 + z3 + CycloElem::one(3)).is_zero());

  // order-1 round trip
  CycloElem r(Q(7, 3), 1);
  CHECK(r.is_rational());
  CHECK(r.to_rational() == Q(7, 3));

  // promotion compatibility: zeta_3 inside Q(zeta_12)
  CHECK(z3.promoted(12) * z3.promoted(12) * z3.promoted(12) == CycloElem::one(12));
}

TEST_CASE("cyclotomic field axioms (randomized)") {
  std::mt19937_64 rng(2024);
  for (long m : {1L, 3L, 4L, 5L, 12L}) {
    for (int i = 0; i < 40; ++i) {
      CycloElem a = random_cyclo(m, rng), b = random_cyclo(m, rng), c = random_cyclo(m, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inverse() == CycloElem::one(m));
    }
  }
}

TEST_CASE("cyclotomic galois and minimization") {
  CycloElem z12 = CycloElem::root_of_unity(12, 1);
  CHECK(z12.galois(5) == CycloElem::root_of_unity(12, 5));
  // zeta_12^2 = zeta_6 lives in Q(zeta_3) already (zeta_6 = 1 + zeta_3)
  CycloElem z6 = (z12 * z12).minimized();
  CHECK(z6.order() == 3);
  CHECK(z6 == CycloElem::one(3) + CycloElem::root_of_unity(3, 1));
}

TEST_CASE("polynomial arithmetic, gcd, squarefree") {
  Poly one_minus_t = poly_q({1, -1});
  Poly f = one_minus_t * one_minus_t;
  CHECK(squarefree_part(f) == one_minus_t);  // f(0)=1 keeps constant-term-1 form

  Poly g = poly_q({1, -3, 2});  // (1-T)(1-2T)
  CHECK(squarefree_part(g) == g);

  // T^2 (1-T)^3 -> monic T^2 - T
  Poly t2 = poly_q({0, 0, 1});
  Poly c3 = one_minus_t * one_minus_t * one_minus_t;
  CHECK(squarefree_part(t2 * c3) == poly_q({0, -1, 1}));

  // squarefree_part(f*g) divides sf(f)*sf(g); equality when gcd(f,g)=1
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto rnd_poly = [&](long deg) {
      std::vector<Rational> c(deg + 1);
      for (auto& x : c) x = Q(static_cast<long>(rng() % 7) - 3);
      c[deg] = Q(1 + static_cast<long>(rng() % 3));
      return Poly::from_rationals(c);
    };
    Poly a = rnd_poly(3), b = rnd_poly(2);
    if (a.is_zero() || b.is_zero()) continue;
    Poly sab = squarefree_part(a * b);
    Poly prod = squarefree_part(a) * squarefree_part(b);
    CHECK(poly_divides(sab, prod));
    if (poly_gcd(a, b).degree() == 0) CHECK(poly_divides(prod, sab));
  }
}

TEST_CASE("newton polygons") {
  auto np1 = newton_polygon(poly_q({1, -6, 9}), 3);
  CHECK(np1.slopes.size() == 1);
  CHECK(np1.slopes.at(Q(1)) == 2);

  auto np2 = newton_polygon(poly_q({1, 1}), 7);
  CHECK(np2.slopes.size() == 1);
  CHECK(np2.slopes.at(Q(0)) == 1);

  auto np3 = newton_polygon(poly_q({1, 5, 1}), 5);
  CHECK(np3.slopes.size() == 1);
  CHECK(np3.slopes.at(Q(0)) == 2);

  CHECK_THROWS(newton_polygon(Poly(1), 5));
}

TEST_CASE("pure slope factors (spec examples)") {
  // (1-T)(1-9T), p=3, sigma=2 -> 1-9T
  Poly f = poly_q({1, -1}) * poly_q({1, -9});
  CHECK(pure_slope_factor(f, 3, Q(2)) == poly_q({1, -9}));
  // 1-6T+9T^2 pure of slope 1
  Poly g = poly_q({1, -6, 9});
  CHECK(pure_slope_factor(g, 3, Q(1)) == g);
  // no slope-1 side
  CHECK(pure_slope_factor(poly_q({1, -1}), 5, Q(1)) == poly_q({1}));
}

TEST_CASE("slope factorization reconstructs seeded products") {
  std::mt19937_64 rng(0xabcdef);
  for (long p : {3L, 5L}) {
    for (int trial = 0; trial < 50; ++trial) {
      // build f as a product of pure-slope linear factors 1 - c p^s T
      Poly f = poly_q({1});
      std::map<Rational, long> want;
      long nf = 1 + static_cast<long>(rng() % 5);
      for (long i = 0; i < nf; ++i) {
        long s = static_cast<long>(rng() % 3);
        long c = 1 + static_cast<long>(rng() % 4);
        if (c % p == 0) ++c;
        long scale = 1;
        for (long j = 0; j < s; ++j) scale *= p;
        f = f * poly_q({1, -c * scale});
        want[Q(s)] += 1;
      }
      auto pieces = slope_factorization(f, p);
      Poly prod = poly_q({1});
      for (auto& [sigma, piece] : pieces) prod = prod * piece;
      CHECK(prod == f);
      // slope multiset of product = union of the constituents'
      auto np = newton_polygon(f, p);
      CHECK(np.slopes.size() == want.size());
      for (auto& [s, mult] : want) CHECK(np.slopes.at(s) == mult);
    }
  }
}

TEST_CASE("rational factorization") {
  // x^4 - 1 = (x-1)(x+1)(x^2+1)
  auto fs = factor_rational(poly_q({-1, 0, 0, 0, 1}));
  CHECK(fs.size() == 3);
  long total = 0;
  Poly prod = poly_q({1});
  for (auto& f : fs) {
    total += f.multiplicity * f.factor.degree();
    for (long i = 0; i < f.multiplicity; ++i) prod = prod * f.factor;
  }
  CHECK(total == 4);
  CHECK(prod.monic() == poly_q({-1, 0, 0, 0, 1}));

  // (x^2+x+1)^2 (x-2)
  Poly q = poly_q({1, 1, 1});
  auto fs2 = factor_rational(q * q * poly_q({-2, 1}));
  bool saw_quadratic_sq = false, saw_linear = false;
  for (auto& f : fs2) {
    if (f.factor.degree() == 2 && f.multiplicity == 2) saw_quadratic_sq = true;
    if (f.factor.degree() == 1 && f.multiplicity == 1) saw_linear = true;
  }
  CHECK(saw_quadratic_sq);
  CHECK(saw_linear);

  // random product reconstruction
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = poly_q({1});
    for (int i = 0; i < 3; ++i) {
      std::vector<Rational> c(2 + rng() % 3);
      for (auto& x : c) x = Q(static_cast<long>(rng() % 11) - 5);
      c.back() = Q(1 + static_cast<long>(rng() % 4));
      f = f * Poly::from_rationals(c);
    }
    auto fac = factor_rational(f);
    Poly prod = poly_q({1});
    for (auto& g : fac)
      for (long i = 0; i < g.multiplicity; ++i) prod = prod * g.factor;
    CHECK(prod.monic() == f.monic());
  }
}

TEST_CASE("cyclotomic factorization") {
  // T^2 + 1 over Q(i) splits into (T - i)(T + i)
  Poly f(4, {CycloElem::one(4), CycloElem::zero(4), CycloElem::one(4)});
  auto fs = factor_cyclo(f);
  CHECK(fs.size() == 2);
  for (auto& g : fs) CHECK(g.factor.degree() == 1);

  // T^2 - zeta_3 splits over Q(zeta_3): zeta_3 = (-1 - zeta_3)^2
  Poly g(3, {-CycloElem::root_of_unity(3, 1), CycloElem::zero(3), CycloElem::one(3)});
  auto gs = factor_cyclo(g);
  CHECK(gs.size() == 2);
  // T^2 - 2 stays irreducible over Q(zeta_3)
  Poly h(3, {CycloElem(Rational(-2), 3), CycloElem::zero(3), CycloElem::one(3)});
  auto hs = factor_cyclo(h);
  CHECK(hs.size() == 1);
  CHECK(hs[0].factor.degree() == 2);
}

TEST_CASE("charpoly and fredholm") {
  MatC id2(2, 2);
  id2(0, 0) = CycloElem::one(1);
  id2(0, 1) = CycloElem::zero(1);
  id2(1, 0) = CycloElem::zero(1);
  id2(1, 1) = CycloElem::one(1);
  CHECK(fredholm_poly(id2) == poly_q({1, -2, 1}));

  MatC z(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) z(i, j) = CycloElem::zero(1);
  CHECK(fredholm_poly(z) == poly_q({1}));
  CHECK(charpoly(z) == poly_q({0, 0, 0, 1}));

  // random integer matrices: charpoly matches Faddeev-LeVerrier recomputation
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    long n = 2 + rng() % 4;
    MatC a(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) a(i, j) = CycloElem(Q(static_cast<long>(rng() % 7) - 3), 1);
    Poly cp = charpoly(a);
    CHECK(cp.degree() == n);
    CHECK(cp.leading() == CycloElem::one(1));
    // trace and determinant checks
    CycloElem tr = CycloElem::zero(1);
    for (long i = 0; i < n; ++i) tr += a(i, i);
    CHECK(cp.coeff(n - 1) == -tr);
    // Cayley-Hamilton: cp(a) = 0
    MatC acc(n, n), pw(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        acc(i, j) = CycloElem::zero(1);
        pw(i, j) = (i == j) ? CycloElem::one(1) : CycloElem::zero(1);
      }
    for (long d = 0; d <= n; ++d) {
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) acc(i, j) += cp.coeff(d) * pw(i, j);
      if (d < n) pw = (pw * a).eval();
    }
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) CHECK(acc(i, j).is_zero());
  }
}

TEST_CASE("restriction of scalars charpoly (spec examples)") {
  // [zeta_4] acting on Q(i): T^2 + 1
  MatC m(1, 1);
  m(0, 0) = CycloElem::root_of_unity(4, 1);
  CHECK(restrict_scalars_charpoly(m) == poly_q({1, 0, 1}));

  // [2] over Q(zeta_4): (T-2)^2
  m(0, 0) = CycloElem(Q(2), 4);
  CHECK(restrict_scalars_charpoly(m) == poly_q({4, -4, 1}));

  // 0 matrix over Q(zeta_3), n = 2: T^4
  MatC z(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = CycloElem::zero(3);
  CHECK(restrict_scalars_charpoly(z) == poly_q({0, 0, 0, 0, 1}));

  // diagonal rational matrix over Q(zeta_m): phi(m)-th power of ordinary charpoly
  MatC d(2, 2);
  d(0, 0) = CycloElem(Q(3), 12);
  d(0, 1) = CycloElem::zero(12);
  d(1, 0) = CycloElem::zero(12);
  d(1, 1) = CycloElem(Q(-1), 12);
  Poly ord = poly_q({-3, 1}) * poly_q({1, 1});
  Poly pw = poly_q({1});
  for (long i = 0; i < euler_phi(12); ++i) pw = pw * ord;
  CHECK(restrict_scalars_charpoly(d) == pw);
}

TEST_CASE("kernel and solve") {
  MatC a(2, 3);
  long vals[2][3] = {{1, 2, 3}, {2, 4, 6}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = CycloElem(Q(vals[i][j]), 1);
  MatC k = kernel_basis(a);
  CHECK(k.cols() == 2);
  for (long j = 0; j < k.cols(); ++j) {
    for (long i = 0; i < 2; ++i) {
      CycloElem s = CycloElem::zero(1);
      for (long l = 0; l < 3; ++l) s += a(i, l) * k(l, j);
      CHECK(s.is_zero());
    }
  }
}
