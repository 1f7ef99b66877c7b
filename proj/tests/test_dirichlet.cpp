#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shq/dirichlet.hpp"

using namespace shq;

namespace {
Rational Q(long n, long d = 1) { return Rational(Int(n), Int(d)); }
CycloElem C(long n) { return CycloElem(Q(n), 1); }
}  // namespace

TEST_CASE("quadratic characters and evaluation") {
  DirichletChar chi3 = DirichletChar::quadratic(-3);
  CHECK(chi3.modulus() == 3);
  CHECK(chi3.eval(2) == C(-1));
  CHECK(chi3.eval(6).is_zero());
  CHECK(!chi3.is_even());

  DirichletChar triv = DirichletChar::trivial(1);
  CHECK(triv.eval(12345) == C(1));

  DirichletChar chi4 = DirichletChar::quadratic(-4);
  CHECK(chi4.eval(3) == C(-1));
  CHECK(chi4.eval(5) == C(1));
}

TEST_CASE("teichmuller character") {
  // p = 3: quadratic character
  DirichletChar t3 = teichmuller(3);
  CHECK(t3.eval(2) == C(-1));

  // p = 5: tau(2) = zeta_4 (2 is the smallest primitive root mod 5)
  DirichletChar t5 = teichmuller(5);
  CHECK(t5.eval(2) == CycloElem::root_of_unity(4, 1));
  CHECK(t5.value_order() == 4);

  // tau^2 = Legendre symbol mod 5
  DirichletChar t5sq = char_product(t5, t5);
  for (long a = 1; a < 5; ++a)
    CHECK(t5sq.eval(a) == C(kronecker_symbol(5, a)));

  // tau^{p-1} trivial; tau(a) distinguishes all residues
  DirichletChar t5q = char_product(t5sq, t5sq);
  CHECK(t5q.is_trivial());
  CHECK_THROWS(teichmuller(2));
  CHECK_THROWS(teichmuller(9));
}

TEST_CASE("character products") {
  DirichletChar chi3 = DirichletChar::quadratic(-3);
  CHECK(char_product(chi3, chi3).is_trivial());

  DirichletChar chi4 = DirichletChar::quadratic(-4);
  DirichletChar triv3 = DirichletChar::trivial(3);
  DirichletChar prod = char_product(chi4, triv3);
  CHECK(prod.modulus() == 12);
  for (long a = 1; a < 12; ++a) {
    if (gcd_long(a, 12) != 1) continue;
    CHECK(prod.eval(a) == chi4.eval(a));
  }

  // chi12 = chi3 * chi4 has conductor 12 and is even
  DirichletChar chi12 = char_product(chi3, chi4);
  CHECK(chi12.conductor() == 12);
  CHECK(chi12.is_even());
  CHECK(chi12.eval(5) == C(-1));
  CHECK(chi12.eval(7) == C(-1));
  CHECK(chi12.eval(11) == C(1));
}

TEST_CASE("kronecker symbol") {
  CHECK(kronecker_symbol(-1, 3) == -1);
  CHECK(kronecker_symbol(-1, 5) == 1);
  CHECK(kronecker_symbol(5, 11) == 1);  // 4^2 = 16 = 5 mod 11
  CHECK(kronecker_symbol(12, 3) == 0);
  // multiplicativity in n
  for (long D : {-3L, -4L, 5L, 12L, -7L}) {
    for (long m = 1; m < 30; ++m)
      for (long n = 1; n < 30; ++n)
        CHECK(kronecker_symbol(D, m * n) == kronecker_symbol(D, m) * kronecker_symbol(D, n));
  }
  // (p/.) = (-1/.)^{(p-1)/2} tau^{(p-1)/2} as characters mod 4p
  for (long p : {3L, 5L, 7L}) {
    DirichletChar tau = teichmuller(p);
    DirichletChar tpow = DirichletChar::trivial(p);
    for (long i = 0; i < (p - 1) / 2; ++i) tpow = char_product(tpow, tau);
    DirichletChar minus1 = DirichletChar::quadratic(-4);
    DirichletChar m1pow = DirichletChar::trivial(4);
    if (((p - 1) / 2) % 2 == 1) m1pow = minus1;
    DirichletChar rhs = char_product(m1pow, tpow);
    for (long a = 1; a < 4 * p; ++a) {
      if (gcd_long(a, 4 * p) != 1) continue;
      CHECK(rhs.eval(a) == C(kronecker_symbol(p, a)));
    }
  }
}

TEST_CASE("crt split and component index") {
  auto s = crt_split(7, 1, 5);
  CHECK(s.d_p == 2);
  CHECK(s.d_tame == 3);
  auto s1 = crt_split(1, 7, 5);
  CHECK(s1.d_p == 1);
  CHECK(s1.d_tame == 1);
  auto s2 = crt_split(11, 3, 5);
  CHECK(s2.d_p == 1);
  CHECK(s2.d_tame == 11);
  CHECK_THROWS(crt_split(10, 1, 5));

  CHECK(component_index(1, 0, 5) == 1);
  CHECK(component_index(2, 3, 5) == 1);
  CHECK(component_index(0, 0, 7) == 0);
  // doubling map: component of (2l, 2j) = 2 * component of (l, j)
  for (long p : {5L, 13L})
    for (long l = 0; l < 6; ++l)
      for (long j = 0; j < p - 1; ++j)
        CHECK(component_index(2 * l, 2 * j, p) ==
              (2 * component_index(l, j, p)) % (p - 1));
  // epsilon twist shifts the component by (p-1)/2
  for (long p : {5L, 13L})
    for (long l = 0; l < 4; ++l)
      for (long j = 0; j < p - 1; ++j)
        CHECK(component_index(l, j + (p - 1) / 2, p) ==
              (component_index(l, j, p) + (p - 1) / 2) % (p - 1));
}

TEST_CASE("nontrivial character sums vanish") {
  for (long M : {3L, 4L, 5L, 12L, 36L}) {
    for (auto& chi : all_characters(M)) {
      if (chi.is_trivial()) continue;
      CycloElem s = CycloElem::zero(1);
      for (long a = 1; a <= M; ++a) s += chi.eval(a);
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("conductor, primitive part, labels") {
  DirichletChar chi3 = DirichletChar::quadratic(-3);
  DirichletChar ext = chi3.extended(36);
  CHECK(ext.conductor() == 3);
  CHECK(ext.primitive() == chi3);
  DirichletChar reparsed = DirichletChar::parse(ext.label());
  CHECK(reparsed == ext);

  // multiplicativity chi(ab) = chi(a) chi(b) on units
  for (long a = 1; a < 36; ++a)
    for (long b = 1; b < 36; ++b) {
      if (gcd_long(a, 36) != 1 || gcd_long(b, 36) != 1) continue;
      CHECK(ext.eval(a * b) == ext.eval(a) * ext.eval(b));
    }
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli_number(0) == Q(1));
  CHECK(bernoulli_number(1) == Q(-1, 2));
  CHECK(bernoulli_number(2) == Q(1, 6));
  CHECK(bernoulli_number(4) == Q(-1, 30));
  CHECK(bernoulli_number(12) == Q(-691, 2730));

  // B_{1,chi} for odd quadratic chi mod 3: -1/3 * sum a*chi(a) style value
  DirichletChar chi3 = DirichletChar::quadratic(-3);
  CycloElem b1 = bernoulli_generalized(1, chi3);
  // B_{1,chi} = (1/3)(chi(1)*B_1(1/3)... ) known value -1/3
  CHECK(b1 == CycloElem(Q(-1, 3), 1));
}
