#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shq/hecke.hpp"

using namespace shq;

namespace {
CycloElem Cl(long n) { return CycloElem(Rational(n), 1); }

ModularFormSpace theta_psi_slice36() {
  DirichletChar psi = DirichletChar::quadratic(-3);
  DirichletChar eps = char_product(psi, DirichletChar::quadratic(-4)).extended(36);
  return build_half_integral_space(3, 36, eps);
}
}  // namespace

TEST_CASE("T_{ l^2 } eigenvalues on the theta_psi line (paper example)") {
  ModularFormSpace hs = theta_psi_slice36();
  REQUIRE(hs.dim() == 1);
  DirichletChar psi = DirichletChar::quadratic(-3);
  // (1 + l) psi(l) for l = 5, 7, 11, 13
  long want[][2] = {{5, -6}, {7, 8}, {11, -12}, {13, 14}};
  for (auto& [ell, val] : want) {
    HeckeMatrix t = t_ellsq_half(hs, ell);
    CHECK(t.matrix(0, 0) == Cl(val));
  }
  // U_4: the recorded computed value is 2 psi(2) = -2 (the paper's example text
  // says (1+l)psi(l) for U as well; the direct action gives l psi(l))
  HeckeMatrix u4 = u_ellsq_half(hs, 2);
  CHECK(u4.matrix(0, 0) == Cl(-2));
  // U_9: 3 divides the conductor, so theta_psi lies in the kernel
  HeckeMatrix u9 = u_ellsq_half(hs, 3);
  CHECK(u9.matrix(0, 0).is_zero());
}

TEST_CASE("integral Hecke matrices on S_2(Gamma0(36))") {
  ModularFormSpace s = build_integral_space(2, 36, DirichletChar::trivial(36), true);
  REQUIRE(s.dim() == 1);
  // 36.2.a.a has a_5 = 0, a_7 = -4, a_13 = 2
  CHECK(t_ell_integral(s, 5).matrix(0, 0).is_zero());
  CHECK(t_ell_integral(s, 7).matrix(0, 0) == Cl(-4));
  CHECK(t_ell_integral(s, 13).matrix(0, 0) == Cl(2));
  CHECK(u_ell_integral(s, 2).matrix(0, 0).is_zero());
  CHECK_THROWS(t_ell_integral(s, 2));
  CHECK_THROWS(u_ell_integral(s, 5));
}

TEST_CASE("fredholm charpoly") {
  ModularFormSpace s = build_integral_space(2, 36, DirichletChar::trivial(36), true);
  HeckeMatrix t7 = t_ell_integral(s, 7);
  Poly f = hecke_charpoly(t7, true);
  // 1 + 4T
  CHECK(f.coeff(0) == CycloElem::one(1));
  CHECK(f.coeff(1) == Cl(4));
  Poly c = hecke_charpoly(t7, false);
  CHECK(c.coeff(0) == Cl(4));
  CHECK(c.coeff(1) == CycloElem::one(1));

  // zero-dimensional space: fredholm = 1
  ModularFormSpace z = build_integral_space(2, 4, DirichletChar::trivial(4), true);
  HeckeMatrix t3z = t_ell_integral(z, 3);
  CHECK(hecke_charpoly(t3z, true) == Poly::constant(CycloElem::one(1)));
}

TEST_CASE("diamond operators") {
  ModularFormSpace hs = theta_psi_slice36();
  // level 36 = 4 * 9: tame part with respect to p = 5 is the whole level
  HeckeMatrix d5 = diamond(hs, 5, DiamondPart::kTame, 9, 5);
  // nebentypus psi1 = psi * (-1/.): psi1(5) = psi(5) (-1/5) = -1
  CHECK(d5.matrix(0, 0) == Cl(-1));
  HeckeMatrix d1 = diamond(hs, 1, DiamondPart::kFull, 9, 5);
  CHECK(d1.matrix(0, 0) == CycloElem::one(1));
  CHECK_THROWS(diamond(hs, 6, DiamondPart::kFull, 9, 5));
}

TEST_CASE("commutation of half-integral operators at level 36") {
  ModularFormSpace hs = theta_psi_slice36();
  std::vector<HeckeMatrix> ops = {t_ellsq_half(hs, 5), t_ellsq_half(hs, 7),
                                  u_ellsq_half(hs, 2), u_ellsq_half(hs, 3)};
  // commutation is verified inside eigensystems; dim 1 here, so also directly:
  for (auto& a : ops)
    for (auto& b : ops) {
      MatC ab = (a.matrix * b.matrix).eval(), ba = (b.matrix * a.matrix).eval();
      for (long i = 0; i < ab.rows(); ++i)
        for (long j = 0; j < ab.cols(); ++j) CHECK(ab(i, j) == ba(i, j));
    }
}

TEST_CASE("eigensystems on a 2-dimensional cuspidal space") {
  // S_3(Gamma1(12), chi_{-4}) has dimension 2 per the oracle
  DirichletChar chi = DirichletChar::quadratic(-4).extended(12);
  ModularFormSpace s = build_integral_space(3, 12, chi, true);
  REQUIRE(s.dim() == dim_integral(3, 12, chi, true));
  std::vector<HeckeMatrix> ops;
  ops.push_back(u_ell_integral(s, 2));
  ops.push_back(u_ell_integral(s, 3));
  for (long ell : {5L, 7L}) ops.push_back(t_ell_integral(s, ell));
  auto systems = eigensystems(s, ops, "U(3)", 3, 12345);
  // every phi-finite system carries a slope = v_3 of the U(3) eigenvalue
  for (auto& sys : systems) {
    CHECK(!sys.op_value.at("U(3)").is_zero());
    CHECK(sys.slope >= Rational(0));
  }
  // deterministic given the seed
  auto systems2 = eigensystems(s, ops, "U(3)", 3, 12345);
  CHECK(systems.size() == systems2.size());
  for (size_t i = 0; i < systems.size(); ++i) {
    CHECK(systems[i].combo_minpoly == systems2[i].combo_minpoly);
    CHECK(systems[i].slope == systems2[i].slope);
  }
}

TEST_CASE("eigensystem on the theta_psi U(25) line at level 180 semantics") {
  // The point carried by theta_psi is realized through q-series identities:
  // U_25 theta_psi = -5 theta_psi at the 180 level; here we verify the
  // matrix-level critical slope on the level-36 slice via T-operators plus the
  // q-series identity for U_25.
  DirichletChar psi = DirichletChar::quadratic(-3);
  QSeries tp = theta_psi(psi, 26 * 25);
  QSeries u25 = u_ell(tp, 25);
  QSeries want = Cl(-5) * tp.truncated(u25.prec());
  CHECK(qs_agree_below(u25, want, u25.prec()));
  CHECK(padic_valuation(Rational(-5), 5).value == Rational(1));
}

TEST_CASE("nilpotent U gives no phi-finite systems") {
  ModularFormSpace hs = theta_psi_slice36();
  std::vector<HeckeMatrix> ops = {u_ellsq_half(hs, 3)};
  auto systems = eigensystems(hs, ops, "U(9)", 3, 7);
  CHECK(systems.empty());
}
