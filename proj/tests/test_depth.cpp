#include "test_main.hpp"

#include "d3/depth.hpp"
#include "d3/error.hpp"
#include "tower_fixtures.hpp"

using namespace d3;

TEST_CASE("Q8 fixture is the quaternion group") {
  auto t = fixture::q8_i_minus1();
  CHECK(t.G.order() == 8);
  CHECK(t.H.order() == 4);
  CHECK(t.K.order() == 2);
  // non-abelian with a unique involution
  int involutions = 0;
  for (std::size_t x = 1; x < 8; ++x)
    involutions += t.G.mul(x, x) == 0;
  CHECK(involutions == 1);
  CHECK(t.G.mul(1, 2) != t.G.mul(2, 1));
}

TEST_CASE("double coset quasibases on the condition towers") {
  for (auto f : {Field::rationals(), Field::prime(7)})
    for (auto g : {fixture::d4_rot_center(), fixture::s3_s3_a3(), fixture::s3_a3_e(), fixture::s4_a4_v4(),
                   fixture::q8_i_minus1(), fixture::c6_c6_c3()}) {
      REQUIRE(check_group_depth3_condition(g));
      TowerModules m = tower_modules(fixture::algebras(g, f));
      QuasiBasis r = group_rd3_quasibases(g, m);
      QuasiBasis l = group_ld3_quasibases(g, m);
      CHECK(r.size() == double_cosets(g.G, g.H, g.K).size());
      CHECK(check_quasibasis(m, r));
      CHECK(check_quasibasis(m, l));
    }
  auto bad = fixture::s3_c2_c2();
  TowerModules m = tower_modules(fixture::algebras(bad));
  CHECK_THROWS_AS(group_rd3_quasibases(bad, m), Error);
}

TEST_CASE("rD3 and lD3 certificates") {
  for (auto g : {fixture::d4_rot_center(), fixture::s3_a3_e(), fixture::s3_s3_a3()}) {
    TowerModules m = tower_modules(fixture::algebras(g));
    DepthCertificate r = is_rD3(m), l = is_lD3(m);
    REQUIRE(r.verdict);
    REQUIRE(l.verdict);
    CHECK(check_quasibasis(m, *r.quasibasis));
    CHECK(check_quasibasis(m, *l.quasibasis));
    verify_witness(*r.witness, *m.aa_ac);
    verify_witness(*l.witness, *m.aa_ca);
  }
  TowerModules bad = tower_modules(fixture::algebras(fixture::s3_c2_c2()));
  DepthCertificate r = is_rD3(bad);
  CHECK(!r.verdict);
  CHECK(r.defect > 0);
  CHECK(!r.quasibasis);
}

TEST_CASE("left is right for the opposite tower") {
  for (auto g : {fixture::s3_c2_e(), fixture::s3_c2_c2(), fixture::d4_rot_center()}) {
    AlgebraTower t = fixture::algebras(g);
    CHECK(is_lD3(t).verdict == is_rD3(t.opposite()).verdict);
  }
}

TEST_CASE("depth two and normality") {
  AlgebraTower normal = fixture::algebras(fixture::s3_a3_a3());
  AlgebraTower not_normal = fixture::algebras(fixture::s3_c2_c2());
  CHECK(is_rD2(normal).verdict);
  CHECK(is_lD2(normal).verdict);
  CHECK(!is_rD2(not_normal).verdict);
  CHECK(!is_lD2(not_normal).verdict);
  CHECK_THROWS_AS(is_rD2(fixture::algebras(fixture::s3_a3_e())), Error);
  AlgebraTower whole = fixture::algebras(fixture::s3_s3_a3());
  CHECK(is_rD2(extension_tower(*whole.iota_BA)).verdict);
}

TEST_CASE("multiplicity oracle agrees with the span test") {
  for (auto g : {fixture::s3_c2_c2(), fixture::s3_c2_e(), fixture::d4_rot_center(), fixture::s3_a3_a3()}) {
    TowerModules m = tower_modules(fixture::algebras(g));
    CHECK(multiplicity_oracle(*m.aa_ac, *m.a_ac) == is_direct_summand_of_power(m.aa_ac, m.a_ac).is_summand);
    CHECK(multiplicity_oracle(*m.aa_ca, *m.a_ca) == is_direct_summand_of_power(m.aa_ca, m.a_ca).is_summand);
    CHECK(multiplicity_oracle(*m.a_ac, *m.a_ac));
  }
  TowerModules p3 = tower_modules(fixture::algebras(fixture::s3_c2_c2(), Field::prime(3)));
  CHECK_THROWS_AS(multiplicity_oracle(*p3.aa_ac, *p3.a_ac), Error);
}

TEST_CASE("separability") {
  AlgebraTower t = fixture::algebras(fixture::s3_c2_e());
  auto e = separability_element(*t.iota_CB);
  REQUIRE(e);
  CHECK(multiply_out(e->bb, *t.B, e->e) == t.B->unit());
  AlgebraTower same = fixture::algebras(fixture::s3_a3_a3());
  auto one = separability_element(*same.iota_CB);
  REQUIRE(one);
  CHECK(e->bb.module->dim() == 4);
  AlgebraTower p2 = fixture::algebras(fixture::s3_c2_e(), Field::prime(2));
  CHECK(!separability_element(*p2.iota_CB));
  CHECK(is_h_separable(*same.iota_CB));
  // Q[C2] (x) Q[C2] has four simple constituents, Q[C2] only two of them.
  auto bb = separability_element(*t.iota_CB)->bb.module;
  CHECK(is_h_separable(*t.iota_CB) == multiplicity_oracle(*bb, *regular_bimodule(t.B)));
  CHECK(!is_h_separable(*t.iota_CB));
}

TEST_CASE("End A_B characterization of left depth three") {
  for (auto g : {fixture::s3_c2_c2(), fixture::s3_c2_e(), fixture::d4_rot_center(), fixture::s3_s3_a3()}) {
    AlgebraTower t = fixture::algebras(g);
    CHECK(left_d3_via_endomorphisms(t) == is_lD3(t).verdict);
  }
}
