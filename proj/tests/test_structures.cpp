#include "test_main.hpp"

#include <functional>
#include <numeric>

#include "d3/error.hpp"
#include "d3/structures.hpp"
#include "tower_fixtures.hpp"

using namespace d3;

namespace {

// Orbit counts of finite group actions on G x G; for permutation modules these
// are the dimensions of fixed-point spaces and of hom spaces.
struct Orbits {
  std::vector<std::size_t> parent;
  explicit Orbits(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t count() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
      c += find(i) == i;
    return c;
  }
};

std::vector<std::size_t> idx(const PermGroup &g, const PermGroup &s) {
  std::vector<std::size_t> out;
  for (const auto &p : s.elements())
    out.push_back(static_cast<std::size_t>(g.index_of(p)));
  return out;
}

// dim (A (x)_X A)^Y: orbits of (x, y) : (g1, g2) -> (y g1 x^-1, x g2 y^-1).
std::size_t centralizer_of_square(const PermGroup &G, const PermGroup &X, const PermGroup &Y) {
  const std::size_t n = G.order();
  Orbits o(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (auto x : idx(G, X))
        o.join(a * n + b, G.mul(a, G.inv(x)) * n + G.mul(x, b));
      for (auto y : idx(G, Y))
        o.join(a * n + b, G.mul(y, a) * n + G.mul(b, G.inv(y)));
    }
  return o.count();
}

// dim End(_X A_Y): orbits of (x, y) : (g1, g2) -> (x g1 y^-1, x g2 y^-1).
std::size_t end_dim(const PermGroup &G, const PermGroup &X, const PermGroup &Y) {
  const std::size_t n = G.order();
  Orbits o(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (auto x : idx(G, X))
        o.join(a * n + b, G.mul(x, a) * n + G.mul(x, b));
      for (auto y : idx(G, Y))
        o.join(a * n + b, G.mul(a, G.inv(y)) * n + G.mul(b, G.inv(y)));
    }
  return o.count();
}

// Conjugacy orbits of X on G.
std::size_t centralizer_dim(const PermGroup &G, const PermGroup &X) {
  Orbits o(G.order());
  for (std::size_t a = 0; a < G.order(); ++a)
    for (auto x : idx(G, X))
      o.join(a, G.mul(G.mul(x, a), G.inv(x)));
  return o.count();
}

std::vector<std::pair<const char *, std::function<GroupTower()>>> all_towers() {
  return {{"d4_rot_center", fixture::d4_rot_center}, {"s3_a3_e", fixture::s3_a3_e},
          {"s3_s3_a3", fixture::s3_s3_a3},           {"s3_a3_a3", fixture::s3_a3_a3},
          {"s3_c2_c2", fixture::s3_c2_c2},           {"s3_c2_e", fixture::s3_c2_e},
          {"c6_c6_c3", fixture::c6_c6_c3}};
}

} // namespace

TEST_CASE("rings T and U and the modules P, Q match orbit counts") {
  for (const auto &[cname, make] : all_towers()) {
    std::string name = cname;
      CAPTURE(name);
    GroupTower g = make();
    Section4 s(tower_modules(fixture::algebras(g)));
    CHECK(s.T().space.dim() == centralizer_of_square(g.G, g.H, g.H));
    CHECK(s.U().space.dim() == centralizer_of_square(g.G, g.K, g.K));
    CHECK(s.P().dim() == centralizer_of_square(g.G, g.H, g.K));
    CHECK(s.Q().dim() == centralizer_of_square(g.G, g.K, g.H));
    CHECK(s.R().space.dim() == centralizer_dim(g.G, g.H));
    CHECK(s.V().space.dim() == centralizer_dim(g.G, g.K));
    CHECK(s.T().space.combine(s.T().algebra->unit()) == s.ab().pure(s.A().unit(), s.A().unit()));
    CHECK(s.U().space.combine(s.U().algebra->unit()) == s.ac().pure(s.A().unit(), s.A().unit()));
  }
}

TEST_CASE("P is the hom group Hom(_A A_C, _A (A (x)_B A)_C)") {
  auto m = tower_modules(fixture::algebras(fixture::d4_rot_center()));
  Section4 s(m);
  CHECK(hom_space(m.a_ac, m.aa_ac).dim() == s.P().dim());
}

TEST_CASE("B = A makes T the center of A") {
  GroupTower g = fixture::s3_s3_a3();
  Section4 s(tower_modules(fixture::algebras(g)));
  CHECK(s.T().space.dim() == 3);
  CHECK(s.R().space.dim() == 3);
  GroupTower c = fixture::c6_c6_c3();
  CHECK(Section4(tower_modules(fixture::algebras(c))).T().space.dim() == 6);
}

TEST_CASE("Morita context is associative on every tower") {
  for (const auto &[cname, make] : all_towers()) {
    std::string name = cname;
      CAPTURE(name);
    GroupTower g = make();
    Section4 s(tower_modules(fixture::algebras(g)));
    MoritaReport r = morita_products(s);
    CHECK(r.associative);
    CHECK(r.balanced);
    if (g.H == g.K) {
      CHECK(r.onto_T);
      CHECK(r.onto_U);
    }
  }
}

TEST_CASE("anchor maps") {
  SUBCASE("B = C gives bijections") {
    for (auto g : {fixture::s3_a3_a3(), fixture::s3_c2_c2()}) {
      Section4 s(tower_modules(fixture::algebras(g)));
      AnchorReport a = anchor_maps(s);
      CHECK(a.bijective_to_V);
      CHECK(a.bijective_to_R);
    }
  }
  SUBCASE("A = B = C") {
    GroupTower g = fixture::tower(3, {"(0 1 2)", "(0 1)"}, {"(0 1 2)", "(0 1)"}, {"(0 1 2)", "(0 1)"});
    Section4 s(tower_modules(fixture::algebras(g)));
    AnchorReport a = anchor_maps(s);
    CHECK(a.bijective_to_V);
    CHECK(a.dim_source_R == 3);
  }
  SUBCASE("measured on the others") {
    for (const auto &[cname, make] : all_towers()) {
      std::string name = cname;
      CAPTURE(name);
      Section4 s(tower_modules(fixture::algebras(make())));
      AnchorReport a = anchor_maps(s);
      CHECK(a.into_V);
      CHECK(a.into_R);
    }
  }
}

TEST_CASE("endomorphism rings E, S, calS") {
  for (const auto &[cname, make] : all_towers()) {
    std::string name = cname;
      CAPTURE(name);
    GroupTower g = make();
    Section4 s(tower_modules(fixture::algebras(g)));
    EndRings e = build_end_rings(s);
    CHECK(e.E_hom.dim() == end_dim(g.G, g.H, g.K));
    CHECK(e.S_hom.dim() == end_dim(g.G, g.K, g.K));
    CHECK(e.calS_hom.dim() == end_dim(g.G, g.H, g.H));
    CHECK(e.chain);
    CHECK(e.calS_hom.dim() <= e.E_hom.dim());
    CHECK(e.E_hom.dim() <= e.S_hom.dim());
  }
  SUBCASE("B = A, C trivial: E = End(_A A)") {
    GroupTower g = fixture::tower(3, {"(0 1 2)", "(0 1)"}, {"(0 1 2)", "(0 1)"}, {});
    Section4 s(tower_modules(fixture::algebras(g)));
    CHECK(build_end_rings(s).E_hom.dim() == 6);
  }
}

namespace {

void full_suite(const AlgebraTower &t, const QuasiBasis &qb) {
  Section4 s(tower_modules(t));
  EndRings e = build_end_rings(s);
  PairingReport p = pairing_check(s, e, qb);
  CHECK(p.values_in_V);
  CHECK(p.bijective);
  CHECK(p.dim_E == p.dim_hom);
  CHECK(p.inverse_on_E);
  CHECK(p.inverse_on_hom);
  DualBasesReport d = dual_bases_check(s, e, qb);
  CHECK(d.on_P);
  CHECK(d.on_E);
  CoringP c = build_coring(s, qb);
  CHECK(c.identification);
  CHECK(c.coproduct_matches_cube);
  CHECK(c.coassociative);
  CHECK(c.counit_left);
  CHECK(c.counit_right);
  CHECK(c.grouplike_ok);
  CHECK(convolution_check(s, c, e));
  PreGaloisReport g = pre_galois(s, qb);
  CHECK(g.dim_AB == g.dim_AVP);
  CHECK(g.invertible());
  SparseVec one = s.A().unit();
  CHECK(pairing(s, s.ab().pure(one, one), LinMap::identity(s.A().dim(), s.A().field().one())) == one);
}

} // namespace

TEST_CASE("pairing, dual bases, coring, convolution and pre-Galois on rD3 towers") {
  for (const auto &[cname, make] : all_towers()) {
    GroupTower g = make();
    if (!check_group_depth3_condition(g))
      continue;
    std::string name = cname;
      CAPTURE(name);
    AlgebraTower t = fixture::algebras(g);
    auto cert = is_rD3(t);
    REQUIRE(cert.verdict);
    full_suite(t, *cert.quasibasis);
    full_suite(t, group_rd3_quasibases(g, tower_modules(t)));
  }
}

TEST_CASE("convolution over F3 on the dihedral tower") {
  AlgebraTower t = fixture::algebras(fixture::d4_rot_center(), Field::prime(3));
  auto m = tower_modules(t);
  QuasiBasis qb = group_rd3_quasibases(fixture::d4_rot_center(), m);
  Section4 s(m);
  EndRings e = build_end_rings(s);
  CoringP c = build_coring(s, qb);
  CHECK(c.coassociative);
  CHECK(convolution_check(s, c, e));
}

TEST_CASE("coideal and bicomodule coactions") {
  SUBCASE("S3 > A3 > 1: A | C left D2") {
    Section4 s(tower_modules(fixture::algebras(fixture::s3_a3_e())));
    EndRings e = build_end_rings(s);
    CoactionReport r = coideal_check(s, e);
    CHECK(r.lands);
    CHECK(r.counital);
  }
  SUBCASE("S3 > A3 > A3: A | B right D2") {
    Section4 s(tower_modules(fixture::algebras(fixture::s3_a3_a3())));
    EndRings e = build_end_rings(s);
    CoactionReport r = bicomodule_coaction(s, e);
    CHECK(r.lands);
    CHECK(r.counital);
    CHECK(r.quasibasis_size >= 1);
  }
  SUBCASE("dihedral tower has both") {
    Section4 s(tower_modules(fixture::algebras(fixture::d4_rot_center())));
    EndRings e = build_end_rings(s);
    CHECK(coideal_check(s, e).lands);
    CHECK(bicomodule_coaction(s, e).counital);
  }
  SUBCASE("hypotheses fail") {
    Section4 s(tower_modules(fixture::algebras(fixture::s3_c2_c2())));
    EndRings e = build_end_rings(s);
    CHECK_THROWS_AS(coideal_check(s, e), Error);
    CHECK_THROWS_AS(bicomodule_coaction(s, e), Error);
    try {
      coideal_check(s, e);
    } catch (const Error &err) {
      CHECK(err.kind() == ErrorKind::NotLeftD2);
    }
  }
}

TEST_CASE("Frobenius systems") {
  GroupTower s3 = fixture::s3_a3_e();
  SUBCASE("S3 over A3") {
    FrobeniusSystem fs = frobenius_system(s3.G, s3.H, Field::rationals());
    CHECK(fs.x.size() == 2);
    CHECK(fs.dual_bases);
    CHECK(fs.bimodule_map);
  }
  SUBCASE("C2 over 1 in characteristic 7") {
    GroupTower g = fixture::s3_c2_e();
    FrobeniusSystem fs = frobenius_system(g.H, g.K, Field::prime(7));
    CHECK(fs.x.size() == 2);
    CHECK(fs.dual_bases);
  }
  SUBCASE("H = K") {
    FrobeniusSystem fs = frobenius_system(s3.H, s3.H, Field::rationals());
    CHECK(fs.x.size() == 1);
    CHECK(fs.trace == LinMap::identity(3, Field::rationals().one()));
  }
}

TEST_CASE("endomorphism algebra B (x)_C B") {
  GroupTower s3 = fixture::s3_a3_e();
  EndoAlgebra ea = endo_algebra(frobenius_system(s3.G, s3.H, Field::rationals()));
  CHECK(ea.algebra->dim() == 12);
  CHECK(ea.dim_end == 12);
  CHECK(ea.iso_bijective);
  CHECK(ea.iso_multiplicative);
  EndoAlgebra same = endo_algebra(frobenius_system(s3.H, s3.H, Field::rationals()));
  CHECK(same.algebra->dim() == 3);
}

TEST_CASE("composite of an endomorphism tower") {
  GroupTower s3 = fixture::s3_a3_e();
  EndoTowerReport r = endomorphism_tower_experiment(s3.G, s3.H, Field::rationals());
  CHECK(r.frobenius_ok);
  CHECK(r.endo_iso_ok);
  CHECK(r.rd3);
  REQUIRE(r.rd2_composite.has_value());
  CHECK(*r.rd2_composite);
  CHECK(*r.ld2_composite);

  GroupTower d4 = fixture::d4_rot_center();
  EndoTowerReport q = endomorphism_tower_experiment(d4.G, d4.K, Field::rationals());
  CHECK(q.dim_end == 32);
  CHECK(q.rd3);
  REQUIRE(q.rd2_composite.has_value());
  CHECK(*q.rd2_composite);
  CHECK(*q.ld2_composite);
}
