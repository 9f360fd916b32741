#include "test_main.hpp"

#include "d3/error.hpp"
#include "d3/report.hpp"

using namespace d3;

namespace {

TowerSpec spec(std::size_t degree, std::vector<std::string> g, std::vector<std::string> h,
               std::vector<std::string> k, Field f = Field::rationals()) {
  TowerSpec s;
  s.field = f;
  s.degree = degree;
  s.G = std::move(g);
  s.H = std::move(h);
  s.K = std::move(k);
  return s;
}

TowerSpec d4() { return spec(4, {"(0 1 2 3)", "(1 3)"}, {"(0 1 2 3)"}, {"(0 2)(1 3)"}); }

ErrorKind kind_of(auto &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

} // namespace

TEST_CASE("tower spec parsing") {
  TowerSpec s = parse_tower_spec(R"j({"field": {"kind": "Fp", "p": 7}, "degree": 3,
    "G": ["(0 1 2)", "(0 1)"], "H": ["(0 1 2)"], "K": []})j");
  CHECK(s.field == Field::prime(7));
  CHECK(s.degree == 3);
  CHECK(s.G.size() == 2);
  CHECK(s.K.empty());
  CHECK(parse_tower_spec(to_json(s).dump()).G == s.G);

  try {
    parse_tower_spec("{\n  \"degree\": 3,\n  \"G\": [\"(0 1)\" \"(1 2)\"]\n}");
    FAIL("no parse error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(kind_of([] { parse_tower_spec(R"j({"degree": 3, "G": [], "H": []})j"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_tower_spec(R"j({"degree": 0, "G": [], "H": [], "K": []})j"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] {
          parse_tower_spec(R"j({"field": {"kind": "Fp", "p": 8}, "degree": 2, "G": [], "H": [], "K": []})j");
        }) == ErrorKind::InvalidInput);

  CHECK(parse_field("Q") == Field::rationals());
  CHECK(parse_field("Fp:5") == Field::prime(5));
  CHECK_THROWS_AS(parse_field("Fp:x"), Error);
  CHECK_THROWS_AS(parse_field("R"), Error);
}

TEST_CASE("tower validation") {
  TowerSpec bad = spec(3, {"(0 1 2)", "(0 1)"}, {"(0 1 2)"}, {"(0 1)"});
  try {
    build_group_tower(bad, kDefaultGroupCap);
    FAIL("accepted K outside H");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::NotSubgroup);
    CHECK(std::string(e.what()).find("K not contained in H") != std::string::npos);
  }
  CHECK(kind_of([] { build_group_tower(spec(5, {"(0 1 2 3 4)", "(0 1)"}, {}, {}), 100); }) ==
        ErrorKind::CapExceeded);
}

TEST_CASE("exact serialization round trip") {
  Field q = Field::rationals();
  LinMap m(2, 3);
  m.column(0) = SparseVec::from_entries({{1, q.from_rational(-3, 4)}});
  m.column(2) = SparseVec::from_entries({{0, q.from_int(5)}, {1, q.parse("123456789012345678901234567890/7")}});
  Json j = to_json(m);
  CHECK(j["entries"][0] == Json::array({1, 0, "-3/4"}));
  CHECK(linmap_from_json(j, q) == m);

  Field f7 = Field::prime(7);
  SparseVec v = SparseVec::from_entries({{4, f7.from_int(-1)}});
  Json jv = to_json(v, 6);
  CHECK(jv["entries"][0][1] == "6");
  CHECK(vec_from_json(jv, f7) == v);
  jv["entries"][0][0] = 9;
  CHECK_THROWS_AS(vec_from_json(jv, f7), Error);
}

TEST_CASE("check report on D4") {
  Outcome o = check_report(d4(), kDefaultGroupCap);
  const Json &r = o.report;
  CHECK(o.ok);
  CHECK(r["group_condition"]["holds"] == true);
  CHECK(r["rD3"]["verdict"] == true);
  CHECK(r["lD3"]["verdict"] == true);
  CHECK(r["rD3"]["quasibasis"]["maps"].size() == r["rD3"]["witness_size"]);
  CHECK(r["double_coset_quasibases"]["right"]["verified"] == true);
  CHECK(r["double_coset_quasibases"]["left"]["verified"] == true);
  CHECK(r["depth_two"]["A_over_B"]["rD2"]["verdict"] == true);
  CHECK(r["depth_two"]["A_over_C"]["rD2"]["verdict"] == true);
  CHECK(r["warnings"].empty());
  CHECK(reverify_witnesses(r, kDefaultGroupCap));

  // Re-running gives the same bytes.
  CHECK(check_report(d4(), kDefaultGroupCap).report.dump(2) == r.dump(2));

  // A corrupted witness no longer verifies.
  Json broken = r;
  Json &entries = broken["rD3"]["quasibasis"]["maps"][0]["entries"];
  REQUIRE(!entries.empty());
  entries[0][2] = "17";
  CHECK(!reverify_witnesses(broken, kDefaultGroupCap));
}

TEST_CASE("check report on a non-rD3 tower") {
  TowerSpec s = spec(3, {"(0 1 2)", "(0 1)"}, {"(0 1)"}, {"(0 1)"});
  Outcome o = check_report(s, kDefaultGroupCap);
  const Json &r = o.report;
  CHECK(o.ok);
  CHECK(r["group_condition"]["holds"] == false);
  CHECK(r["rD3"]["verdict"] == false);
  CHECK(r["rD3"]["defect"].get<std::size_t>() > 0);
  CHECK(r["rD3"]["oracle"] == false);
  CHECK(r["depth_two"]["A_over_B"]["rD2"]["verdict"] == false);
  CHECK(r["double_coset_quasibases"].is_null());
  CHECK(reverify_witnesses(r, kDefaultGroupCap));
  CHECK(kind_of([&] { structures_report(s, kDefaultGroupCap); }) == ErrorKind::NotRD3);
}

TEST_CASE("modular warning") {
  TowerSpec s = spec(3, {"(0 1 2)", "(0 1)"}, {"(0 1 2)"}, {}, Field::prime(3));
  Outcome o = check_report(s, kDefaultGroupCap);
  CHECK(o.report["warnings"].size() == 1);
  CHECK(reverify_witnesses(o.report, kDefaultGroupCap));
}

TEST_CASE("structures report") {
  Outcome o = structures_report(d4(), kDefaultGroupCap);
  CHECK(o.ok);
  CHECK(o.report["pre_galois"]["invertible"] == true);
  CHECK(o.report["coring"]["coassociative"] == true);

  Outcome s3 = structures_report(spec(3, {"(0 1 2)", "(0 1)"}, {"(0 1 2)", "(0 1)"}, {"(0 1 2)"}),
                                 kDefaultGroupCap);
  CHECK(s3.ok);
  CHECK(s3.report["coideal"]["applicable"] == true);
  CHECK(s3.report["coideal"]["lands"] == true);
}

TEST_CASE("scan serialization") {
  ScanResult r = scan_catalog(6, Field::rationals(), kDefaultGroupCap, 2);
  Json j = to_json(r);
  CHECK(j["summary"]["towers"] == r.rows.size());
  CHECK(j["summary"]["violations"] == 0);
  std::string tsv = to_tsv(r);
  CHECK(static_cast<std::size_t>(std::count(tsv.begin(), tsv.end(), '\n')) == r.rows.size() + 1);
  CHECK(to_json(scan_catalog(6, Field::rationals(), kDefaultGroupCap, 1)).dump() == j.dump());
}
