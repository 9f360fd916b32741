#include "test_main.hpp"

#include <map>

#include "d3/catalog.hpp"
#include "d3/error.hpp"

using namespace d3;

namespace {

std::map<std::string, std::size_t> orders(std::size_t max_order) {
  std::map<std::string, std::size_t> out;
  for (const auto &g : group_catalog(max_order))
    out[g.name] = g.group.order();
  return out;
}

const PermGroup &find(const std::vector<NamedGroup> &cat, const std::string &name) {
  for (const auto &g : cat)
    if (g.name == name)
      return g.group;
  throw std::runtime_error("missing " + name);
}

} // namespace

TEST_CASE("catalog contents") {
  auto o = orders(16);
  CHECK(o.at("C12") == 12);
  CHECK(o.at("D2") == 4);
  CHECK(o.at("D4") == 8);
  CHECK(o.at("D8") == 16);
  CHECK(o.at("S3") == 6);
  CHECK(o.at("A4") == 12);
  CHECK(o.at("Q8") == 8);
  CHECK(o.at("Q16") == 16);
  CHECK(o.count("D3") == 0);
  CHECK(o.count("S4") == 0);
  CHECK(orders(24).at("S4") == 24);
  auto cat = group_catalog(12);
  for (std::size_t i = 1; i < cat.size(); ++i)
    CHECK(cat[i - 1].group.order() <= cat[i].group.order());
  CHECK_THROWS_AS(group_catalog(200), Error);
}

TEST_CASE("subgroup counts") {
  auto cat = group_catalog(24);
  CHECK(all_subgroups(find(cat, "S3")).size() == 6);
  CHECK(all_subgroups(find(cat, "D4")).size() == 10);
  CHECK(all_subgroups(find(cat, "Q8")).size() == 6);
  CHECK(all_subgroups(find(cat, "A4")).size() == 10);
  CHECK(all_subgroups(find(cat, "C12")).size() == 6);
  CHECK(all_subgroups(find(cat, "D6")).size() == 16);
  CHECK(all_subgroups(find(cat, "S4")).size() == 30);
  auto q16 = group_catalog(16);
  CHECK(all_subgroups(find(q16, "Q16")).size() == 11);
}

TEST_CASE("towers up to conjugacy") {
  auto cat = group_catalog(8);
  // S3: classes of subgroups 1, C2, C3, S3; chains K <= H up to conjugacy.
  auto towers = subgroup_towers(find(cat, "S3"));
  CHECK(towers.size() == 9);
  for (const auto &t : towers) {
    CHECK(t.K.is_subgroup_of(t.H));
    CHECK(t.H.is_subgroup_of(t.G));
  }
}

TEST_CASE("scan over Q up to order 8") {
  ScanResult r = scan_catalog(8, Field::rationals(), kDefaultGroupCap, 2);
  CHECK(r.violations == 0);
  CHECK(r.mismatches == 0);
  CHECK(!r.rows.empty());
  for (const auto &row : r.rows) {
    if (row.k_order == 1) {
      CHECK(row.rd3);
      CHECK(row.ld3);
    }
    if (row.condition)
      CHECK(row.rd3);
  }
  ScanResult again = scan_catalog(8, Field::rationals(), kDefaultGroupCap, 3);
  REQUIRE(again.rows.size() == r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    CHECK(again.rows[i].status == r.rows[i].status);
}
