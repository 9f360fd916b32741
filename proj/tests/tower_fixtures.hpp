#pragma once

#include <string>
#include <vector>

#include "d3/algebra.hpp"
#include "d3/groups.hpp"

namespace fixture {

inline std::vector<d3::Permutation> perms(std::size_t n, const std::vector<std::string> &cycles) {
  std::vector<d3::Permutation> out;
  for (const auto &c : cycles)
    out.push_back(d3::Permutation::parse(c, n));
  return out;
}

inline d3::GroupTower tower(std::size_t n, const std::vector<std::string> &g, const std::vector<std::string> &h,
                            const std::vector<std::string> &k) {
  d3::PermGroup G = d3::generate(n, perms(n, g));
  return d3::make_tower(G, d3::subgroup(G, perms(n, h)), d3::subgroup(G, perms(n, k)));
}

inline d3::AlgebraTower algebras(const d3::GroupTower &t, const d3::Field &f = d3::Field::rationals()) {
  return d3::tower_from_groups(t, f);
}

// A few towers used throughout the tests.
inline d3::GroupTower d4_rot_center() { return tower(4, {"(0 1 2 3)", "(0 2)"}, {"(0 1 2 3)"}, {"(0 2)(1 3)"}); }
inline d3::GroupTower s3_a3_e() { return tower(3, {"(0 1 2)", "(0 1)"}, {"(0 1 2)"}, {}); }
inline d3::GroupTower s3_s3_a3() { return tower(3, {"(0 1 2)", "(0 1)"}, {"(0 1 2)", "(0 1)"}, {"(0 1 2)"}); }
inline d3::GroupTower s3_a3_a3() { return tower(3, {"(0 1 2)", "(0 1)"}, {"(0 1 2)"}, {"(0 1 2)"}); }
inline d3::GroupTower s3_c2_c2() { return tower(3, {"(0 1 2)", "(0 1)"}, {"(0 1)"}, {"(0 1)"}); }
inline d3::GroupTower s3_c2_e() { return tower(3, {"(0 1 2)", "(0 1)"}, {"(0 1)"}, {}); }

} // namespace fixture

namespace fixture {

inline d3::GroupTower s4_a4_v4() {
  return tower(4, {"(0 1 2 3)", "(0 1)"}, {"(0 1 2)", "(0 1)(2 3)"}, {"(0 1)(2 3)", "(0 2)(1 3)"});
}
// Q8 in its regular representation: i = (0 1 3 6)(2 5 7 4), j = (0 2 3 7)(1 4 6 5).
inline d3::GroupTower q8_i_minus1() {
  return tower(8, {"(0 1 3 6)(2 5 7 4)", "(0 2 3 7)(1 4 6 5)"}, {"(0 1 3 6)(2 5 7 4)"},
               {"(0 3)(1 6)(2 7)(4 5)"});
}
inline d3::GroupTower c6_c6_c3() { return tower(6, {"(0 1 2 3 4 5)"}, {"(0 1 2 3 4 5)"}, {"(0 2 4)(1 3 5)"}); }

} // namespace fixture
