#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "d3/groups.hpp"
#include "d3/scalar.hpp"

namespace d3 {

struct NamedGroup {
  std::string name;
  PermGroup group;
};

/// Cyclic C_n (n >= 2), dihedral D_n of order 2n (n >= 2, D_3 omitted as S_3),
/// symmetric S_n (n >= 3), alternating A_n (n >= 4) and the quaternion groups
/// Q_8, Q_16, restricted to order <= max_order and sorted by (order, name).
std::vector<NamedGroup> group_catalog(std::size_t max_order, std::size_t cap = kDefaultGroupCap);

/// Every subgroup of g, sorted by order and then by member indices.
std::vector<PermGroup> all_subgroups(const PermGroup &g);

/// Towers G > H > K with (H, K) running over representatives of subgroup pairs
/// under simultaneous conjugation by G.
std::vector<GroupTower> subgroup_towers(const PermGroup &g);

/// Generators in cycle notation, for reports.
std::vector<std::string> generator_strings(const PermGroup &g);

struct ScanRow {
  std::string group;
  std::size_t order = 0;
  std::vector<std::string> H, K;
  std::size_t h_order = 0, k_order = 0;
  bool condition = false; ///< normal closure of K lies in H
  bool rd3 = false, ld3 = false;
  bool b_equals_c = false;
  bool h_normal = false;
  /// ok | violation | candidate | mismatch | modular
  std::string status;
};

struct ScanResult {
  std::string field;
  std::size_t max_order = 0;
  std::vector<ScanRow> rows;
  std::size_t violations = 0, candidates = 0, mismatches = 0;
};

/// Runs the depth tests on every catalog tower, concurrently.
/// violation: condition holds but rD3 or lD3 fails;
/// candidate: rD3 holds without the condition;
/// mismatch: B = C and the depth-two verdict differs from normality of H
/// (only judged when the characteristic does not divide |G|; otherwise the
/// row is marked modular).
ScanResult scan_catalog(std::size_t max_order, const Field &f, std::size_t cap = kDefaultGroupCap,
                        unsigned threads = 0);

} // namespace d3
