#pragma once

#include <string>

#include "json.hpp"

#include "d3/catalog.hpp"
#include "d3/depth.hpp"

namespace d3 {

using Json = nlohmann::json;

/// {"field": {"kind": "Q"} | {"kind": "Fp", "p": 7}, "degree": 4, (field defaults to Q)
///  "G": ["(0 1 2 3)", "(0 2)"], "H": [...], "K": [...]}
struct TowerSpec {
  Field field = Field::rationals();
  std::size_t degree = 0;
  std::vector<std::string> G, H, K;
};

/// Throws ParseError with the line and column of malformed JSON, InvalidInput
/// for a well-formed document of the wrong shape.
TowerSpec parse_tower_spec(const std::string &text);
TowerSpec load_tower_spec(const std::string &path);
Json to_json(const TowerSpec &s);
/// Throws NotSubgroup ("K not contained in H", ...) and CapExceeded.
GroupTower build_group_tower(const TowerSpec &s, std::size_t cap);

/// "Q" or "Fp:7".
Field parse_field(const std::string &text);

/// Exact serialization; scalars as "num/den" strings or F_p residues.
Json to_json(const LinMap &m);
Json to_json(const SparseVec &v, std::size_t dim);
LinMap linmap_from_json(const Json &j, const Field &f);
SparseVec vec_from_json(const Json &j, const Field &f);
/// `dim` is the dimension of A (x)_B A holding the elements.
Json to_json(const QuasiBasis &qb, std::size_t dim);
QuasiBasis quasibasis_from_json(const Json &j, const Field &f);

struct Outcome {
  Json report;
  bool ok = false;
};

/// Group condition, rD3/lD3 certificates with quasibases, depth-two verdicts
/// of A | B and A | C, double coset quasibases when the condition holds.
Outcome check_report(const TowerSpec &s, std::size_t cap);
/// All verifications attached to an rD3 tower. Throws NotRD3.
Outcome structures_report(const TowerSpec &s, std::size_t cap);

Json to_json(const ScanResult &r);
std::string to_tsv(const ScanResult &r);

/// Rebuilds the tower echoed in a check report and re-checks every embedded
/// quasibasis.
bool reverify_witnesses(const Json &report, std::size_t cap);

} // namespace d3
