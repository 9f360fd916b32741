#include "d3/report.hpp"

#include <fstream>
#include <sstream>

#include "d3/error.hpp"
#include "d3/structures.hpp"

namespace d3 {

namespace {

std::string position(const std::string &text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::vector<std::string> string_list(const Json &j, const char *key) {
  if (!j.contains(key) || !j[key].is_array())
    throw Error(ErrorKind::InvalidInput, std::string("\"") + key + "\" must be a list of cycle strings");
  std::vector<std::string> out;
  for (const auto &e : j[key]) {
    if (!e.is_string())
      throw Error(ErrorKind::InvalidInput, std::string("\"") + key + "\" must be a list of cycle strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Field field_from_json(const Json &j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorKind::InvalidInput, "\"field\" must be {\"kind\": \"Q\"} or {\"kind\": \"Fp\", \"p\": prime}");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "Q")
    return Field::rationals();
  if (kind == "Fp") {
    if (!j.contains("p") || !j["p"].is_number_unsigned())
      throw Error(ErrorKind::InvalidInput, "\"Fp\" field needs a positive integer \"p\"");
    return Field::prime(j["p"].get<std::uint32_t>());
  }
  throw Error(ErrorKind::InvalidInput, "unknown field kind \"" + kind + "\"");
}

Json field_to_json(const Field &f) {
  if (f.is_rational())
    return {{"kind", "Q"}};
  return {{"kind", "Fp"}, {"p", f.characteristic()}};
}

Json group_json(const PermGroup &g) { return {{"generators", generator_strings(g)}, {"order", g.order()}}; }

Json cert_json(const DepthCertificate &c, std::size_t dim) {
  Json j;
  j["verdict"] = c.verdict;
  if (c.verdict) {
    j["witness_size"] = c.witness->N;
    j["quasibasis"] = to_json(*c.quasibasis, dim);
  } else {
    j["defect"] = c.defect;
    j["trace_rank"] = c.trace_rank;
  }
  return j;
}

std::vector<std::string> warnings_for(const GroupTower &g, const Field &f) {
  std::vector<std::string> w;
  if (f.characteristic() != 0 && g.G.order() % f.characteristic() == 0)
    w.push_back("characteristic " + std::to_string(f.characteristic()) + " divides |G| = " +
                std::to_string(g.G.order()) + "; the group algebra is not semisimple");
  return w;
}

} // namespace

// ---------------------------------------------------------------- specs

TowerSpec parse_tower_spec(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw Error(ErrorKind::ParseError, position(text, e.byte) + ": malformed JSON");
  }
  if (!j.is_object())
    throw Error(ErrorKind::InvalidInput, "tower spec must be a JSON object");
  TowerSpec s;
  if (j.contains("field"))
    s.field = field_from_json(j["field"]);
  if (!j.contains("degree") || !j["degree"].is_number_unsigned() || j["degree"].get<std::size_t>() == 0)
    throw Error(ErrorKind::InvalidInput, "\"degree\" must be a positive integer");
  s.degree = j["degree"].get<std::size_t>();
  s.G = string_list(j, "G");
  s.H = string_list(j, "H");
  s.K = string_list(j, "K");
  return s;
}

TowerSpec load_tower_spec(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tower_spec(ss.str());
}

Json to_json(const TowerSpec &s) {
  return {{"field", field_to_json(s.field)}, {"degree", s.degree}, {"G", s.G}, {"H", s.H}, {"K", s.K}};
}

GroupTower build_group_tower(const TowerSpec &s, std::size_t cap) {
  auto perms = [&](const std::vector<std::string> &xs) {
    std::vector<Permutation> out;
    for (const auto &x : xs)
      out.push_back(Permutation::parse(x, s.degree));
    return out;
  };
  PermGroup G = generate(s.degree, perms(s.G), cap);
  PermGroup H = generate(s.degree, perms(s.H), cap);
  PermGroup K = generate(s.degree, perms(s.K), cap);
  return make_tower(std::move(G), std::move(H), std::move(K));
}

Field parse_field(const std::string &text) {
  if (text == "Q")
    return Field::rationals();
  if (text.rfind("Fp:", 0) == 0) {
    try {
      std::size_t used = 0;
      unsigned long p = std::stoul(text.substr(3), &used);
      if (used == text.size() - 3 && p <= 0xffffffffUL)
        return Field::prime(static_cast<std::uint32_t>(p));
    } catch (const std::logic_error &) {
    }
  }
  throw Error(ErrorKind::InvalidInput, "field must be Q or Fp:<prime>, got \"" + text + "\"");
}

// ---------------------------------------------------------------- exact data

Json to_json(const LinMap &m) {
  Json entries = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto &e : m.column(c).entries())
      entries.push_back({e.index, c, e.value.to_string()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json to_json(const SparseVec &v, std::size_t dim) {
  Json entries = Json::array();
  for (const auto &e : v.entries())
    entries.push_back({e.index, e.value.to_string()});
  return {{"dim", dim}, {"entries", entries}};
}

LinMap linmap_from_json(const Json &j, const Field &f) {
  LinMap m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  std::vector<std::vector<Entry>> cols(m.cols());
  for (const auto &e : j.at("entries")) {
    auto r = e.at(0).get<Index>();
    auto c = e.at(1).get<std::size_t>();
    if (r >= m.rows() || c >= m.cols())
      throw Error(ErrorKind::DimensionMismatch, "matrix entry out of range");
    cols[c].push_back({r, f.parse(e.at(2).get<std::string>())});
  }
  for (std::size_t c = 0; c < m.cols(); ++c)
    m.column(c) = SparseVec::from_entries(std::move(cols[c]));
  return m;
}

SparseVec vec_from_json(const Json &j, const Field &f) {
  std::vector<Entry> es;
  auto dim = j.at("dim").get<std::size_t>();
  for (const auto &e : j.at("entries")) {
    auto i = e.at(0).get<Index>();
    if (i >= dim)
      throw Error(ErrorKind::DimensionMismatch, "vector entry out of range");
    es.push_back({i, f.parse(e.at(1).get<std::string>())});
  }
  return SparseVec::from_entries(std::move(es));
}

Json to_json(const QuasiBasis &qb, std::size_t dim) {
  Json maps = Json::array(), elems = Json::array();
  for (const auto &m : qb.maps)
    maps.push_back(to_json(m));
  for (const auto &e : qb.elements)
    elems.push_back(to_json(e, dim));
  return {{"side", qb.side == Side::Right ? "right" : "left"}, {"maps", maps}, {"elements", elems}};
}

QuasiBasis quasibasis_from_json(const Json &j, const Field &f) {
  QuasiBasis qb;
  qb.side = j.at("side").get<std::string>() == "right" ? Side::Right : Side::Left;
  for (const auto &m : j.at("maps"))
    qb.maps.push_back(linmap_from_json(m, f));
  for (const auto &e : j.at("elements"))
    qb.elements.push_back(vec_from_json(e, f));
  return qb;
}

// ---------------------------------------------------------------- check

Outcome check_report(const TowerSpec &s, std::size_t cap) {
  GroupTower g = build_group_tower(s, cap);
  AlgebraTower t = tower_from_groups(g, s.field);
  TowerModules m = tower_modules(t);
  Outcome out;
  Json &r = out.report;
  bool ok = true;
  std::vector<std::string> notes;

  r["tower"] = to_json(s);
  r["orders"] = {{"G", g.G.order()}, {"H", g.H.order()}, {"K", g.K.order()}};
  r["groups"] = {{"G", group_json(g.G)}, {"H", group_json(g.H)}, {"K", group_json(g.K)}};
  bool cond = check_group_depth3_condition(g);
  r["group_condition"] = {{"holds", cond}, {"normal_closure_order", normal_closure(g.G, g.K).order()}};
  r["warnings"] = warnings_for(g, s.field);
  const bool modular = !r["warnings"].empty();

  DepthCertificate rd3 = is_rD3(m), ld3 = is_lD3(m);
  const std::size_t dim_aa = m.aa.module->dim();
  r["rD3"] = cert_json(rd3, dim_aa);
  r["lD3"] = cert_json(ld3, dim_aa);
  auto oracle = [&](Json &j, const Bimodule &M, const Bimodule &N, bool verdict) {
    try {
      bool o = multiplicity_oracle(M, N);
      j["oracle"] = o;
      if (o != verdict) {
        ok = false;
        notes.push_back("summand test and multiplicity oracle disagree");
      }
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::OracleInapplicable)
        throw;
      j["oracle"] = "inapplicable";
    }
  };
  oracle(r["rD3"], *m.aa_ac, *m.a_ac, rd3.verdict);
  oracle(r["lD3"], *m.aa_ca, *m.a_ca, ld3.verdict);

  if (cond) {
    if (!rd3.verdict || !ld3.verdict) {
      ok = false;
      notes.push_back("group condition holds but depth three fails");
    }
    Json dc;
    for (auto side : {Side::Right, Side::Left}) {
      const char *key = side == Side::Right ? "right" : "left";
      try {
        QuasiBasis qb = side == Side::Right ? group_rd3_quasibases(g, m) : group_ld3_quasibases(g, m);
        dc[key] = {{"size", qb.size()}, {"verified", true}};
      } catch (const Error &e) {
        if (e.kind() != ErrorKind::VerificationFailed)
          throw;
        dc[key] = {{"verified", false}};
        ok = false;
      }
    }
    r["double_coset_quasibases"] = dc;
  } else {
    r["double_coset_quasibases"] = nullptr;
  }

  auto d2 = [&](const AlgebraMap &into_a, bool normal, const char *key) {
    AlgebraTower ext = extension_tower(into_a);
    DepthCertificate rc = is_rD2(ext), lc = is_lD2(ext);
    std::size_t dim = tower_modules(ext).aa.module->dim();
    r["depth_two"][key] = {{"rD2", cert_json(rc, dim)}, {"lD2", cert_json(lc, dim)}, {"normal", normal}};
    if (!modular && (rc.verdict != normal || lc.verdict != normal)) {
      ok = false;
      notes.push_back(std::string("depth two of ") + key + " disagrees with normality");
    }
  };
  d2(*t.iota_BA, g.H.is_normal_in(g.G), "A_over_B");
  d2(*t.iota_CA, g.K.is_normal_in(g.G), "A_over_C");

  r["notes"] = notes;
  r["ok"] = ok;
  out.ok = ok;
  return out;
}

// ---------------------------------------------------------------- structures

Outcome structures_report(const TowerSpec &s, std::size_t cap) {
  GroupTower g = build_group_tower(s, cap);
  AlgebraTower t = tower_from_groups(g, s.field);
  TowerModules m = tower_modules(t);
  DepthCertificate rd3 = is_rD3(m);
  if (!rd3.verdict)
    throw Error(ErrorKind::NotRD3, "tower is not right depth three; the structures need rD3 quasibases");
  const QuasiBasis &qb = *rd3.quasibasis;
  Outcome out;
  Json &r = out.report;
  bool ok = true;
  auto need = [&](bool b) {
    ok = ok && b;
    return b;
  };

  r["tower"] = to_json(s);
  r["warnings"] = warnings_for(g, s.field);
  r["quasibasis_size"] = qb.size();
  Section4 sec(m);
  auto associative = [](const SubspaceAlgebra &a) {
    try {
      a.algebra->verify();
      return true;
    } catch (const Error &) {
      return false;
    }
  };
  r["rings"] = {{"T", sec.T().space.dim()},
                {"U", sec.U().space.dim()},
                {"P", sec.P().dim()},
                {"Q", sec.Q().dim()},
                {"R", sec.R().space.dim()},
                {"V", sec.V().space.dim()},
                {"T_associative", need(associative(sec.T()))},
                {"U_associative", need(associative(sec.U()))}};

  MoritaReport mo = morita_products(sec);
  r["morita"] = {{"associative", need(mo.associative)}, {"balanced", need(mo.balanced)},
                 {"onto_T", mo.onto_T},                 {"onto_U", mo.onto_U},
                 {"rank_T", mo.rank_T},                 {"rank_U", mo.rank_U}};
  AnchorReport an = anchor_maps(sec);
  r["anchors"] = {{"into_V", need(an.into_V)},
                  {"into_R", need(an.into_R)},
                  {"bijective_to_V", an.bijective_to_V},
                  {"bijective_to_R", an.bijective_to_R},
                  {"rank_to_V", an.rank_R},
                  {"rank_to_R", an.rank_V}};
  EndRings e = build_end_rings(sec);
  r["end_rings"] = {{"E", e.E_hom.dim()}, {"S", e.S_hom.dim()}, {"calS", e.calS_hom.dim()}, {"chain", need(e.chain)}};
  PairingReport p = pairing_check(sec, e, qb);
  r["pairing"] = {{"values_in_V", need(p.values_in_V)},
                  {"bijective", need(p.bijective)},
                  {"inverse_on_E", need(p.inverse_on_E)},
                  {"inverse_on_hom", need(p.inverse_on_hom)},
                  {"dim_hom", p.dim_hom}};
  DualBasesReport d = dual_bases_check(sec, e, qb);
  r["dual_bases"] = {{"on_P", need(d.on_P)}, {"on_E", need(d.on_E)}};
  CoringP c = build_coring(sec, qb);
  r["coring"] = {{"identification", need(c.identification)},
                 {"coproduct_matches", need(c.coproduct_matches_cube)},
                 {"coassociative", need(c.coassociative)},
                 {"counit_left", need(c.counit_left)},
                 {"counit_right", need(c.counit_right)},
                 {"grouplike", need(c.grouplike_ok)},
                 {"dim_P_tensor_P", c.pp.projection.rows()}};
  r["convolution"] = need(convolution_check(sec, c, e));
  PreGaloisReport pg = pre_galois(sec, qb);
  r["pre_galois"] = {{"invertible", need(pg.invertible())}, {"dim", pg.dim_AVP}};
  auto coaction = [&](const char *key, auto &&run) {
    try {
      CoactionReport cr = run();
      r[key] = {{"applicable", true},
                {"lands", need(cr.lands)},
                {"counital", need(cr.counital)},
                {"quasibasis_size", cr.quasibasis_size}};
    } catch (const Error &ex) {
      if (ex.kind() != ErrorKind::NotLeftD2 && ex.kind() != ErrorKind::NotRightD2)
        throw;
      r[key] = {{"applicable", false}, {"reason", ex.what()}};
    }
  };
  coaction("coideal", [&] { return coideal_check(sec, e); });
  coaction("bicomodule", [&] { return bicomodule_coaction(sec, e); });
  r["ok"] = ok;
  out.ok = ok;
  return out;
}

// ---------------------------------------------------------------- scan

Json to_json(const ScanResult &res) {
  Json rows = Json::array();
  std::size_t modular = 0;
  for (const auto &r : res.rows) {
    modular += r.status == "modular";
    rows.push_back({{"group", r.group},
                    {"order", r.order},
                    {"H", r.H},
                    {"K", r.K},
                    {"H_order", r.h_order},
                    {"K_order", r.k_order},
                    {"condition", r.condition},
                    {"rD3", r.rd3},
                    {"lD3", r.ld3},
                    {"B_equals_C", r.b_equals_c},
                    {"H_normal", r.h_normal},
                    {"status", r.status}});
  }
  return {{"field", res.field},
          {"max_order", res.max_order},
          {"summary",
           {{"towers", res.rows.size()},
            {"violations", res.violations},
            {"candidates", res.candidates},
            {"mismatches", res.mismatches},
            {"modular", modular}}},
          {"rows", rows}};
}

std::string to_tsv(const ScanResult &res) {
  auto join = [](const std::vector<std::string> &xs) {
    std::string s;
    for (const auto &x : xs)
      s += (s.empty() ? "" : " ") + x;
    return s.empty() ? "()" : s;
  };
  std::ostringstream o;
  o << "group\torder\tH\tK\tH_order\tK_order\tcondition\trD3\tlD3\tB_equals_C\tH_normal\tstatus\n";
  for (const auto &r : res.rows)
    o << r.group << '\t' << r.order << '\t' << join(r.H) << '\t' << join(r.K) << '\t' << r.h_order << '\t'
      << r.k_order << '\t' << r.condition << '\t' << r.rd3 << '\t' << r.ld3 << '\t' << r.b_equals_c << '\t'
      << r.h_normal << '\t' << r.status << '\n';
  return o.str();
}

// ---------------------------------------------------------------- round trip

bool reverify_witnesses(const Json &report, std::size_t cap) {
  TowerSpec s = parse_tower_spec(report.at("tower").dump());
  GroupTower g = build_group_tower(s, cap);
  AlgebraTower t = tower_from_groups(g, s.field);
  TowerModules m = tower_modules(t);
  auto recheck = [&](const TowerModules &mods, const Json &cert) {
    if (!cert.at("verdict").get<bool>())
      return true;
    QuasiBasis qb = quasibasis_from_json(cert.at("quasibasis"), s.field);
    return qb.size() == cert.at("witness_size").get<std::size_t>() && check_quasibasis(mods, qb);
  };
  bool ok = recheck(m, report.at("rD3")) && recheck(m, report.at("lD3"));
  if (report.contains("depth_two")) {
    TowerModules mb = tower_modules(extension_tower(*t.iota_BA));
    TowerModules mc = tower_modules(extension_tower(*t.iota_CA));
    const Json &d = report.at("depth_two");
    ok = ok && recheck(mb, d.at("A_over_B").at("rD2")) && recheck(mb, d.at("A_over_B").at("lD2")) &&
         recheck(mc, d.at("A_over_C").at("rD2")) && recheck(mc, d.at("A_over_C").at("lD2"));
  }
  return ok;
}

} // namespace d3
