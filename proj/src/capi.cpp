#include "d3tower.h"

#include <cstdlib>
#include <new>
#include <string>

#include "d3/error.hpp"
#include "d3/report.hpp"

struct d3_tower {
  d3::TowerSpec spec;
};

struct d3_report {
  std::string json, tsv;
  bool ok = false;
};

namespace {

thread_local std::string last_error;

static_assert(static_cast<int>(d3::ErrorKind::NotRightD2) + 1 == D3_NOT_RIGHT_D2);

d3_status status_of(d3::ErrorKind k) { return static_cast<d3_status>(static_cast<int>(k) + 1); }

template <class F> d3_status guarded(F &&f) {
  last_error.clear();
  try {
    f();
    return D3_OK;
  } catch (const d3::Error &e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception &e) {
    last_error = e.what();
    return D3_INVALID_INPUT;
  } catch (const std::bad_alloc &) {
    last_error = "out of memory";
    return D3_INTERNAL;
  } catch (const std::exception &e) {
    last_error = e.what();
    return D3_INTERNAL;
  }
}

d3_report *make_report(const d3::Outcome &o) {
  return new d3_report{o.report.dump(2) + "\n", "", o.ok};
}

} // namespace

extern "C" {

const char *d3_status_name(d3_status s) {
  switch (s) {
  case D3_OK:
    return "ok";
  case D3_IO_ERROR:
    return "IOError";
  case D3_INTERNAL:
    return "Internal";
  default:
    if (s > D3_OK && s < D3_IO_ERROR)
      return d3::to_string(static_cast<d3::ErrorKind>(s - 1));
    return "unknown";
  }
}

const char *d3_last_error(void) { return last_error.c_str(); }

int d3_is_input_error(d3_status s) {
  switch (s) {
  case D3_INVALID_INPUT:
  case D3_PARSE_ERROR:
  case D3_BAD_PERMUTATION:
  case D3_CAP_EXCEEDED:
  case D3_NOT_SUBGROUP:
  case D3_IO_ERROR:
    return 1;
  default:
    return 0;
  }
}

size_t d3_default_cap(void) {
  if (const char *env = std::getenv("DEPTH_TOWER_CAP")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<size_t>(v);
  }
  return d3::kDefaultGroupCap;
}

d3_status d3_tower_parse(const char *json, d3_tower **out) {
  if (!json || !out)
    return D3_INVALID_INPUT;
  return guarded([&] { *out = new d3_tower{d3::parse_tower_spec(json)}; });
}

d3_status d3_tower_load(const char *path, d3_tower **out) {
  if (!path || !out)
    return D3_INVALID_INPUT;
  d3_status s = guarded([&] { *out = new d3_tower{d3::load_tower_spec(path)}; });
  if (s == D3_INVALID_INPUT && last_error.rfind("cannot read", 0) == 0)
    return D3_IO_ERROR;
  return s;
}

void d3_tower_free(d3_tower *t) { delete t; }

d3_status d3_check(const d3_tower *t, size_t cap, d3_report **out) {
  if (!t || !out)
    return D3_INVALID_INPUT;
  return guarded([&] { *out = make_report(d3::check_report(t->spec, cap)); });
}

d3_status d3_structures(const d3_tower *t, size_t cap, d3_report **out) {
  if (!t || !out)
    return D3_INVALID_INPUT;
  return guarded([&] { *out = make_report(d3::structures_report(t->spec, cap)); });
}

d3_status d3_scan(size_t max_order, const char *field, size_t cap, unsigned threads, d3_report **out) {
  if (!field || !out)
    return D3_INVALID_INPUT;
  return guarded([&] {
    d3::ScanResult r = d3::scan_catalog(max_order, d3::parse_field(field), cap, threads);
    bool ok = r.violations == 0 && r.mismatches == 0;
    *out = new d3_report{d3::to_json(r).dump(2) + "\n", d3::to_tsv(r), ok};
  });
}

int d3_report_ok(const d3_report *r) { return r && r->ok ? 1 : 0; }
const char *d3_report_json(const d3_report *r) { return r ? r->json.c_str() : ""; }
const char *d3_report_tsv(const d3_report *r) { return r ? r->tsv.c_str() : ""; }

d3_status d3_report_reverify(const char *json, size_t cap, int *ok) {
  if (!json || !ok)
    return D3_INVALID_INPUT;
  return guarded([&] { *ok = d3::reverify_witnesses(nlohmann::json::parse(json), cap) ? 1 : 0; });
}

void d3_report_free(d3_report *r) { delete r; }

} // extern "C"
