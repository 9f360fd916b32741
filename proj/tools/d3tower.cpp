// d3tower: depth reports, structure suites and the small-group scan.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "d3tower.h"

namespace {

enum Exit { kOk = 0, kFailed = 1, kInput = 2 };

int fail(d3_status s) {
  std::cerr << "error: " << d3_status_name(s) << ": " << d3_last_error() << "\n";
  return d3_is_input_error(s) ? kInput : kFailed;
}

bool write_file(const std::string &path, const char *text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

class Stopwatch {
public:
  explicit Stopwatch(std::string label) : label_(std::move(label)), t0_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    std::fprintf(stderr, "%s: %.1f ms\n", label_.c_str(), ms);
  }

private:
  std::string label_;
  std::chrono::steady_clock::time_point t0_;
};

using Runner = d3_status (*)(const d3_tower *, size_t, d3_report **);

int run_tower(const char *label, Runner run, const std::string &path, const std::string &report, size_t cap) {
  Stopwatch sw(label);
  d3_tower *t = nullptr;
  if (d3_status s = d3_tower_load(path.c_str(), &t); s != D3_OK)
    return fail(s);
  d3_report *r = nullptr;
  d3_status s = run(t, cap, &r);
  d3_tower_free(t);
  if (s != D3_OK)
    return fail(s);
  const char *json = d3_report_json(r);
  int ok = d3_report_ok(r);
  bool written = report.empty() ? (std::cout << json, true) : write_file(report, json);
  d3_report_free(r);
  if (!written)
    return kInput;
  if (!ok)
    std::cerr << "verification failed\n";
  return ok ? kOk : kFailed;
}

int run_scan(size_t max_order, const std::string &field, const std::string &dir, size_t cap, unsigned threads) {
  Stopwatch sw("scan");
  d3_report *r = nullptr;
  if (d3_status s = d3_scan(max_order, field.c_str(), cap, threads, &r); s != D3_OK)
    return fail(s);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  bool written = !ec && write_file(dir + "/scan.json", d3_report_json(r)) &&
                 write_file(dir + "/scan.tsv", d3_report_tsv(r));
  int ok = d3_report_ok(r);
  d3_report_free(r);
  if (ec)
    std::cerr << "error: cannot create " << dir << ": " << ec.message() << "\n";
  if (!written)
    return kInput;
  if (!ok)
    std::cerr << "scan found violations or mismatches\n";
  return ok ? kOk : kFailed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Depth-three and depth-two checks for towers of group algebras"};
  app.require_subcommand(1);
  size_t cap = d3_default_cap();
  app.add_option("--cap", cap, "Largest group order to enumerate (env DEPTH_TOWER_CAP)")->check(CLI::PositiveNumber);

  std::string check_file, check_report, struct_file, struct_report;
  auto *check = app.add_subcommand("check", "Depth verdicts and certificates for a tower spec");
  check->add_option("file", check_file, "Tower spec (JSON)")->required();
  check->add_option("--report", check_report, "Write the JSON report here instead of stdout");

  auto *structs = app.add_subcommand("structures", "Verify the structures attached to an rD3 tower");
  structs->add_option("file", struct_file, "Tower spec (JSON)")->required();
  structs->add_option("--report", struct_report, "Write the JSON report here instead of stdout");

  size_t max_order = 0;
  std::string field = "Q", out_dir;
  unsigned threads = 0;
  auto *scan = app.add_subcommand("scan", "Run the depth tests on every catalog tower");
  scan->add_option("--max-order", max_order, "Largest group order")->required()->check(CLI::PositiveNumber);
  scan->add_option("--field", field, "Q or Fp:p")->capture_default_str();
  scan->add_option("--out", out_dir, "Output directory for scan.json and scan.tsv")->required();
  scan->add_option("--threads", threads, "Worker threads (0: hardware count)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  if (*check)
    return run_tower("check", d3_check, check_file, check_report, cap);
  if (*structs)
    return run_tower("structures", d3_structures, struct_file, struct_report, cap);
  return run_scan(max_order, field, out_dir, cap, threads);
}
