#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tiltlab/certificate.hpp"
#include "tiltlab/grid_function.hpp"
#include "tiltlab/wellposed.hpp"

namespace tiltlab::scenario {

// Configuration or catalog-resolution problem. The driver maps this to exit
// status 2 so it never gets confused with a failing check, which is a valid
// outcome and exits 0.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One scenario file: a sampled function, a base point, a modulus, and a list
// of requested checks. Constants apply to check:* entries; the sweep applies
// to search:* and verify:* entries. Nonpositive r / delta / gamma / eps mean
// "derive a default from the box".
struct Scenario {
  gridfn::FunctionSpec fn;
  int dim = 1;
  std::array<double, 2> lo{-1.0, 0.0};
  std::array<double, 2> hi{1.0, 0.0};
  std::array<int, 2> points{801, 1};
  std::array<double, 2> xbar{0.0, 0.0};
  std::string modulus = "power:2";
  std::vector<std::string> requests;
  double r = 0.0;
  double delta = 0.0;
  double tau = 1.0;
  double kappa = 1.0;
  double gamma = 0.0;
  double eps = 0.0;
  int uniform_points = 21;
  wellposed::SweepSpec sweep;
  double slack_override = -1.0;
  std::string out_dir = "reports";
  bool parallel = false;
  bool emit_tilt_maps = true;
};

// One summary-table row. Theorem rows carry no margin.
struct ReportRow {
  std::string kind;
  std::string verdict;
  double margin = 0.0;
  bool has_margin = true;
  std::string constants;
};

struct RunResult {
  int status = 0;
  std::vector<ReportRow> rows;
  std::vector<certificate::Certificate> certificates;
  std::vector<wellposed::TheoremReport> theorems;
  std::vector<std::string> files;
};

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::string& path);

// "lo:hi" or "lo:hi:f1,f2,..." in log2 exponents, e.g. "-10:10" or "0:0:0.5".
wellposed::SweepSpec parse_sweep(const std::string& text);

// "id" or "id:p1:p2", e.g. "power-q:1.5:0.75".
gridfn::FunctionSpec parse_function_token(const std::string& text);

// Executes the requested checks (in order; concurrently when s.parallel, with
// the same report order). Throws ScenarioError on catalog or setup problems.
RunResult run_scenario(const Scenario& s);

// Writes summary.csv, cert_NNN.json, theorem_NNN.json, and tiltmap_NNN.csv
// files under s.out_dir, appending every path to result.files.
void emit_report(const Scenario& s, RunResult& result);

std::string catalog_list();
std::vector<std::string> check_kind_ids();
std::vector<std::string> search_kind_ids();
std::vector<std::string> theorem_verify_ids();
std::size_t catalog_entry_count();

}  // namespace tiltlab::scenario
