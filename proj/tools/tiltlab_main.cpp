#include <array>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tiltlab/conjugate.hpp"
#include "tiltlab/grid_function.hpp"
#include "tiltlab/scenario.hpp"
#include "tiltlab/wellposed.hpp"

namespace {

using tiltlab::scenario::Scenario;
using tiltlab::scenario::ScenarioError;

struct BoxArgs {
  std::string box = "-1:1";
  std::string points = "801";
};

// "lo:hi" or "xlo:xhi:ylo:yhi"; points "N" or "N:M".
void apply_box(Scenario& s, const BoxArgs& b) {
  auto nums = [](const std::string& text, const char* what) {
    std::vector<double> out;
    std::string cur;
    for (char ch : text + std::string(":")) {
      if (ch == ':') {
        if (cur.empty()) throw ScenarioError(std::string("empty field in ") + what);
        out.push_back(std::stod(cur));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    return out;
  };
  auto bs = nums(b.box, "box");
  auto ps = nums(b.points, "points");
  if (bs.size() == 2 && ps.size() == 1) {
    s.dim = 1;
    s.lo = {bs[0], 0.0};
    s.hi = {bs[1], 0.0};
    s.points = {static_cast<int>(ps[0]), 1};
  } else if (bs.size() == 4 && ps.size() == 2) {
    s.dim = 2;
    s.lo = {bs[0], bs[2]};
    s.hi = {bs[1], bs[3]};
    s.points = {static_cast<int>(ps[0]), static_cast<int>(ps[1])};
  } else {
    throw ScenarioError("box/points dimensions do not match");
  }
}

void print_rows(const tiltlab::scenario::RunResult& result) {
  for (const auto& row : result.rows) {
    std::printf("%-28s %-12s", row.kind.c_str(), row.verdict.c_str());
    if (row.has_margin) std::printf(" margin=%.6g", row.margin);
    if (!row.constants.empty()) std::printf("  [%s]", row.constants.c_str());
    std::printf("\n");
  }
}

int run_and_report(Scenario& s) {
  auto result = tiltlab::scenario::run_scenario(s);
  tiltlab::scenario::emit_report(s, result);
  print_rows(result);
  std::printf("%zu report file(s) in %s\n", result.files.size(),
              s.out_dir.c_str());
  if (result.status == 1)
    std::fprintf(stderr, "at least one theorem verdict is INCONSISTENT\n");
  return result.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified growth / tilt-stability checks on grid functions"};
  app.require_subcommand(1);

  std::string config_path, out_dir, sweep_text, fn_text, out_path;
  std::string modulus = "power:2";
  double slack_override = -1.0;
  bool parallel = false;
  BoxArgs box;
  double xbar = 0.0, r = 0.0, delta = 0.0, tau = 1.0, kappa = 1.0;
  double gamma = 0.0, eps = 0.0;
  std::string kind_or_id;

  auto* cmd_run = app.add_subcommand("run", "run a scenario file");
  cmd_run->add_option("config", config_path, "scenario file")->required();
  cmd_run->add_option("--out-dir", out_dir, "override the report directory");
  cmd_run->add_option("--sweep", sweep_text, "override sweep as lo:hi[:fracs]");
  cmd_run->add_option("--slack-override", slack_override,
                      "re-grade pass as margin >= -S");
  cmd_run->add_flag("--parallel", parallel, "run checks concurrently");

  auto* cmd_catalog = app.add_subcommand("catalog", "list registered ids");

  auto add_fn_args = [&](CLI::App* cmd) {
    cmd->add_option("fn", fn_text, "function id[:params]")->required();
    cmd->add_option("box", box.box, "lo:hi or xlo:xhi:ylo:yhi")->required();
    cmd->add_option("points", box.points, "N or N:M")->required();
  };

  auto* cmd_conj = app.add_subcommand("conjugate", "write the conjugate grid");
  add_fn_args(cmd_conj);
  cmd_conj->add_option("--out", out_path, "output CSV")->required();

  auto* cmd_env = app.add_subcommand("envelope", "write the convex envelope");
  add_fn_args(cmd_env);
  cmd_env->add_option("--out", out_path, "output CSV")->required();

  auto* cmd_tilt = app.add_subcommand("tiltmap", "write the tilted-minimizer map");
  add_fn_args(cmd_tilt);
  cmd_tilt->add_option("xbar", xbar, "base point")->required();
  cmd_tilt->add_option("--r", r, "localization radius (default box/4)");
  cmd_tilt->add_option("--delta", delta, "tilt radius (default derived)");
  cmd_tilt->add_option("--out", out_path, "output CSV")->required();

  auto* cmd_check = app.add_subcommand("check", "run one check at fixed constants");
  cmd_check->add_option("kind", kind_or_id, "slwp|tslm|swlwp|weak-tslm|metric-reg|strong-metric-reg|condition-6-1|interiority|growth-from-slope")
      ->required();
  add_fn_args(cmd_check);
  cmd_check->add_option("xbar", xbar, "base point")->required();
  cmd_check->add_option("--modulus", modulus, "admissible spec (default power:2)");
  cmd_check->add_option("--r", r, "localization radius");
  cmd_check->add_option("--delta", delta, "tilt radius");
  cmd_check->add_option("--tau", tau, "inner scaling");
  cmd_check->add_option("--kappa", kappa, "outer scaling");
  cmd_check->add_option("--gamma", gamma, "set-window radius");
  cmd_check->add_option("--eps", eps, "interiority ball radius");
  cmd_check->add_option("--out-dir", out_dir, "report directory");
  cmd_check->add_option("--slack-override", slack_override,
                        "re-grade pass as margin >= -S");

  auto* cmd_verify = app.add_subcommand("verify", "sweep both sides of an implication");
  cmd_verify->add_option("theorem-id", kind_or_id,
                         "T3.3|T3.4|P3.6|T4.5|T5.2|C5.3|P6.1|C6.2")
      ->required();
  add_fn_args(cmd_verify);
  cmd_verify->add_option("xbar", xbar, "base point")->required();
  cmd_verify->add_option("--modulus", modulus, "admissible spec (default power:2)");
  cmd_verify->add_option("--sweep", sweep_text, "sweep as lo:hi[:fracs]");
  cmd_verify->add_option("--out-dir", out_dir, "report directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_run) {
      Scenario s = tiltlab::scenario::parse_scenario_file(config_path);
      if (!out_dir.empty()) s.out_dir = out_dir;
      if (!sweep_text.empty()) s.sweep = tiltlab::scenario::parse_sweep(sweep_text);
      if (slack_override >= 0.0) s.slack_override = slack_override;
      if (parallel) s.parallel = true;
      return run_and_report(s);
    }
    if (*cmd_catalog) {
      std::cout << tiltlab::scenario::catalog_list();
      return 0;
    }
    if (*cmd_conj || *cmd_env) {
      Scenario s;
      s.fn = tiltlab::scenario::parse_function_token(fn_text);
      apply_box(s, box);
      auto f = tiltlab::gridfn::sample_function(s.fn, s.dim, s.lo, s.hi,
                                                s.points);
      auto g = *cmd_conj ? tiltlab::conjugate::conjugate_transform(
                               f, s.lo, s.hi, s.points)
                         : tiltlab::conjugate::convex_envelope(f);
      tiltlab::gridfn::write_csv(g, out_path);
      std::printf("wrote %s (%zu values)\n", out_path.c_str(), g.size());
      return 0;
    }
    if (*cmd_tilt) {
      Scenario s;
      s.fn = tiltlab::scenario::parse_function_token(fn_text);
      apply_box(s, box);
      auto f = tiltlab::gridfn::sample_function(s.fn, s.dim, s.lo, s.hi,
                                                s.points);
      std::array<double, 2> base{xbar, 0.0};
      double rr = r > 0.0 ? r : 0.25 * (s.hi[0] - s.lo[0]);
      double dd = delta > 0.0
                      ? delta
                      : tiltlab::wellposed::default_tilt_radius(f, base, rr);
      auto table = tiltlab::wellposed::tilt_minimizer_map(f, base, rr, dd);
      tiltlab::wellposed::write_tilt_map_csv(table, out_path);
      std::printf("wrote %s (%zu tilts)\n", out_path.c_str(),
                  table.duals.size());
      return 0;
    }
    if (*cmd_check || *cmd_verify) {
      Scenario s;
      s.fn = tiltlab::scenario::parse_function_token(fn_text);
      apply_box(s, box);
      s.xbar = {xbar, 0.0};
      s.modulus = modulus;
      s.r = r;
      s.delta = delta;
      s.tau = tau;
      s.kappa = kappa;
      s.gamma = gamma;
      s.eps = eps;
      s.slack_override = slack_override;
      if (!out_dir.empty()) s.out_dir = out_dir;
      if (!sweep_text.empty()) s.sweep = tiltlab::scenario::parse_sweep(sweep_text);
      s.requests = {(*cmd_check ? "check:" : "verify:") + kind_or_id};
      return run_and_report(s);
    }
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
