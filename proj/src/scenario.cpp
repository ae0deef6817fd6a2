#include "tiltlab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "tiltlab/admissible.hpp"
#include "tiltlab/conjugate.hpp"
#include "tiltlab/regularity.hpp"
#include "tiltlab/set_valued_graph.hpp"

namespace tiltlab::scenario {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ScenarioError("bad numeric value for " + what + ": '" + tok + "'");
  }
}

int parse_int(const std::string& tok, const std::string& what) {
  double v = parse_number(tok, what);
  if (v != std::floor(v)) throw ScenarioError(what + " must be an integer");
  return static_cast<int>(v);
}

bool parse_switch(const std::string& tok, const std::string& what) {
  if (tok == "on" || tok == "true" || tok == "1") return true;
  if (tok == "off" || tok == "false" || tok == "0") return false;
  throw ScenarioError(what + " expects on/off, got '" + tok + "'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string constants_string(const std::map<std::string, double>& cs) {
  std::string out;
  for (const auto& [k, v] : cs) {
    if (!out.empty()) out += ";";
    out += k + "=" + fmt(v);
  }
  return out;
}

// One request's full outcome; slots stay empty when the request kind does not
// produce them. tilt_r < 0 means no tilt map belongs to this request.
struct RequestOutcome {
  ReportRow row;
  std::vector<certificate::Certificate> certs;
  bool has_theorem = false;
  wellposed::TheoremReport theorem;
  double tilt_r = -1.0;
  double tilt_delta = 0.0;
};

bool is_tilt_kind(const std::string& k) {
  return k == "slwp" || k == "tslm" || k == "swlwp" || k == "weak-tslm";
}

struct Resolved {
  gridfn::GridFunction f;
  admissible::AdmissibleFunction modulus;
  double r = 0.0;
  double delta = 0.0;
  double gamma_swlwp = 0.0;
  double gamma_weak = 0.0;
  double eps = 0.0;
};

Resolved resolve(const Scenario& s) {
  Resolved out;
  try {
    out.f = gridfn::sample_function(s.fn, s.dim, s.lo, s.hi, s.points);
    out.modulus = admissible::parse_admissible(s.modulus);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  double room = gridfn::kInf;
  for (int a = 0; a < s.dim; ++a)
    room = std::min(room,
                    std::min(s.xbar[a] - s.lo[a], s.hi[a] - s.xbar[a]));
  if (!(room > 0.0))
    throw ScenarioError("base point must lie strictly inside the box");
  out.r = s.r > 0.0 ? s.r : 0.5 * room;
  out.delta = s.delta > 0.0
                  ? s.delta
                  : wellposed::default_tilt_radius(out.f, s.xbar, out.r);
  out.gamma_swlwp = s.gamma > 0.0 ? s.gamma : out.r;
  out.gamma_weak = s.gamma > 0.0 ? s.gamma : 0.5 * out.r;
  out.eps = s.eps > 0.0 ? s.eps : 0.5 * out.r;
  return out;
}

// The graph checks mirror the search machinery: staircase subdifferential of
// the restriction when it is convex on the window, analytic catalog graph
// otherwise. 1-D only.
subdiff::SetValuedGraph request_graph(const Scenario& s, const Resolved& R) {
  if (s.dim != 1) throw ScenarioError("graph checks are 1-D only");
  double wlo = std::max(s.lo[0], s.xbar[0] - R.r);
  double whi = std::min(s.hi[0], s.xbar[0] + R.r);
  double h = R.f.spacing(0);
  int n = std::max(9, static_cast<int>(std::lround((whi - wlo) / h)) + 1);
  if (n % 2 == 0) ++n;
  gridfn::GridFunction w;
  try {
    w = gridfn::sample_function_1d(s.fn, wlo, whi, n);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  if (conjugate::is_convex_on_grid(w)) return subdiff::graph_from_convex_grid(w);
  try {
    return subdiff::subdifferential_graph(s.fn, wlo, whi);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
}

RequestOutcome run_check(const Scenario& s, const Resolved& R,
                         const std::string& kind) {
  RequestOutcome out;
  out.row.kind = "check:" + kind;
  certificate::Certificate c;
  if (is_tilt_kind(kind)) {
    wellposed::CheckInstance inst{R.f,    s.xbar,  R.modulus,
                                  R.r,    R.delta, s.tau,
                                  s.kappa, 0.0,    s.uniform_points};
    if (kind == "slwp") {
      c = wellposed::check_slwp(inst);
    } else if (kind == "tslm") {
      c = wellposed::check_tslm(inst);
    } else if (kind == "swlwp") {
      inst.gamma = R.gamma_swlwp;
      c = wellposed::check_swlwp(inst);
    } else {
      inst.gamma = R.gamma_weak;
      c = wellposed::check_weak_tslm(inst);
    }
    out.tilt_r = R.r;
    out.tilt_delta = R.delta;
  } else if (kind == "metric-reg" || kind == "strong-metric-reg") {
    auto g = request_graph(s, R);
    if (kind == "metric-reg")
      c = regularity::check_metric_regularity(g, {s.xbar[0], 0.0}, R.modulus,
                                              s.tau, s.kappa, 0.5 * R.r);
    else
      c = regularity::check_strong_metric_regularity(
          g, {s.xbar[0], 0.0}, R.modulus, s.tau, s.kappa, 0.5 * R.r,
          0.25 * R.r);
  } else if (kind == "condition-6-1") {
    if (s.dim != 1) throw ScenarioError("graph checks are 1-D only");
    subdiff::SetValuedGraph g;
    try {
      g = subdiff::subdifferential_graph(s.fn, s.xbar[0] - R.r,
                                         s.xbar[0] + R.r);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
    c = subdiff::check_condition_6_1(g, R.modulus, s.kappa, 0.5 * R.r,
                                     {s.xbar[0], 0.0});
  } else if (kind == "interiority") {
    auto g = request_graph(s, R);
    c = wellposed::check_interiority(g, s.xbar[0], R.eps);
  } else if (kind == "growth-from-slope") {
    auto g = request_graph(s, R);
    c = wellposed::check_growth_from_slope(R.f, g, s.xbar, R.r, R.modulus,
                                           s.tau, s.kappa, R.r, 0.5);
  } else {
    throw ScenarioError("unknown check kind: " + kind);
  }
  out.row.verdict = c.pass ? "pass" : "fail";
  out.row.margin = c.margin;
  out.row.constants = constants_string(c.constants);
  out.certs.push_back(std::move(c));
  return out;
}

RequestOutcome run_search(const Scenario& s, const Resolved& R,
                          const std::string& kind) {
  wellposed::SearchInstance inst{s.fn, R.f, s.xbar, R.modulus};
  wellposed::SearchOutcome so;
  try {
    so = wellposed::search_certificate(kind, inst, s.sweep);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  RequestOutcome out;
  out.row.kind = "search:" + kind;
  out.row.verdict = so.found ? "pass" : "fail";
  out.row.margin = so.best.margin;
  out.row.constants = constants_string(so.best.constants);
  if (so.found && is_tilt_kind(kind)) {
    auto itr = so.best.constants.find("r");
    auto itd = so.best.constants.find("delta");
    if (itr != so.best.constants.end() && itd != so.best.constants.end()) {
      out.tilt_r = itr->second;
      out.tilt_delta = itd->second;
    }
  }
  out.certs.push_back(std::move(so.best));
  return out;
}

RequestOutcome run_verify(const Scenario& s, const Resolved& R,
                          const std::string& id) {
  wellposed::SearchInstance inst{s.fn, R.f, s.xbar, R.modulus};
  RequestOutcome out;
  try {
    out.theorem = wellposed::verify_theorem(id, inst, s.sweep);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  out.has_theorem = true;
  out.row.kind = "verify:" + id;
  out.row.verdict = out.theorem.verdict;
  out.row.has_margin = false;
  return out;
}

RequestOutcome run_request(const Scenario& s, const Resolved& R,
                           const std::string& request) {
  auto colon = request.find(':');
  if (colon == std::string::npos)
    throw ScenarioError("request must look like check:KIND, search:KIND or "
                        "verify:ID, got '" + request + "'");
  std::string head = request.substr(0, colon);
  std::string tail = request.substr(colon + 1);
  if (head == "check") return run_check(s, R, tail);
  if (head == "search") return run_search(s, R, tail);
  if (head == "verify") return run_verify(s, R, tail);
  throw ScenarioError("unknown request prefix '" + head + "' in '" + request +
                      "'");
}

void apply_slack_override(const Scenario& s, RequestOutcome& out) {
  if (s.slack_override < 0.0) return;
  for (auto& c : out.certs) {
    bool was = c.pass;
    c.pass = c.margin >= -s.slack_override;
    c.notes.push_back("pass threshold overridden to margin >= -" +
                      fmt(s.slack_override));
    if (!out.row.has_margin) continue;
    if (was != c.pass) out.row.verdict = c.pass ? "pass" : "fail";
  }
}

struct DescribedId {
  const char* id;
  const char* text;
};

const DescribedId kFunctionDescriptions[] = {
    {"quad", "x^2"},
    {"half-quad", "x^2 / 2"},
    {"quartic", "x^4"},
    {"quartic-plus-quad", "x^4 + x^2"},
    {"abs", "|x|"},
    {"abs-quad", "|x| + x^2"},
    {"power-q", "c |x|^q, params q [, c]"},
    {"double-well", "(x^2 - 1)^2"},
    {"flat-well", "max(|x| - 1, 0)^2"},
    {"one-sided", "0 for x <= 0, x^2 for x > 0"},
    {"indicator-ball", "0 on the ball, +inf outside; params center, radius"},
};

const DescribedId kAdmissibleDescriptions[] = {
    {"power:2", "t^p for any p > 0 (power:p)"},
    {"scaled-power:1:2", "c t^p (scaled-power:c:p)"},
    {"capped-linear:1", "min(t, c) (capped-linear:c)"},
    {"table", "piecewise-linear through given knots"},
};

const DescribedId kCheckDescriptions[] = {
    {"check:slwp", "uniform growth around the minimizer of every small tilt"},
    {"check:tslm", "modulus bound on the selected tilted minimizer map"},
    {"check:swlwp", "growth measured to the whole localized argmin set"},
    {"check:weak-tslm", "modulus bound on argmin sets under tilts"},
    {"check:metric-reg", "psi(tau d(x, F^-1 y)) <= kappa d(y, Fx) near the point"},
    {"check:strong-metric-reg", "metric regularity plus localized singleton preimages"},
    {"check:condition-6-1", "coderivative positivity kappa h^2 eta <= z h on the graph"},
    {"check:interiority", "0 is interior to the graph image of a small ball"},
    {"check:growth-from-slope", "two-phase slope-to-growth estimate"},
};

const DescribedId kSearchDescriptions[] = {
    {"search:slwp", "sweep tau, kappa, r for a passing slwp certificate"},
    {"search:tslm", "sweep for a passing tslm certificate"},
    {"search:swlwp", "sweep for a passing swlwp certificate"},
    {"search:weak-tslm", "sweep for a passing weak-tslm certificate"},
    {"search:metric-reg", "sweep for metric regularity of the subdifferential"},
    {"search:strong-metric-reg", "sweep for strong metric regularity"},
    {"search:condition-6-1", "sweep kappa for the coderivative condition"},
};

const DescribedId kTheoremDescriptions[] = {
    {"verify:T3.3", "strong metric regularity of the derivative graph implies growth"},
    {"verify:T3.4", "growth implies strong metric regularity of the envelope graph"},
    {"verify:P3.6", "growth implies dual-ball interiority at three radii"},
    {"verify:T4.5", "pointed growth matches the tilt-modulus bound"},
    {"verify:T5.2", "pointed growth matches set growth"},
    {"verify:C5.3", "set growth matches the set tilt-modulus bound"},
    {"verify:P6.1", "the coderivative condition implies metric regularity"},
    {"verify:C6.2", "the coderivative condition implies integrated growth"},
};

}  // namespace

gridfn::FunctionSpec parse_function_token(const std::string& text) {
  auto parts = split_on(trim(text), ':');
  if (parts.empty() || parts[0].empty())
    throw ScenarioError("empty function spec");
  gridfn::FunctionSpec spec;
  spec.id = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i)
    spec.params.push_back(parse_number(parts[i], "function parameter"));
  return spec;
}

wellposed::SweepSpec parse_sweep(const std::string& text) {
  auto parts = split_on(trim(text), ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw ScenarioError("sweep spec must be lo:hi or lo:hi:f1,f2,...");
  wellposed::SweepSpec sw;
  sw.log2_lo = parse_int(parts[0], "sweep log2_lo");
  sw.log2_hi = parse_int(parts[1], "sweep log2_hi");
  if (sw.log2_lo > sw.log2_hi)
    throw ScenarioError("sweep log2_lo exceeds log2_hi");
  if (parts.size() == 3) {
    sw.r_fractions.clear();
    for (const auto& tok : split_on(parts[2], ',')) {
      double fr = parse_number(tok, "sweep r fraction");
      if (!(fr > 0.0) || fr > 1.0)
        throw ScenarioError("sweep r fractions must lie in (0, 1]");
      sw.r_fractions.push_back(fr);
    }
  }
  return sw;
}

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::string line, section;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ScenarioError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) fail("empty key or value");

    if (section == "function") {
      if (key == "id") {
        s.fn.id = val;
      } else if (key == "params") {
        s.fn.params.clear();
        for (const auto& tok : split_ws(val))
          s.fn.params.push_back(parse_number(tok, "function param"));
      } else if (key == "dim") {
        s.dim = parse_int(val, "dim");
        if (s.dim != 1 && s.dim != 2) fail("dim must be 1 or 2");
      } else if (key == "box") {
        auto toks = split_ws(val);
        if (toks.size() == 2) {
          s.lo[0] = parse_number(toks[0], "box");
          s.hi[0] = parse_number(toks[1], "box");
        } else if (toks.size() == 4) {
          s.lo = {parse_number(toks[0], "box"), parse_number(toks[2], "box")};
          s.hi = {parse_number(toks[1], "box"), parse_number(toks[3], "box")};
        } else {
          fail("box expects 'lo hi' or 'xlo xhi ylo yhi'");
        }
      } else if (key == "points") {
        auto toks = split_ws(val);
        if (toks.size() == 1) {
          s.points = {parse_int(toks[0], "points"), 1};
        } else if (toks.size() == 2) {
          s.points = {parse_int(toks[0], "points"),
                      parse_int(toks[1], "points")};
        } else {
          fail("points expects one or two integers");
        }
      } else {
        fail("unknown key '" + key + "' in [function]");
      }
    } else if (section == "base") {
      if (key == "xbar") {
        auto toks = split_ws(val);
        if (toks.empty() || toks.size() > 2) fail("xbar expects 1 or 2 numbers");
        s.xbar[0] = parse_number(toks[0], "xbar");
        if (toks.size() == 2) s.xbar[1] = parse_number(toks[1], "xbar");
      } else {
        fail("unknown key '" + key + "' in [base]");
      }
    } else if (section == "modulus") {
      if (key == "spec")
        s.modulus = val;
      else
        fail("unknown key '" + key + "' in [modulus]");
    } else if (section == "checks") {
      if (key == "run")
        s.requests.push_back(val);
      else
        fail("unknown key '" + key + "' in [checks]");
    } else if (section == "constants") {
      double v = parse_number(val, key);
      if (key == "r") {
        s.r = v;
      } else if (key == "delta") {
        s.delta = v;
      } else if (key == "tau") {
        s.tau = v;
      } else if (key == "kappa") {
        s.kappa = v;
      } else if (key == "gamma") {
        s.gamma = v;
      } else if (key == "eps") {
        s.eps = v;
      } else if (key == "uniform_points") {
        s.uniform_points = parse_int(val, key);
      } else {
        fail("unknown key '" + key + "' in [constants]");
      }
      if ((key == "tau" || key == "kappa") && !(v > 0.0))
        fail(key + " must be positive");
    } else if (section == "sweep") {
      if (key == "log2_lo") {
        s.sweep.log2_lo = parse_int(val, key);
      } else if (key == "log2_hi") {
        s.sweep.log2_hi = parse_int(val, key);
      } else if (key == "r_fractions") {
        s.sweep.r_fractions.clear();
        for (const auto& tok : split_ws(val)) {
          double fr = parse_number(tok, key);
          if (!(fr > 0.0) || fr > 1.0) fail("r fractions must lie in (0, 1]");
          s.sweep.r_fractions.push_back(fr);
        }
      } else if (key == "uniform_points") {
        s.sweep.uniform_points = parse_int(val, key);
      } else if (key == "guards") {
        s.sweep.guards = parse_switch(val, key);
      } else {
        fail("unknown key '" + key + "' in [sweep]");
      }
    } else if (section == "output") {
      if (key == "dir") {
        s.out_dir = val;
      } else if (key == "parallel") {
        s.parallel = parse_switch(val, key);
      } else if (key == "slack_override") {
        s.slack_override = parse_number(val, key);
      } else if (key == "tilt_maps") {
        s.emit_tilt_maps = parse_switch(val, key);
      } else {
        fail("unknown key '" + key + "' in [output]");
      }
    } else if (section.empty()) {
      fail("key outside any section");
    } else {
      fail("unknown section [" + section + "]");
    }
  }
  if (s.fn.id.empty()) throw ScenarioError("missing [function] id");
  if (s.requests.empty()) throw ScenarioError("no [checks] run entries");
  if (s.sweep.log2_lo > s.sweep.log2_hi)
    throw ScenarioError("sweep log2_lo exceeds log2_hi");
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  return parse_scenario(in);
}

RunResult run_scenario(const Scenario& s) {
  Resolved R = resolve(s);
  std::vector<RequestOutcome> outcomes(s.requests.size());
  if (s.parallel && s.requests.size() > 1) {
    std::vector<std::future<RequestOutcome>> futs;
    futs.reserve(s.requests.size());
    for (const auto& req : s.requests)
      futs.push_back(std::async(std::launch::async, [&s, &R, req] {
        return run_request(s, R, req);
      }));
    for (std::size_t i = 0; i < futs.size(); ++i) outcomes[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < s.requests.size(); ++i)
      outcomes[i] = run_request(s, R, s.requests[i]);
  }

  RunResult result;
  for (auto& out : outcomes) {
    apply_slack_override(s, out);
    result.rows.push_back(out.row);
    if (out.has_theorem) {
      if (out.theorem.verdict == "INCONSISTENT") result.status = 1;
      result.theorems.push_back(std::move(out.theorem));
    } else {
      for (auto& c : out.certs) result.certificates.push_back(std::move(c));
    }
  }
  // Tilt maps are reproduced at report time from the resolved constants, so
  // stash them in the row constants where emit_report can find them.
  for (std::size_t i = 0, ci = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].has_theorem) continue;
    if (outcomes[i].tilt_r > 0.0) {
      result.certificates[ci].meta["tilt_map_r"] = fmt(outcomes[i].tilt_r);
      result.certificates[ci].meta["tilt_map_delta"] =
          fmt(outcomes[i].tilt_delta);
    }
    ci += outcomes[i].certs.size();
  }
  return result;
}

void emit_report(const Scenario& s, RunResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(s.out_dir, ec);
  if (ec) throw ScenarioError("cannot create output dir: " + s.out_dir);
  auto open_out = [&](const std::string& name) {
    std::string path = (fs::path(s.out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ScenarioError("cannot write report file: " + path);
    result.files.push_back(path);
    return out;
  };

  {
    auto csv = open_out("summary.csv");
    csv << "kind,verdict,margin,constants\n";
    for (const auto& row : result.rows) {
      csv << row.kind << "," << row.verdict << ","
          << (row.has_margin ? fmt(row.margin) : std::string()) << ","
          << "\"" << row.constants << "\"\n";
    }
  }

  char name[64];
  for (std::size_t i = 0; i < result.certificates.size(); ++i) {
    std::snprintf(name, sizeof(name), "cert_%03zu.json", i);
    auto out = open_out(name);
    out << certificate::to_json(result.certificates[i]);
  }
  for (std::size_t i = 0; i < result.theorems.size(); ++i) {
    std::snprintf(name, sizeof(name), "theorem_%03zu.json", i);
    auto out = open_out(name);
    const auto& t = result.theorems[i];
    out << "{\n  \"id\": \"" << t.id << "\",\n  \"verdict\": \"" << t.verdict
        << "\",\n  \"detail\": \"" << t.detail << "\",\n  \"certificates\": [";
    for (std::size_t j = 0; j < t.certificates.size(); ++j) {
      if (j) out << ",";
      std::istringstream cert(certificate::to_json(t.certificates[j]));
      std::string line;
      while (std::getline(cert, line)) out << "\n    " << line;
    }
    out << "\n  ]\n}\n";
  }

  if (s.emit_tilt_maps) {
    Resolved R;
    bool resolved = false;
    for (std::size_t i = 0; i < result.certificates.size(); ++i) {
      const auto& c = result.certificates[i];
      auto itr = c.meta.find("tilt_map_r");
      if (itr == c.meta.end()) continue;
      if (!resolved) {
        R = resolve(s);
        resolved = true;
      }
      double r = std::stod(itr->second);
      double delta = std::stod(c.meta.at("tilt_map_delta"));
      auto table =
          wellposed::tilt_minimizer_map(R.f, s.xbar, r, delta,
                                        s.uniform_points);
      std::snprintf(name, sizeof(name), "tiltmap_%03zu.csv", i);
      std::string path = (fs::path(s.out_dir) / name).string();
      wellposed::write_tilt_map_csv(table, path);
      result.files.push_back(path);
    }
  }
}

std::vector<std::string> check_kind_ids() {
  std::vector<std::string> out;
  for (const auto& d : kCheckDescriptions) out.push_back(d.id);
  return out;
}

std::vector<std::string> search_kind_ids() {
  std::vector<std::string> out;
  for (const auto& d : kSearchDescriptions) out.push_back(d.id);
  return out;
}

std::vector<std::string> theorem_verify_ids() {
  std::vector<std::string> out;
  for (const auto& d : kTheoremDescriptions) out.push_back(d.id);
  return out;
}

std::size_t catalog_entry_count() {
  return gridfn::catalog_function_ids().size() +
         std::size(kAdmissibleDescriptions) + std::size(kCheckDescriptions) +
         std::size(kSearchDescriptions) + std::size(kTheoremDescriptions);
}

std::string catalog_list() {
  std::ostringstream out;
  auto emit = [&](const char* id, const char* text) {
    out << "  " << id;
    for (std::size_t n = std::strlen(id); n < 26; ++n) out << ' ';
    out << ' ' << text << "\n";
  };
  out << "functions:\n";
  auto ids = gridfn::catalog_function_ids();
  for (const auto& id : ids) {
    const char* text = "";
    for (const auto& d : kFunctionDescriptions)
      if (id == d.id) text = d.text;
    emit(id.c_str(), text);
  }
  out << "admissible families:\n";
  for (const auto& d : kAdmissibleDescriptions) emit(d.id, d.text);
  out << "checks:\n";
  for (const auto& d : kCheckDescriptions) emit(d.id, d.text);
  out << "searches:\n";
  for (const auto& d : kSearchDescriptions) emit(d.id, d.text);
  out << "theorems:\n";
  for (const auto& d : kTheoremDescriptions) emit(d.id, d.text);
  return out.str();
}

}  // namespace tiltlab::scenario
