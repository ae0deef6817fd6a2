#include "tiltlab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiltlab::regularity {

namespace {

constexpr double kInf = gridfn::kInf;

std::vector<double> ball_grid(double center, double r, int n) {
  double re = r * (1.0 - 1e-9);
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = center - re + 2.0 * re * i / (n - 1);
  return g;
}

// evaluates a modulus at possibly infinite arguments through its tail
double modulus_at(const admissible::AdmissibleFunction& m, double t) {
  if (!std::isfinite(t)) return m.value(1e300);
  return m.value(t);
}

void require_center(const subdiff::SetValuedGraph& g,
                    std::array<double, 2> center) {
  if (!g.contains(center[0], center[1], 1e-9 * g.scale()))
    throw std::invalid_argument("center is not on the graph");
}

}  // namespace

double singleton_slack(const subdiff::SetValuedGraph& g) {
  return g.mesh * std::sqrt(2.0) + 2.0 * g.linearization_tol + 1e-9;
}

certificate::Certificate check_metric_regularity(
    const subdiff::SetValuedGraph& g, std::array<double, 2> center,
    const admissible::AdmissibleFunction& psi, double tau, double kappa,
    double r) {
  if (!(tau > 0.0) || !(kappa > 0.0) || !(r > 0.0))
    throw std::invalid_argument("tau, kappa, r must be positive");
  require_center(g, center);
  certificate::Certificate cert;
  cert.kind = "metric-regularity";
  cert.constants = {{"tau", tau}, {"kappa", kappa}, {"r", r},
                    {"center_x", center[0]}, {"center_v", center[1]}};
  double slack = 1e-9 + 2.0 * g.linearization_tol * (kappa + tau);
  cert.slacks = {{"base", 1e-9},
                 {"linearization", 2.0 * g.linearization_tol * (kappa + tau)}};
  cert.meta["graph"] = g.name;
  cert.meta["psi"] = psi.name;

  const int n = 101;
  auto xs = ball_grid(center[0], r, n);
  auto ys = ball_grid(center[1], r, n);
  std::vector<std::vector<subdiff::Interval>> images(n), preimages(n);
  for (int i = 0; i < n; ++i) {
    images[i] = g.values_at(xs[i]);
    preimages[i] = g.preimages_of(ys[i]);
  }

  double margin = kInf;
  std::map<std::string, double> witness;
  int vacuous = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double dres = subdiff::distance_to_intervals(ys[j], images[i]);
      if (!std::isfinite(dres)) {
        ++vacuous;  // F(x) empty: right side infinite
        continue;
      }
      double dsol = subdiff::distance_to_intervals(xs[i], preimages[j]);
      double lhs = modulus_at(psi, tau * dsol);
      double m = kappa * dres - lhs;
      if (std::isnan(m)) m = -kInf;  // inf - inf cannot happen: dres finite
      if (m < margin) {
        margin = m;
        witness = {{"x", xs[i]}, {"y", ys[j]}, {"d_solution", dsol},
                   {"d_residual", dres}};
      }
    }
  }
  cert.margin = margin;
  cert.witness = witness;
  cert.pass = margin >= -slack;
  cert.meta["grid"] = std::to_string(n) + "x" + std::to_string(n);
  if (vacuous > 0)
    cert.notes.push_back("empty image at " + std::to_string(vacuous) +
                         " samples: vacuous there");
  return cert;
}

certificate::Certificate check_strong_metric_regularity(
    const subdiff::SetValuedGraph& g, std::array<double, 2> center,
    const admissible::AdmissibleFunction& psi, double tau, double kappa,
    double r, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  certificate::Certificate cert =
      check_metric_regularity(g, center, psi, tau, kappa, r);
  cert.kind = "strong-metric-regularity";
  cert.constants["delta"] = delta;
  double slack_s = singleton_slack(g);
  cert.slacks["singleton"] = slack_s;

  const int n = 101;
  auto ys = ball_grid(center[1], r, n);
  bool localized_ok = true;
  double worst = kInf;
  for (int j = 0; j < n; ++j) {
    double lo = kInf, hi = -kInf;
    for (const subdiff::Interval& iv : g.preimages_of(ys[j])) {
      double a = std::max(iv.lo, center[0] - delta);
      double b = std::min(iv.hi, center[0] + delta);
      if (a <= b) {
        lo = std::min(lo, a);
        hi = std::max(hi, b);
      }
    }
    double m;
    if (lo > hi) {
      m = -kInf;  // nothing found: a singleton requires exactly one point
      if (localized_ok)
        cert.notes.push_back("no localized preimage at y=" +
                             std::to_string(ys[j]));
      localized_ok = false;
    } else {
      m = slack_s - (hi - lo);
      if (m < 0.0 && localized_ok) {
        cert.notes.push_back("localized preimage at y=" +
                             std::to_string(ys[j]) + " has diameter " +
                             std::to_string(hi - lo));
        localized_ok = false;
      }
    }
    worst = std::min(worst, m);
  }
  cert.margin = std::min(cert.margin, worst);
  cert.pass = cert.pass && worst >= 0.0;
  return cert;
}

certificate::Certificate check_monotone(const subdiff::SetValuedGraph& g) {
  certificate::Certificate cert;
  cert.kind = "monotonicity";
  cert.meta["graph"] = g.name;
  auto pts = subdiff::graph_samples_in_box(g, g.xlo, g.xhi, g.vlo, g.vhi,
                                           0.5 * (g.xlo + g.xhi),
                                           0.5 * (g.vlo + g.vhi), 1500);
  if (pts.size() > 2500) {
    std::size_t stride = (pts.size() + 2499) / 2500;
    std::vector<std::array<double, 2>> thin;
    for (std::size_t i = 0; i < pts.size(); i += stride) thin.push_back(pts[i]);
    pts = std::move(thin);
  }
  double margin = kInf;
  std::map<std::string, double> witness;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double m = (pts[i][1] - pts[j][1]) * (pts[i][0] - pts[j][0]);
      if (m < margin) {
        margin = m;
        witness = {{"x1", pts[i][0]}, {"v1", pts[i][1]},
                   {"x2", pts[j][0]}, {"v2", pts[j][1]}};
      }
    }
  }
  cert.slacks = {{"base", 1e-12}};
  cert.margin = margin;
  cert.witness = witness;
  cert.pass = margin >= -1e-12;
  cert.meta["samples"] = std::to_string(pts.size());
  return cert;
}

certificate::Certificate check_selection_property_4_4(
    const subdiff::SetValuedGraph& g, std::array<double, 2> center,
    const admissible::AdmissibleFunction& omega, double gamma, double delta) {
  if (!(gamma > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("gamma and delta must be positive");
  require_center(g, center);
  certificate::Certificate cert;
  cert.kind = "graph-selection";
  cert.constants = {{"gamma", gamma}, {"delta", delta},
                    {"center_x", center[0]}, {"center_v", center[1]}};
  double slack = 1e-9 + 2.0 * g.linearization_tol + 2.0 * g.mesh;
  cert.slacks = {{"base", 1e-9},
                 {"linearization", 2.0 * g.linearization_tol},
                 {"mesh", 2.0 * g.mesh}};
  cert.meta["graph"] = g.name;
  cert.meta["omega"] = omega.name;

  const int n = 101;
  auto zs = ball_grid(center[0], delta, n);
  double ge = gamma * (1.0 - 1e-9);
  std::vector<std::vector<subdiff::Interval>> images(n);
  for (int i = 0; i < n; ++i) images[i] = g.values_at(zs[i]);

  double margin = kInf;
  std::map<std::string, double> witness;
  for (int i = 0; i < n; ++i) {
    // candidate selections: endpoints and interior probes of each clipped run
    std::vector<double> vs;
    for (const subdiff::Interval& iv : images[i]) {
      double a = std::max(iv.lo, center[1] - ge);
      double b = std::min(iv.hi, center[1] + ge);
      if (a > b) continue;
      for (int k = 0; k < 5; ++k) vs.push_back(a + (b - a) * k / 4.0);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.empty()) continue;
    for (int j = 0; j < n; ++j) {
      double rhs = modulus_at(omega, std::abs(zs[j] - zs[i]));
      for (double v : vs) {
        double d = subdiff::distance_to_intervals(v, images[j]);
        double m = std::isfinite(d) ? rhs - d : -kInf;
        if (m < margin) {
          margin = m;
          witness = {{"z1", zs[i]}, {"z2", zs[j]}, {"v", v}, {"distance", d}};
        }
      }
    }
  }
  cert.margin = margin;
  cert.witness = witness;
  cert.pass = margin >= -slack;
  cert.meta["grid"] = std::to_string(n);
  return cert;
}

double single_valuedness_radius(const admissible::AdmissibleFunction& omega,
                                double gamma, double delta) {
  if (!(gamma > 0.0) || !(delta > 0.0)) return 0.0;
  if (omega.value(delta) < gamma) return delta;
  double lo = 0.0, hi = delta;
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    if (omega.value(mid) < gamma)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * std::max(1.0, delta)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tiltlab::regularity
