#include "tiltlab/wellposed.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tiltlab/conjugate.hpp"
#include "tiltlab/regularity.hpp"

namespace tiltlab::wellposed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Informativeness factor of the search guards: a certificate must assert at
// least this many grid-noise quanta of growth (or stay below this many ball
// widths of modulus) to count as a finding.
constexpr double kGuard = 8.0;

double modulus_tail(const admissible::AdmissibleFunction& m, double t) {
  if (!std::isfinite(t)) return m.value(1e300);
  return m.value(t);
}

std::size_t node_index(const gridfn::GridFunction& f,
                       const std::array<double, 2>& x) {
  int idx[2] = {0, 0};
  for (int a = 0; a < f.dim; ++a) {
    long i = std::lround((x[a] - f.lo[a]) / f.spacing(a));
    if (i < 0 || i >= f.points[a])
      throw std::invalid_argument("base point lies outside the box");
    if (std::abs(f.coord(a, static_cast<int>(i)) - x[a]) >
        1e-9 * std::max(1.0, std::abs(x[a])))
      throw std::invalid_argument("base point is not a grid node");
    idx[a] = static_cast<int>(i);
  }
  return f.flat(idx[0], idx[1]);
}

double cell_diagonal(const gridfn::GridFunction& f) {
  return f.max_spacing() * std::sqrt(static_cast<double>(f.dim));
}

void require_localized_minimizer(const gridfn::GridFunction& f,
                                 const std::array<double, 2>& xbar, double r) {
  std::size_t k = node_index(f, xbar);
  if (!std::isfinite(f.values[k]))
    throw std::invalid_argument("base point value is not finite");
  double m = gridfn::min_over_ball(f, xbar, r);
  double tol = gridfn::localized_argmin_tolerance(f, xbar, r);
  if (f.values[k] > m + tol)
    throw std::invalid_argument("base point is not a localized minimizer");
}

// One inequality sample reduced to its two drivers plus witness payload.
struct SamplePair {
  double d = 0.0;
  double g = 0.0;
  double a = 0.0, b = 0.0;
  double raw_d = 0.0, raw_g = 0.0;
};

// Keep only samples that can bind a margin that decreases in d and increases
// in g: maximal distance with minimal gap survives.
void binding_frontier(std::vector<SamplePair>& v) {
  std::sort(v.begin(), v.end(), [](const SamplePair& x, const SamplePair& y) {
    if (x.d != y.d) return x.d > y.d;
    return x.g < y.g;
  });
  std::vector<SamplePair> keep;
  double run = kInf;
  for (const auto& p : v)
    if (p.g < run) {
      keep.push_back(p);
      run = p.g;
    }
  v.swap(keep);
}

// Mirror frontier for modulus checks: margin increases in g (separation) and
// decreases in d (image jump), so maximal jumps per separation survive.
void jump_frontier(std::vector<SamplePair>& v) {
  std::sort(v.begin(), v.end(), [](const SamplePair& x, const SamplePair& y) {
    if (x.g != y.g) return x.g < y.g;
    return x.d > y.d;
  });
  std::vector<SamplePair> keep;
  double run = -kInf;
  for (const auto& p : v)
    if (p.d > run) {
      keep.push_back(p);
      run = p.d;
    }
  v.swap(keep);
}

}  // namespace

std::vector<std::array<double, 2>> tilt_dual_grid(int dim, double delta,
                                                  int uniform_points) {
  if (!(delta > 0.0))
    throw std::invalid_argument("tilt radius must be positive");
  int n = std::max(3, uniform_points);
  if (n % 2 == 0) ++n;
  int kmax = 16;
  if (dim == 2) {
    n = std::min(n, 9);
    kmax = 8;
  }

  std::vector<double> axis;
  double step = 2.0 * delta / (n - 1);
  for (int i = 0; i < n; ++i) axis.push_back(-delta + i * step);
  for (int k = 1; k <= kmax; ++k) {
    axis.push_back(std::ldexp(delta, -k));
    axis.push_back(-std::ldexp(delta, -k));
  }
  axis.push_back(0.0);
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end(),
                         [&](double a, double b) {
                           return std::abs(a - b) <= 1e-15 * delta;
                         }),
             axis.end());
  for (double& u : axis)
    if (std::abs(u) <= 1e-15 * delta) u = 0.0;

  std::vector<std::array<double, 2>> out;
  if (dim == 1) {
    for (double u : axis) out.push_back({u, 0.0});
    return out;
  }
  for (double a : axis)
    for (double b : axis)
      if (std::hypot(a, b) <= delta * (1.0 + 1e-12)) out.push_back({a, b});
  return out;
}

TiltMapTable tilt_minimizer_map(const gridfn::GridFunction& f,
                                std::array<double, 2> xbar, double r,
                                double delta, int uniform_points) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  std::size_t base = node_index(f, xbar);
  if (!std::isfinite(f.values[base]))
    throw std::invalid_argument("base point value is not finite");

  TiltMapTable t;
  t.xbar = xbar;
  t.r = r;
  t.delta = delta;
  t.dim = f.dim;
  t.duals = tilt_dual_grid(f.dim, delta, uniform_points);

  bool zero_found = false;
  for (std::size_t k = 0; k < t.duals.size(); ++k) {
    const auto& u = t.duals[k];
    gridfn::GridFunction fu = gridfn::tilt_perturb(f, u);
    double tol = gridfn::localized_argmin_tolerance(fu, xbar, r);
    gridfn::PointSet a = gridfn::localized_argmin(fu, xbar, r, tol);

    std::array<double, 2> sel = a.points.front();
    double best = gridfn::distance(sel, xbar, f.dim);
    for (const auto& p : a.points) {
      double d = gridfn::distance(p, xbar, f.dim);
      if (d < best ||
          (d == best &&
           (p[0] < sel[0] || (p[0] == sel[0] && p[1] < sel[1])))) {
        best = d;
        sel = p;
      }
    }

    double diam = 0.0;
    if (f.dim == 1) {
      diam = a.points.back()[0] - a.points.front()[0];
    } else {
      // bounding-box diagonal: an upper bound within sqrt(2) of the true
      // diameter, cheap for the large flat sets
      double lo0 = kInf, hi0 = -kInf, lo1 = kInf, hi1 = -kInf;
      for (const auto& p : a.points) {
        lo0 = std::min(lo0, p[0]);
        hi0 = std::max(hi0, p[0]);
        lo1 = std::min(lo1, p[1]);
        hi1 = std::max(hi1, p[1]);
      }
      diam = std::hypot(hi0 - lo0, hi1 - lo1);
    }

    if (u[0] == 0.0 && u[1] == 0.0) {
      t.zero_index = k;
      zero_found = true;
    }
    t.argmins.push_back(std::move(a));
    t.selected.push_back(sel);
    t.min_values.push_back(gridfn::min_over_ball(fu, xbar, r));
    t.diameters.push_back(diam);
    t.tolerances.push_back(tol);
  }
  if (!zero_found) throw std::logic_error("dual grid lost the origin");
  return t;
}

void write_tilt_map_csv(const TiltMapTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "# xbar," << t.xbar[0] << "," << t.xbar[1] << "\n";
  out << "# r," << t.r << "\n";
  out << "# delta," << t.delta << "\n";
  out << "u0,u1,m0,m1,min_value,diameter\n";
  for (std::size_t k = 0; k < t.duals.size(); ++k)
    out << t.duals[k][0] << "," << t.duals[k][1] << "," << t.selected[k][0]
        << "," << t.selected[k][1] << "," << t.min_values[k] << ","
        << t.diameters[k] << "\n";
}

double slope_scale(const gridfn::GridFunction& f, std::array<double, 2> center,
                   double r) {
  double s = 0.0;
  for (std::size_t k : gridfn::indices_in_ball(f, center, r)) {
    int i0 = static_cast<int>(k / f.points[1]);
    int i1 = static_cast<int>(k % f.points[1]);
    for (int a = 0; a < f.dim; ++a) {
      int i = a == 0 ? i0 : i1;
      if (i == 0 || i == f.points[a] - 1) continue;
      std::size_t prev = a == 0 ? f.flat(i0 - 1, i1) : f.flat(i0, i1 - 1);
      std::size_t next = a == 0 ? f.flat(i0 + 1, i1) : f.flat(i0, i1 + 1);
      if (!std::isfinite(f.values[prev]) || !std::isfinite(f.values[next]))
        continue;
      s = std::max(s, std::abs(f.values[next] - f.values[prev]) /
                          (2.0 * f.spacing(a)));
    }
  }
  return s;
}

double default_tilt_radius(const gridfn::GridFunction& f,
                           std::array<double, 2> center, double r) {
  // perfectly flat neighborhoods still get a definite tilt range, since only
  // a nonzero tilt reveals their argmin jumps
  double scale = std::max(slope_scale(f, center, r), 1.0);
  return std::min(r, 0.25 * r * scale);
}

namespace {

struct GrowthData {
  std::vector<SamplePair> front;
  double eps = 0.0, max_tol = 0.0;
  double r = 0.0, delta = 0.0, window = 0.0;
  std::size_t dual_count = 0, sample_count = 0;
  std::string fname;
};

GrowthData build_growth_data(const gridfn::GridFunction& f,
                             const std::array<double, 2>& xbar, double r,
                             double delta, int uniform, double window,
                             bool to_set) {
  TiltMapTable t = tilt_minimizer_map(f, xbar, r, delta, uniform);
  GrowthData D;
  D.eps = cell_diagonal(f);
  D.r = r;
  D.delta = delta;
  D.window = window;
  D.dual_count = t.duals.size();
  D.fname = f.name;

  auto xs = gridfn::indices_in_ball(f, xbar, window);
  std::vector<SamplePair> pairs;
  pairs.reserve(xs.size() * t.duals.size());
  for (std::size_t k = 0; k < t.duals.size(); ++k) {
    const auto& u = t.duals[k];
    D.max_tol = std::max(D.max_tol, t.tolerances[k]);
    for (std::size_t xi : xs) {
      if (!std::isfinite(f.values[xi])) continue;
      auto p = f.point_at(xi);
      double fu = f.values[xi] - u[0] * p[0] - u[1] * p[1];
      double gap = fu - t.min_values[k];
      double d = to_set ? gridfn::distance_to_set(p, t.argmins[k])
                        : gridfn::distance(p, t.selected[k], f.dim);
      pairs.push_back({d, gap + t.tolerances[k], p[0], u[0], d, gap});
    }
  }
  D.sample_count = pairs.size();
  binding_frontier(pairs);
  D.front = std::move(pairs);
  return D;
}

certificate::Certificate finish_growth_cert(
    const char* kind, const GrowthData& D,
    const admissible::AdmissibleFunction& phi, double tau, double kappa,
    double dist_mult, double gap_mult, double gamma) {
  double m = kInf;
  const SamplePair* w = nullptr;
  for (const auto& p : D.front) {
    double lhs = modulus_tail(phi, dist_mult * std::max(0.0, p.d - D.eps));
    double v = gap_mult * p.g + 1e-9 - lhs;
    if (v < m) {
      m = v;
      w = &p;
    }
  }

  certificate::Certificate c;
  c.kind = kind;
  c.constants = {{"r", D.r}, {"delta", D.delta}, {"tau", tau},
                 {"kappa", kappa}};
  if (gamma >= 0.0) c.constants["gamma"] = gamma;
  c.slacks = {{"base", 1e-9},
              {"distance_deflation", D.eps},
              {"argmin", D.max_tol}};
  if (w != nullptr)
    c.witness = {{"x", w->a}, {"u", w->b}, {"distance", w->raw_d},
                 {"gap", w->raw_g}};
  if (!std::isfinite(m)) {
    c.notes.push_back("no binding samples inside the window");
    m = 0.0;
  }
  c.margin = m;
  c.pass = m >= 0.0;
  c.meta["function"] = D.fname;
  c.meta["modulus"] = phi.name;
  c.meta["dual_points"] = std::to_string(D.dual_count);
  c.meta["samples"] = std::to_string(D.sample_count);
  return c;
}

struct TslmData {
  std::vector<SamplePair> front;
  std::vector<double> diam, tol, dual_norm;
  double eps = 0.0, h = 0.0;
  double r = 0.0, delta = 0.0;
  std::size_t dual_count = 0, sample_count = 0;
  bool zero_ok = true;
  std::string fname;
};

TslmData build_tslm_data(const gridfn::GridFunction& f,
                         const std::array<double, 2>& xbar, double r,
                         double delta, int uniform) {
  TiltMapTable t = tilt_minimizer_map(f, xbar, r, delta, uniform);
  TslmData D;
  D.eps = cell_diagonal(f);
  D.h = f.max_spacing();
  D.r = r;
  D.delta = delta;
  D.dual_count = t.duals.size();
  D.fname = f.name;
  D.zero_ok = gridfn::distance(t.selected[t.zero_index], xbar, f.dim) <=
              1e-9 * std::max(1.0, std::abs(xbar[0]) + std::abs(xbar[1]));
  D.diam = t.diameters;
  D.tol = t.tolerances;
  for (const auto& u : t.duals) D.dual_norm.push_back(std::hypot(u[0], u[1]));

  std::vector<SamplePair> pairs;
  for (std::size_t i = 0; i < t.duals.size(); ++i)
    for (std::size_t j = i + 1; j < t.duals.size(); ++j) {
      double dm = gridfn::distance(t.selected[i], t.selected[j], f.dim);
      double du = gridfn::distance(t.duals[i], t.duals[j], f.dim);
      pairs.push_back({dm, du, t.duals[i][0], t.duals[j][0], dm, du});
    }
  D.sample_count = pairs.size();
  jump_frontier(pairs);
  D.front = std::move(pairs);
  return D;
}

certificate::Certificate finish_tslm_cert(
    const TslmData& D, const admissible::AdmissibleFunction& psi, double tau,
    double kappa) {
  certificate::Certificate c;
  c.kind = "tilt-stable-local-minimum";
  c.constants = {{"r", D.r}, {"delta", D.delta}, {"tau", tau},
                 {"kappa", kappa}};
  c.slacks = {{"base", 1e-9}, {"selection_deflation", 2.0 * D.eps}};
  c.meta["function"] = D.fname;
  c.meta["modulus"] = psi.name;
  c.meta["dual_points"] = std::to_string(D.dual_count);
  c.meta["pairs"] = std::to_string(D.sample_count);

  if (!D.zero_ok) {
    c.pass = false;
    c.margin = -kInf;
    c.notes.push_back("selection at the zero tilt misses the base point");
    return c;
  }

  double m = kInf;
  bool worst_singleton = false;
  std::size_t worst_k = 0;
  const SamplePair* worst_pair = nullptr;

  // a tol-level sublevel set can only be as wide as the modulus allows for a
  // tilt of size tol/h; wider argmin sets mean the tilt map is not
  // single-valued at this resolution
  for (std::size_t k = 0; k < D.diam.size(); ++k) {
    double bound =
        2.0 * (modulus_tail(psi, tau * D.tol[k] / D.h) / kappa + 2.0 * D.eps) +
        1e-9;
    double v = bound - D.diam[k];
    if (v < m) {
      m = v;
      worst_singleton = true;
      worst_k = k;
    }
  }
  for (const auto& p : D.front) {
    double v = modulus_tail(psi, tau * p.g) + 1e-9 -
               kappa * std::max(0.0, p.d - 2.0 * D.eps);
    if (v < m) {
      m = v;
      worst_singleton = false;
      worst_pair = &p;
    }
  }

  c.margin = std::isfinite(m) ? m : 0.0;
  c.pass = m >= 0.0;
  if (worst_singleton) {
    c.witness = {{"u", D.dual_norm[worst_k]}, {"diameter", D.diam[worst_k]}};
    if (!c.pass)
      c.notes.push_back("tilt map is not single-valued at this tilt");
  } else if (worst_pair != nullptr) {
    c.witness = {{"u1", worst_pair->a}, {"u2", worst_pair->b},
                 {"jump", worst_pair->raw_d},
                 {"separation", worst_pair->raw_g}};
  }
  return c;
}

struct WeakData {
  std::vector<SamplePair> front;
  double eps = 0.0;
  double r = 0.0, delta = 0.0, gamma = 0.0;
  std::size_t dual_count = 0, sample_count = 0;
  bool zero_ok = true;
  std::string fname;
};

double distance_to_sorted_set(const std::array<double, 2>& p,
                              const gridfn::PointSet& s) {
  if (s.dim != 1) return gridfn::distance_to_set(p, s);
  // 1-D argmin points come out in ascending order
  auto it = std::lower_bound(
      s.points.begin(), s.points.end(), p[0],
      [](const std::array<double, 2>& q, double x) { return q[0] < x; });
  double d = kInf;
  if (it != s.points.end()) d = std::min(d, std::abs((*it)[0] - p[0]));
  if (it != s.points.begin()) d = std::min(d, std::abs((*(it - 1))[0] - p[0]));
  return d;
}

WeakData build_weak_data(const gridfn::GridFunction& f,
                         const std::array<double, 2>& xbar, double r,
                         double delta, int uniform, double gamma) {
  TiltMapTable t = tilt_minimizer_map(f, xbar, r, delta, uniform);
  WeakData D;
  D.eps = cell_diagonal(f);
  D.r = r;
  D.delta = delta;
  D.gamma = gamma;
  D.dual_count = t.duals.size();
  D.fname = f.name;
  D.zero_ok = gridfn::distance(t.selected[t.zero_index], xbar, f.dim) <=
              1e-9 * std::max(1.0, std::abs(xbar[0]) + std::abs(xbar[1]));

  std::vector<SamplePair> pairs;
  for (std::size_t i = 0; i < t.duals.size(); ++i)
    for (std::size_t j = 0; j < t.duals.size(); ++j) {
      if (i == j) continue;
      double worst = -1.0, where = 0.0;
      for (const auto& p : t.argmins[i].points) {
        if (gridfn::distance(p, xbar, f.dim) > gamma * (1.0 + 1e-12)) continue;
        double dd = distance_to_sorted_set(p, t.argmins[j]);
        if (dd > worst) {
          worst = dd;
          where = p[0];
        }
      }
      if (worst < 0.0) continue;
      double du = gridfn::distance(t.duals[i], t.duals[j], f.dim);
      pairs.push_back({worst, du, t.duals[i][0], t.duals[j][0], worst, where});
    }
  D.sample_count = pairs.size();
  jump_frontier(pairs);
  D.front = std::move(pairs);
  return D;
}

certificate::Certificate finish_weak_cert(
    const WeakData& D, const admissible::AdmissibleFunction& psi, double tau,
    double kappa) {
  certificate::Certificate c;
  c.kind = "weak-tilt-stable-local-minimum";
  c.constants = {{"r", D.r}, {"delta", D.delta}, {"gamma", D.gamma},
                 {"tau", tau}, {"kappa", kappa}};
  c.slacks = {{"base", 1e-9}, {"selection_deflation", 2.0 * D.eps}};
  c.meta["function"] = D.fname;
  c.meta["modulus"] = psi.name;
  c.meta["dual_points"] = std::to_string(D.dual_count);
  c.meta["pairs"] = std::to_string(D.sample_count);

  if (!D.zero_ok) {
    c.pass = false;
    c.margin = -kInf;
    c.notes.push_back("selection at the zero tilt misses the base point");
    return c;
  }

  double m = kInf;
  const SamplePair* w = nullptr;
  for (const auto& p : D.front) {
    double v = kappa * modulus_tail(psi, tau * p.g) + 1e-9 -
               std::max(0.0, p.d - 2.0 * D.eps);
    if (v < m) {
      m = v;
      w = &p;
    }
  }
  if (w != nullptr)
    c.witness = {{"u1", w->a}, {"u2", w->b}, {"distance", w->raw_d},
                 {"member", w->raw_g}};
  if (!std::isfinite(m)) {
    c.notes.push_back("no argmin members inside the gamma window");
    m = 0.0;
  }
  c.margin = m;
  c.pass = m >= 0.0;
  return c;
}

struct MrData {
  std::vector<SamplePair> front;
  double sigma_v = 1e-9;
  double worst_diam = 0.0;
  bool empty_loc = false;
  double empty_y = 0.0;
  double eps_x = 0.0, delta_loc = 0.0, r = 0.0;
  std::size_t samples = 0, vacuous = 0;
  std::string gname;
};

std::vector<double> ray_samples(double c, double r) {
  std::vector<double> v;
  double re = r * (1.0 - 1e-9);
  for (int i = 0; i <= 100; ++i) v.push_back(c - re + 2.0 * re * i / 100.0);
  for (int k = 1; k <= 16; ++k) {
    v.push_back(c + std::ldexp(r, -k));
    v.push_back(c - std::ldexp(r, -k));
  }
  v.push_back(c);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

MrData build_mr_data(const subdiff::SetValuedGraph& g,
                     std::array<double, 2> center, double r,
                     double delta_loc) {
  MrData D;
  D.eps_x = g.mesh + 2.0 * g.linearization_tol;
  D.delta_loc = delta_loc;
  D.r = r;
  D.gname = g.name;

  auto xs = ray_samples(center[0], r);
  auto ys = ray_samples(center[1], r);

  std::vector<std::vector<subdiff::Interval>> pre(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) {
    pre[j] = g.preimages_of(ys[j]);
    if (delta_loc > 0.0) {
      double lo = kInf, hi = -kInf;
      for (const auto& iv : pre[j]) {
        double a = std::max(iv.lo, center[0] - delta_loc);
        double b = std::min(iv.hi, center[0] + delta_loc);
        if (a > b) continue;
        lo = std::min(lo, a);
        hi = std::max(hi, b);
      }
      if (lo > hi) {
        if (!D.empty_loc) D.empty_y = ys[j];
        D.empty_loc = true;
      } else {
        D.worst_diam = std::max(D.worst_diam, hi - lo);
      }
    }
  }

  std::vector<double> steps;
  std::vector<SamplePair> pairs;
  for (double x : xs) {
    auto img = g.values_at(x);
    if (img.empty()) {
      ++D.vacuous;
      continue;
    }
    double step = 2.0 * g.linearization_tol;
    if (g.mesh > 0.0) {
      double lo = kInf, hi = -kInf;
      for (double off : {-g.mesh, 0.0, g.mesh})
        for (const auto& iv : g.values_at(x + off)) {
          lo = std::min(lo, iv.lo);
          hi = std::max(hi, iv.hi);
        }
      step = (hi - lo) / 2.0;
    }
    steps.push_back(step);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      double dres = subdiff::distance_to_intervals(ys[j], img) + step;
      double ds = subdiff::distance_to_intervals(x, pre[j]);
      double dsol = std::isfinite(ds) ? std::max(0.0, ds - D.eps_x) : kInf;
      pairs.push_back({dsol, dres, x, ys[j], ds, dres - step});
    }
  }
  D.samples = pairs.size();
  if (!steps.empty()) {
    std::sort(steps.begin(), steps.end());
    D.sigma_v = std::max(steps[steps.size() / 2], 1e-9);
  }
  binding_frontier(pairs);
  D.front = std::move(pairs);
  return D;
}

certificate::Certificate finish_mr_cert(
    bool strong, const MrData& D, double singleton,
    const admissible::AdmissibleFunction& psi, double tau, double kappa) {
  double m = kInf;
  const SamplePair* w = nullptr;
  for (const auto& p : D.front) {
    double v = kappa * p.g + 1e-9 - modulus_tail(psi, tau * p.d);
    if (v < m) {
      m = v;
      w = &p;
    }
  }

  certificate::Certificate c;
  c.kind = strong ? "strong-metric-regularity" : "metric-regularity";
  c.constants = {{"r", D.r}, {"tau", tau}, {"kappa", kappa}};
  if (strong) c.constants["delta"] = D.delta_loc;
  c.slacks = {{"base", 1e-9},
              {"solution_deflation", D.eps_x},
              {"residual_inflation", D.sigma_v}};
  c.meta["graph"] = D.gname;
  c.meta["modulus"] = psi.name;
  c.meta["samples"] = std::to_string(D.samples);
  c.meta["sampler"] = "deflated-grid";
  if (D.vacuous > 0)
    c.notes.push_back("empty image at " + std::to_string(D.vacuous) +
                      " samples: vacuous there");
  if (w != nullptr)
    c.witness = {{"x", w->a}, {"y", w->b}, {"d_solution", w->raw_d},
                 {"d_residual", w->raw_g}};

  if (strong) {
    if (D.empty_loc) {
      c.pass = false;
      c.margin = -kInf;
      c.notes.push_back("no localized solution at y=" +
                        std::to_string(D.empty_y));
      return c;
    }
    double sm = singleton - D.worst_diam;
    c.slacks["singleton"] = singleton;
    if (sm < m) {
      m = sm;
      c.witness = {{"diameter", D.worst_diam}};
      if (sm < 0.0)
        c.notes.push_back("localized solution set is not a singleton");
    }
  }

  c.margin = std::isfinite(m) ? m : 0.0;
  if (!std::isfinite(m)) c.notes.push_back("no binding samples");
  c.pass = c.margin >= 0.0;
  return c;
}

}  // namespace

certificate::Certificate check_slwp(const CheckInstance& inst) {
  require_localized_minimizer(inst.f, inst.xbar, inst.r);
  double delta = inst.delta > 0.0
                     ? inst.delta
                     : default_tilt_radius(inst.f, inst.xbar, inst.r);
  GrowthData D = build_growth_data(inst.f, inst.xbar, inst.r, delta,
                                   inst.uniform_points, inst.r, false);
  return finish_growth_cert("stable-local-well-posedness", D, inst.modulus,
                            inst.tau, inst.kappa, inst.kappa, inst.tau, -1.0);
}

certificate::Certificate check_swlwp(const CheckInstance& inst) {
  require_localized_minimizer(inst.f, inst.xbar, inst.r);
  double delta = inst.delta > 0.0
                     ? inst.delta
                     : default_tilt_radius(inst.f, inst.xbar, inst.r);
  double gamma = inst.gamma > 0.0 ? inst.gamma : inst.r;
  GrowthData D = build_growth_data(inst.f, inst.xbar, inst.r, delta,
                                   inst.uniform_points, gamma, true);
  return finish_growth_cert("weak-local-well-posedness", D, inst.modulus,
                            inst.tau, inst.kappa, inst.tau, inst.kappa, gamma);
}

certificate::Certificate check_tslm(const CheckInstance& inst) {
  double delta = inst.delta > 0.0
                     ? inst.delta
                     : default_tilt_radius(inst.f, inst.xbar, inst.r);
  TslmData D =
      build_tslm_data(inst.f, inst.xbar, inst.r, delta, inst.uniform_points);
  return finish_tslm_cert(D, inst.modulus, inst.tau, inst.kappa);
}

certificate::Certificate check_weak_tslm(const CheckInstance& inst) {
  double delta = inst.delta > 0.0
                     ? inst.delta
                     : default_tilt_radius(inst.f, inst.xbar, inst.r);
  double gamma = inst.gamma > 0.0 ? inst.gamma : inst.r;
  WeakData D = build_weak_data(inst.f, inst.xbar, inst.r, delta,
                               inst.uniform_points, gamma);
  return finish_weak_cert(D, inst.modulus, inst.tau, inst.kappa);
}

certificate::Certificate check_growth_from_slope(
    const gridfn::GridFunction& f, const subdiff::SetValuedGraph& g,
    std::array<double, 2> xbar, double r,
    const admissible::AdmissibleFunction& psi, double tau, double kappa,
    double delta, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");
  if (f.dim != 1)
    throw std::invalid_argument("the slope test needs a 1-D function");
  require_localized_minimizer(f, xbar, r);

  double tolM = gridfn::localized_argmin_tolerance(f, xbar, r);
  gridfn::PointSet M = gridfn::localized_argmin(f, xbar, r, tolM);
  double h = f.max_spacing();

  certificate::Certificate c;
  c.kind = "growth-from-slope";
  c.constants = {{"r", r}, {"tau", tau}, {"kappa", kappa}, {"delta", delta},
                 {"alpha", alpha}};
  c.slacks = {{"base", 1e-9},
              {"distance_deflation", h},
              {"linearization", 2.0 * g.linearization_tol * kappa},
              {"argmin", tolM}};
  c.meta["function"] = f.name;
  c.meta["graph"] = g.name;
  c.meta["modulus"] = psi.name;

  double m1 = kInf;
  std::size_t excluded = 0;
  for (std::size_t xi : gridfn::indices_in_ball(f, xbar, std::min(delta, r))) {
    auto p = f.point_at(xi);
    double d = gridfn::distance_to_set(p, M);
    if (d <= h * (1.0 + 1e-9)) {
      ++excluded;
      continue;
    }
    double lhs =
        admissible::right_derivative(psi, tau * std::max(0.0, d - h));
    double dres = subdiff::distance_to_intervals(0.0, g.values_at(p[0]));
    double v = kappa * dres + 1e-9 + 2.0 * g.linearization_tol * kappa - lhs;
    if (v < m1) {
      m1 = v;
      c.witness = {{"x", p[0]}, {"distance", d}, {"slope_gap", dres}};
    }
  }
  bool p1 = m1 >= 0.0;
  c.meta["phase1"] = p1 ? "pass" : "fail";
  c.meta["phase1_excluded"] = std::to_string(excluded);

  double margin = std::isfinite(m1) ? m1 : 0.0;
  if (!p1) {
    c.meta["phase2"] = "skipped";
    c.margin = margin;
    c.pass = false;
    return c;
  }

  double C = tau * kappa * (1.0 - alpha) / alpha;
  double rad2 = std::min(delta, r) / (1.0 + alpha);
  double fx = f.values[node_index(f, xbar)];
  double m2 = kInf;
  for (std::size_t xi : gridfn::indices_in_ball(f, xbar, rad2)) {
    if (!std::isfinite(f.values[xi])) continue;
    auto p = f.point_at(xi);
    double d = gridfn::distance_to_set(p, M);
    double lhs =
        modulus_tail(psi, tau * (1.0 - alpha) * std::max(0.0, d - h));
    double v = C * (f.values[xi] - fx + tolM) + 1e-9 - lhs;
    if (v < m2) {
      m2 = v;
      c.witness = {{"x", p[0]}, {"distance", d}, {"gap", f.values[xi] - fx}};
    }
  }
  bool p2 = m2 >= 0.0;
  c.meta["phase2"] = p2 ? "pass" : "fail";
  if (std::isfinite(m2)) margin = std::min(margin, m2);
  c.margin = margin;
  c.pass = p1 && p2;
  return c;
}

certificate::Certificate check_interiority(const subdiff::SetValuedGraph& g,
                                           double xbar, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  double re = eps * (1.0 - 1e-9);
  double vmin = kInf, vmax = -kInf;
  for (int i = 0; i <= 100; ++i) {
    double x = xbar - re + 2.0 * re * i / 100.0;
    for (const auto& iv : g.values_at(x)) {
      vmin = std::min(vmin, iv.lo);
      vmax = std::max(vmax, iv.hi);
    }
  }

  certificate::Certificate c;
  c.kind = "subdifferential-interiority";
  c.constants = {{"eps", eps}};
  c.meta["graph"] = g.name;
  if (vmin > vmax) {
    c.pass = false;
    c.margin = -kInf;
    c.notes.push_back("no graph values inside the window");
    return c;
  }
  c.witness = {{"vmin", vmin}, {"vmax", vmax}};
  double tiny = 1e-12 * g.scale();
  double m = std::min(-vmin, vmax);
  c.pass = m > tiny;
  c.margin = std::isfinite(m) ? m : 1e6;
  if (!std::isfinite(m)) c.notes.push_back("unbounded slope range");
  if (c.pass)
    c.constants["gamma"] = 0.9 * std::min(m, 1e6);
  return c;
}

namespace {

bool sweep_guard(const std::string& kind,
                 const admissible::AdmissibleFunction& mod, double tau,
                 double kappa, double r, double delta, double lhat, double h,
                 double sigma_v) {
  double noise = kGuard * (lhat + delta) * h;
  if (kind == "slwp") return mod.value(kappa * r) >= tau * noise;
  if (kind == "swlwp") return mod.value(tau * r) >= kappa * noise;
  if (kind == "tslm")
    return mod.value(tau * 2.0 * delta) <= 2.0 * r * kappa;
  if (kind == "weak-tslm")
    return kappa * mod.value(tau * 2.0 * delta) <= 2.0 * r;
  if (kind == "metric-reg" || kind == "strong-metric-reg")
    return mod.value(tau * r) >= kGuard * kappa * sigma_v;
  return true;
}

gridfn::GridFunction restrict_window(const gridfn::GridFunction& f, double xlo,
                                     double xhi) {
  if (f.dim != 1)
    throw std::invalid_argument("derivative graphs need a 1-D instance");
  int i0 = static_cast<int>(std::ceil((xlo - f.lo[0]) / f.spacing(0) - 1e-9));
  int i1 = static_cast<int>(std::floor((xhi - f.lo[0]) / f.spacing(0) + 1e-9));
  i0 = std::max(i0, 0);
  i1 = std::min(i1, f.points[0] - 1);
  if (i1 - i0 + 1 < 3)
    throw std::invalid_argument("window too small for a derivative graph");
  if ((i1 - i0 + 1) % 2 == 0) --i1;
  std::vector<double> vals(f.values.begin() + i0, f.values.begin() + i1 + 1);
  return gridfn::from_values(f.name + ":window", 1, {f.coord(0, i0), 0.0},
                             {f.coord(0, i1), 0.0}, {i1 - i0 + 1, 1},
                             std::move(vals));
}

// Grid-exact staircase when the sampled restriction is convex, the
// linearized analytic curve otherwise.
subdiff::SetValuedGraph window_graph(const SearchInstance& inst, double xlo,
                                     double xhi) {
  gridfn::GridFunction fr = restrict_window(inst.f, xlo, xhi);
  if (conjugate::is_convex_on_grid(fr))
    return subdiff::graph_from_convex_grid(fr);
  if (inst.spec.id.empty())
    throw std::invalid_argument(
        "nonconvex window needs a catalog spec for the analytic graph");
  return subdiff::subdifferential_graph(inst.spec, xlo, xhi);
}

struct BestTracker {
  SearchOutcome* out = nullptr;
  bool have_fail = false;
  certificate::Certificate fail;

  void consider(certificate::Certificate c) {
    if (c.pass) {
      ++out->passes;
      if (!out->found || c.margin > out->best.margin) {
        out->found = true;
        out->best = std::move(c);
      }
    } else if (!out->found) {
      if (!have_fail || c.margin > fail.margin) {
        have_fail = true;
        fail = std::move(c);
      }
    }
  }

  void finalize(const std::string& kind) {
    if (out->found) return;
    if (have_fail) {
      out->best = std::move(fail);
      return;
    }
    out->best.kind = kind;
    out->best.pass = false;
    out->best.margin = -kInf;
    out->best.notes.push_back(
        "every swept combination was excluded by the informativeness guards");
  }
};

void mr_sweep_one(const subdiff::SetValuedGraph& g,
                  std::array<double, 2> center, double rc, bool strong,
                  const admissible::AdmissibleFunction& psi,
                  const SweepSpec& sweep, SearchOutcome& out,
                  BestTracker& track) {
  MrData D = build_mr_data(g, center, rc, strong ? 0.5 * rc : 0.0);
  double singleton = regularity::singleton_slack(g);
  for (int ke = sweep.log2_lo; ke <= sweep.log2_hi; ++ke) {
    double kappa = std::ldexp(1.0, ke);
    for (int te = sweep.log2_lo; te <= sweep.log2_hi; ++te) {
      double tau = std::ldexp(1.0, te);
      ++out.combinations;
      if (sweep.guards && !sweep_guard(strong ? "strong-metric-reg"
                                              : "metric-reg",
                                       psi, tau, kappa, rc, 0.0, 0.0, 0.0,
                                       D.sigma_v)) {
        ++out.guarded;
        continue;
      }
      track.consider(finish_mr_cert(strong, D, singleton, psi, tau, kappa));
    }
  }
}

}  // namespace

SearchOutcome search_certificate(const std::string& kind,
                                 const SearchInstance& inst,
                                 const SweepSpec& sweep) {
  bool tilt_kind = kind == "slwp" || kind == "tslm" || kind == "swlwp" ||
                   kind == "weak-tslm";
  bool mr_kind = kind == "metric-reg" || kind == "strong-metric-reg";
  if (!tilt_kind && !mr_kind && kind != "condition-6-1")
    throw std::invalid_argument("unknown certificate kind: " + kind);

  const gridfn::GridFunction& f = inst.f;
  double R = kInf;
  for (int a = 0; a < f.dim; ++a)
    R = std::min({R, inst.xbar[a] - f.lo[a], f.hi[a] - inst.xbar[a]});
  if (!(R > 0.0))
    throw std::invalid_argument("base point must lie inside the box");

  SearchOutcome out;
  BestTracker track;
  track.out = &out;

  for (double frac : sweep.r_fractions) {
    double r = frac * R;
    if (tilt_kind) {
      double delta = default_tilt_radius(f, inst.xbar, r);
      double lhat = slope_scale(f, inst.xbar, r);
      double h = f.max_spacing();

      GrowthData growth;
      TslmData tslm;
      WeakData weak;
      double gamma = -1.0;
      if (kind == "slwp") {
        growth = build_growth_data(f, inst.xbar, r, delta,
                                   sweep.uniform_points, r, false);
      } else if (kind == "swlwp") {
        gamma = r;
        growth = build_growth_data(f, inst.xbar, r, delta,
                                   sweep.uniform_points, gamma, true);
      } else if (kind == "tslm") {
        tslm = build_tslm_data(f, inst.xbar, r, delta, sweep.uniform_points);
      } else {
        gamma = 0.5 * r;
        weak = build_weak_data(f, inst.xbar, r, delta, sweep.uniform_points,
                               gamma);
      }

      for (int ke = sweep.log2_lo; ke <= sweep.log2_hi; ++ke) {
        double kappa = std::ldexp(1.0, ke);
        for (int te = sweep.log2_lo; te <= sweep.log2_hi; ++te) {
          double tau = std::ldexp(1.0, te);
          ++out.combinations;
          if (sweep.guards && !sweep_guard(kind, inst.modulus, tau, kappa, r,
                                           delta, lhat, h, 0.0)) {
            ++out.guarded;
            continue;
          }
          if (kind == "slwp")
            track.consider(finish_growth_cert(
                "stable-local-well-posedness", growth, inst.modulus, tau,
                kappa, kappa, tau, -1.0));
          else if (kind == "swlwp")
            track.consider(finish_growth_cert(
                "weak-local-well-posedness", growth, inst.modulus, tau, kappa,
                tau, kappa, gamma));
          else if (kind == "tslm")
            track.consider(finish_tslm_cert(tslm, inst.modulus, tau, kappa));
          else
            track.consider(finish_weak_cert(weak, inst.modulus, tau, kappa));
        }
      }
    } else if (mr_kind) {
      double rc = 0.5 * r;
      auto g = window_graph(inst, inst.xbar[0] - r, inst.xbar[0] + r);
      mr_sweep_one(g, {inst.xbar[0], 0.0}, rc, kind == "strong-metric-reg",
                   inst.modulus, sweep, out, track);
    } else {
      if (inst.spec.id.empty())
        throw std::invalid_argument(
            "second-subdifferential sweeps need a catalog spec");
      double rc = 0.5 * r;
      auto g = subdiff::subdifferential_graph(inst.spec, inst.xbar[0] - r,
                                              inst.xbar[0] + r);
      for (int ke = sweep.log2_lo; ke <= sweep.log2_hi; ++ke) {
        double kappa = std::ldexp(1.0, ke);
        ++out.combinations;
        track.consider(subdiff::check_condition_6_1(g, inst.modulus, kappa,
                                                    rc, {inst.xbar[0], 0.0}));
      }
    }
  }

  track.finalize(kind);
  return out;
}

namespace {

std::string found_word(const SearchOutcome& s) {
  return s.found ? "found" : "not-found";
}

}  // namespace

TheoremReport verify_theorem(const std::string& id, const SearchInstance& inst,
                             const SweepSpec& sweep) {
  TheoremReport rep;
  rep.id = id;

  auto equivalence = [&](const SearchOutcome& a, const SearchOutcome& b,
                         const std::string& an, const std::string& bn) {
    rep.certificates = {a.best, b.best};
    rep.detail = an + " " + found_word(a) + "; " + bn + " " + found_word(b);
    rep.verdict = a.found == b.found ? "CONSISTENT" : "INCONSISTENT";
  };
  auto implication = [&](const SearchOutcome& p, const SearchOutcome& c,
                         const std::string& pn, const std::string& cn) {
    rep.certificates = {p.best, c.best};
    rep.detail = pn + " " + found_word(p) + "; " + cn + " " + found_word(c);
    if (!p.found)
      rep.verdict = "VACUOUS";
    else
      rep.verdict = c.found ? "CONSISTENT" : "INCONSISTENT";
  };

  if (id == "T4.5") {
    auto s1 = search_certificate("slwp", inst, sweep);
    SearchInstance mi = inst;
    mi.modulus = admissible::inverse_derivative_function(inst.modulus);
    auto s2 = search_certificate("tslm", mi, sweep);
    equivalence(s1, s2, "growth", "tilt-modulus");
  } else if (id == "T5.2") {
    auto s1 = search_certificate("slwp", inst, sweep);
    auto s2 = search_certificate("swlwp", inst, sweep);
    equivalence(s1, s2, "pointed growth", "set growth");
  } else if (id == "C5.3") {
    auto s1 = search_certificate("swlwp", inst, sweep);
    SearchInstance mi = inst;
    mi.modulus = admissible::inverse_derivative_function(inst.modulus);
    auto s2 = search_certificate("weak-tslm", mi, sweep);
    equivalence(s1, s2, "set growth", "set tilt-modulus");
  } else if (id == "T3.3") {
    SearchInstance mi = inst;
    mi.modulus = admissible::derivative_function(inst.modulus);
    auto prem = search_certificate("strong-metric-reg", mi, sweep);
    auto conc = search_certificate("slwp", inst, sweep);
    implication(prem, conc, "derivative-graph regularity", "growth");
  } else if (id == "T3.4") {
    auto prem = search_certificate("slwp", inst, sweep);
    if (!prem.found) {
      rep.certificates = {prem.best};
      rep.detail = "growth not-found";
      rep.verdict = "VACUOUS";
      return rep;
    }
    double r = prem.best.constants.at("r");
    auto fe = conjugate::convex_envelope(
        gridfn::add_ball_indicator(inst.f, inst.xbar, r));
    auto g = subdiff::graph_from_convex_grid(fe);
    SearchOutcome conc;
    BestTracker track;
    track.out = &conc;
    for (double frac : sweep.r_fractions) {
      double rc = 0.5 * frac * std::min(inst.xbar[0] - g.xlo,
                                        g.xhi - inst.xbar[0]);
      mr_sweep_one(g, {inst.xbar[0], 0.0}, rc, true,
                   admissible::derivative_function(inst.modulus), sweep, conc,
                   track);
    }
    track.finalize("strong-metric-reg");
    implication(prem, conc, "growth", "envelope-graph regularity");
  } else if (id == "P3.6") {
    auto prem = search_certificate("slwp", inst, sweep);
    if (!prem.found) {
      rep.certificates = {prem.best};
      rep.detail = "growth not-found";
      rep.verdict = "VACUOUS";
      return rep;
    }
    double r = prem.best.constants.at("r");
    auto g = window_graph(inst, inst.xbar[0] - r, inst.xbar[0] + r);
    rep.certificates = {prem.best};
    bool all = true;
    std::string eps_list;
    for (double eps : {0.25 * r, 0.5 * r, r}) {
      auto c = check_interiority(g, inst.xbar[0], eps);
      all = all && c.pass;
      rep.certificates.push_back(c);
      if (!eps_list.empty()) eps_list += ", ";
      eps_list += c.pass ? "pass" : "fail";
    }
    rep.detail = "growth found; interiority at r/4, r/2, r: " + eps_list;
    rep.verdict = all ? "CONSISTENT" : "INCONSISTENT";
  } else if (id == "P6.1") {
    auto prem = search_certificate("condition-6-1", inst, sweep);
    auto conc = search_certificate("metric-reg", inst, sweep);
    implication(prem, conc, "second-subdifferential condition",
                "graph regularity");
  } else if (id == "C6.2") {
    auto prem = search_certificate("condition-6-1", inst, sweep);
    SearchInstance gi = inst;
    gi.modulus = admissible::integral_function(inst.modulus);
    auto conc = search_certificate("slwp", gi, sweep);
    implication(prem, conc, "second-subdifferential condition",
                "integrated growth");
  } else {
    throw std::invalid_argument("unknown theorem id: " + id);
  }
  return rep;
}

}  // namespace tiltlab::wellposed
