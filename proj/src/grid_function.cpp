#include "tiltlab/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tiltlab::gridfn {

namespace {

void validate_shape(const GridFunction& f) {
  if (f.dim != 1 && f.dim != 2) throw std::invalid_argument("dim must be 1 or 2");
  int expected = 1;
  for (int a = 0; a < f.dim; ++a) {
    if (f.points[a] < 3 || f.points[a] % 2 == 0)
      throw std::invalid_argument("points per axis must be odd and >= 3");
    if (!(f.hi[a] > f.lo[a])) throw std::invalid_argument("degenerate box");
    expected *= f.points[a];
  }
  if (f.dim == 1 && f.points[1] != 1)
    throw std::invalid_argument("1-D grids must have points[1] == 1");
  if (f.values.size() != static_cast<std::size_t>(expected))
    throw std::invalid_argument("value count does not match grid shape");
  bool any_finite = false;
  for (double v : f.values) {
    if (std::isnan(v) || v == -kInf)
      throw std::invalid_argument("values must be finite or +inf");
    if (std::isfinite(v)) any_finite = true;
  }
  if (!any_finite) throw std::invalid_argument("function is identically +inf");
}

double ball_slack(double r) { return 1e-12 * std::max(1.0, r); }

}  // namespace

double GridFunction::spacing(int axis) const {
  return (hi[axis] - lo[axis]) / (points[axis] - 1);
}

double GridFunction::max_spacing() const {
  double h = spacing(0);
  if (dim == 2) h = std::max(h, spacing(1));
  return h;
}

double GridFunction::coord(int axis, int idx) const {
  if (idx == points[axis] - 1) return hi[axis];
  return lo[axis] + idx * spacing(axis);
}

std::array<double, 2> GridFunction::point_at(std::size_t f) const {
  int i0 = static_cast<int>(f / points[1]);
  int i1 = static_cast<int>(f % points[1]);
  if (dim == 1) return {coord(0, i0), 0.0};
  return {coord(0, i0), coord(1, i1)};
}

double evaluate_catalog(const FunctionSpec& spec, int dim,
                        const std::array<double, 2>& x) {
  double sq = x[0] * x[0] + (dim == 2 ? x[1] * x[1] : 0.0);
  double r = dim == 2 ? std::sqrt(sq) : std::abs(x[0]);
  const std::string& id = spec.id;
  if (id == "quad") return sq;
  if (id == "half-quad") return 0.5 * sq;
  if (id == "quartic") return sq * sq;
  if (id == "quartic-plus-quad") return sq * sq + sq;
  if (id == "abs") return r;
  if (id == "abs-quad") return r + sq;
  if (id == "power-q") {
    if (spec.params.empty() || spec.params.size() > 2)
      throw std::invalid_argument("power-q takes exponent [, coefficient]");
    double q = spec.params[0];
    if (q <= 0.0) throw std::invalid_argument("power-q exponent must be positive");
    double c = spec.params.size() == 2 ? spec.params[1] : 1.0;
    return r == 0.0 ? 0.0 : c * std::pow(r, q);
  }
  if (id == "double-well") {
    double t = sq - 1.0;
    return t * t;
  }
  if (id == "flat-well") {
    double t = std::max(r - 1.0, 0.0);
    return t * t;
  }
  if (id == "one-sided") {
    if (dim != 1) throw std::invalid_argument("one-sided is 1-D only");
    return x[0] <= 0.0 ? 0.0 : x[0] * x[0];
  }
  if (id == "indicator-ball") {
    std::array<double, 2> c{0.0, 0.0};
    double rad;
    if (dim == 1 && spec.params.size() == 2) {
      c[0] = spec.params[0];
      rad = spec.params[1];
    } else if (dim == 2 && spec.params.size() == 3) {
      c = {spec.params[0], spec.params[1]};
      rad = spec.params[2];
    } else {
      throw std::invalid_argument("indicator-ball takes center then radius");
    }
    if (rad <= 0.0) throw std::invalid_argument("ball radius must be positive");
    return distance(x, c, dim) <= rad + ball_slack(rad) ? 0.0 : kInf;
  }
  throw std::invalid_argument("unknown function id: " + id);
}

GridFunction sample_function(const FunctionSpec& spec, int dim,
                             std::array<double, 2> lo, std::array<double, 2> hi,
                             std::array<int, 2> points) {
  GridFunction f;
  f.dim = dim;
  f.lo = lo;
  f.hi = hi;
  f.points = points;
  if (dim == 1) {
    f.points[1] = 1;
    f.lo[1] = f.hi[1] = 0.0;
  }
  f.values.assign(static_cast<std::size_t>(f.points[0]) * f.points[1], 0.0);
  std::ostringstream name;
  name << spec.id;
  for (double p : spec.params) name << ":" << p;
  f.name = name.str();
  for (std::size_t k = 0; k < f.values.size(); ++k)
    f.values[k] = evaluate_catalog(spec, dim, f.point_at(k));
  validate_shape(f);
  return f;
}

GridFunction sample_function_1d(const FunctionSpec& spec, double lo, double hi,
                                int points) {
  return sample_function(spec, 1, {lo, 0.0}, {hi, 0.0}, {points, 1});
}

GridFunction from_values(const std::string& name, int dim,
                         std::array<double, 2> lo, std::array<double, 2> hi,
                         std::array<int, 2> points, std::vector<double> values) {
  GridFunction f;
  f.dim = dim;
  f.lo = lo;
  f.hi = hi;
  f.points = points;
  if (dim == 1) {
    f.points[1] = 1;
    f.lo[1] = f.hi[1] = 0.0;
  }
  f.values = std::move(values);
  f.name = name;
  validate_shape(f);
  return f;
}

GridFunction tilt_perturb(const GridFunction& f, std::array<double, 2> u_star) {
  GridFunction g = f;
  std::ostringstream name;
  name << f.name << "-tilt(" << u_star[0];
  if (f.dim == 2) name << "," << u_star[1];
  name << ")";
  g.name = name.str();
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    if (!std::isfinite(g.values[k])) continue;
    std::array<double, 2> x = f.point_at(k);
    double ip = u_star[0] * x[0] + (f.dim == 2 ? u_star[1] * x[1] : 0.0);
    g.values[k] -= ip;
  }
  return g;
}

GridFunction add_ball_indicator(const GridFunction& f,
                                std::array<double, 2> center, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  GridFunction g = f;
  bool any = false;
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    if (distance(f.point_at(k), center, f.dim) <= r + ball_slack(r))
      any = true;
    else
      g.values[k] = kInf;
  }
  if (!any) throw std::invalid_argument("ball does not meet the grid");
  bool any_finite = false;
  for (double v : g.values)
    if (std::isfinite(v)) any_finite = true;
  if (!any_finite)
    throw std::invalid_argument("ball contains no finite value");
  std::ostringstream name;
  name << f.name << "+ball(" << center[0];
  if (f.dim == 2) name << "," << center[1];
  name << ";" << r << ")";
  g.name = name.str();
  return g;
}

std::vector<std::size_t> indices_in_ball(const GridFunction& f,
                                         std::array<double, 2> center,
                                         double r) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    if (distance(f.point_at(k), center, f.dim) <= r + ball_slack(r))
      out.push_back(k);
  return out;
}

double min_over_ball(const GridFunction& f, std::array<double, 2> center,
                     double r) {
  double m = kInf;
  for (std::size_t k : indices_in_ball(f, center, r))
    m = std::min(m, f.values[k]);
  if (!std::isfinite(m))
    throw std::invalid_argument("no finite value inside the ball");
  return m;
}

double localized_argmin_tolerance(const GridFunction& f,
                                  std::array<double, 2> center, double r) {
  std::vector<std::size_t> ball = indices_in_ball(f, center, r);
  double m = kInf;
  for (std::size_t k : ball) m = std::min(m, f.values[k]);
  if (!std::isfinite(m))
    throw std::invalid_argument("no finite value inside the ball");

  // local slope estimate over the provisional minimizers; neighbors must be
  // finite and stay inside both the box and the ball
  double slope = 0.0;
  for (std::size_t k : ball) {
    if (f.values[k] > m + 1e-9) continue;
    int i0 = static_cast<int>(k / f.points[1]);
    int i1 = static_cast<int>(k % f.points[1]);
    for (int axis = 0; axis < f.dim; ++axis) {
      int i = axis == 0 ? i0 : i1;
      if (i == 0 || i == f.points[axis] - 1) continue;
      std::size_t prev = axis == 0 ? f.flat(i0 - 1, i1) : f.flat(i0, i1 - 1);
      std::size_t next = axis == 0 ? f.flat(i0 + 1, i1) : f.flat(i0, i1 + 1);
      if (!std::isfinite(f.values[prev]) || !std::isfinite(f.values[next]))
        continue;
      double rr = r + ball_slack(r);
      if (distance(f.point_at(prev), center, f.dim) > rr) continue;
      if (distance(f.point_at(next), center, f.dim) > rr) continue;
      double q = std::abs(f.values[next] - f.values[prev]) /
                 (2.0 * f.spacing(axis));
      slope = std::max(slope, q);
    }
  }
  return 1e-9 + slope * f.max_spacing();
}

PointSet localized_argmin(const GridFunction& f, std::array<double, 2> center,
                          double r, double tol) {
  std::vector<std::size_t> ball = indices_in_ball(f, center, r);
  double m = kInf;
  for (std::size_t k : ball) m = std::min(m, f.values[k]);
  if (!std::isfinite(m))
    throw std::invalid_argument("no finite value inside the ball");

  if (tol < 0.0) tol = localized_argmin_tolerance(f, center, r);

  PointSet out;
  out.dim = f.dim;
  for (std::size_t k : ball)
    if (f.values[k] <= m + tol) out.points.push_back(f.point_at(k));
  return out;
}

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b,
                int dim) {
  if (dim == 1) return std::abs(a[0] - b[0]);
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double distance_to_set(const std::array<double, 2>& x, const PointSet& s) {
  if (s.points.empty()) return kInf;
  double d = kInf;
  for (const auto& p : s.points) d = std::min(d, distance(x, p, s.dim));
  return d;
}

void write_csv(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "# dim," << f.dim << "\n";
  out << "# name," << f.name << "\n";
  for (int a = 0; a < f.dim; ++a)
    out << "# axis," << f.lo[a] << "," << f.hi[a] << "," << f.points[a] << "\n";
  for (double v : f.values) {
    if (std::isfinite(v))
      out << v << "\n";
    else
      out << "inf\n";
  }
}

GridFunction read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  GridFunction f;
  f.dim = 0;
  int axis = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string field;
      std::getline(ss, field, ',');
      field.erase(0, field.find_first_not_of(' '));
      std::string key = field;
      if (key == "dim") {
        std::getline(ss, field, ',');
        f.dim = std::stoi(field);
      } else if (key == "name") {
        std::getline(ss, f.name);
      } else if (key == "axis") {
        if (axis >= 2) throw std::runtime_error("too many axis headers");
        std::getline(ss, field, ',');
        f.lo[axis] = std::stod(field);
        std::getline(ss, field, ',');
        f.hi[axis] = std::stod(field);
        std::getline(ss, field, ',');
        f.points[axis] = std::stoi(field);
        ++axis;
      }
      continue;
    }
    if (line == "inf")
      f.values.push_back(kInf);
    else
      f.values.push_back(std::stod(line));
  }
  if (f.dim != axis)
    throw std::runtime_error("axis headers do not match dim in " + path);
  if (f.dim == 1) {
    f.points[1] = 1;
    f.lo[1] = f.hi[1] = 0.0;
  }
  validate_shape(f);
  return f;
}

std::vector<std::string> catalog_function_ids() {
  return {"quad",      "half-quad", "quartic",   "quartic-plus-quad",
          "abs",       "abs-quad",  "power-q",   "double-well",
          "flat-well", "one-sided", "indicator-ball"};
}

}  // namespace tiltlab::gridfn
