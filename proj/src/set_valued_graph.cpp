#include "tiltlab/set_valued_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tiltlab/conjugate.hpp"

namespace tiltlab::subdiff {

namespace {

constexpr double kInf = gridfn::kInf;
constexpr int kBuckets = 1024;

double seg_len(const GraphSegment& s) {
  return std::hypot(s.x1 - s.x0, s.v1 - s.v0);
}

double point_segment_distance(double px, double pv, const GraphSegment& s,
                              double* t_out = nullptr) {
  double dx = s.x1 - s.x0, dv = s.v1 - s.v0;
  double l2 = dx * dx + dv * dv;
  double t = 0.0;
  if (l2 > 0.0) {
    t = ((px - s.x0) * dx + (pv - s.v0) * dv) / l2;
    t = std::clamp(t, 0.0, 1.0);
  }
  if (t_out) *t_out = t;
  return std::hypot(px - (s.x0 + t * dx), pv - (s.v0 + t * dv));
}

// Liang-Barsky; returns false when the segment misses the rectangle
bool clip_to_rect(GraphSegment& s, double xlo, double xhi, double vlo,
                  double vhi, double* t0_out = nullptr,
                  double* t1_out = nullptr) {
  double t0 = 0.0, t1 = 1.0;
  double dx = s.x1 - s.x0, dv = s.v1 - s.v0;
  const double p[4] = {-dx, dx, -dv, dv};
  const double q[4] = {s.x0 - xlo, xhi - s.x0, s.v0 - vlo, vhi - s.v0};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
    } else {
      double r = q[i] / p[i];
      if (p[i] < 0.0) {
        if (r > t1) return false;
        if (r > t0) t0 = r;
      } else {
        if (r < t0) return false;
        if (r < t1) t1 = r;
      }
    }
  }
  GraphSegment c{s.x0 + t0 * dx, s.v0 + t0 * dv, s.x0 + t1 * dx,
                 s.v0 + t1 * dv};
  s = c;
  if (t0_out) *t0_out = t0;
  if (t1_out) *t1_out = t1;
  return true;
}

std::vector<Interval> merge_intervals(std::vector<Interval> v, double tol) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> out;
  for (const Interval& i : v) {
    if (!out.empty() && i.lo <= out.back().hi + tol)
      out.back().hi = std::max(out.back().hi, i.hi);
    else
      out.push_back(i);
  }
  return out;
}

std::array<double, 2> unit(double x, double y) {
  double n = std::hypot(x, y);
  if (n == 0.0) throw std::invalid_argument("zero direction");
  return {x / n, y / n};
}

double cross(std::array<double, 2> a, std::array<double, 2> b) {
  return a[0] * b[1] - a[1] * b[0];
}

double dot(std::array<double, 2> a, std::array<double, 2> b) {
  return a[0] * b[0] + a[1] * b[1];
}

// adaptive chord refinement of a smooth derivative curve; emits (b, f(b))
void refine_curve(const std::function<double(double)>& dv, double a, double b,
                  double fa, double fb, double tol, int depth,
                  std::vector<std::array<double, 2>>& out) {
  double m = 0.5 * (a + b);
  double fm = dv(m);
  double dev = std::abs(fm - 0.5 * (fa + fb));
  bool tiny = (b - a) <= 1e-13 * std::max(1.0, std::abs(a) + std::abs(b));
  if ((dev <= 0.5 * tol && depth >= 2) || depth >= 48 || tiny) {
    out.push_back({b, fb});
    return;
  }
  refine_curve(dv, a, m, fa, fm, tol, depth + 1, out);
  refine_curve(dv, m, b, fm, fb, tol, depth + 1, out);
}

std::vector<std::array<double, 2>> linearize_piece(
    const std::function<double(double)>& dv, double a, double b, double tol) {
  std::vector<std::array<double, 2>> pts;
  pts.push_back({a, dv(a)});
  refine_curve(dv, a, b, dv(a), dv(b), tol, 0, pts);
  return pts;
}

void append_polyline(std::vector<GraphSegment>& segs,
                     const std::vector<std::array<double, 2>>& pts) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i] == pts[i + 1]) continue;
    segs.push_back({pts[i][0], pts[i][1], pts[i + 1][0], pts[i + 1][1]});
  }
}

}  // namespace

double SetValuedGraph::scale() const {
  return std::max({1.0, std::abs(xlo), std::abs(xhi), std::abs(vlo),
                   std::abs(vhi)});
}

void SetValuedGraph::build_index() {
  xbuckets_.assign(kBuckets, {});
  vbuckets_.assign(kBuckets, {});
  xbw_ = (xhi - xlo) / kBuckets;
  vbw_ = (vhi - vlo) / kBuckets;
  double pad = 1e-7 * scale();
  auto span = [pad](double a, double b, double lo, double bw) {
    int i0 = static_cast<int>(std::floor((std::min(a, b) - pad - lo) / bw));
    int i1 = static_cast<int>(std::floor((std::max(a, b) + pad - lo) / bw));
    return std::pair<int, int>{std::clamp(i0, 0, kBuckets - 1),
                               std::clamp(i1, 0, kBuckets - 1)};
  };
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const GraphSegment& s = segments[k];
    auto [a, b] = span(s.x0, s.x1, xlo, xbw_);
    for (int i = a; i <= b; ++i) xbuckets_[i].push_back(k);
    auto [c, d] = span(s.v0, s.v1, vlo, vbw_);
    for (int i = c; i <= d; ++i) vbuckets_[i].push_back(k);
  }
}

const std::vector<std::size_t>* SetValuedGraph::xbucket(double x) const {
  if (xbuckets_.empty()) return nullptr;
  int i = static_cast<int>(std::floor((x - xlo) / xbw_));
  if (i < 0 || i >= kBuckets) return nullptr;
  return &xbuckets_[i];
}

const std::vector<std::size_t>* SetValuedGraph::vbucket(double v) const {
  if (vbuckets_.empty()) return nullptr;
  int i = static_cast<int>(std::floor((v - vlo) / vbw_));
  if (i < 0 || i >= kBuckets) return nullptr;
  return &vbuckets_[i];
}

std::vector<Interval> SetValuedGraph::slice(double t, bool vertical) const {
  double qtol = 1e-12 * scale();
  std::vector<Interval> hits;
  const std::vector<std::size_t>* bucket =
      vertical ? xbucket(t) : vbucket(t);
  auto scan = [&](std::size_t k) {
    const GraphSegment& s = segments[k];
    double a0 = vertical ? s.x0 : s.v0;
    double a1 = vertical ? s.x1 : s.v1;
    double b0 = vertical ? s.v0 : s.x0;
    double b1 = vertical ? s.v1 : s.x1;
    double amin = std::min(a0, a1), amax = std::max(a0, a1);
    if (t < amin - qtol || t > amax + qtol) return;
    if (amax - amin <= qtol) {
      hits.push_back({std::min(b0, b1), std::max(b0, b1)});
    } else {
      double u = std::clamp((t - a0) / (a1 - a0), 0.0, 1.0);
      double b = b0 + u * (b1 - b0);
      hits.push_back({b, b});
    }
  };
  if (bucket) {
    for (std::size_t k : *bucket) scan(k);
  } else {
    bool inside = vertical ? (t >= xlo - qtol && t <= xhi + qtol)
                           : (t >= vlo - qtol && t <= vhi + qtol);
    if (inside)
      for (std::size_t k = 0; k < segments.size(); ++k) scan(k);
  }
  return merge_intervals(std::move(hits), qtol);
}

std::vector<Interval> SetValuedGraph::values_at(double x) const {
  return slice(x, true);
}

std::vector<Interval> SetValuedGraph::preimages_of(double v) const {
  return slice(v, false);
}

bool SetValuedGraph::contains(double x, double v, double tol) const {
  const std::vector<std::size_t>* bucket =
      tol <= 1e-7 * scale() ? xbucket(x) : nullptr;
  if (bucket) {
    for (std::size_t k : *bucket)
      if (point_segment_distance(x, v, segments[k]) <= tol) return true;
    return false;
  }
  for (const GraphSegment& s : segments)
    if (point_segment_distance(x, v, s) <= tol) return true;
  return false;
}

double distance_to_intervals(double t, const std::vector<Interval>& s) {
  double best = kInf;
  for (const Interval& i : s) {
    double d = t < i.lo ? i.lo - t : (t > i.hi ? t - i.hi : 0.0);
    best = std::min(best, d);
  }
  return best;
}

SetValuedGraph make_graph(const std::string& name,
                          std::vector<GraphSegment> segments, double xlo,
                          double xhi, double vlo, double vhi) {
  if (name.empty()) throw std::invalid_argument("graph needs a name");
  if (!(xhi > xlo) || !(vhi > vlo))
    throw std::invalid_argument("degenerate graph box");
  SetValuedGraph g;
  g.name = name;
  g.xlo = xlo;
  g.xhi = xhi;
  g.vlo = vlo;
  g.vhi = vhi;
  for (GraphSegment s : segments) {
    if (!std::isfinite(s.x0) || !std::isfinite(s.v0) || !std::isfinite(s.x1) ||
        !std::isfinite(s.v1))
      throw std::invalid_argument("segments must have finite endpoints");
    if (clip_to_rect(s, xlo, xhi, vlo, vhi) && seg_len(s) > 0.0)
      g.segments.push_back(s);
  }
  if (g.segments.empty())
    throw std::invalid_argument("graph has no segments inside the box");
  g.build_index();
  return g;
}

SetValuedGraph subdifferential_graph(const gridfn::FunctionSpec& spec,
                                     double xlo, double xhi) {
  if (!(xhi > xlo)) throw std::invalid_argument("degenerate window");
  const std::string& id = spec.id;
  const double lin_tol = 1e-4;
  std::vector<GraphSegment> segs;
  double used_tol = 0.0;
  std::string note;

  auto smooth = [&](const std::function<double(double)>& dv,
                    std::vector<double> breaks) {
    breaks.insert(breaks.begin(), xlo);
    breaks.push_back(xhi);
    std::sort(breaks.begin(), breaks.end());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      double a = std::max(breaks[i], xlo), b = std::min(breaks[i + 1], xhi);
      if (b - a <= 0.0) continue;
      append_polyline(segs, linearize_piece(dv, a, b, lin_tol));
    }
    used_tol = lin_tol;
  };
  auto polyline = [&](const std::function<double(double)>& dv,
                      std::vector<double> breaks) {
    breaks.insert(breaks.begin(), xlo);
    breaks.push_back(xhi);
    std::sort(breaks.begin(), breaks.end());
    std::vector<std::array<double, 2>> pts;
    for (double x : breaks)
      if (x >= xlo && x <= xhi) pts.push_back({x, dv(x)});
    append_polyline(segs, pts);
  };
  auto kinked = [&](double slope, double level) {
    // derivative level*sign(x) + slope*x with a step [-level, level] at 0
    auto left = [&](double x) { return -level + slope * x; };
    auto right = [&](double x) { return level + slope * x; };
    if (xlo < 0.0) {
      double e = std::min(0.0, xhi);
      segs.push_back({xlo, left(xlo), e, left(e)});
    }
    if (xlo <= 0.0 && 0.0 <= xhi) segs.push_back({0.0, -level, 0.0, level});
    if (xhi > 0.0) {
      double s = std::max(0.0, xlo);
      segs.push_back({s, right(s), xhi, right(xhi)});
    }
  };

  if (id == "quad") {
    polyline([](double x) { return 2.0 * x; }, {});
  } else if (id == "half-quad") {
    polyline([](double x) { return x; }, {});
  } else if (id == "quartic") {
    smooth([](double x) { return 4.0 * x * x * x; }, {0.0});
  } else if (id == "quartic-plus-quad") {
    smooth([](double x) { return 4.0 * x * x * x + 2.0 * x; }, {0.0});
  } else if (id == "double-well") {
    smooth([](double x) { return 4.0 * x * x * x - 4.0 * x; }, {0.0});
    note = "derivative of a smooth nonconvex function";
  } else if (id == "abs") {
    kinked(0.0, 1.0);
  } else if (id == "abs-quad") {
    kinked(2.0, 1.0);
  } else if (id == "flat-well") {
    polyline(
        [](double x) {
          if (x > 1.0) return 2.0 * (x - 1.0);
          if (x < -1.0) return 2.0 * (x + 1.0);
          return 0.0;
        },
        {-1.0, 1.0});
  } else if (id == "one-sided") {
    polyline([](double x) { return x > 0.0 ? 2.0 * x : 0.0; }, {0.0});
  } else if (id == "power-q") {
    if (spec.params.empty() || spec.params.size() > 2)
      throw std::invalid_argument("power-q takes exponent [, coefficient]");
    double q = spec.params[0];
    double c = spec.params.size() == 2 ? spec.params[1] : 1.0;
    if (q < 1.0)
      throw std::invalid_argument(
          "subdifferential graph needs exponent >= 1");
    if (q == 1.0) {
      kinked(0.0, c);
    } else if (q == 2.0) {
      polyline([c](double x) { return 2.0 * c * x; }, {});
    } else {
      auto dv = [q, c](double x) {
        double r = std::abs(x);
        return r == 0.0 ? 0.0
                        : c * q * std::pow(r, q - 1.0) * (x < 0 ? -1.0 : 1.0);
      };
      smooth(dv, {0.0});
    }
  } else if (id == "indicator-ball") {
    if (spec.params.size() != 2)
      throw std::invalid_argument("indicator-ball takes center then radius");
    double cx = spec.params[0], rad = spec.params[1];
    if (rad <= 0.0) throw std::invalid_argument("ball radius must be positive");
    double a = cx - rad, b = cx + rad;
    if (b < xlo || a > xhi)
      throw std::invalid_argument("ball does not meet the window");
    double width = xhi - xlo;
    double w = std::max(1.0, width);
    if (a >= xlo) segs.push_back({a, -w, a, 0.0});
    segs.push_back({std::max(a, xlo), 0.0, std::min(b, xhi), 0.0});
    if (b <= xhi) segs.push_back({b, 0.0, b, w});
    SetValuedGraph g = make_graph(spec.id, segs, xlo, xhi, -w, w);
    g.meta["kind"] = "normal-cone";
    return g;
  } else {
    throw std::invalid_argument("no subdifferential graph for id: " + id);
  }

  double vmax = 0.0;
  for (const GraphSegment& s : segs)
    vmax = std::max({vmax, std::abs(s.v0), std::abs(s.v1)});
  double w = std::max({1.0, 2.0 * vmax, xhi - xlo});
  std::ostringstream name;
  name << id;
  for (double p : spec.params) name << ":" << p;
  SetValuedGraph g = make_graph(name.str(), segs, xlo, xhi, -w, w);
  g.linearization_tol = used_tol;
  if (!note.empty()) g.meta["note"] = note;
  return g;
}

Interval convex_subdifferential_1d(const gridfn::GridFunction& f, double x) {
  if (f.dim != 1) throw std::invalid_argument("needs a 1-D grid function");
  if (!conjugate::is_convex_on_grid(f))
    throw std::invalid_argument("grid function is not convex");
  double h = f.spacing(0);
  double ti = (x - f.lo[0]) / h;
  int i = static_cast<int>(std::lround(ti));
  if (i < 0 || i >= f.points[0] ||
      std::abs(f.coord(0, i) - x) > 1e-9 * std::max(1.0, std::abs(x)))
    throw std::invalid_argument("x is not a grid point");
  double fi = f.values[f.flat(i, 0)];
  if (!std::isfinite(fi))
    throw std::invalid_argument("x is outside the effective domain");
  double lo = -kInf, hi = kInf;
  if (i > 0 && std::isfinite(f.values[f.flat(i - 1, 0)]))
    lo = (fi - f.values[f.flat(i - 1, 0)]) / h;
  if (i + 1 < f.points[0] && std::isfinite(f.values[f.flat(i + 1, 0)]))
    hi = (f.values[f.flat(i + 1, 0)] - fi) / h;
  if (lo > hi) lo = hi;  // guards fp wobble on smooth interiors
  return {lo, hi};
}

SetValuedGraph graph_from_convex_grid(const gridfn::GridFunction& f) {
  if (f.dim != 1) throw std::invalid_argument("needs a 1-D grid function");
  if (!conjugate::is_convex_on_grid(f))
    throw std::invalid_argument("grid function is not convex");
  int n = f.points[0];
  int a = -1, b = -1;
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(f.values[f.flat(i, 0)])) {
      if (a < 0) a = i;
      b = i;
    } else if (a >= 0 && b == i - 1) {
      for (int j = i; j < n; ++j)
        if (std::isfinite(f.values[f.flat(j, 0)]))
          throw std::invalid_argument("effective domain is not an interval");
    }
  }
  if (a < 0) throw std::invalid_argument("function is identically +inf");
  double h = f.spacing(0);
  std::vector<double> q;  // slopes between consecutive finite nodes
  for (int i = a; i < b; ++i)
    q.push_back((f.values[f.flat(i + 1, 0)] - f.values[f.flat(i, 0)]) / h);
  double qmax = 1.0;
  for (double s : q) qmax = std::max(qmax, std::abs(s));
  double w = std::max(2.0 * qmax, f.hi[0] - f.lo[0]);
  std::vector<GraphSegment> segs;
  double xa = f.coord(0, a), xb = f.coord(0, b);
  if (a == b) {
    segs.push_back({xa, -w, xa, w});  // single-point domain: full wall
  } else {
    segs.push_back({xa, -w, xa, q.front()});
    int i = 0;
    while (i < static_cast<int>(q.size())) {
      int j = i;
      while (j + 1 < static_cast<int>(q.size()) && q[j + 1] == q[i]) ++j;
      segs.push_back({f.coord(0, a + i), q[i], f.coord(0, a + j + 1), q[i]});
      if (j + 1 < static_cast<int>(q.size()))
        segs.push_back({f.coord(0, a + j + 1), q[i], f.coord(0, a + j + 1),
                        q[j + 1]});
      i = j + 1;
    }
    segs.push_back({xb, q.back(), xb, w});
  }
  SetValuedGraph g =
      make_graph(f.name + ":staircase", segs, f.lo[0], f.hi[0], -w, w);
  g.meta["kind"] = "staircase";
  g.mesh = h;
  return g;
}

void write_graph_csv(const SetValuedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.precision(17);
  out << "# name," << g.name << "\n";
  out << "# box," << g.xlo << "," << g.xhi << "," << g.vlo << "," << g.vhi
      << "\n";
  out << "# lintol," << g.linearization_tol << "\n";
  out << "# mesh," << g.mesh << "\n";
  for (const GraphSegment& s : g.segments)
    out << s.x0 << "," << s.v0 << "," << s.x1 << "," << s.v1 << "\n";
}

SetValuedGraph read_graph_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line, name;
  double xlo = 0, xhi = 0, vlo = 0, vhi = 0, lintol = 0, mesh = 0;
  bool have_box = false;
  std::vector<GraphSegment> segs;
  auto parse_num = [](const std::string& tok) {
    if (tok == "inf") return kInf;
    if (tok == "-inf") return -kInf;
    return std::stod(tok);
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string key;
      std::getline(ss, key, ',');
      key.erase(0, key.find_first_not_of(' '));
      if (key == "name") {
        std::getline(ss, name);
      } else if (key == "box") {
        std::string t;
        std::getline(ss, t, ',');
        xlo = parse_num(t);
        std::getline(ss, t, ',');
        xhi = parse_num(t);
        std::getline(ss, t, ',');
        vlo = parse_num(t);
        std::getline(ss, t, ',');
        vhi = parse_num(t);
        have_box = true;
      } else if (key == "lintol") {
        std::string t;
        std::getline(ss, t);
        lintol = parse_num(t);
      } else if (key == "mesh") {
        std::string t;
        std::getline(ss, t);
        mesh = parse_num(t);
      }
      continue;
    }
    std::stringstream ss(line);
    std::string t;
    double c[4];
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(ss, t, ','))
        throw std::runtime_error("bad segment row: " + line);
      c[i] = parse_num(t);
    }
    segs.push_back({c[0], c[1], c[2], c[3]});
  }
  if (!have_box) throw std::runtime_error("graph csv is missing a box header");
  // infinite endpoints encode axis-aligned rays; clamp them to the box
  for (GraphSegment& s : segs) {
    if (std::isinf(s.x0)) s.x0 = s.x0 > 0 ? xhi : xlo;
    if (std::isinf(s.x1)) s.x1 = s.x1 > 0 ? xhi : xlo;
    if (std::isinf(s.v0)) s.v0 = s.v0 > 0 ? vhi : vlo;
    if (std::isinf(s.v1)) s.v1 = s.v1 > 0 ? vhi : vlo;
  }
  SetValuedGraph g = make_graph(name.empty() ? "graph" : name, segs, xlo, xhi,
                                vlo, vhi);
  g.linearization_tol = lintol;
  g.mesh = mesh;
  return g;
}

bool cone_contains(const Cone& c, std::array<double, 2> w, double tol) {
  double n = std::hypot(w[0], w[1]);
  if (n == 0.0) return true;
  std::array<double, 2> u{w[0] / n, w[1] / n};
  switch (c.kind) {
    case Cone::Kind::Line:
      return std::abs(cross(u, c.g1)) <= tol;
    case Cone::Kind::Ray:
      return std::abs(cross(u, c.g1)) <= tol && dot(u, c.g1) >= -tol;
    case Cone::Kind::HalfPlane:
      return dot(u, c.g1) <= tol;
    case Cone::Kind::Wedge: {
      double o = cross(c.g1, c.g2);
      if (o >= 0.0)
        return cross(c.g1, u) >= -tol && cross(u, c.g2) >= -tol;
      return cross(c.g2, u) >= -tol && cross(u, c.g1) >= -tol;
    }
  }
  return false;
}

bool cone_set_contains(const ConeSet& cs, std::array<double, 2> w,
                       double tol) {
  for (const Cone& c : cs.cones)
    if (cone_contains(c, w, tol)) return true;
  return false;
}

ConeSet polyline_normal_cone(const SetValuedGraph& g,
                             std::array<double, 2> p) {
  double tol = 1e-9 * g.scale();
  std::vector<std::array<double, 2>> dirs;  // unit tangents pointing into g
  ConeSet out;
  auto consider = [&](const GraphSegment& s) {
    double t = 0.0;
    if (point_segment_distance(p[0], p[1], s, &t) > tol) return;
    double len = seg_len(s);
    std::array<double, 2> d = unit(s.x1 - s.x0, s.v1 - s.v0);
    out.cones.push_back({Cone::Kind::Line, {-d[1], d[0]}, {}});
    double tp = std::min(0.45, tol / len);
    if (t > tp) dirs.push_back({-d[0], -d[1]});
    if (t < 1.0 - tp) dirs.push_back(d);
  };
  for (const GraphSegment& s : g.segments) consider(s);
  if (out.cones.empty())
    throw std::invalid_argument("point is not on the graph");
  // dedupe tangent directions
  std::vector<std::array<double, 2>> uniq;
  for (auto d : dirs) {
    bool seen = false;
    for (auto u : uniq)
      if (std::abs(d[0] - u[0]) + std::abs(d[1] - u[1]) < 1e-9) seen = true;
    if (!seen) uniq.push_back(d);
  }
  // polar cone of the tangent directions
  if (uniq.size() == 1) {
    out.cones.push_back({Cone::Kind::HalfPlane, uniq[0], {}});
  } else if (uniq.size() == 2) {
    double dp = dot(uniq[0], uniq[1]);
    if (dp <= -1.0 + 1e-12) {
      out.cones.push_back(
          {Cone::Kind::Line, {-uniq[0][1], uniq[0][0]}, {}});
    } else if (dp >= 1.0 - 1e-12) {
      out.cones.push_back({Cone::Kind::HalfPlane, uniq[0], {}});
    } else {
      auto boundary = [](std::array<double, 2> d, std::array<double, 2> other) {
        std::array<double, 2> n{-d[1], d[0]};
        if (dot(n, other) > 0.0) n = {-n[0], -n[1]};
        return n;
      };
      out.cones.push_back({Cone::Kind::Wedge, boundary(uniq[0], uniq[1]),
                           boundary(uniq[1], uniq[0])});
    }
  } else if (uniq.size() > 2) {
    throw std::runtime_error(
        "normal cone supports at most two incident directions");
  }
  return out;
}

RealSet cone_horizontal_slice(const ConeSet& cs, double h) {
  RealSet out;
  std::vector<Interval> parts;
  for (const Cone& c : cs.cones) {
    switch (c.kind) {
      case Cone::Kind::Line: {
        if (std::abs(c.g1[1]) > 1e-14) {
          double t = -h / c.g1[1];
          double z = t * c.g1[0];
          parts.push_back({z, z});
        } else if (h == 0.0) {
          if (std::abs(c.g1[0]) > 1e-14) out.all = true;
          else parts.push_back({0.0, 0.0});
        }
        break;
      }
      case Cone::Kind::Ray: {
        if (std::abs(c.g1[1]) > 1e-14) {
          double t = -h / c.g1[1];
          if (t >= -1e-12) {
            double z = std::max(t, 0.0) * c.g1[0];
            parts.push_back({z, z});
          }
        } else if (h == 0.0) {
          if (c.g1[0] > 1e-14) parts.push_back({0.0, kInf});
          else if (c.g1[0] < -1e-14) parts.push_back({-kInf, 0.0});
          else parts.push_back({0.0, 0.0});
        }
        break;
      }
      case Cone::Kind::HalfPlane: {
        // {w : <w, g1> <= 0} cut by w2 = -h
        if (std::abs(c.g1[0]) > 1e-14) {
          double zc = h * c.g1[1] / c.g1[0];
          if (c.g1[0] > 0.0) parts.push_back({-kInf, zc});
          else parts.push_back({zc, kInf});
        } else if (-h * c.g1[1] <= 0.0) {
          out.all = true;
        }
        break;
      }
      case Cone::Kind::Wedge: {
        std::vector<double> zs;
        for (std::array<double, 2> r : {c.g1, c.g2}) {
          if (std::abs(r[1]) > 1e-14) {
            double t = -h / r[1];
            if (t >= -1e-12) zs.push_back(std::max(t, 0.0) * r[0]);
          }
        }
        // a wedge meets the line only through an edge crossing (or the
        // origin when h == 0); recession directions alone cannot reach it
        if (h == 0.0) zs.push_back(0.0);
        if (zs.empty()) break;
        double lo = kInf, hi = -kInf;
        for (double z : zs) {
          lo = std::min(lo, z);
          hi = std::max(hi, z);
        }
        if (cone_contains(c, {-1.0, 0.0}, 1e-12)) lo = -kInf;
        if (cone_contains(c, {1.0, 0.0}, 1e-12)) hi = kInf;
        parts.push_back({lo, hi});
        break;
      }
    }
  }
  if (out.all) {
    out.intervals.clear();
    return out;
  }
  out.intervals = merge_intervals(std::move(parts), 1e-12);
  return out;
}

RealSet second_subdifferential(const SetValuedGraph& g, double x, double v,
                               double h) {
  return cone_horizontal_slice(polyline_normal_cone(g, {x, v}), h);
}

double eta_psi(const SetValuedGraph& g,
               const admissible::AdmissibleFunction& psi, double x, double v,
               double h) {
  double d = distance_to_intervals(x, g.preimages_of(v - h));
  if (!std::isfinite(d)) return kInf;
  return admissible::right_derivative(psi, d);
}

std::vector<std::array<double, 2>> graph_samples_in_box(
    const SetValuedGraph& g, double xlo, double xhi, double vlo, double vhi,
    double cx, double cv, int max_samples) {
  std::vector<std::array<double, 2>> pts;
  std::vector<GraphSegment> visible;
  for (GraphSegment s : g.segments)
    if (clip_to_rect(s, xlo, xhi, vlo, vhi)) visible.push_back(s);
  if (!visible.empty()) {
    int np = std::clamp(max_samples / static_cast<int>(visible.size()), 3, 33);
    for (const GraphSegment& s : visible) {
      for (int i = 0; i < np; ++i) {
        double t = static_cast<double>(i) / (np - 1);
        pts.push_back({s.x0 + t * (s.x1 - s.x0), s.v0 + t * (s.v1 - s.v0)});
      }
    }
  }
  // densify toward the center along both axes
  double rx = std::max(0.0, std::min(cx - xlo, xhi - cx));
  double rv = std::max(0.0, std::min(cv - vlo, vhi - cv));
  auto in_box = [&](double x, double v) {
    return x >= xlo && x <= xhi && v >= vlo && v <= vhi;
  };
  for (int k = 0; k <= 16; ++k) {
    double fx = rx * std::ldexp(1.0, -k), fv = rv * std::ldexp(1.0, -k);
    for (double s : {-1.0, 1.0}) {
      double xq = cx + s * fx;
      if (xq >= xlo && xq <= xhi)
        for (const Interval& iv : g.values_at(xq)) {
          double lo = std::max(iv.lo, vlo), hi = std::min(iv.hi, vhi);
          if (lo <= hi) {
            pts.push_back({xq, lo});
            pts.push_back({xq, hi});
          }
        }
      double vq = cv + s * fv;
      if (vq >= vlo && vq <= vhi)
        for (const Interval& iv : g.preimages_of(vq)) {
          double lo = std::max(iv.lo, xlo), hi = std::min(iv.hi, xhi);
          if (lo <= hi) {
            pts.push_back({lo, vq});
            pts.push_back({hi, vq});
          }
        }
    }
  }
  if (in_box(cx, cv) && g.contains(cx, cv, 1e-9 * g.scale()))
    pts.push_back({cx, cv});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

certificate::Certificate check_condition_6_1(
    const SetValuedGraph& g, const admissible::AdmissibleFunction& psi,
    double kappa, double r, std::array<double, 2> center) {
  if (!(kappa > 0.0) || !(r > 0.0))
    throw std::invalid_argument("kappa and r must be positive");
  if (!g.contains(center[0], center[1], 1e-9 * g.scale()))
    throw std::invalid_argument("center is not on the graph");
  certificate::Certificate cert;
  cert.kind = "second-subdifferential-condition";
  cert.constants = {{"kappa", kappa},
                    {"r", r},
                    {"center_x", center[0]},
                    {"center_v", center[1]}};
  double base_slack = 1e-9;
  double lin_slack = 2.0 * g.linearization_tol * (kappa + 1.0 + r);
  cert.slacks = {{"base", base_slack}, {"linearization", lin_slack}};
  cert.meta["graph"] = g.name;
  cert.meta["psi"] = psi.name;

  double re = r * (1.0 - 1e-9);
  auto samples = graph_samples_in_box(g, center[0] - re, center[0] + re,
                                      center[1] - re, center[1] + re,
                                      center[0], center[1]);
  std::vector<double> hs{0.0};
  for (int i = 1; i <= 20; ++i) {
    hs.push_back(re * i / 20.0);
    hs.push_back(-re * i / 20.0);
  }
  for (int k = 1; k <= 12; ++k) {
    double f = re * std::ldexp(1.0, -k);
    hs.push_back(f);
    hs.push_back(-f);
  }
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

  double margin = kInf;
  std::set<std::string> notes;
  std::map<std::string, double> witness;
  for (const auto& p : samples) {
    ConeSet cone = polyline_normal_cone(g, p);
    for (double h : hs) {
      double m;
      double zw = 0.0, eta = 0.0;
      if (h == 0.0) {
        m = 0.0;  // both sides vanish
      } else {
        RealSet zs = cone_horizontal_slice(cone, h);
        if (zs.empty()) continue;  // nothing to test at this direction
        eta = eta_psi(g, psi, p[0], p[1], h);
        if (!std::isfinite(eta)) {
          notes.insert("preimage empty at a sample: eta infinite");
          m = -kInf;
          zw = 0.0;
        } else {
          // worst z minimizes z*h
          double lo = kInf, hi = -kInf;
          if (zs.all) {
            lo = -kInf;
            hi = kInf;
          } else {
            for (const Interval& iv : zs.intervals) {
              lo = std::min(lo, iv.lo);
              hi = std::max(hi, iv.hi);
            }
          }
          zw = h > 0.0 ? lo : hi;
          if (!std::isfinite(zw)) {
            zw = zw > 0.0 ? 1e6 : -1e6;
            notes.insert("unbounded z probed at +-1e6");
          }
          m = zw * h - kappa * h * h * eta;
        }
      }
      if (m < margin) {
        margin = m;
        witness = {{"x", p[0]}, {"v", p[1]}, {"h", h}, {"z", zw},
                   {"eta", eta}};
      }
    }
  }
  cert.margin = margin;
  cert.witness = witness;
  cert.pass = margin >= -(base_slack + lin_slack);
  for (const std::string& n : notes) cert.notes.push_back(n);
  cert.meta["samples"] = std::to_string(samples.size());
  cert.meta["directions"] = std::to_string(hs.size());
  return cert;
}

}  // namespace tiltlab::subdiff
