#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tiltlab/admissible.hpp"
#include "tiltlab/certificate.hpp"
#include "tiltlab/grid_function.hpp"

namespace tiltlab::subdiff {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// finite segment in the (x, v) plane; verticals carry set-valued steps
struct GraphSegment {
  double x0 = 0.0, v0 = 0.0, x1 = 0.0, v1 = 0.0;
};

// planar graph of a set-valued map R -> R as a finite union of segments,
// clipped to a bounding box; queries return exact segment intersections
struct SetValuedGraph {
  std::string name;
  std::vector<GraphSegment> segments;
  double xlo = 0.0, xhi = 0.0, vlo = 0.0, vhi = 0.0;
  double linearization_tol = 0.0;
  double mesh = 0.0;  // spacing of the generating grid, 0 for analytic graphs
  std::map<std::string, std::string> meta;

  std::vector<Interval> values_at(double x) const;     // F(x)
  std::vector<Interval> preimages_of(double v) const;  // F^{-1}(v)
  bool contains(double x, double v, double tol) const;
  double scale() const;

  // bucket index over x and v for near-constant-time queries
  void build_index();

 private:
  std::vector<std::vector<std::size_t>> xbuckets_, vbuckets_;
  double xbw_ = 0.0, vbw_ = 0.0;
  const std::vector<std::size_t>* xbucket(double x) const;
  const std::vector<std::size_t>* vbucket(double v) const;
  std::vector<Interval> slice(double t, bool vertical) const;
};

SetValuedGraph make_graph(const std::string& name,
                          std::vector<GraphSegment> segments, double xlo,
                          double xhi, double vlo, double vhi);

// analytic subdifferential graphs for the function catalog
SetValuedGraph subdifferential_graph(const gridfn::FunctionSpec& spec,
                                     double xlo, double xhi);

// staircase graph of the subdifferential of a convex grid function
SetValuedGraph graph_from_convex_grid(const gridfn::GridFunction& f);

Interval convex_subdifferential_1d(const gridfn::GridFunction& f, double x);

double distance_to_intervals(double t, const std::vector<Interval>& s);

void write_graph_csv(const SetValuedGraph& g, const std::string& path);
SetValuedGraph read_graph_csv(const std::string& path);

struct Cone {
  enum class Kind { Line, Ray, HalfPlane, Wedge } kind = Kind::Line;
  // Line: span{g1}; Ray: R+ g1; HalfPlane: {w : <w, g1> <= 0};
  // Wedge: nonnegative combinations of g1 and g2
  std::array<double, 2> g1{0.0, 0.0};
  std::array<double, 2> g2{0.0, 0.0};
};

struct ConeSet {
  std::vector<Cone> cones;
};

bool cone_contains(const Cone& c, std::array<double, 2> w, double tol);
bool cone_set_contains(const ConeSet& cs, std::array<double, 2> w, double tol);

ConeSet polyline_normal_cone(const SetValuedGraph& g,
                             std::array<double, 2> p);

struct RealSet {
  bool all = false;
  std::vector<Interval> intervals;  // endpoints may be +-inf
  bool empty() const { return !all && intervals.empty(); }
};

RealSet second_subdifferential(const SetValuedGraph& g, double x, double v,
                               double h);
RealSet cone_horizontal_slice(const ConeSet& cs, double h);

double eta_psi(const SetValuedGraph& g,
               const admissible::AdmissibleFunction& psi, double x, double v,
               double h);

certificate::Certificate check_condition_6_1(
    const SetValuedGraph& g, const admissible::AdmissibleFunction& psi,
    double kappa, double r, std::array<double, 2> center);

// deterministic on-graph samples inside a rectangle, densified near (cx, cv)
std::vector<std::array<double, 2>> graph_samples_in_box(
    const SetValuedGraph& g, double xlo, double xhi, double vlo, double vhi,
    double cx, double cv, int max_samples = 4000);

}  // namespace tiltlab::subdiff
