#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace tiltlab::gridfn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform grid sampling of an extended-real function on a box in R^1 or R^2.
// Values use +inf for points outside the effective domain. Storage is
// row-major with axis 0 outermost; 1-D grids keep points[1] == 1.
struct GridFunction {
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
  std::array<int, 2> points{0, 1};
  std::vector<double> values;
  std::string name;

  double spacing(int axis) const;
  double max_spacing() const;
  double coord(int axis, int idx) const;
  std::size_t flat(int i0, int i1) const {
    return static_cast<std::size_t>(i0) * points[1] + i1;
  }
  std::array<double, 2> point_at(std::size_t f) const;
  std::size_t size() const { return values.size(); }
};

struct PointSet {
  int dim = 1;
  std::vector<std::array<double, 2>> points;
  bool empty() const { return points.empty(); }
};

struct FunctionSpec {
  std::string id;
  std::vector<double> params;
};

double evaluate_catalog(const FunctionSpec& spec, int dim,
                        const std::array<double, 2>& x);

GridFunction sample_function(const FunctionSpec& spec, int dim,
                             std::array<double, 2> lo, std::array<double, 2> hi,
                             std::array<int, 2> points);
GridFunction sample_function_1d(const FunctionSpec& spec, double lo, double hi,
                                int points);
GridFunction from_values(const std::string& name, int dim,
                         std::array<double, 2> lo, std::array<double, 2> hi,
                         std::array<int, 2> points, std::vector<double> values);

GridFunction tilt_perturb(const GridFunction& f, std::array<double, 2> u_star);
GridFunction add_ball_indicator(const GridFunction& f,
                                std::array<double, 2> center, double r);

// tol < 0 selects the automatic slack 1e-9 + L*h, with L the largest central
// difference quotient over the provisional minimizers (0 when none is
// available, e.g. at ball or box boundaries).
PointSet localized_argmin(const GridFunction& f, std::array<double, 2> center,
                          double r, double tol = -1.0);
// The automatic slack localized_argmin would use for this ball.
double localized_argmin_tolerance(const GridFunction& f,
                                  std::array<double, 2> center, double r);

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b,
                int dim);
double distance_to_set(const std::array<double, 2>& x, const PointSet& s);

std::vector<std::size_t> indices_in_ball(const GridFunction& f,
                                         std::array<double, 2> center,
                                         double r);
double min_over_ball(const GridFunction& f, std::array<double, 2> center,
                     double r);

void write_csv(const GridFunction& f, const std::string& path);
GridFunction read_csv(const std::string& path);

std::vector<std::string> catalog_function_ids();

}  // namespace tiltlab::gridfn
