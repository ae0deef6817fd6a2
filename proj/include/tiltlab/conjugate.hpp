#pragma once

#include <array>
#include <string>
#include <vector>

#include "tiltlab/certificate.hpp"
#include "tiltlab/grid_function.hpp"

namespace tiltlab::conjugate {

using gridfn::GridFunction;

// Gradient modulus of continuity fitted as omega(t) = C * t^p, p in (0, 1].
// The coefficient is inflated after the fit so every sampled gradient pair
// satisfies the bound, which leaves residual 0 but weakens the modulus; the
// raw regression values are kept for diagnostics.
struct SmoothnessModulus {
  std::string family = "power";
  double coefficient = 0.0;
  double exponent = 0.0;
  double residual = 0.0;
  double fitted_exponent = 0.0;
  double fitted_coefficient = 0.0;
};

struct BoundSample {
  std::array<double, 2> u{0.0, 0.0};
  std::array<double, 2> xstar{0.0, 0.0};
};

GridFunction conjugate_transform(const GridFunction& f,
                                 std::array<double, 2> dual_lo,
                                 std::array<double, 2> dual_hi,
                                 std::array<int, 2> dual_points);
GridFunction conjugate_transform_brute(const GridFunction& f,
                                       std::array<double, 2> dual_lo,
                                       std::array<double, 2> dual_hi,
                                       std::array<int, 2> dual_points);
GridFunction conjugate_transform_1d(const GridFunction& f, double dual_lo,
                                    double dual_hi, int dual_points);
GridFunction conjugate_transform_factorized_2d(const GridFunction& f,
                                               std::array<double, 2> dual_lo,
                                               std::array<double, 2> dual_hi,
                                               std::array<int, 2> dual_points);

double conjugate_value_at(const GridFunction& f, std::array<double, 2> u);

GridFunction convex_envelope(const GridFunction& f);

bool is_convex_on_grid(const GridFunction& f, double tol = 1e-12);

struct SlopeBounds {
  double lo = 0.0;
  double hi = 0.0;
  double max_abs = 0.0;
  bool any = false;
};
SlopeBounds slope_bounds(const GridFunction& f, int axis);

SmoothnessModulus fit_smoothness_modulus(const GridFunction& g,
                                         std::array<double, 2> region_lo,
                                         std::array<double, 2> region_hi);
double modulus_value(const SmoothnessModulus& omega, double t);
double modulus_inverse_integral(const SmoothnessModulus& omega, double R);

std::array<double, 2> central_gradient(const GridFunction& g,
                                       std::array<int, 2> idx);

certificate::Certificate check_conjugate_lower_bound(
    const GridFunction& g, const SmoothnessModulus& omega,
    const std::vector<BoundSample>& samples);

}  // namespace tiltlab::conjugate
