#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tiltlab::admissible {

// Nondecreasing modulus on [0, inf) with value 0 at 0. Flags describe what the
// construction guarantees; operations check flags rather than re-deriving them.
struct AdmissibleFunction {
  std::string name;
  std::string family;
  std::vector<double> params;
  bool is_convex = false;
  bool is_strictly_convex = false;
  bool is_differentiable = false;
  std::function<double(double)> value;
  std::function<double(double)> closed_derivative;
  std::function<double(double)> closed_inverse_derivative;
};

struct AdmissibilityReport {
  bool zero_at_zero = false;
  bool monotone = false;
  bool separation = false;
  bool pass = false;
  std::string detail;
};

// Families: power:p (t^p, p>0), scaled-power:c:p (c*t^p), capped-linear:c
// (min(t,c)), table (params flattened [t0,v0,t1,v1,...]).
AdmissibleFunction construct_catalog(const std::string& family,
                                     const std::vector<double>& params);
AdmissibleFunction parse_admissible(const std::string& spec);
AdmissibleFunction make_table(const std::string& name,
                              const std::vector<double>& ts,
                              const std::vector<double>& vs);

double right_derivative(const AdmissibleFunction& phi, double t);
double right_derivative_numeric(const AdmissibleFunction& phi, double t);
double inverse_right_derivative(const AdmissibleFunction& phi, double s);
double phi_alpha(const AdmissibleFunction& phi, double alpha, double t);

AdmissibilityReport check_admissibility(const AdmissibleFunction& phi,
                                        const std::vector<double>& grid);
std::vector<double> default_admissibility_grid(double tmax);

// Derived moduli used by the implication checkers.
AdmissibleFunction derivative_function(const AdmissibleFunction& phi);
AdmissibleFunction inverse_derivative_function(const AdmissibleFunction& phi);
AdmissibleFunction integral_function(const AdmissibleFunction& psi);

}  // namespace tiltlab::admissible
