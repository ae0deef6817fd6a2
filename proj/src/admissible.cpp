#include "tiltlab/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tiltlab::admissible {

namespace {

double pow_nonneg(double t, double p) {
  if (t <= 0.0) return 0.0;
  return std::pow(t, p);
}

std::string format_params(const std::string& family,
                          const std::vector<double>& params) {
  std::ostringstream os;
  os << family;
  for (double p : params) os << ":" << p;
  return os.str();
}

AdmissibleFunction make_scaled_power(double c, double p) {
  if (p <= 0.0) throw std::invalid_argument("power exponent must be positive");
  if (c <= 0.0) throw std::invalid_argument("power coefficient must be positive");
  AdmissibleFunction f;
  f.family = "scaled-power";
  f.params = {c, p};
  f.name = format_params("scaled-power", f.params);
  f.is_convex = p >= 1.0;
  f.is_strictly_convex = p > 1.0;
  f.is_differentiable = p >= 1.0;
  f.value = [c, p](double t) { return c * pow_nonneg(t, p); };
  f.closed_derivative = [c, p](double t) {
    if (t <= 0.0) {
      if (p > 1.0) return 0.0;
      if (p == 1.0) return c;
      return std::numeric_limits<double>::infinity();
    }
    return c * p * std::pow(t, p - 1.0);
  };
  if (p > 1.0) {
    f.closed_inverse_derivative = [c, p](double s) {
      if (s <= 0.0) return 0.0;
      return std::pow(s / (c * p), 1.0 / (p - 1.0));
    };
  }
  return f;
}

double simpson(const std::function<double(double)>& g, double a, double b,
               int panels) {
  double h = (b - a) / panels;
  double acc = g(a) + g(b);
  for (int i = 1; i < panels; ++i) acc += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

AdmissibleFunction construct_catalog(const std::string& family,
                                     const std::vector<double>& params) {
  if (family == "power") {
    if (params.size() != 1)
      throw std::invalid_argument("power family takes one parameter");
    AdmissibleFunction f = make_scaled_power(1.0, params[0]);
    f.family = "power";
    f.params = params;
    f.name = format_params("power", params);
    return f;
  }
  if (family == "scaled-power") {
    if (params.size() != 2)
      throw std::invalid_argument("scaled-power family takes two parameters");
    return make_scaled_power(params[0], params[1]);
  }
  if (family == "capped-linear") {
    if (params.size() != 1)
      throw std::invalid_argument("capped-linear family takes one parameter");
    double c = params[0];
    if (c <= 0.0) throw std::invalid_argument("cap must be positive");
    AdmissibleFunction f;
    f.family = "capped-linear";
    f.params = params;
    f.name = format_params("capped-linear", params);
    f.value = [c](double t) { return t <= 0.0 ? 0.0 : std::min(t, c); };
    f.closed_derivative = [c](double t) { return t < c ? 1.0 : 0.0; };
    return f;
  }
  if (family == "table") {
    if (params.size() < 4 || params.size() % 2 != 0)
      throw std::invalid_argument("table family takes flattened (t, v) pairs");
    std::vector<double> ts, vs;
    for (size_t i = 0; i < params.size(); i += 2) {
      ts.push_back(params[i]);
      vs.push_back(params[i + 1]);
    }
    return make_table(format_params("table", params), ts, vs);
  }
  throw std::invalid_argument("unknown admissible family: " + family);
}

AdmissibleFunction parse_admissible(const std::string& spec) {
  std::vector<std::string> tokens;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) tokens.push_back(tok);
  if (tokens.empty()) throw std::invalid_argument("empty admissible spec");
  std::vector<double> params;
  for (size_t i = 1; i < tokens.size(); ++i) {
    size_t used = 0;
    double v = std::stod(tokens[i], &used);
    if (used != tokens[i].size())
      throw std::invalid_argument("bad parameter in admissible spec: " + spec);
    params.push_back(v);
  }
  return construct_catalog(tokens[0], params);
}

AdmissibleFunction make_table(const std::string& name,
                              const std::vector<double>& ts,
                              const std::vector<double>& vs) {
  if (ts.size() != vs.size() || ts.size() < 2)
    throw std::invalid_argument("table needs at least two (t, v) pairs");
  if (ts.front() != 0.0 || vs.front() != 0.0)
    throw std::invalid_argument("table must start at (0, 0)");
  for (size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] > ts[i - 1]))
      throw std::invalid_argument("table t-values must be strictly increasing");
    if (vs[i] < vs[i - 1])
      throw std::invalid_argument("non-monotone user table");
  }
  std::vector<double> slopes(ts.size() - 1);
  bool convex = true;
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    slopes[i] = (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]);
    if (i > 0 && slopes[i] < slopes[i - 1]) convex = false;
  }
  AdmissibleFunction f;
  f.name = name;
  f.family = "table";
  f.is_convex = convex;
  // last segment extends linearly past the final node
  f.value = [ts, vs, slopes](double t) {
    if (t <= 0.0) return 0.0;
    if (t >= ts.back()) return vs.back() + slopes.back() * (t - ts.back());
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    size_t i = static_cast<size_t>(it - ts.begin()) - 1;
    return vs[i] + slopes[i] * (t - ts[i]);
  };
  f.closed_derivative = [ts, slopes](double t) {
    if (t >= ts.back()) return slopes.back();
    if (t < ts.front()) return slopes.front();
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    size_t i = static_cast<size_t>(it - ts.begin());
    if (i > 0) --i;
    return slopes[i];
  };
  return f;
}

double right_derivative(const AdmissibleFunction& phi, double t) {
  if (t < 0.0) throw std::invalid_argument("right_derivative requires t >= 0");
  if (phi.closed_derivative) return phi.closed_derivative(t);
  if (!phi.is_convex)
    throw std::runtime_error(
        "right_derivative needs convexity or a closed-form derivative");
  return right_derivative_numeric(phi, t);
}

double right_derivative_numeric(const AdmissibleFunction& phi, double t) {
  double h = std::max(1e-6, 1e-8 * (1.0 + t));
  const double ft = phi.value(t);
  auto quotient = [&](double step) {
    volatile double tp = t + step;
    double actual = static_cast<double>(tp) - t;
    return (phi.value(static_cast<double>(tp)) - ft) / actual;
  };
  double prev = quotient(h);
  for (int k = 0; k < 20; ++k) {
    h *= 0.5;
    double q = quotient(h);
    // convex quotients shrink with h; once the decrease stalls the remaining
    // wobble is rounding noise, and the previous quotient is the estimate
    if (!(q < prev)) return prev;
    if (prev - q <= 1e-9 * std::max(std::abs(q), std::abs(prev))) return q;
    prev = q;
  }
  return prev;
}

double inverse_right_derivative(const AdmissibleFunction& phi, double s) {
  if (s < 0.0)
    throw std::invalid_argument("inverse_right_derivative requires s >= 0");
  if (phi.closed_inverse_derivative) return phi.closed_inverse_derivative(s);
  if (!(phi.is_differentiable && phi.is_strictly_convex))
    throw std::runtime_error(
        "inverse_right_derivative needs a differentiable strictly convex "
        "function");
  if (s == 0.0) return 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (right_derivative(phi, hi) < s) {
    hi *= 2.0;
    if (++doublings > 64)
      throw std::runtime_error(
          "inverse_right_derivative: slope never reaches requested value");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    if (right_derivative(phi, mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double phi_alpha(const AdmissibleFunction& phi, double alpha, double t) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  return (1.0 / alpha) * right_derivative(phi, t / (1.0 - alpha));
}

AdmissibilityReport check_admissibility(const AdmissibleFunction& phi,
                                        const std::vector<double>& grid) {
  if (grid.empty() || grid.front() != 0.0)
    throw std::invalid_argument("admissibility grid must start at 0");
  AdmissibilityReport rep;
  std::ostringstream detail;

  rep.zero_at_zero = std::abs(phi.value(0.0)) <= 1e-15;
  if (!rep.zero_at_zero) detail << "value at 0 is " << phi.value(0.0) << "; ";

  rep.monotone = true;
  double prev = phi.value(grid.front());
  for (size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] < grid[i - 1])
      throw std::invalid_argument("admissibility grid must be sorted");
    double v = phi.value(grid[i]);
    if (v < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
      if (rep.monotone)
        detail << "monotonicity fails at t=" << grid[i] << " (" << prev
               << " -> " << v << "); ";
      rep.monotone = false;
    }
    prev = std::max(prev, v);
  }

  rep.separation = true;
  for (int k = 1; k <= 12; ++k) {
    double eps = std::pow(10.0, -k);
    double inf = std::numeric_limits<double>::infinity();
    for (double t : grid)
      if (t >= eps) inf = std::min(inf, phi.value(t));
    if (std::isfinite(inf) && !(inf > 0.0)) {
      if (rep.separation)
        detail << "no separation above eps=" << eps << "; ";
      rep.separation = false;
    }
  }

  rep.pass = rep.zero_at_zero && rep.monotone && rep.separation;
  rep.detail = detail.str();
  return rep;
}

std::vector<double> default_admissibility_grid(double tmax) {
  if (!(tmax > 0.0)) throw std::invalid_argument("tmax must be positive");
  std::set<double> pts;
  pts.insert(0.0);
  for (int i = 0; i <= 64; ++i) pts.insert(tmax * i / 64.0);
  for (int k = 1; k <= 48; ++k) pts.insert(tmax * std::pow(10.0, -k / 4.0));
  return std::vector<double>(pts.begin(), pts.end());
}

AdmissibleFunction derivative_function(const AdmissibleFunction& phi) {
  AdmissibleFunction g;
  g.name = "deriv(" + phi.name + ")";
  g.family = "derived";
  g.value = [phi](double t) { return right_derivative(phi, t); };
  return g;
}

AdmissibleFunction inverse_derivative_function(const AdmissibleFunction& phi) {
  if (phi.family == "power" || phi.family == "scaled-power") {
    double c = phi.family == "power" ? 1.0 : phi.params[0];
    double p = phi.family == "power" ? phi.params[0] : phi.params[1];
    if (p > 1.0) {
      AdmissibleFunction g = make_scaled_power(
          std::pow(1.0 / (c * p), 1.0 / (p - 1.0)), 1.0 / (p - 1.0));
      g.name = "inv-deriv(" + phi.name + ")";
      return g;
    }
  }
  AdmissibleFunction g;
  g.name = "inv-deriv(" + phi.name + ")";
  g.family = "derived";
  g.value = [phi](double s) { return inverse_right_derivative(phi, s); };
  return g;
}

AdmissibleFunction integral_function(const AdmissibleFunction& psi) {
  AdmissibleFunction g;
  g.name = "integral(" + psi.name + ")";
  g.family = "derived";
  g.is_convex = true;
  g.is_differentiable = true;
  if (psi.family == "power" || psi.family == "scaled-power") {
    double c = psi.family == "power" ? 1.0 : psi.params[0];
    double p = psi.family == "power" ? psi.params[0] : psi.params[1];
    AdmissibleFunction f = make_scaled_power(c / (p + 1.0), p + 1.0);
    f.name = g.name;
    return f;
  }
  if (psi.family == "capped-linear") {
    double c = psi.params[0];
    g.value = [c](double t) {
      if (t <= 0.0) return 0.0;
      if (t <= c) return 0.5 * t * t;
      return c * t - 0.5 * c * c;
    };
  } else {
    auto integrand = psi.value;
    g.value = [integrand](double t) {
      if (t <= 0.0) return 0.0;
      return simpson(integrand, 0.0, t, 512);
    };
  }
  g.closed_derivative = psi.value;
  return g;
}

}  // namespace tiltlab::admissible
