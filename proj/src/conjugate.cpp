#include "tiltlab/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tiltlab::conjugate {

namespace {

using gridfn::kInf;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// every conjugate path evaluates supports through these two helpers so the
// floating-point results are comparable bit for bit
inline double support1(double u, double x, double f) { return u * x - f; }
inline double support2(double u0, double u1, double x0, double x1, double f) {
  return u0 * x0 + u1 * x1 - f;
}

GridFunction dual_shell(const GridFunction& f, std::array<double, 2> dual_lo,
                        std::array<double, 2> dual_hi,
                        std::array<int, 2> dual_points) {
  GridFunction g;
  g.dim = f.dim;
  g.lo = dual_lo;
  g.hi = dual_hi;
  g.points = dual_points;
  if (g.dim == 1) {
    g.points[1] = 1;
    g.lo[1] = g.hi[1] = 0.0;
  }
  for (int a = 0; a < g.dim; ++a) {
    if (g.points[a] < 3 || g.points[a] % 2 == 0)
      throw std::invalid_argument("dual points per axis must be odd and >= 3");
    if (!(g.hi[a] > g.lo[a])) throw std::invalid_argument("degenerate dual box");
  }
  g.values.assign(static_cast<std::size_t>(g.points[0]) * g.points[1], -kInf);
  g.name = f.name + "*";
  return g;
}

// 1-D conjugate over the finite sample points: lower hull of (x, f(x)) with a
// tolerant pop threshold, then a monotone sweep whose candidate window is
// widened until the cumulative exact drop exceeds the rounding noise, so the
// window max equals the max over all points in floating point as well.
std::vector<double> conjugate_line(const std::vector<double>& X,
                                   const std::vector<double>& F,
                                   const std::vector<double>& U) {
  if (X.empty()) throw std::runtime_error("conjugate of an empty domain");
  double max_abs_x = 0.0, max_abs_f = 0.0, max_abs_u = 0.0;
  for (double x : X) max_abs_x = std::max(max_abs_x, std::abs(x));
  for (double f : F) max_abs_f = std::max(max_abs_f, std::abs(f));
  for (double u : U) max_abs_u = std::max(max_abs_u, std::abs(u));
  const double vscale = max_abs_u * max_abs_x + max_abs_f + 1.0;
  const double noise = 32.0 * kEps * vscale;

  std::vector<std::size_t> hull;
  hull.reserve(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2];
      std::size_t b = hull[hull.size() - 1];
      double cross =
          (X[b] - X[a]) * (F[i] - F[a]) - (X[i] - X[a]) * (F[b] - F[a]);
      // pop only when b sits above the chord (a, i) by more than the noise
      // any sweep value can carry; near-collinear points stay on the hull
      if (cross < -noise * (X[i] - X[a]))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }

  const std::size_t m = hull.size();
  std::vector<double> hx(m), hf(m);
  for (std::size_t j = 0; j < m; ++j) {
    hx[j] = X[hull[j]];
    hf[j] = F[hull[j]];
  }
  std::vector<double> slope(m > 0 ? m - 1 : 0);
  for (std::size_t j = 0; j + 1 < m; ++j)
    slope[j] = (hf[j + 1] - hf[j]) / (hx[j + 1] - hx[j]);

  std::vector<double> out(U.size());
  std::size_t p = 0;
  for (std::size_t k = 0; k < U.size(); ++k) {
    const double u = U[k];
    while (p + 1 < m && slope[p] < u) ++p;
    std::size_t jl = p, jr = p;
    double cum = 0.0;
    while (jl > 0) {
      double step = (u - slope[jl - 1]) * (hx[jl] - hx[jl - 1]);
      if (cum + step > noise) break;
      cum += step;
      --jl;
    }
    cum = 0.0;
    while (jr + 1 < m) {
      double step = (slope[jr] - u) * (hx[jr + 1] - hx[jr]);
      if (cum + step > noise) break;
      cum += step;
      ++jr;
    }
    double best = -kInf;
    for (std::size_t j = jl; j <= jr; ++j)
      best = std::max(best, support1(u, hx[j], hf[j]));
    out[k] = best;
  }
  return out;
}

void gather_finite_1d(const GridFunction& f, std::vector<double>& X,
                      std::vector<double>& F) {
  for (int i = 0; i < f.points[0]; ++i) {
    double v = f.values[f.flat(i, 0)];
    if (std::isfinite(v)) {
      X.push_back(f.coord(0, i));
      F.push_back(v);
    }
  }
}

}  // namespace

GridFunction conjugate_transform_1d(const GridFunction& f, double dual_lo,
                                    double dual_hi, int dual_points) {
  return conjugate_transform(f, {dual_lo, 0.0}, {dual_hi, 0.0},
                             {dual_points, 1});
}

GridFunction conjugate_transform(const GridFunction& f,
                                 std::array<double, 2> dual_lo,
                                 std::array<double, 2> dual_hi,
                                 std::array<int, 2> dual_points) {
  GridFunction g = dual_shell(f, dual_lo, dual_hi, dual_points);
  if (f.dim == 1) {
    std::vector<double> X, F;
    gather_finite_1d(f, X, F);
    std::vector<double> U(g.points[0]);
    for (int k = 0; k < g.points[0]; ++k) U[k] = g.coord(0, k);
    g.values = conjugate_line(X, F, U);
    return g;
  }
  for (int a = 0; a < 2; ++a)
    if (f.points[a] > 257)
      throw std::invalid_argument(
          "2-D conjugate is limited to 257 points per axis");
  return conjugate_transform_brute(f, dual_lo, dual_hi, dual_points);
}

GridFunction conjugate_transform_brute(const GridFunction& f,
                                       std::array<double, 2> dual_lo,
                                       std::array<double, 2> dual_hi,
                                       std::array<int, 2> dual_points) {
  GridFunction g = dual_shell(f, dual_lo, dual_hi, dual_points);
  if (f.dim == 1) {
    for (int k = 0; k < g.points[0]; ++k) {
      double u = g.coord(0, k);
      double best = -kInf;
      for (int i = 0; i < f.points[0]; ++i) {
        double v = f.values[f.flat(i, 0)];
        if (!std::isfinite(v)) continue;
        best = std::max(best, support1(u, f.coord(0, i), v));
      }
      g.values[g.flat(k, 0)] = best;
    }
  } else {
    for (int k0 = 0; k0 < g.points[0]; ++k0) {
      double u0 = g.coord(0, k0);
      for (int k1 = 0; k1 < g.points[1]; ++k1) {
        double u1 = g.coord(1, k1);
        double best = -kInf;
        for (int i0 = 0; i0 < f.points[0]; ++i0) {
          double x0 = f.coord(0, i0);
          for (int i1 = 0; i1 < f.points[1]; ++i1) {
            double v = f.values[f.flat(i0, i1)];
            if (!std::isfinite(v)) continue;
            best = std::max(best, support2(u0, u1, x0, f.coord(1, i1), v));
          }
        }
        g.values[g.flat(k0, k1)] = best;
      }
    }
  }
  for (double v : g.values)
    if (v == -kInf)
      throw std::runtime_error("conjugate of identically +inf function");
  return g;
}

GridFunction conjugate_transform_factorized_2d(const GridFunction& f,
                                               std::array<double, 2> dual_lo,
                                               std::array<double, 2> dual_hi,
                                               std::array<int, 2> dual_points) {
  if (f.dim != 2) throw std::invalid_argument("factorized path is 2-D only");
  GridFunction g = dual_shell(f, dual_lo, dual_hi, dual_points);
  // pass 1: partial conjugate along axis 1 for every fixed x0
  std::vector<double> partial(static_cast<std::size_t>(f.points[0]) *
                              g.points[1]);
  for (int i0 = 0; i0 < f.points[0]; ++i0) {
    std::vector<double> X, F;
    for (int i1 = 0; i1 < f.points[1]; ++i1) {
      double v = f.values[f.flat(i0, i1)];
      if (std::isfinite(v)) {
        X.push_back(f.coord(1, i1));
        F.push_back(v);
      }
    }
    if (X.empty()) {
      for (int k1 = 0; k1 < g.points[1]; ++k1)
        partial[static_cast<std::size_t>(i0) * g.points[1] + k1] = -kInf;
      continue;
    }
    std::vector<double> U(g.points[1]);
    for (int k1 = 0; k1 < g.points[1]; ++k1) U[k1] = g.coord(1, k1);
    std::vector<double> row = conjugate_line(X, F, U);
    for (int k1 = 0; k1 < g.points[1]; ++k1)
      partial[static_cast<std::size_t>(i0) * g.points[1] + k1] = row[k1];
  }
  // pass 2: conjugate along axis 0 of -partial
  for (int k1 = 0; k1 < g.points[1]; ++k1) {
    std::vector<double> X, F;
    for (int i0 = 0; i0 < f.points[0]; ++i0) {
      double v = partial[static_cast<std::size_t>(i0) * g.points[1] + k1];
      if (v != -kInf) {
        X.push_back(f.coord(0, i0));
        F.push_back(-v);
      }
    }
    if (X.empty()) throw std::runtime_error("conjugate of empty domain");
    std::vector<double> U(g.points[0]);
    for (int k0 = 0; k0 < g.points[0]; ++k0) U[k0] = g.coord(0, k0);
    std::vector<double> col = conjugate_line(X, F, U);
    for (int k0 = 0; k0 < g.points[0]; ++k0)
      g.values[g.flat(k0, k1)] = col[k0];
  }
  return g;
}

double conjugate_value_at(const GridFunction& f, std::array<double, 2> u) {
  double best = -kInf;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    double v = f.values[k];
    if (!std::isfinite(v)) continue;
    std::array<double, 2> x = f.point_at(k);
    if (f.dim == 1)
      best = std::max(best, support1(u[0], x[0], v));
    else
      best = std::max(best, support2(u[0], u[1], x[0], x[1], v));
  }
  if (best == -kInf)
    throw std::runtime_error("conjugate of identically +inf function");
  return best;
}

SlopeBounds slope_bounds(const GridFunction& f, int axis) {
  SlopeBounds sb;
  sb.lo = kInf;
  sb.hi = -kInf;
  double h = f.spacing(axis);
  int other = 1 - axis;
  int outer = f.dim == 2 ? f.points[other] : 1;
  for (int j = 0; j < outer; ++j) {
    for (int i = 0; i + 1 < f.points[axis]; ++i) {
      std::size_t a = axis == 0 ? f.flat(i, j) : f.flat(j, i);
      std::size_t b = axis == 0 ? f.flat(i + 1, j) : f.flat(j, i + 1);
      if (!std::isfinite(f.values[a]) || !std::isfinite(f.values[b])) continue;
      double q = (f.values[b] - f.values[a]) / h;
      sb.lo = std::min(sb.lo, q);
      sb.hi = std::max(sb.hi, q);
      sb.any = true;
    }
  }
  if (!sb.any) {
    sb.lo = -1.0;
    sb.hi = 1.0;
  }
  sb.max_abs = std::max(std::abs(sb.lo), std::abs(sb.hi));
  return sb;
}

namespace {

// 1-D convex hull of the finite domain as an interval; 2-D as a polygon
std::vector<std::array<double, 2>> finite_hull_2d(const GridFunction& f) {
  std::vector<std::array<double, 2>> pts;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    if (std::isfinite(f.values[k])) pts.push_back(f.point_at(k));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                  const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<double, 2>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  std::size_t lower = k + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

bool inside_hull_2d(const std::vector<std::array<double, 2>>& hull,
                    const std::array<double, 2>& p, double tol) {
  if (hull.size() == 1)
    return std::abs(p[0] - hull[0][0]) <= tol &&
           std::abs(p[1] - hull[0][1]) <= tol;
  if (hull.size() == 2) {
    double cr = (hull[1][0] - hull[0][0]) * (p[1] - hull[0][1]) -
                (hull[1][1] - hull[0][1]) * (p[0] - hull[0][0]);
    if (std::abs(cr) > tol) return false;
    double d = (p[0] - hull[0][0]) * (hull[1][0] - hull[0][0]) +
               (p[1] - hull[0][1]) * (hull[1][1] - hull[0][1]);
    double len = (hull[1][0] - hull[0][0]) * (hull[1][0] - hull[0][0]) +
                 (hull[1][1] - hull[0][1]) * (hull[1][1] - hull[0][1]);
    return d >= -tol && d <= len + tol;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    double cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    if (cr < -tol) return false;
  }
  return true;
}

}  // namespace

GridFunction convex_envelope(const GridFunction& f) {
  std::array<double, 2> dlo{0.0, 0.0}, dhi{0.0, 0.0};
  for (int a = 0; a < f.dim; ++a) {
    SlopeBounds sb = slope_bounds(f, a);
    double pad = 0.1 * (sb.hi - sb.lo) + 1e-9;
    dlo[a] = sb.lo - pad;
    dhi[a] = sb.hi + pad;
  }
  GridFunction g1 = conjugate_transform(f, dlo, dhi, f.points);
  GridFunction g2 = conjugate_transform(g1, f.lo, f.hi, f.points);
  g2.name = "co(" + f.name + ")";

  bool any_inf = false;
  for (double v : f.values)
    if (!std::isfinite(v)) any_inf = true;
  if (any_inf) {
    // the envelope is +inf outside the convex hull of the effective domain
    if (f.dim == 1) {
      double xmin = kInf, xmax = -kInf;
      for (int i = 0; i < f.points[0]; ++i)
        if (std::isfinite(f.values[f.flat(i, 0)])) {
          xmin = std::min(xmin, f.coord(0, i));
          xmax = std::max(xmax, f.coord(0, i));
        }
      double tol = 1e-12 * std::max(1.0, std::max(std::abs(xmin), std::abs(xmax)));
      for (int i = 0; i < f.points[0]; ++i) {
        double x = f.coord(0, i);
        if (x < xmin - tol || x > xmax + tol)
          g2.values[g2.flat(i, 0)] = kInf;
      }
    } else {
      std::vector<std::array<double, 2>> hull = finite_hull_2d(f);
      double scale = std::max({1.0, std::abs(f.lo[0]), std::abs(f.hi[0]),
                               std::abs(f.lo[1]), std::abs(f.hi[1])});
      for (std::size_t k = 0; k < g2.values.size(); ++k)
        if (!inside_hull_2d(hull, g2.point_at(k), 1e-9 * scale))
          g2.values[k] = kInf;
    }
  }
  return g2;
}

bool is_convex_on_grid(const GridFunction& f, double tol) {
  auto violates = [&](double a, double mid, double c) {
    if (!std::isfinite(a) || !std::isfinite(c)) return false;
    if (!std::isfinite(mid)) return true;
    double scale = std::max({1.0, std::abs(a), std::abs(c)});
    return 2.0 * mid > a + c + tol * scale;
  };
  if (f.dim == 1) {
    for (int i = 0; i + 2 < f.points[0]; ++i)
      if (violates(f.values[f.flat(i, 0)], f.values[f.flat(i + 1, 0)],
                   f.values[f.flat(i + 2, 0)]))
        return false;
    return true;
  }
  for (int i0 = 0; i0 < f.points[0]; ++i0)
    for (int i1 = 0; i1 + 2 < f.points[1]; ++i1)
      if (violates(f.values[f.flat(i0, i1)], f.values[f.flat(i0, i1 + 1)],
                   f.values[f.flat(i0, i1 + 2)]))
        return false;
  for (int i1 = 0; i1 < f.points[1]; ++i1)
    for (int i0 = 0; i0 + 2 < f.points[0]; ++i0)
      if (violates(f.values[f.flat(i0, i1)], f.values[f.flat(i0 + 1, i1)],
                   f.values[f.flat(i0 + 2, i1)]))
        return false;
  for (int i0 = 0; i0 + 2 < f.points[0]; ++i0)
    for (int i1 = 0; i1 + 2 < f.points[1]; ++i1) {
      if (violates(f.values[f.flat(i0, i1)], f.values[f.flat(i0 + 1, i1 + 1)],
                   f.values[f.flat(i0 + 2, i1 + 2)]))
        return false;
      if (violates(f.values[f.flat(i0, i1 + 2)],
                   f.values[f.flat(i0 + 1, i1 + 1)],
                   f.values[f.flat(i0 + 2, i1)]))
        return false;
    }
  return true;
}

std::array<double, 2> central_gradient(const GridFunction& g,
                                       std::array<int, 2> idx) {
  std::array<double, 2> grad{0.0, 0.0};
  for (int a = 0; a < g.dim; ++a) {
    int i = idx[a];
    if (i <= 0 || i >= g.points[a] - 1)
      throw std::runtime_error("gradient undefined at the box boundary");
    std::size_t prev = a == 0 ? g.flat(idx[0] - 1, idx[1])
                              : g.flat(idx[0], idx[1] - 1);
    std::size_t next = a == 0 ? g.flat(idx[0] + 1, idx[1])
                              : g.flat(idx[0], idx[1] + 1);
    if (!std::isfinite(g.values[prev]) || !std::isfinite(g.values[next]))
      throw std::runtime_error("gradient undefined next to an infinite value");
    grad[a] = (g.values[next] - g.values[prev]) / (2.0 * g.spacing(a));
  }
  return grad;
}

SmoothnessModulus fit_smoothness_modulus(const GridFunction& g,
                                         std::array<double, 2> region_lo,
                                         std::array<double, 2> region_hi) {
  // distance bins: geometric strides along each axis, capped at a quarter of
  // the region width, each bin keeping the largest gradient difference
  std::map<double, double> bins;
  double quarter = kInf;
  for (int a = 0; a < g.dim; ++a)
    quarter = std::min(quarter, 0.25 * (region_hi[a] - region_lo[a]));
  if (!(quarter > 0.0)) throw std::invalid_argument("degenerate fit region");

  std::vector<std::array<int, 2>> idxs;
  std::vector<std::array<double, 2>> grads;
  for (int i0 = 1; i0 + 1 < g.points[0]; ++i0) {
    int top1 = g.dim == 2 ? g.points[1] - 1 : 2;
    for (int i1 = (g.dim == 2 ? 1 : 0); i1 < (g.dim == 2 ? top1 : 1); ++i1) {
      std::array<double, 2> x = {g.coord(0, i0),
                                 g.dim == 2 ? g.coord(1, i1) : 0.0};
      bool inside = true;
      for (int a = 0; a < g.dim; ++a)
        if (x[a] < region_lo[a] || x[a] > region_hi[a]) inside = false;
      if (!inside) continue;
      bool ok = true;
      std::array<double, 2> grad{0.0, 0.0};
      try {
        grad = central_gradient(g, {i0, i1});
      } catch (const std::runtime_error&) {
        ok = false;
      }
      if (!ok) continue;
      idxs.push_back({i0, i1});
      grads.push_back(grad);
    }
  }
  if (grads.size() < 3)
    throw std::invalid_argument("too few gradient samples in fit region");

  std::map<std::array<int, 2>, std::size_t> lookup;
  for (std::size_t k = 0; k < idxs.size(); ++k) lookup[idxs[k]] = k;

  for (int axis = 0; axis < g.dim; ++axis) {
    double h = g.spacing(axis);
    for (int stride = 1; stride * h <= quarter; stride *= 2) {
      double d = stride * h;
      double worst = 0.0;
      bool seen = false;
      for (std::size_t k = 0; k < idxs.size(); ++k) {
        std::array<int, 2> other = idxs[k];
        other[axis] += stride;
        auto it = lookup.find(other);
        if (it == lookup.end()) continue;
        const auto& ga = grads[k];
        const auto& gb = grads[it->second];
        double diff = g.dim == 1 ? std::abs(gb[0] - ga[0])
                                 : std::hypot(gb[0] - ga[0], gb[1] - ga[1]);
        worst = std::max(worst, diff);
        seen = true;
      }
      if (seen && worst > 0.0) {
        auto ins = bins.find(d);
        if (ins == bins.end())
          bins[d] = worst;
        else
          ins->second = std::max(ins->second, worst);
      }
    }
  }

  SmoothnessModulus out;
  if (bins.size() < 2) {
    out.exponent = 1.0;
    out.fitted_exponent = 1.0;
    double c = 1e-15;
    for (const auto& [d, v] : bins) c = std::max(c, v / d);
    out.coefficient = c;
    out.fitted_coefficient = c;
    out.residual = 0.0;
    return out;
  }

  double sx = 0, sy = 0;
  for (const auto& [d, v] : bins) {
    sx += std::log(d);
    sy += std::log(v);
  }
  double n = static_cast<double>(bins.size());
  double mx = sx / n, my = sy / n;
  double num = 0, den = 0;
  for (const auto& [d, v] : bins) {
    num += (std::log(d) - mx) * (std::log(v) - my);
    den += (std::log(d) - mx) * (std::log(d) - mx);
  }
  double slope = num / den;
  out.fitted_exponent = slope;
  out.fitted_coefficient = std::exp(my - slope * mx);
  out.exponent = std::min(std::max(slope, 0.01), 1.0);
  double c = 1e-15;
  for (const auto& [d, v] : bins)
    c = std::max(c, v / std::pow(d, out.exponent));
  out.coefficient = c;
  double res = 0.0;
  for (const auto& [d, v] : bins)
    res = std::max(res, v - c * std::pow(d, out.exponent));
  out.residual = std::max(res, 0.0);
  return out;
}

double modulus_value(const SmoothnessModulus& omega, double t) {
  if (t <= 0.0) return 0.0;
  return omega.coefficient * std::pow(t, omega.exponent);
}

double modulus_inverse_integral(const SmoothnessModulus& omega, double R) {
  if (R <= 0.0) return 0.0;
  double p = omega.exponent;
  double c = omega.coefficient;
  return p / (p + 1.0) * std::pow(R / c, 1.0 / p) * R;
}

certificate::Certificate check_conjugate_lower_bound(
    const GridFunction& g, const SmoothnessModulus& omega,
    const std::vector<BoundSample>& samples) {
  certificate::Certificate cert;
  cert.kind = "conjugate-lower-bound";
  cert.constants["C"] = omega.coefficient;
  cert.constants["p"] = omega.exponent;
  if (samples.empty()) throw std::invalid_argument("no samples supplied");

  double max_abs_xstar = 0.0;
  for (const auto& s : samples)
    for (int a = 0; a < g.dim; ++a)
      max_abs_xstar = std::max(max_abs_xstar, std::abs(s.xstar[a]));
  double slope_scale = 0.0;
  for (int a = 0; a < g.dim; ++a)
    slope_scale = std::max(slope_scale, slope_bounds(g, a).max_abs);
  double grid_slack = (max_abs_xstar + slope_scale) * g.max_spacing();
  cert.slacks["base"] = 1e-8;
  cert.slacks["grid"] = grid_slack;

  double margin = kInf;
  for (const auto& s : samples) {
    std::array<int, 2> idx{0, 0};
    for (int a = 0; a < g.dim; ++a) {
      double pos = (s.u[a] - g.lo[a]) / g.spacing(a);
      int i = static_cast<int>(std::lround(pos));
      if (i < 0 || i >= g.points[a] ||
          std::abs(g.coord(a, i) - s.u[a]) > 1e-9)
        throw std::invalid_argument("sample u must be a grid point");
      idx[a] = i;
    }
    std::array<double, 2> grad = central_gradient(g, idx);
    double gu = g.values[g.flat(idx[0], idx[1])];
    double R = gridfn::distance(s.xstar, grad, g.dim);
    double inner =
        s.xstar[0] * s.u[0] + (g.dim == 2 ? s.xstar[1] * s.u[1] : 0.0);
    double rhs = inner - gu + modulus_inverse_integral(omega, R);
    double lhs = conjugate_value_at(g, s.xstar);
    double m = lhs - rhs;
    if (m < margin) {
      margin = m;
      cert.witness["u0"] = s.u[0];
      cert.witness["xstar0"] = s.xstar[0];
      if (g.dim == 2) {
        cert.witness["u1"] = s.u[1];
        cert.witness["xstar1"] = s.xstar[1];
      }
      cert.witness["lhs"] = lhs;
      cert.witness["rhs"] = rhs;
    }
  }
  cert.margin = margin;
  cert.pass = margin >= -(cert.slacks["base"] + cert.slacks["grid"]);
  cert.notes.push_back("modulus inflated to dominate sampled gradient pairs");
  if (omega.residual > 0.0) cert.notes.push_back("fit residual positive");
  std::ostringstream meta;
  meta << samples.size();
  cert.meta["samples"] = meta.str();
  return cert;
}

}  // namespace tiltlab::conjugate
