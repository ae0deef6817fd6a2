#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tiltlab/admissible.hpp"
#include "tiltlab/grid_function.hpp"
#include "tiltlab/set_valued_graph.hpp"

using namespace tiltlab;
using namespace tiltlab::subdiff;
using gridfn::FunctionSpec;
using gridfn::kInf;

namespace {

gridfn::GridFunction piecewise_max_1d() {
  // max(x, 2x) on [-1, 1]
  int n = 201;
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) {
    double x = -1.0 + 2.0 * i / (n - 1);
    vals[i] = std::max(x, 2.0 * x);
  }
  return gridfn::from_values("piecewise-max", 1, {-1.0, 0.0}, {1.0, 0.0},
                             {n, 1}, vals);
}

}  // namespace

TEST_CASE("subdifferential intervals of convex grid functions") {
  auto absf = gridfn::sample_function_1d({"abs", {}}, -1.0, 1.0, 201);
  Interval i0 = convex_subdifferential_1d(absf, 0.0);
  CHECK(i0.lo == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(i0.hi == doctest::Approx(1.0).epsilon(1e-12));

  auto pm = piecewise_max_1d();
  Interval j0 = convex_subdifferential_1d(pm, 0.0);
  CHECK(j0.lo == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j0.hi == doctest::Approx(2.0).epsilon(1e-12));

  // smooth interior point: both quotients straddle the derivative by h/2
  auto hq = gridfn::sample_function_1d({"half-quad", {}}, -1.0, 1.0, 201);
  Interval s = convex_subdifferential_1d(hq, 0.5);
  CHECK(s.lo == doctest::Approx(0.495).epsilon(1e-10));
  CHECK(s.hi == doctest::Approx(0.505).epsilon(1e-10));

  // effective-domain boundary opens the interval downward
  auto q = gridfn::sample_function_1d({"quad", {}}, -1.0, 1.0, 201);
  auto qb = gridfn::add_ball_indicator(q, {0.0, 0.0}, 0.5);
  Interval e = convex_subdifferential_1d(qb, -0.5);
  CHECK(e.lo == -kInf);
  CHECK(e.hi == doctest::Approx(-0.99).epsilon(1e-10));

  CHECK_THROWS_AS(convex_subdifferential_1d(absf, 0.005001),
                  std::invalid_argument);
  auto dw = gridfn::sample_function_1d({"double-well", {}}, -2.0, 2.0, 201);
  CHECK_THROWS_AS(convex_subdifferential_1d(dw, 0.0), std::invalid_argument);
}

TEST_CASE("staircase graph of a coarse kink") {
  auto absf = gridfn::sample_function_1d({"abs", {}}, -1.0, 1.0, 5);
  SetValuedGraph g = graph_from_convex_grid(absf);
  CHECK(g.segments.size() == 5);  // two walls, two plateaus, one step

  auto at0 = g.values_at(0.0);
  REQUIRE(at0.size() == 1);
  CHECK(at0[0].lo == doctest::Approx(-1.0));
  CHECK(at0[0].hi == doctest::Approx(1.0));

  auto mid = g.values_at(0.25);
  REQUIRE(mid.size() == 1);
  CHECK(mid[0].lo == doctest::Approx(1.0));
  CHECK(mid[0].hi == doctest::Approx(1.0));

  auto pre1 = g.preimages_of(1.0);
  REQUIRE(pre1.size() == 1);
  CHECK(pre1[0].lo == doctest::Approx(0.0));
  CHECK(pre1[0].hi == doctest::Approx(1.0));

  auto prew = g.preimages_of(1.5);  // only the right wall reaches 1.5
  REQUIRE(prew.size() == 1);
  CHECK(prew[0].lo == doctest::Approx(1.0));
  CHECK(prew[0].hi == doctest::Approx(1.0));

  CHECK(g.contains(0.0, 0.5, 1e-9));
  CHECK_FALSE(g.contains(0.25, 0.5, 1e-9));
}

TEST_CASE("analytic graphs of catalog functions") {
  SetValuedGraph quad = subdifferential_graph({"quad", {}}, -2.0, 2.0);
  auto v1 = quad.values_at(1.0);
  REQUIRE(v1.size() == 1);
  CHECK(v1[0].lo == doctest::Approx(2.0).epsilon(1e-12));
  auto p3 = quad.preimages_of(-3.0);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].lo == doctest::Approx(-1.5).epsilon(1e-12));

  SetValuedGraph ind =
      subdifferential_graph({"indicator-ball", {0.0, 1.0}}, -2.0, 2.0);
  auto wall = ind.values_at(-1.0);
  REQUIRE(wall.size() == 1);
  CHECK(wall[0].lo == doctest::Approx(-4.0));
  CHECK(wall[0].hi == doctest::Approx(0.0));
  auto pw = ind.preimages_of(2.0);
  REQUIRE(pw.size() == 1);
  CHECK(pw[0].lo == doctest::Approx(1.0));
  CHECK(pw[0].hi == doctest::Approx(1.0));

  // curved derivative is chord-approximated within its declared tolerance
  SetValuedGraph quartic = subdifferential_graph({"quartic", {}}, -1.5, 1.5);
  CHECK(quartic.linearization_tol == doctest::Approx(1e-4));
  CHECK(quartic.segments.size() > 10);
  CHECK(quartic.segments.size() < 5000);
  auto q1 = quartic.values_at(1.0);
  REQUIRE(q1.size() == 1);
  CHECK(std::abs(q1[0].lo - 4.0) <= 2e-4);

  SetValuedGraph p43 =
      subdifferential_graph({"power-q", {4.0 / 3.0}}, -1.0, 1.0);
  auto r1 = p43.values_at(1.0);
  REQUIRE(r1.size() == 1);
  CHECK(std::abs(r1[0].lo - 4.0 / 3.0) <= 2e-4);
  // the slope blows up at 0, so the deepest chords collapse to a thin
  // vertical step at query resolution; it must straddle 0 and stay small
  auto r0 = p43.values_at(0.0);
  REQUIRE(!r0.empty());
  CHECK(r0.front().lo <= 0.0);
  CHECK(r0.front().hi >= 0.0);
  CHECK(r0.front().hi - r0.front().lo <= 1e-3);

  CHECK_THROWS_AS(subdifferential_graph({"power-q", {0.5}}, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("normal cones along and across the graph") {
  SetValuedGraph quad = subdifferential_graph({"quad", {}}, -2.0, 2.0);
  ConeSet line = polyline_normal_cone(quad, {1.0, 2.0});
  CHECK(cone_set_contains(line, {2.0, -1.0}, 1e-9));
  CHECK(cone_set_contains(line, {-2.0, 1.0}, 1e-9));
  CHECK_FALSE(cone_set_contains(line, {1.0, 2.0}, 1e-9));

  SetValuedGraph absg = subdifferential_graph({"abs", {}}, -2.0, 2.0);
  ConeSet step = polyline_normal_cone(absg, {0.0, 0.5});
  CHECK(cone_set_contains(step, {1.0, 0.0}, 1e-9));
  CHECK(cone_set_contains(step, {-1.0, 0.0}, 1e-9));
  CHECK_FALSE(cone_set_contains(step, {0.5, 0.5}, 1e-9));

  // corner joins the two edge normal lines and the polar quadrant
  ConeSet corner = polyline_normal_cone(absg, {0.0, 1.0});
  CHECK(cone_set_contains(corner, {-1.0, 2.0}, 1e-9));
  CHECK(cone_set_contains(corner, {0.0, -1.0}, 1e-9));
  CHECK(cone_set_contains(corner, {1.0, 0.0}, 1e-9));
  CHECK_FALSE(cone_set_contains(corner, {-1.0, -2.0}, 1e-9));
  CHECK_FALSE(cone_set_contains(corner, {1.0, 1.0}, 1e-9));

  CHECK_THROWS_AS(polyline_normal_cone(quad, {0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("coderivative slices") {
  SetValuedGraph hq = subdifferential_graph({"half-quad", {}}, -2.0, 2.0);
  RealSet s = second_subdifferential(hq, 1.0, 1.0, 1.0);
  REQUIRE(s.intervals.size() == 1);
  CHECK(s.intervals[0].lo == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.intervals[0].hi == doctest::Approx(1.0).epsilon(1e-12));
  RealSet sm = second_subdifferential(hq, 1.0, 1.0, -0.5);
  REQUIRE(sm.intervals.size() == 1);
  CHECK(sm.intervals[0].lo == doctest::Approx(-0.5).epsilon(1e-12));

  SetValuedGraph absg = subdifferential_graph({"abs", {}}, -2.0, 2.0);
  RealSet all = second_subdifferential(absg, 0.0, 0.5, 0.0);
  CHECK(all.all);
  RealSet none = second_subdifferential(absg, 0.0, 0.5, 1.0);
  CHECK(none.empty());

  // corner of the step: a ray of z for h < 0, a single point for h > 0
  RealSet neg = second_subdifferential(absg, 0.0, 1.0, -1.0);
  REQUIRE(neg.intervals.size() == 1);
  CHECK(neg.intervals[0].lo == -kInf);
  CHECK(neg.intervals[0].hi == doctest::Approx(0.0));
  RealSet pos = second_subdifferential(absg, 0.0, 1.0, 1.0);
  REQUIRE(pos.intervals.size() == 1);
  CHECK(pos.intervals[0].lo == doctest::Approx(0.0));
  CHECK(pos.intervals[0].hi == doctest::Approx(0.0));
}

TEST_CASE("directional modulus eta") {
  SetValuedGraph hq = subdifferential_graph({"half-quad", {}}, -2.0, 2.0);
  auto psi1 = admissible::construct_catalog("power", {1.0});
  auto psi2 = admissible::construct_catalog("power", {2.0});
  CHECK(eta_psi(hq, psi1, 1.0, 1.0, 0.25) == doctest::Approx(1.0));
  CHECK(eta_psi(hq, psi2, 1.0, 1.0, 0.25) ==
        doctest::Approx(0.5).epsilon(1e-12));

  SetValuedGraph absg = subdifferential_graph({"abs", {}}, -2.0, 2.0);
  CHECK(std::isinf(eta_psi(absg, psi1, 0.0, 0.5, -1.0)));
}

TEST_CASE("second-order condition sweeps") {
  auto psi1 = admissible::construct_catalog("power", {1.0});
  SetValuedGraph hq = subdifferential_graph({"half-quad", {}}, -2.0, 2.0);

  auto ok = check_condition_6_1(hq, psi1, 1.0, 0.5, {0.0, 0.0});
  CHECK(ok.pass);
  CHECK(std::abs(ok.margin) <= 1e-9);

  auto bad = check_condition_6_1(hq, psi1, 2.0, 0.5, {0.0, 0.0});
  CHECK_FALSE(bad.pass);
  CHECK(bad.margin == doctest::Approx(-0.25).epsilon(1e-6));

  SetValuedGraph quad = subdifferential_graph({"quad", {}}, -2.0, 2.0);
  auto strong = check_condition_6_1(quad, psi1, 1.0, 0.5, {0.0, 0.0});
  CHECK(strong.pass);
  auto weak = check_condition_6_1(quad, psi1, 16.0, 0.5, {0.0, 0.0});
  CHECK_FALSE(weak.pass);
  CHECK(weak.margin == doctest::Approx(-3.5).epsilon(1e-6));

  // the kink is vacuously fine at the origin: no z exists off h = 0
  SetValuedGraph absg = subdifferential_graph({"abs", {}}, -2.0, 2.0);
  auto vac = check_condition_6_1(absg, psi1, 0.5, 0.5, {0.0, 0.0});
  CHECK(vac.pass);
  CHECK(vac.margin == doctest::Approx(0.0));

  CHECK_THROWS_AS(check_condition_6_1(hq, psi1, 1.0, 0.5, {0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("graph csv round trip and deterministic sampling") {
  SetValuedGraph absg = subdifferential_graph({"abs", {}}, -2.0, 2.0);
  const char* path = "/tmp/tiltlab_test_graph.csv";
  write_graph_csv(absg, path);
  SetValuedGraph back = read_graph_csv(path);
  CHECK(back.segments.size() == absg.segments.size());
  auto at0 = back.values_at(0.0);
  REQUIRE(at0.size() == 1);
  CHECK(at0[0].lo == doctest::Approx(-1.0));
  CHECK(at0[0].hi == doctest::Approx(1.0));
  std::remove(path);

  auto a = graph_samples_in_box(absg, -0.5, 0.5, -0.5, 0.5, 0.0, 0.0);
  auto b = graph_samples_in_box(absg, -0.5, 0.5, -0.5, 0.5, 0.0, 0.0);
  CHECK(a == b);
  CHECK(a.size() > 10);
  for (const auto& p : a) CHECK(absg.contains(p[0], p[1], 1e-7));
}
