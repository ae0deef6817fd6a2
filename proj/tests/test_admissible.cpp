#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tiltlab/admissible.hpp"

using namespace tiltlab::admissible;

TEST_CASE("power family construction and flags") {
  AdmissibleFunction sq = construct_catalog("power", {2.0});
  CHECK(sq.value(3.0) == doctest::Approx(9.0));
  CHECK(sq.is_convex);
  CHECK(sq.is_strictly_convex);
  CHECK(sq.is_differentiable);
  CHECK(sq.name == "power:2");

  AdmissibleFunction lin = construct_catalog("power", {1.0});
  CHECK(lin.is_convex);
  CHECK_FALSE(lin.is_strictly_convex);

  CHECK_THROWS_AS(construct_catalog("power", {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(construct_catalog("nope", {1.0}), std::invalid_argument);
}

TEST_CASE("capped-linear is admissible but not convex") {
  AdmissibleFunction cap = construct_catalog("capped-linear", {1.0});
  CHECK(cap.value(0.5) == doctest::Approx(0.5));
  CHECK(cap.value(7.0) == doctest::Approx(1.0));
  CHECK_FALSE(cap.is_convex);
  AdmissibilityReport rep =
      check_admissibility(cap, default_admissibility_grid(10.0));
  CHECK(rep.pass);
}

TEST_CASE("parse_admissible round trips catalog ids") {
  CHECK(parse_admissible("power:2").value(3.0) == doctest::Approx(9.0));
  CHECK(parse_admissible("capped-linear:1").value(2.0) == doctest::Approx(1.0));
  CHECK(parse_admissible("scaled-power:2:3").value(2.0) ==
        doctest::Approx(16.0));
  CHECK_THROWS_AS(parse_admissible("power:abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_admissible(""), std::invalid_argument);
}

TEST_CASE("right derivative closed forms") {
  AdmissibleFunction sq = construct_catalog("power", {2.0});
  CHECK(right_derivative(sq, 1.0) == doctest::Approx(2.0));
  CHECK(right_derivative(sq, 0.0) == doctest::Approx(0.0));
  AdmissibleFunction lin = construct_catalog("power", {1.0});
  CHECK(right_derivative(lin, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("numeric right derivative at a kink") {
  AdmissibleFunction hinge;
  hinge.name = "hinge";
  hinge.is_convex = true;
  hinge.value = [](double t) { return std::max(t - 1.0, 0.0); };
  CHECK(right_derivative(hinge, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(right_derivative(hinge, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(right_derivative(hinge, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("numeric derivative matches closed form on power family") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    AdmissibleFunction phi = construct_catalog("power", {p});
    for (int k = -3; k <= 3; ++k) {
      double t = std::pow(10.0, k);
      double closed = phi.closed_derivative(t);
      double numeric = right_derivative_numeric(phi, t);
      CHECK(std::abs(numeric - closed) <= 1e-6 * closed);
    }
  }
}

TEST_CASE("inverse right derivative") {
  AdmissibleFunction sq = construct_catalog("power", {2.0});
  CHECK(inverse_right_derivative(sq, 1.0) == doctest::Approx(0.5));
  CHECK(inverse_right_derivative(sq, 0.0) == doctest::Approx(0.0));

  // no closed inverse: forces the bracket + bisection path on 4t^3 = 4
  AdmissibleFunction quart;
  quart.name = "quartic";
  quart.is_convex = true;
  quart.is_strictly_convex = true;
  quart.is_differentiable = true;
  quart.value = [](double t) { return t * t * t * t; };
  quart.closed_derivative = [](double t) { return 4.0 * t * t * t; };
  CHECK(inverse_right_derivative(quart, 4.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("inverse of derivative is the identity for powers") {
  AdmissibleFunction cube = construct_catalog("power", {3.0});
  for (int k = -12; k <= 6; ++k) {
    double t = std::pow(10.0, k / 2.0);
    double back = inverse_right_derivative(cube, right_derivative(cube, t));
    CHECK(std::abs(back - t) <= 1e-9 * t);
  }
}

TEST_CASE("phi_alpha rescales the right derivative") {
  AdmissibleFunction sq = construct_catalog("power", {2.0});
  CHECK(phi_alpha(sq, 0.5, 1.0) == doctest::Approx(8.0));
  CHECK(phi_alpha(sq, 0.5, 0.0) == doctest::Approx(0.0));
  AdmissibleFunction lin = construct_catalog("power", {1.0});
  CHECK(phi_alpha(lin, 0.5, 3.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(phi_alpha(sq, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("admissibility report flags the zero function") {
  AdmissibleFunction zero;
  zero.name = "zero";
  zero.value = [](double) { return 0.0; };
  AdmissibilityReport rep =
      check_admissibility(zero, default_admissibility_grid(1.0));
  CHECK(rep.zero_at_zero);
  CHECK(rep.monotone);
  CHECK_FALSE(rep.separation);
  CHECK_FALSE(rep.pass);

  AdmissibleFunction sq = construct_catalog("power", {2.0});
  CHECK(check_admissibility(sq, default_admissibility_grid(1.0)).pass);
}

TEST_CASE("user tables interpolate and reject non-monotone data") {
  AdmissibleFunction tab =
      make_table("tab", {0.0, 1.0, 2.0}, {0.0, 1.0, 1.5});
  CHECK(tab.value(0.5) == doctest::Approx(0.5));
  CHECK(tab.value(1.5) == doctest::Approx(1.25));
  CHECK(tab.value(3.0) == doctest::Approx(2.0));
  CHECK(right_derivative(tab, 1.0) == doctest::Approx(0.5));
  CHECK(check_admissibility(tab, default_admissibility_grid(3.0)).pass);
  CHECK_THROWS_AS(make_table("bad", {0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_table("bad", {0.0, 1.0}, {0.5, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("derived moduli: integral and inverse-derivative") {
  AdmissibleFunction lin = construct_catalog("power", {1.0});
  AdmissibleFunction half_sq = integral_function(lin);
  CHECK(half_sq.value(2.0) == doctest::Approx(2.0));
  CHECK(right_derivative(half_sq, 2.0) == doctest::Approx(2.0));

  AdmissibleFunction cap = construct_catalog("capped-linear", {1.0});
  AdmissibleFunction icap = integral_function(cap);
  CHECK(icap.value(2.0) == doctest::Approx(1.5));
  CHECK(icap.value(0.5) == doctest::Approx(0.125));

  AdmissibleFunction tab = make_table("lin-tab", {0.0, 4.0}, {0.0, 4.0});
  CHECK(integral_function(tab).value(2.0) == doctest::Approx(2.0));

  AdmissibleFunction sq = construct_catalog("power", {2.0});
  AdmissibleFunction inv2 = inverse_derivative_function(sq);
  CHECK(inv2.value(3.0) == doctest::Approx(1.5));
  AdmissibleFunction quart = construct_catalog("power", {4.0});
  AdmissibleFunction inv4 = inverse_derivative_function(quart);
  CHECK(inv4.value(4.0) == doctest::Approx(1.0));
  CHECK(inv4.value(0.5) == doctest::Approx(0.5));
}
