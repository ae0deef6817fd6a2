#pragma once

#include <array>

#include "tiltlab/admissible.hpp"
#include "tiltlab/certificate.hpp"
#include "tiltlab/set_valued_graph.hpp"

namespace tiltlab::regularity {

// psi(tau * d(x, F^{-1}(y))) <= kappa * d(y, F(x)) over sampled
// B(center_x, r) x B(center_v, r); distances to empty sets are +inf
certificate::Certificate check_metric_regularity(
    const subdiff::SetValuedGraph& g, std::array<double, 2> center,
    const admissible::AdmissibleFunction& psi, double tau, double kappa,
    double r);

// metric regularity plus: F^{-1}(y) meets B(center_x, delta) in a set of
// diameter at most the singleton slack, for every sampled y
certificate::Certificate check_strong_metric_regularity(
    const subdiff::SetValuedGraph& g, std::array<double, 2> center,
    const admissible::AdmissibleFunction& psi, double tau, double kappa,
    double r, double delta);

certificate::Certificate check_monotone(const subdiff::SetValuedGraph& g);

// every v in F(z1) within gamma of center_v stays within
// omega(|z2 - z1|) of F(z2), for z1, z2 sampled in B(center_x, delta)
certificate::Certificate check_selection_property_4_4(
    const subdiff::SetValuedGraph& g, std::array<double, 2> center,
    const admissible::AdmissibleFunction& omega, double gamma, double delta);

// largest radius on which a selection modulus keeps images single-valued:
// min(delta, sup{t >= 0 : omega(t) < gamma})
double single_valuedness_radius(const admissible::AdmissibleFunction& omega,
                                double gamma, double delta);

// slack granted to singleton checks on g (cell diagonal of its sampling)
double singleton_slack(const subdiff::SetValuedGraph& g);

}  // namespace tiltlab::regularity
