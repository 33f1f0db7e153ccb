#pragma once

#include <optional>
#include <string>

#include "npie/coefficient.hpp"
#include "npie/mesh.hpp"
#include "npie/types.hpp"

namespace npie {

enum class ProbedQuantity { Operator, Inverse };

struct ProbeResult {
  ProbedQuantity quantity = ProbedQuantity::Operator;
  Norm p = Norm::Inf;
  double value = 0.0;                // ||A v||_p / ||v||_p for the extremal v: a lower bound on the norm
  double floor = 0.0;                // theoretical lower bound
  std::optional<double> ceiling;     // theoretical upper bound, where one is computed
  double ratio_norm = 0.0;           // ||eps_x/eps||_p
  double location = 0.0;             // x_* for the operator probe, xi for the inverse probe
  double radius = 0.0;               // c for the inverse probe
  double flat_fraction = 0.0;        // ||(eps_x/eps) 1_V||_p / ||eps_x/eps||_p
};

std::string to_string(ProbedQuantity q);

/// Lower bound on ||I + K1|| in sup norm from the continuous ramp sigma_n that
/// is +1 left of x_* = argmax |eps_x/eps| and -1 right of x_* + 1/ramp.
ProbeResult extremal_probe_sup(const CoefficientProfile& profile, const CompositeQuadrature& quad,
                               double ramp = 1000.0);

/// Center and radius of a ball away from every layer: xi is the midpoint of the
/// widest gap between layer centers and the domain ends, c is a quarter of that
/// gap capped at 0.25.
struct ProbeBall {
  double xi = 0.0;
  double c = 0.0;
};
ProbeBall choose_probe_ball(const CoefficientProfile& profile);

/// Lower bound on ||(I + K1)^(-1)||_p from g = 1/eps on (xi - c, xi], -1/eps on
/// (xi, xi + c], zero elsewhere, pushed through the closed-form resolvent.
ProbeResult extremal_probe_inverse(const CoefficientProfile& profile, const CompositeQuadrature& quad, Norm p,
                                   double xi, double c);
ProbeResult extremal_probe_inverse(const CoefficientProfile& profile, const CompositeQuadrature& quad, Norm p);

}  // namespace npie
