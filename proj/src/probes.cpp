#include "npie/probes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "npie/analytic.hpp"
#include "npie/operators.hpp"

namespace npie {

std::string to_string(ProbedQuantity q) { return q == ProbedQuantity::Operator ? "operator" : "inverse"; }

namespace {

double weighted_norm(const Eigen::VectorXd& v, const Eigen::VectorXd& w, Norm p) {
  switch (p) {
    case Norm::L1: return w.dot(v.cwiseAbs());
    case Norm::L2: return std::sqrt(w.dot(v.cwiseAbs2()));
    case Norm::Inf: return v.cwiseAbs().maxCoeff();
  }
  return 0.0;
}

}  // namespace

ProbeResult extremal_probe_sup(const CoefficientProfile& profile, const CompositeQuadrature& quad, double ramp) {
  if (!(ramp > 0.0)) throw Error("extremal_probe_sup: ramp parameter must be positive");
  const auto& nodes = quad.nodes();
  double x_star = nodes[0], peak = -1.0;
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    const auto c = profile(nodes[i]);
    const double r = std::abs(c.derivative / c.value);
    if (r > peak) {
      peak = r;
      x_star = nodes[i];
    }
  }
  const double x_end = x_star + 1.0 / ramp;
  const auto sigma_n = [&](double y) {
    if (y <= x_star) return 1.0;
    if (y >= x_end) return -1.0;
    return 1.0 - 2.0 * ramp * (y - x_star);
  };

  // sigma_n is linear on every panel of this mesh, so the potential is exact.
  const auto fine = split_mesh(quad, {x_star, x_end});
  Eigen::VectorXd s(fine.size());
  for (Eigen::Index i = 0; i < fine.size(); ++i) s[i] = sigma_n(fine.nodes()[i]);

  const auto image = [&](double x) {
    const auto c = profile(x);
    return sigma_n(x) + c.derivative / c.value * potential_eval(s, fine, x).g_x;
  };
  double best = std::abs(image(x_star));
  const Eigen::VectorXd kernel_part = green_x_matrix(fine) * s;
  for (Eigen::Index i = 0; i < fine.size(); ++i) {
    const auto c = profile(fine.nodes()[i]);
    best = std::max(best, std::abs(s[i] + c.derivative / c.value * kernel_part[i]));
  }

  ProbeResult out;
  out.quantity = ProbedQuantity::Operator;
  out.p = Norm::Inf;
  out.value = best;
  out.ratio_norm = peak;
  out.floor = 0.25 * peak - 1.0;
  out.ceiling = 1.0 + peak;
  out.location = x_star;
  return out;
}

ProbeBall choose_probe_ball(const CoefficientProfile& profile) {
  const Interval d = profile.domain();
  std::vector<double> marks{d.lo, d.hi};
  for (const auto& l : profile.layers())
    if (d.contains(l.center)) marks.push_back(l.center);
  std::sort(marks.begin(), marks.end());
  ProbeBall ball{d.midpoint(), 0.0};
  double gap = 0.0;
  for (std::size_t k = 0; k + 1 < marks.size(); ++k) {
    if (marks[k + 1] - marks[k] > gap) {
      gap = marks[k + 1] - marks[k];
      ball.xi = 0.5 * (marks[k] + marks[k + 1]);
    }
  }
  ball.c = std::min(0.25 * gap, 0.25);
  return ball;
}

ProbeResult extremal_probe_inverse(const CoefficientProfile& profile, const CompositeQuadrature& quad, Norm p,
                                   double xi, double c) {
  const Interval d = profile.domain();
  if (!(c > 0.0) || xi - c < d.lo || xi + c > d.hi) {
    std::ostringstream msg;
    msg << "probe ball B(" << xi << ", " << c << ") is not contained in [" << d.lo << ", " << d.hi << "]";
    throw Error(msg.str());
  }
  const auto fine = split_mesh(quad, {xi - c, xi, xi + c});
  const auto& x = fine.nodes();
  const auto& w = fine.weights();
  const Eigen::Index n = fine.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n), ratio(n), ratio_in_ball = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto e = profile(x[i]);
    ratio[i] = e.derivative / e.value;
    if (x[i] > xi - c && x[i] <= xi + c) {
      g[i] = (x[i] <= xi ? 1.0 : -1.0) / e.value;
      ratio_in_ball[i] = ratio[i];
    }
  }
  const Eigen::VectorXd image = apply_inverse(Formulation::Sigma, profile, g, fine);

  ProbeResult out;
  out.quantity = ProbedQuantity::Inverse;
  out.p = p;
  out.value = weighted_norm(image, w, p) / weighted_norm(g, w, p);
  out.ratio_norm = weighted_norm(ratio, w, p);
  out.flat_fraction = out.ratio_norm > 0.0 ? weighted_norm(ratio_in_ball, w, p) / out.ratio_norm : 0.0;
  const double m = profile.min(), big_m = profile.max();
  out.floor = (1.0 - out.flat_fraction) * m * c * c / (big_m * big_m) * out.ratio_norm - 1.0;
  out.location = xi;
  out.radius = c;
  return out;
}

ProbeResult extremal_probe_inverse(const CoefficientProfile& profile, const CompositeQuadrature& quad, Norm p) {
  const auto ball = choose_probe_ball(profile);
  return extremal_probe_inverse(profile, quad, p, ball.xi, ball.c);
}

}  // namespace npie
