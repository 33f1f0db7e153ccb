#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "npie/coefficient.hpp"
#include "npie/quadrature.hpp"
#include "npie/types.hpp"

namespace npie {

enum class RefinementCriterion {
  ValueAndDerivative,  // eps and eps_x, plus exactness of the eps_x increment
  ValueOnly,
};

struct RefinementOptions {
  int order = 16;
  double tol = 1e-15;
  RefinementCriterion criterion = RefinementCriterion::ValueAndDerivative;
  int max_depth = 60;
};

/// Gauss-Legendre panels partitioning [a, b] and the flattened global rule.
class CompositeQuadrature {
 public:
  CompositeQuadrature(Interval domain, std::vector<Interval> panels, int order);

  const Interval& domain() const { return domain_; }
  const std::vector<Interval>& panels() const { return panels_; }
  const Interval& panel(std::size_t k) const { return panels_.at(k); }
  int order() const { return order_; }
  Eigen::Index size() const { return nodes_.size(); }
  std::size_t panel_count() const { return panels_.size(); }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  /// Index of the first node of panel k.
  Eigen::Index panel_offset(std::size_t k) const { return static_cast<Eigen::Index>(k) * order_; }

  /// Panel containing x. Shared endpoints go to the right panel, b to the last.
  std::size_t locate_panel(double x) const;

  double min_panel_width() const;

  double integrate(const Eigen::VectorXd& samples) const { return weights_.dot(samples); }

  template <typename F>
  double integrate_at_nodes(F&& f) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  Interval domain_;
  std::vector<Interval> panels_;
  int order_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
};

CompositeQuadrature refine_adaptive(const CoefficientProfile& profile, const RefinementOptions& opts = {});
CompositeQuadrature refine_adaptive(const CoefficientProfile& profile, int order, double tol);

/// Same mesh with panels additionally cut at the given points.
CompositeQuadrature split_mesh(const CompositeQuadrature& quad, const std::vector<double>& cuts);

/// Equal panels, no refinement. With order 1 every weight is the same.
CompositeQuadrature uniform_mesh(Interval domain, int panels, int order);

/// Spectral matrices of the order-n Gauss-Legendre panel on [-1, 1].
///   integration(i, j)     = int_{-1}^{x_i} l_j
///   moment(i, j)          = int_{-1}^{x_i} (x_i - t) l_j(t) dt
///   differentiation(i, j) = l_j'(x_i)
struct ReferencePanel {
  int order = 0;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  Eigen::VectorXd barycentric;
  Eigen::MatrixXd integration;
  Eigen::MatrixXd moment;
  Eigen::MatrixXd differentiation;

  Eigen::RowVectorXd lagrange_row(double xi) const;
  Eigen::RowVectorXd integration_row(double xi) const;
  Eigen::RowVectorXd moment_row(double xi) const;
};

const ReferencePanel& reference_panel(int order);

/// Position of x inside panel k mapped to [-1, 1].
inline double to_reference(const Interval& panel, double x) {
  return std::clamp((2.0 * x - panel.lo - panel.hi) / panel.length(), -1.0, 1.0);
}

/// Barycentric interpolation through the nodes of the panel containing x.
double interpolate_on_panel(const CompositeQuadrature& quad, const Eigen::VectorXd& samples, double x);

/// int_a^{x_i} of the panelwise interpolant, at every node.
Eigen::VectorXd cumulative_integral(const CompositeQuadrature& quad, const Eigen::VectorXd& samples);

/// Panelwise derivative of the interpolant, at every node.
Eigen::VectorXd panel_derivative(const CompositeQuadrature& quad, const Eigen::VectorXd& samples);

/// int_lo^hi f by 16-point Gauss-Legendre on every piece cut by the mesh
/// panel ends and any extra breakpoints.
template <typename F>
double integrate_function(const CompositeQuadrature& quad, F&& f, double lo, double hi,
                          std::vector<double> breaks = {}) {
  if (!(lo < hi)) return lo == hi ? 0.0 : -integrate_function(quad, f, hi, lo, std::move(breaks));
  for (const auto& p : quad.panels()) breaks.push_back(p.lo);
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::erase_if(breaks, [&](double x) { return x < lo || x > hi; });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const auto& rule = reference_rule(16);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double c = 0.5 * (breaks[k] + breaks[k + 1]);
    const double h = 0.5 * (breaks[k + 1] - breaks[k]);
    for (Eigen::Index i = 0; i < rule.size(); ++i) sum += h * rule.weights[i] * f(c + h * rule.nodes[i]);
  }
  return sum;
}

}  // namespace npie
