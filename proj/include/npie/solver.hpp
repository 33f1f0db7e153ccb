#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <optional>

#include "npie/coefficient.hpp"
#include "npie/linalg.hpp"
#include "npie/mesh.hpp"
#include "npie/operators.hpp"
#include "npie/types.hpp"

namespace npie {

enum class SolveMethod { Auto, Direct, Gmres };

SolveMethod parse_method(std::string_view text);

struct SolveOptions {
  Formulation formulation = Formulation::Sigma;
  Norm p = Norm::L1;
  SolveMethod method = SolveMethod::Auto;  // direct LU up to n = 2000
  double tol = 1e-15;                      // GMRES only
  int max_iter = 0;                        // 0: min(n, 400)
  bool require_convergence = true;         // throw when GMRES stops short of tol
  bool condition = true;                   // compute cond_1 and cond_2
  RefinementOptions mesh;
  KernelRule rule = KernelRule::Corrected;
};

/// l(x) = slope x + intercept with l(a) = gamma_a, l(b) = gamma_b.
struct LinearLift {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double x) const { return slope * x + intercept; }
};

LinearLift make_lift(Interval domain, double gamma_a, double gamma_b);

struct SolveReport {
  std::shared_ptr<const CompositeQuadrature> quad;
  Formulation formulation = Formulation::Sigma;
  Norm p = Norm::L1;
  LinearLift lift;

  Eigen::VectorXd u;
  Eigen::VectorXd u_x;
  std::optional<Eigen::VectorXd> sigma;  // Sigma formulation only
  Eigen::VectorXd weighted;              // solution of the weighted system
  Eigen::VectorXd residual;              // rhs - A * weighted

  bool direct = true;
  std::optional<GmresTrace> trace;
  std::optional<double> cond1;
  std::optional<double> cond2;
  std::optional<double> error_bound;  // Sigma formulation only

  std::size_t panel_count() const { return quad->panel_count(); }
  Eigen::Index size() const { return quad->size(); }

  /// u and u_x at any x in [a, b]: the potential of sigma for Sigma, panel
  /// interpolation for U.
  std::pair<double, double> evaluate(double x) const;
};

SolveReport solve_bvp(const CoefficientProfile& profile, const std::function<double(double)>& f, double gamma_a,
                      double gamma_b, const SolveOptions& opts = {});

/// Same, on a given mesh.
SolveReport solve_bvp(const CoefficientProfile& profile, const CompositeQuadrature& quad,
                      const std::function<double(double)>& f, double gamma_a, double gamma_b,
                      const SolveOptions& opts = {});

/// cond_1(A) ||r||_1 / ||b||_1 for the weighted solution in the report.
double error_bound(const SolveReport& report, const DiscreteSystem& system);

}  // namespace npie
