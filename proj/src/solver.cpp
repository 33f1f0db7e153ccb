#include "npie/solver.hpp"

#include <sstream>

namespace npie {

SolveMethod parse_method(std::string_view text) {
  if (text == "auto") return SolveMethod::Auto;
  if (text == "direct") return SolveMethod::Direct;
  if (text == "gmres") return SolveMethod::Gmres;
  throw Error("unknown solve method '" + std::string(text) + "' (expected auto, direct or gmres)");
}

LinearLift make_lift(Interval domain, double gamma_a, double gamma_b) {
  const double slope = (gamma_b - gamma_a) / domain.length();
  return {slope, gamma_a - slope * domain.lo};
}

std::pair<double, double> SolveReport::evaluate(double x) const {
  if (sigma) {
    const auto v = potential_eval(*sigma, *quad, x);
    return {v.g + lift(x), v.g_x + lift.slope};
  }
  return {interpolate_on_panel(*quad, u, x), interpolate_on_panel(*quad, u_x, x)};
}

SolveReport solve_bvp(const CoefficientProfile& profile, const std::function<double(double)>& f, double gamma_a,
                      double gamma_b, const SolveOptions& opts) {
  return solve_bvp(profile, refine_adaptive(profile, opts.mesh), f, gamma_a, gamma_b, opts);
}

SolveReport solve_bvp(const CoefficientProfile& profile, const CompositeQuadrature& quad,
                      const std::function<double(double)>& f, double gamma_a, double gamma_b,
                      const SolveOptions& opts) {
  if (!std::isfinite(gamma_a) || !std::isfinite(gamma_b)) throw Error("boundary values must be finite");
  SolveReport report;
  report.quad = std::make_shared<const CompositeQuadrature>(quad);
  report.formulation = opts.formulation;
  report.p = opts.p;
  report.lift = make_lift(profile.domain(), gamma_a, gamma_b);

  const Eigen::Index n = quad.size();
  const auto& x = quad.nodes();
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs[i] = f(x[i]) - report.lift.slope * profile(x[i]).derivative;

  const DiscreteSystem sys = assemble_system(opts.formulation, profile, quad, opts.p, rhs, opts.rule);

  const bool direct = opts.method == SolveMethod::Direct || (opts.method == SolveMethod::Auto && n <= 2000);
  report.direct = direct;
  if (direct) {
    report.weighted = DenseLU(sys.matrix).solve(sys.rhs);
  } else if (sys.rhs.norm() == 0.0) {
    report.weighted = Eigen::VectorXd::Zero(n);
  } else {
    report.trace = gmres(sys.matrix, sys.rhs, opts.tol, opts.max_iter);
    report.weighted = report.trace->x;
    if (opts.require_convergence && !report.trace->converged) {
      std::ostringstream msg;
      msg << "GMRES did not reach " << opts.tol << " within " << report.trace->iterations
          << " iterations (residual " << report.trace->true_residuals.back() << ")";
      throw Error(msg.str());
    }
  }
  report.residual = sys.rhs - sys.matrix * report.weighted;

  const Eigen::VectorXd unknown = sys.unweight(report.weighted);
  const Eigen::VectorXd l = (report.lift.slope * x.array() + report.lift.intercept).matrix();
  if (opts.formulation == Formulation::Sigma) {
    report.sigma = unknown;
    report.u = green_matrix(quad, opts.rule) * unknown + l;
    report.u_x = (green_x_matrix(quad, opts.rule) * unknown).array() + report.lift.slope;
  } else {
    report.u = unknown + l;
    // eps v_x = int G_x f - (1/L) int eps_x v, from differentiating eps v = int G f - int G_t eps_x v
    Eigen::VectorXd eps(n), eps_x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = profile(x[i]);
      eps[i] = c.value;
      eps_x[i] = c.derivative;
    }
    const double mean = quad.weights().dot(eps_x.cwiseProduct(unknown)) / profile.domain().length();
    const Eigen::VectorXd flux = (green_x_matrix(quad, opts.rule) * rhs).array() - mean;
    report.u_x = flux.cwiseQuotient(eps).array() + report.lift.slope;
  }

  if (opts.condition) {
    const auto c = condition_numbers(sys.matrix);
    report.cond1 = c.cond1;
    report.cond2 = c.cond2;
    if (opts.formulation == Formulation::Sigma) report.error_bound = error_bound(report, sys);
  }
  return report;
}

double error_bound(const SolveReport& report, const DiscreteSystem& system) {
  if (system.formulation != Formulation::Sigma) throw Error("error_bound applies to the density formulation only");
  const double c1 = report.cond1 ? *report.cond1 : cond_p(system.matrix, Norm::L1);
  const double b1 = system.rhs.lpNorm<1>();
  if (b1 == 0.0) return 0.0;
  const Eigen::VectorXd r = system.rhs - system.matrix * report.weighted;
  return c1 * r.lpNorm<1>() / b1;
}

}  // namespace npie
