#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "npie/coefficient.hpp"
#include "npie/mesh.hpp"
#include "npie/types.hpp"

namespace npie {

using ScalarFunction = std::function<double(double)>;

/// x -> int_a^x f, using 24-point Gauss-Legendre on the mesh panels.
/// Panel-start sums are cached; the partial panel is integrated directly.
class RunningIntegral {
 public:
  RunningIntegral(ScalarFunction f, const CompositeQuadrature& quad);

  double operator()(double x) const;
  double total() const { return starts_.back(); }

 private:
  ScalarFunction f_;
  std::vector<Interval> panels_;
  std::vector<double> starts_;
};

/// Exact solution of (eps u')' = f, u(a) = gamma_a, u(b) = gamma_b, built from
///   u_x = (F + C)/eps,  F = int_a^x f,  C = eps(a) u_x(a),
///   C = (gamma_b - gamma_a - int_a^b F/eps) / int_a^b 1/eps.
class ClosedFormSolution {
 public:
  struct Value {
    double u = 0.0;
    double u_x = 0.0;
    double sigma = 0.0;  // u_xx
  };
  struct NodeValues {
    Eigen::VectorXd u, u_x, sigma;
  };

  ClosedFormSolution(const CoefficientProfile& profile, ScalarFunction f, const CompositeQuadrature& quad,
                     double gamma_a = 0.0, double gamma_b = 0.0);

  Value operator()(double x) const;
  NodeValues at_nodes() const;

  double flux_constant() const { return flux_; }
  double inverse_integral() const { return inverse_total_; }

 private:
  struct Partial {
    double f_int = 0.0;    // int f
    double inv = 0.0;      // int 1/eps
    double f_over = 0.0;   // int F/eps
  };
  Partial partial(std::size_t panel, double x) const;

  CoefficientProfile profile_;
  ScalarFunction f_;
  CompositeQuadrature quad_;
  double gamma_a_, gamma_b_;
  std::vector<Partial> starts_;
  double inverse_total_ = 0.0;
  double flux_ = 0.0;
};

/// Closed-form resolvent kernels: (I + K)^(-1) = I - R.
///   R1(x,t) = (eps_x/eps^2)(x) [H(x-t) eps(t) - eps(t) int_t^b (1/eps) / I]
///   R2(x,t) = -(eps_x(t)/eps(t)^2) [H(x-t) eps(t) - eps(t) int_a^x (1/eps) / I]
/// with I = int_a^b 1/eps and H(0) = 1.
class Resolvent {
 public:
  Resolvent(const CoefficientProfile& profile, const CompositeQuadrature& quad);

  double operator()(Formulation formulation, double x, double t) const;
  double inverse_integral(double x) const { return inverse_(x); }
  double inverse_total() const { return inverse_.total(); }

 private:
  CoefficientProfile profile_;
  RunningIntegral inverse_;
};

double resolvent_kernel(Formulation formulation, const CoefficientProfile& profile, const CompositeQuadrature& quad,
                        double x, double t);
double resolvent_kernel(Formulation formulation, const CoefficientProfile& profile, double x, double t);

/// (I - R) g at the nodes, with the inner integrals from the panel integration matrices.
Eigen::VectorXd apply_inverse(Formulation formulation, const CoefficientProfile& profile,
                              const Eigen::VectorXd& g_samples, const CompositeQuadrature& quad);

}  // namespace npie
