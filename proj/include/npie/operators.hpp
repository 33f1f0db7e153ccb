#pragma once

#include <Eigen/Core>

#include <memory>

#include "npie/coefficient.hpp"
#include "npie/mesh.hpp"
#include "npie/types.hpp"

namespace npie {

/// G(x, t) and dG/dx for the Dirichlet Green's function of d^2/dx^2 on [a, b].
struct GreenPair {
  double g = 0.0;
  double g_x = 0.0;
};

/// x = t takes the x >= t branch.
GreenPair green_pair(double x, double t, Interval domain);

/// dG/dt, again with the x >= t branch on the diagonal.
double green_t(double x, double t, Interval domain);

/// How panel-local kernel entries are formed.
///
/// Plain samples the kernel at node pairs (K(x_i, x_j) w_j). Its accuracy is
/// only O(h) because the kernels jump or kink at t = x.
///
/// Corrected integrates the kernel against the panel interpolant exactly on the
/// panel holding x_i, which restores spectral accuracy. Off-panel entries are
/// identical for both rules.
enum class KernelRule { Corrected, Plain };

/// Node values scaled by w_i^(1/p).
struct NormedVector {
  Eigen::VectorXd entries;
  Norm p = Norm::L2;
  Eigen::VectorXd scale;  // w_i^(1/p)

  Eigen::VectorXd unweight() const { return entries.cwiseQuotient(scale); }
  double norm() const;
};

Eigen::VectorXd phi_scale(const CompositeQuadrature& quad, Norm p);
NormedVector phi_map(const Eigen::VectorXd& samples, const CompositeQuadrature& quad, Norm p);

/// l^p norm of a plain vector.
double lp_norm(const Eigen::VectorXd& v, Norm p);

/// Matrices M with (M s)_i ~ int_a^b K(x_i, t) s(t) dt for samples s.
Eigen::MatrixXd green_matrix(const CompositeQuadrature& quad, KernelRule rule = KernelRule::Corrected);
Eigen::MatrixXd green_x_matrix(const CompositeQuadrature& quad, KernelRule rule = KernelRule::Corrected);
Eigen::MatrixXd green_t_matrix(const CompositeQuadrature& quad, KernelRule rule = KernelRule::Corrected);

/// Unweighted Nystrom matrix of the integral operator K (without the identity).
Eigen::MatrixXd kernel_matrix(Formulation formulation, const CoefficientProfile& profile,
                              const CompositeQuadrature& quad, KernelRule rule = KernelRule::Corrected);

/// I + W^(1/p) K W^(-1/p).
Eigen::MatrixXd assemble_operator(Formulation formulation, const CoefficientProfile& profile,
                                  const CompositeQuadrature& quad, Norm p,
                                  KernelRule rule = KernelRule::Corrected);

/// Unweighted right-hand side: f/eps for Sigma, (1/eps) int G f for U.
Eigen::VectorXd right_hand_side(Formulation formulation, const CoefficientProfile& profile,
                                const CompositeQuadrature& quad, const Eigen::VectorXd& f_samples,
                                KernelRule rule = KernelRule::Corrected);

struct DiscreteSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  Formulation formulation = Formulation::Sigma;
  Norm p = Norm::L2;
  KernelRule rule = KernelRule::Corrected;
  std::shared_ptr<const CompositeQuadrature> quad;
  std::shared_ptr<const CoefficientProfile> profile;
  Eigen::VectorXd scale;  // w_i^(1/p)

  Eigen::Index size() const { return rhs.size(); }
  Eigen::VectorXd unweight(const Eigen::VectorXd& y) const { return y.cwiseQuotient(scale); }
};

DiscreteSystem assemble_system(Formulation formulation, const CoefficientProfile& profile,
                               const CompositeQuadrature& quad, Norm p, const Eigen::VectorXd& f_samples,
                               KernelRule rule = KernelRule::Corrected);

/// u(x) = int G(x, t) sigma(t) dt and its x-derivative, for unweighted node values of sigma.
GreenPair potential_eval(const Eigen::VectorXd& sigma, const CompositeQuadrature& quad, double x,
                         KernelRule rule = KernelRule::Corrected);

}  // namespace npie
