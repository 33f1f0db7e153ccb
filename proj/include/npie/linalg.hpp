#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <vector>

#include "npie/types.hpp"

namespace npie {

/// Max absolute column sum (p = 1), spectral norm (p = 2), max absolute row sum (p = inf).
double matrix_norm(const Eigen::MatrixXd& a, Norm p);

/// LU with partial pivoting that refuses numerically singular input
/// (smallest pivot below 1e-14 ||A||_1).
class DenseLU {
 public:
  explicit DenseLU(const Eigen::MatrixXd& a);

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return lu_.solve(b); }
  Eigen::MatrixXd inverse() const { return lu_.inverse(); }
  const Eigen::PartialPivLU<Eigen::MatrixXd>& factorization() const { return lu_; }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Extreme singular values of a square matrix.
struct SingularRange {
  double max = 0.0;
  double min = 0.0;
};
SingularRange singular_range(const Eigen::MatrixXd& a);

double cond_p(const Eigen::MatrixXd& a, Norm p);

struct Conditioning {
  double cond1 = 0.0;
  double cond2 = 0.0;
  double cond_inf = 0.0;
};

/// All three condition numbers from one factorization and one SVD.
Conditioning condition_numbers(const Eigen::MatrixXd& a);

struct GmresTrace {
  Eigen::VectorXd x;
  std::vector<double> residuals;       // least-squares estimate ||r_k|| / ||b||, k = 0..iterations
  std::vector<double> true_residuals;  // ||b - A x_k|| / ||b||
  bool converged = false;
  bool breakdown = false;
  int iterations = 0;
};

/// Full GMRES from x0 = 0: modified Gram-Schmidt Arnoldi, Givens rotations.
/// Stops once the true relative residual is at most tol, after max_iter
/// steps, or on breakdown (Arnoldi vector below 1e-15 ||b||).
/// max_iter <= 0 means min(n, 400).
GmresTrace gmres(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol, int max_iter = 0);

}  // namespace npie
