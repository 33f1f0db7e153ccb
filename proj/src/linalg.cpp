#include "npie/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace npie {

double matrix_norm(const Eigen::MatrixXd& a, Norm p) {
  switch (p) {
    case Norm::L1: return a.cwiseAbs().colwise().sum().maxCoeff();
    case Norm::L2: return singular_range(a).max;
    case Norm::Inf: return a.cwiseAbs().rowwise().sum().maxCoeff();
  }
  return 0.0;
}

DenseLU::DenseLU(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw Error("DenseLU: matrix must be square and non-empty");
  if (!a.allFinite()) throw Error("DenseLU: matrix has non-finite entries");
  lu_.compute(a);
  const double pivot = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
  const double scale = matrix_norm(a, Norm::L1);
  if (!(pivot >= 1e-14 * scale)) {
    std::ostringstream msg;
    msg << "matrix is singular to working precision (pivot " << pivot << ", norm " << scale << ")";
    throw SingularMatrixError(msg.str());
  }
}

SingularRange singular_range(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) throw Error("singular_range: empty matrix");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  return {s[0], s[s.size() - 1]};
}

double cond_p(const Eigen::MatrixXd& a, Norm p) {
  if (p == Norm::L2) {
    const auto s = singular_range(a);
    if (!(s.min >= 1e-14 * s.max)) throw SingularMatrixError("matrix is singular to working precision");
    return s.max / s.min;
  }
  const DenseLU lu(a);
  const Eigen::MatrixXd inv = lu.inverse();
  return matrix_norm(a, p) * matrix_norm(inv, p);
}

Conditioning condition_numbers(const Eigen::MatrixXd& a) {
  const DenseLU lu(a);
  const Eigen::MatrixXd inv = lu.inverse();
  const auto s = singular_range(a);
  return {matrix_norm(a, Norm::L1) * matrix_norm(inv, Norm::L1), s.max / s.min,
          matrix_norm(a, Norm::Inf) * matrix_norm(inv, Norm::Inf)};
}

GmresTrace gmres(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol, int max_iter) {
  const Eigen::Index n = b.size();
  if (a.rows() != n || a.cols() != n) throw Error("gmres: dimension mismatch");
  if (max_iter <= 0) max_iter = static_cast<int>(std::min<Eigen::Index>(n, 400));
  const double bnorm = b.norm();
  if (!(bnorm > 0.0)) throw Error("gmres: right-hand side is zero");

  GmresTrace trace;
  trace.x = Eigen::VectorXd::Zero(n);
  trace.residuals.push_back(1.0);
  trace.true_residuals.push_back(1.0);

  const int m = max_iter;
  Eigen::MatrixXd v(n, m + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m);
  Eigen::VectorXd cs(m), sn(m), g = Eigen::VectorXd::Zero(m + 1);
  v.col(0) = b / bnorm;
  g[0] = bnorm;

  const auto solution = [&](int k) {
    Eigen::VectorXd y = h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    return Eigen::VectorXd(v.leftCols(k) * y);
  };

  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd w = a * v.col(k);
    for (int j = 0; j <= k; ++j) {
      h(j, k) = v.col(j).dot(w);
      w -= h(j, k) * v.col(j);
    }
    const double next = w.norm();
    h(k + 1, k) = next;
    const bool broke = next < 1e-15 * bnorm;
    if (!broke) v.col(k + 1) = w / next;

    for (int j = 0; j < k; ++j) {
      const double t = cs[j] * h(j, k) + sn[j] * h(j + 1, k);
      h(j + 1, k) = -sn[j] * h(j, k) + cs[j] * h(j + 1, k);
      h(j, k) = t;
    }
    const double r = std::hypot(h(k, k), h(k + 1, k));
    cs[k] = r > 0.0 ? h(k, k) / r : 1.0;
    sn[k] = r > 0.0 ? h(k + 1, k) / r : 0.0;
    h(k, k) = r;
    h(k + 1, k) = 0.0;
    g[k + 1] = -sn[k] * g[k];
    g[k] = cs[k] * g[k];

    trace.iterations = k + 1;
    trace.x = solution(k + 1);
    trace.residuals.push_back(std::abs(g[k + 1]) / bnorm);
    const double true_res = (b - a * trace.x).norm() / bnorm;
    trace.true_residuals.push_back(true_res);
    if (true_res <= tol) {
      trace.converged = true;
      break;
    }
    if (broke) {
      trace.breakdown = true;
      trace.converged = true;
      break;
    }
  }
  return trace;
}

}  // namespace npie
