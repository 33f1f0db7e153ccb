#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <utility>

#include "npie/types.hpp"

namespace npie {

/// Interpolatory rule on [lo, hi]: nodes ascending, weights positive.
template <typename Scalar = double>
struct QuadratureRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector nodes;
  Vector weights;
  Scalar lo = Scalar(-1);
  Scalar hi = Scalar(1);

  Eigen::Index size() const { return nodes.size(); }

  template <typename F>
  Scalar integrate(F&& f) const {
    Scalar sum(0);
    for (Eigen::Index i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

namespace detail {

// P_n(x) and P_n'(x) by the three-term recurrence.
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_with_derivative(int n, Scalar x) {
  Scalar p0(1), p1 = x;
  if (n == 0) return {p0, Scalar(0)};
  for (int k = 2; k <= n; ++k) {
    Scalar pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / Scalar(k);
    p0 = p1;
    p1 = pk;
  }
  Scalar dp = n * (x * p1 - p0) / (x * x - Scalar(1));
  return {p1, dp};
}

}  // namespace detail

/// Gauss-Legendre rule with `order` points on [-1, 1]. Roots are found by
/// Newton's method from the cosine guess and mirrored so the rule is exactly
/// symmetric.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_legendre_rule(int order) {
  if (order < 1) throw Error("gauss_legendre_rule: order must be positive");
  using std::abs;
  using std::cos;

  QuadratureRule<Scalar> rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root
    Scalar x = cos(std::numbers::pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(order) + Scalar(0.5)));
    Scalar dp(1);
    if (order % 2 == 1 && i == half - 1) {
      x = Scalar(0);
      dp = detail::legendre_with_derivative(order, x).second;
    } else {
      for (int it = 0; it < 100; ++it) {
        auto [p, d] = detail::legendre_with_derivative(order, x);
        Scalar dx = p / d;
        x -= dx;
        dp = d;
        if (abs(dx) <= Scalar(1e-15)) break;
      }
      dp = detail::legendre_with_derivative(order, x).second;
    }
    Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    rule.nodes[order - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[order - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

/// Affine image of `rule` on [lo, hi].
template <typename Scalar>
QuadratureRule<Scalar> scale_rule(const QuadratureRule<Scalar>& rule, Scalar lo, Scalar hi) {
  if (!(lo < hi)) throw Error("scale_rule: degenerate target interval");
  const Scalar half_width = (hi - lo) / (rule.hi - rule.lo);
  const Scalar from = (rule.lo + rule.hi) / Scalar(2), to = (lo + hi) / Scalar(2);
  QuadratureRule<Scalar> out;
  out.nodes = ((rule.nodes.array() - from) * half_width + to).matrix();
  out.weights = rule.weights * half_width;
  out.lo = lo;
  out.hi = hi;
  return out;
}

inline QuadratureRule<double> scale_rule(const QuadratureRule<double>& rule, Interval target) {
  return scale_rule<double>(rule, target.lo, target.hi);
}

/// Shared order-n rule on [-1, 1]; computed once per order.
const QuadratureRule<double>& reference_rule(int order);

}  // namespace npie
