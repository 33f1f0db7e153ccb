#include "npie/operators.hpp"

#include <cmath>

namespace npie {

GreenPair green_pair(double x, double t, Interval d) {
  const double len = d.length();
  if (x < t) return {(x - d.lo) * (t - d.hi) / len, (t - d.hi) / len};
  return {(x - d.hi) * (t - d.lo) / len, (t - d.lo) / len};
}

double green_t(double x, double t, Interval d) {
  return x < t ? (x - d.lo) / d.length() : (x - d.hi) / d.length();
}

double NormedVector::norm() const { return lp_norm(entries, p); }

double lp_norm(const Eigen::VectorXd& v, Norm p) {
  switch (p) {
    case Norm::L1: return v.lpNorm<1>();
    case Norm::L2: return v.norm();
    case Norm::Inf: return v.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

Eigen::VectorXd phi_scale(const CompositeQuadrature& quad, Norm p) {
  switch (p) {
    case Norm::L1: return quad.weights();
    case Norm::L2: return quad.weights().cwiseSqrt();
    case Norm::Inf: return Eigen::VectorXd::Ones(quad.size());
  }
  return {};
}

NormedVector phi_map(const Eigen::VectorXd& samples, const CompositeQuadrature& quad, Norm p) {
  if (samples.size() != quad.size()) throw Error("phi_map: sample count does not match the mesh");
  NormedVector out;
  out.p = p;
  out.scale = phi_scale(quad, p);
  out.entries = samples.cwiseProduct(out.scale);
  return out;
}

namespace {

enum class Kernel { G, Gx, Gt };

// Every kernel splits as a smooth part plus a Heaviside part:
//   G(x,t)   = (x-a)(t-b)/L + H(x-t)(x-t)
//   G_x(x,t) = (t-b)/L      + H(x-t)
//   G_t(x,t) = (x-b)/L      + H(t-x)
// The smooth part is sampled; the Heaviside part is exact for whole panels and
// uses the spectral integration matrices on the panel holding x_i.
Eigen::MatrixXd corrected_matrix(const CompositeQuadrature& quad, Kernel kernel) {
  const auto& x = quad.nodes();
  const auto& w = quad.weights();
  const double a = quad.domain().lo, b = quad.domain().hi, len = b - a;
  const Eigen::Index n = quad.size();
  const int q = quad.order();
  const auto& ref = reference_panel(q);

  Eigen::MatrixXd m(n, n);
  switch (kernel) {
    case Kernel::G:
      m = ((x.array() - a) / len).matrix() * ((x.array() - b) * w.array()).matrix().transpose();
      break;
    case Kernel::Gx:
      m = Eigen::VectorXd::Ones(n) * ((x.array() - b) / len * w.array()).matrix().transpose();
      break;
    case Kernel::Gt:
      m = ((x.array() - b) / len).matrix() * w.transpose();
      break;
  }

  for (std::size_t k = 0; k < quad.panel_count(); ++k) {
    const Eigen::Index r0 = quad.panel_offset(k);
    const double h = 0.5 * quad.panel(k).length();
    const Eigen::Index left = r0, right = n - r0 - q;
    switch (kernel) {
      case Kernel::G:
        for (Eigen::Index i = r0; i < r0 + q; ++i)
          m.row(i).head(left).array() += (x[i] - x.head(left).array()) * w.head(left).array();
        m.block(r0, r0, q, q) += (h * h) * ref.moment;
        break;
      case Kernel::Gx:
        m.block(r0, 0, q, left).rowwise() += w.head(left).transpose();
        m.block(r0, r0, q, q) += h * ref.integration;
        break;
      case Kernel::Gt:
        m.block(r0, r0 + q, q, right).rowwise() += w.tail(right).transpose();
        m.block(r0, r0, q, q).rowwise() += w.segment(r0, q).transpose();
        m.block(r0, r0, q, q) -= h * ref.integration;
        break;
    }
  }
  return m;
}

Eigen::MatrixXd plain_matrix(const CompositeQuadrature& quad, Kernel kernel) {
  const auto& x = quad.nodes();
  const auto& w = quad.weights();
  const Eigen::Index n = quad.size();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double k = 0.0;
      switch (kernel) {
        case Kernel::G: k = green_pair(x[i], x[j], quad.domain()).g; break;
        case Kernel::Gx: k = green_pair(x[i], x[j], quad.domain()).g_x; break;
        case Kernel::Gt: k = green_t(x[i], x[j], quad.domain()); break;
      }
      m(i, j) = k * w[j];
    }
  }
  return m;
}

Eigen::MatrixXd build(const CompositeQuadrature& quad, Kernel kernel, KernelRule rule) {
  return rule == KernelRule::Corrected ? corrected_matrix(quad, kernel) : plain_matrix(quad, kernel);
}

void check_domains(const CoefficientProfile& profile, const CompositeQuadrature& quad) {
  if (!(profile.domain() == quad.domain())) throw Error("mesh and coefficient are defined on different intervals");
}

}  // namespace

Eigen::MatrixXd green_matrix(const CompositeQuadrature& quad, KernelRule rule) { return build(quad, Kernel::G, rule); }
Eigen::MatrixXd green_x_matrix(const CompositeQuadrature& quad, KernelRule rule) {
  return build(quad, Kernel::Gx, rule);
}
Eigen::MatrixXd green_t_matrix(const CompositeQuadrature& quad, KernelRule rule) {
  return build(quad, Kernel::Gt, rule);
}

Eigen::MatrixXd kernel_matrix(Formulation formulation, const CoefficientProfile& profile,
                              const CompositeQuadrature& quad, KernelRule rule) {
  check_domains(profile, quad);
  const Eigen::Index n = quad.size();
  Eigen::VectorXd eps(n), eps_x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = profile(quad.nodes()[i]);
    eps[i] = c.value;
    eps_x[i] = c.derivative;
  }
  if (formulation == Formulation::Sigma)
    return eps_x.cwiseQuotient(eps).asDiagonal() * green_x_matrix(quad, rule);
  return eps.cwiseInverse().asDiagonal() * green_t_matrix(quad, rule) * eps_x.asDiagonal();
}

Eigen::MatrixXd assemble_operator(Formulation formulation, const CoefficientProfile& profile,
                                  const CompositeQuadrature& quad, Norm p, KernelRule rule) {
  const Eigen::VectorXd s = phi_scale(quad, p);
  Eigen::MatrixXd a = kernel_matrix(formulation, profile, quad, rule);
  if (p != Norm::Inf) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) *= s[i] / s[j];
  }
  a.diagonal().array() += 1.0;
  return a;
}

Eigen::VectorXd right_hand_side(Formulation formulation, const CoefficientProfile& profile,
                                const CompositeQuadrature& quad, const Eigen::VectorXd& f_samples, KernelRule rule) {
  check_domains(profile, quad);
  if (f_samples.size() != quad.size()) throw Error("right-hand side sample count does not match the mesh");
  Eigen::VectorXd eps(quad.size());
  for (Eigen::Index i = 0; i < quad.size(); ++i) eps[i] = profile(quad.nodes()[i]).value;
  if (formulation == Formulation::Sigma) return f_samples.cwiseQuotient(eps);
  return (green_matrix(quad, rule) * f_samples).cwiseQuotient(eps);
}

DiscreteSystem assemble_system(Formulation formulation, const CoefficientProfile& profile,
                               const CompositeQuadrature& quad, Norm p, const Eigen::VectorXd& f_samples,
                               KernelRule rule) {
  DiscreteSystem sys;
  sys.formulation = formulation;
  sys.p = p;
  sys.rule = rule;
  sys.quad = std::make_shared<const CompositeQuadrature>(quad);
  sys.profile = std::make_shared<const CoefficientProfile>(profile);
  sys.scale = phi_scale(quad, p);
  sys.matrix = assemble_operator(formulation, profile, quad, p, rule);
  sys.rhs = right_hand_side(formulation, profile, quad, f_samples, rule).cwiseProduct(sys.scale);
  return sys;
}

GreenPair potential_eval(const Eigen::VectorXd& sigma, const CompositeQuadrature& quad, double x, KernelRule rule) {
  if (sigma.size() != quad.size()) throw Error("potential_eval: sample count does not match the mesh");
  const Interval d = quad.domain();
  const auto& nodes = quad.nodes();
  const auto& w = quad.weights();
  const std::size_t k = quad.locate_panel(x);
  if (rule == KernelRule::Plain) {
    GreenPair out;
    for (Eigen::Index j = 0; j < nodes.size(); ++j) {
      const auto g = green_pair(x, nodes[j], d);
      out.g += g.g * w[j] * sigma[j];
      out.g_x += g.g_x * w[j] * sigma[j];
    }
    return out;
  }
  const double len = d.length();
  const Eigen::VectorXd ws = w.cwiseProduct(sigma);
  const double moment_b = (nodes.array() - d.hi).matrix().dot(ws) / len;
  GreenPair out{(x - d.lo) * moment_b, moment_b};

  const Eigen::Index left = quad.panel_offset(k);
  out.g += (x - nodes.head(left).array()).matrix().dot(ws.head(left));
  out.g_x += ws.head(left).sum();

  const auto& ref = reference_panel(quad.order());
  const double h = 0.5 * quad.panel(k).length();
  const double xi = to_reference(quad.panel(k), x);
  const auto seg = sigma.segment(left, quad.order());
  out.g += h * h * ref.moment_row(xi).dot(seg);
  out.g_x += h * ref.integration_row(xi).dot(seg);
  return out;
}

}  // namespace npie
