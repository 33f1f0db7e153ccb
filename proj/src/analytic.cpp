#include "npie/analytic.hpp"

#include <cmath>

#include "npie/quadrature.hpp"

namespace npie {

namespace {

constexpr int kOracleOrder = 24;

template <typename F>
double gauss(F&& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const auto& rule = reference_rule(kOracleOrder);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return h * sum;
}

}  // namespace

RunningIntegral::RunningIntegral(ScalarFunction f, const CompositeQuadrature& quad)
    : f_(std::move(f)), panels_(quad.panels()) {
  starts_.reserve(panels_.size() + 1);
  starts_.push_back(0.0);
  for (const auto& p : panels_) starts_.push_back(starts_.back() + gauss(f_, p.lo, p.hi));
}

double RunningIntegral::operator()(double x) const {
  if (x <= panels_.front().lo) return 0.0;
  if (x >= panels_.back().hi) return total();
  auto it = std::upper_bound(panels_.begin(), panels_.end(), x, [](double v, const Interval& p) { return v < p.lo; });
  const auto k = static_cast<std::size_t>(std::distance(panels_.begin(), it)) - 1;
  return starts_[k] + gauss(f_, panels_[k].lo, x);
}

ClosedFormSolution::ClosedFormSolution(const CoefficientProfile& profile, ScalarFunction f,
                                       const CompositeQuadrature& quad, double gamma_a, double gamma_b)
    : profile_(profile), f_(std::move(f)), quad_(quad), gamma_a_(gamma_a), gamma_b_(gamma_b) {
  if (!(profile.domain() == quad.domain())) throw Error("ClosedFormSolution: mesh and coefficient domains differ");
  starts_.resize(quad_.panel_count() + 1);
  for (std::size_t k = 0; k < quad_.panel_count(); ++k) {
    const Partial p = partial(k, quad_.panel(k).hi);
    starts_[k + 1] = {starts_[k].f_int + p.f_int, starts_[k].inv + p.inv, starts_[k].f_over + p.f_over};
  }
  inverse_total_ = starts_.back().inv;
  flux_ = (gamma_b_ - gamma_a_ - starts_.back().f_over) / inverse_total_;
}

ClosedFormSolution::Partial ClosedFormSolution::partial(std::size_t k, double x) const {
  const double lo = quad_.panel(k).lo;
  Partial out;
  out.f_int = gauss(f_, lo, x);
  out.inv = gauss([&](double t) { return 1.0 / profile_(t).value; }, lo, x);
  out.f_over = gauss(
      [&](double t) { return (starts_[k].f_int + gauss(f_, lo, t)) / profile_(t).value; }, lo, x);
  return out;
}

ClosedFormSolution::Value ClosedFormSolution::operator()(double x) const {
  const std::size_t k = quad_.locate_panel(x);
  const Partial p = partial(k, x);
  const double f_int = starts_[k].f_int + p.f_int;
  const double inv = starts_[k].inv + p.inv;
  const double f_over = starts_[k].f_over + p.f_over;
  const auto c = profile_(x);
  Value v;
  v.u_x = (f_int + flux_) / c.value;
  v.u = gamma_a_ + f_over + flux_ * inv;
  v.sigma = (f_(x) - c.derivative * v.u_x) / c.value;
  return v;
}

ClosedFormSolution::NodeValues ClosedFormSolution::at_nodes() const {
  const Eigen::Index n = quad_.size();
  NodeValues out{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto v = (*this)(quad_.nodes()[i]);
    out.u[i] = v.u;
    out.u_x[i] = v.u_x;
    out.sigma[i] = v.sigma;
  }
  return out;
}

Resolvent::Resolvent(const CoefficientProfile& profile, const CompositeQuadrature& quad)
    : profile_(profile), inverse_([profile](double t) { return 1.0 / profile(t).value; }, quad) {
  if (!(profile.domain() == quad.domain())) throw Error("Resolvent: mesh and coefficient domains differ");
}

double Resolvent::operator()(Formulation formulation, double x, double t) const {
  const double heaviside = x >= t ? 1.0 : 0.0;
  const double total = inverse_.total();
  if (formulation == Formulation::Sigma) {
    const auto cx = profile_(x);
    const double et = profile_(t).value;
    const double tail = total - inverse_(t);
    return cx.derivative / (cx.value * cx.value) * (heaviside * et - et * tail / total);
  }
  const auto ct = profile_(t);
  return -ct.derivative / (ct.value * ct.value) * (heaviside * ct.value - ct.value * inverse_(x) / total);
}

double resolvent_kernel(Formulation formulation, const CoefficientProfile& profile, const CompositeQuadrature& quad,
                        double x, double t) {
  return Resolvent(profile, quad)(formulation, x, t);
}

double resolvent_kernel(Formulation formulation, const CoefficientProfile& profile, double x, double t) {
  return resolvent_kernel(formulation, profile, refine_adaptive(profile), x, t);
}

Eigen::VectorXd apply_inverse(Formulation formulation, const CoefficientProfile& profile,
                              const Eigen::VectorXd& g, const CompositeQuadrature& quad) {
  if (!(profile.domain() == quad.domain())) throw Error("apply_inverse: mesh and coefficient domains differ");
  if (g.size() != quad.size()) throw Error("apply_inverse: sample count does not match the mesh");
  const Eigen::Index n = quad.size();
  Eigen::VectorXd eps(n), eps_x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = profile(quad.nodes()[i]);
    eps[i] = c.value;
    eps_x[i] = c.derivative;
  }
  const Eigen::VectorXd inv = eps.cwiseInverse();
  const Eigen::VectorXd inv_running = cumulative_integral(quad, inv);
  const double total = quad.integrate(inv);

  if (formulation == Formulation::Sigma) {
    // g - (eps_x/eps^2)(x) [int_a^x eps g - (1/I) int_a^b eps(t) g(t) int_t^b 1/eps]
    const Eigen::VectorXd eg = eps.cwiseProduct(g);
    const Eigen::VectorXd head = cumulative_integral(quad, eg);
    const Eigen::VectorXd tail = (total - inv_running.array()).matrix();
    const double coupled = quad.integrate(eg.cwiseProduct(tail)) / total;
    return g - eps_x.cwiseProduct(inv).cwiseProduct(inv).cwiseProduct((head.array() - coupled).matrix());
  }
  // g + int_a^x (eps_x/eps) g - (int_a^b (eps_x/eps) g / I) int_a^x 1/eps
  const Eigen::VectorXd rg = eps_x.cwiseProduct(inv).cwiseProduct(g);
  return g + cumulative_integral(quad, rg) - (quad.integrate(rg) / total) * inv_running;
}

}  // namespace npie
