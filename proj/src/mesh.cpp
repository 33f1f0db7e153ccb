#include "npie/mesh.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace npie {

CompositeQuadrature::CompositeQuadrature(Interval domain, std::vector<Interval> panels, int order)
    : domain_(domain), panels_(std::move(panels)), order_(order) {
  if (order_ < 1) throw Error("CompositeQuadrature: order must be positive");
  if (panels_.empty()) throw Error("CompositeQuadrature: no panels");
  if (panels_.front().lo != domain_.lo || panels_.back().hi != domain_.hi)
    throw Error("CompositeQuadrature: panels do not cover the domain");
  for (std::size_t k = 0; k < panels_.size(); ++k) {
    if (!(panels_[k].lo < panels_[k].hi)) throw Error("CompositeQuadrature: empty panel");
    if (k > 0 && panels_[k].lo != panels_[k - 1].hi) throw Error("CompositeQuadrature: panels are not contiguous");
  }
  const auto& ref = reference_rule(order_);
  const Eigen::Index n = static_cast<Eigen::Index>(panels_.size()) * order_;
  nodes_.resize(n);
  weights_.resize(n);
  for (std::size_t k = 0; k < panels_.size(); ++k) {
    const auto rule = scale_rule(ref, panels_[k]);
    nodes_.segment(panel_offset(k), order_) = rule.nodes;
    weights_.segment(panel_offset(k), order_) = rule.weights;
  }
}

std::size_t CompositeQuadrature::locate_panel(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream msg;
    msg << "x = " << x << " lies outside [" << domain_.lo << ", " << domain_.hi << "]";
    throw Error(msg.str());
  }
  auto it = std::upper_bound(panels_.begin(), panels_.end(), x,
                             [](double v, const Interval& p) { return v < p.lo; });
  return static_cast<std::size_t>(std::distance(panels_.begin(), it)) - 1;
}

double CompositeQuadrature::min_panel_width() const {
  double w = panels_.front().length();
  for (const auto& p : panels_) w = std::min(w, p.length());
  return w;
}

namespace {

template <typename F>
double panel_rule(const QuadratureRule<double>& ref, F&& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ref.size(); ++i) sum += ref.weights[i] * f(c + h * ref.nodes[i]);
  return h * sum;
}

}  // namespace

CompositeQuadrature refine_adaptive(const CoefficientProfile& profile, const RefinementOptions& opts) {
  if (opts.order < 2) throw Error("refine_adaptive: order must be at least 2");
  if (!(opts.tol > 0.0)) throw Error("refine_adaptive: tol must be positive");

  const auto& ref = reference_rule(opts.order);
  const auto value = [&](double x) { return profile(x).value; };
  const auto slope = [&](double x) { return profile(x).derivative; };
  const double value_tol = opts.tol * (1.0 + profile.abs_integral());
  const double slope_tol = opts.tol * (1.0 + profile.total_variation());
  const bool with_slope = opts.criterion == RefinementCriterion::ValueAndDerivative;
  const auto& panel = reference_panel(opts.order);

  const auto resolved = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double parent = panel_rule(ref, value, lo, hi);
    if (std::abs(parent - panel_rule(ref, value, lo, mid) - panel_rule(ref, value, mid, hi)) > value_tol) return false;
    if (!with_slope) return true;
    const double dparent = panel_rule(ref, slope, lo, hi);
    if (std::abs(dparent - panel_rule(ref, slope, lo, mid) - panel_rule(ref, slope, mid, hi)) > slope_tol) return false;
    if (std::abs(dparent - (value(hi) - value(lo))) > slope_tol) return false;
    // the interpolant must also integrate exactly to the midpoint
    Eigen::VectorXd samples(opts.order);
    for (int j = 0; j < opts.order; ++j) samples[j] = slope(mid + 0.5 * (hi - lo) * panel.nodes[j]);
    const double half = 0.5 * (hi - lo) * panel.integration_row(0.0).dot(samples);
    return std::abs(half - (value(mid) - value(lo))) <= slope_tol;
  };

  struct Pending {
    Interval panel;
    int depth;
  };
  std::vector<Interval> done;
  std::vector<Pending> stack{{profile.domain(), 0}};
  while (!stack.empty()) {
    const auto [p, depth] = stack.back();
    stack.pop_back();
    if (resolved(p.lo, p.hi)) {
      done.push_back(p);
      continue;
    }
    if (depth >= opts.max_depth) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "refine_adaptive: depth cap " << opts.max_depth << " reached on panel [" << p.lo << ", " << p.hi << "]";
      throw RefinementError(msg.str());
    }
    const double mid = p.midpoint();
    stack.push_back({{mid, p.hi}, depth + 1});
    stack.push_back({{p.lo, mid}, depth + 1});
  }
  return CompositeQuadrature(profile.domain(), std::move(done), opts.order);
}

CompositeQuadrature refine_adaptive(const CoefficientProfile& profile, int order, double tol) {
  RefinementOptions opts;
  opts.order = order;
  opts.tol = tol;
  return refine_adaptive(profile, opts);
}

CompositeQuadrature split_mesh(const CompositeQuadrature& quad, const std::vector<double>& cuts) {
  std::vector<double> ends{quad.domain().lo};
  for (const auto& p : quad.panels()) ends.push_back(p.hi);
  for (double c : cuts)
    if (c > quad.domain().lo && c < quad.domain().hi) ends.push_back(c);
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::vector<Interval> parts;
  for (std::size_t k = 0; k + 1 < ends.size(); ++k) parts.push_back({ends[k], ends[k + 1]});
  return CompositeQuadrature(quad.domain(), std::move(parts), quad.order());
}

CompositeQuadrature uniform_mesh(Interval domain, int panels, int order) {
  if (panels < 1) throw Error("uniform_mesh: need at least one panel");
  if (!(domain.lo < domain.hi)) throw Error("uniform_mesh: degenerate domain");
  std::vector<Interval> parts;
  const double h = domain.length() / panels;
  for (int k = 0; k < panels; ++k)
    parts.push_back({k == 0 ? domain.lo : domain.lo + k * h, k + 1 == panels ? domain.hi : domain.lo + (k + 1) * h});
  return CompositeQuadrature(domain, std::move(parts), order);
}

Eigen::RowVectorXd ReferencePanel::lagrange_row(double xi) const {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(order);
  for (int j = 0; j < order; ++j) {
    if (xi == nodes[j]) {
      row[j] = 1.0;
      return row;
    }
  }
  for (int j = 0; j < order; ++j) row[j] = barycentric[j] / (xi - nodes[j]);
  return row / row.sum();
}

Eigen::RowVectorXd ReferencePanel::integration_row(double xi) const {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(order);
  const double h = 0.5 * (xi + 1.0);
  if (h <= 0.0) return row;
  for (int m = 0; m < order; ++m) row += (h * weights[m]) * lagrange_row(-1.0 + h * (1.0 + nodes[m]));
  return row;
}

Eigen::RowVectorXd ReferencePanel::moment_row(double xi) const {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(order);
  const double h = 0.5 * (xi + 1.0);
  if (h <= 0.0) return row;
  for (int m = 0; m < order; ++m) {
    const double t = -1.0 + h * (1.0 + nodes[m]);
    row += (h * weights[m] * (xi - t)) * lagrange_row(t);
  }
  return row;
}

namespace {

std::unique_ptr<ReferencePanel> build_reference_panel(int order) {
  auto ref = std::make_unique<ReferencePanel>();
  const auto& rule = reference_rule(order);
  ref->order = order;
  ref->nodes = rule.nodes;
  ref->weights = rule.weights;
  ref->barycentric.resize(order);
  for (int j = 0; j < order; ++j) {
    double prod = 1.0;
    for (int m = 0; m < order; ++m)
      if (m != j) prod *= (rule.nodes[j] - rule.nodes[m]);
    ref->barycentric[j] = 1.0 / prod;
  }
  ref->barycentric /= ref->barycentric.cwiseAbs().maxCoeff();

  ref->integration.resize(order, order);
  ref->moment.resize(order, order);
  ref->differentiation = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i < order; ++i) {
    ref->integration.row(i) = ref->integration_row(rule.nodes[i]);
    ref->moment.row(i) = ref->moment_row(rule.nodes[i]);
    for (int j = 0; j < order; ++j) {
      if (i == j) continue;
      ref->differentiation(i, j) = ref->barycentric[j] / ref->barycentric[i] / (rule.nodes[i] - rule.nodes[j]);
    }
    ref->differentiation(i, i) = -ref->differentiation.row(i).sum();
  }
  return ref;
}

}  // namespace

const ReferencePanel& reference_panel(int order) {
  if (order < 1) throw Error("reference_panel: order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ReferencePanel>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = build_reference_panel(order);
  return *slot;
}

double interpolate_on_panel(const CompositeQuadrature& quad, const Eigen::VectorXd& samples, double x) {
  if (samples.size() != quad.size()) throw Error("interpolate_on_panel: sample count does not match the mesh");
  const std::size_t k = quad.locate_panel(x);
  const auto& ref = reference_panel(quad.order());
  for (Eigen::Index i = quad.panel_offset(k); i < quad.panel_offset(k) + quad.order(); ++i)
    if (quad.nodes()[i] == x) return samples[i];
  return ref.lagrange_row(to_reference(quad.panel(k), x)).dot(samples.segment(quad.panel_offset(k), quad.order()));
}

Eigen::VectorXd cumulative_integral(const CompositeQuadrature& quad, const Eigen::VectorXd& samples) {
  if (samples.size() != quad.size()) throw Error("cumulative_integral: sample count does not match the mesh");
  const auto& ref = reference_panel(quad.order());
  const int q = quad.order();
  Eigen::VectorXd out(quad.size());
  double base = 0.0;
  for (std::size_t k = 0; k < quad.panel_count(); ++k) {
    const auto seg = samples.segment(quad.panel_offset(k), q);
    const double h = 0.5 * quad.panel(k).length();
    out.segment(quad.panel_offset(k), q) = (base + (h * (ref.integration * seg)).array()).matrix();
    base += quad.weights().segment(quad.panel_offset(k), q).dot(seg);
  }
  return out;
}

Eigen::VectorXd panel_derivative(const CompositeQuadrature& quad, const Eigen::VectorXd& samples) {
  if (samples.size() != quad.size()) throw Error("panel_derivative: sample count does not match the mesh");
  const auto& ref = reference_panel(quad.order());
  const int q = quad.order();
  Eigen::VectorXd out(quad.size());
  for (std::size_t k = 0; k < quad.panel_count(); ++k) {
    const double scale = 2.0 / quad.panel(k).length();
    out.segment(quad.panel_offset(k), q) = scale * (ref.differentiation * samples.segment(quad.panel_offset(k), q));
  }
  return out;
}

}  // namespace npie
