#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "npie/experiments.hpp"
#include "npie/mesh.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace npie;

namespace {
void check_partition(const CompositeQuadrature& q) {
  const auto& panels = q.panels();
  REQUIRE(!panels.empty());
  CHECK(panels.front().lo == q.domain().lo);
  CHECK(panels.back().hi == q.domain().hi);
  for (std::size_t k = 1; k < panels.size(); ++k) CHECK(panels[k].lo == panels[k - 1].hi);
  CHECK((q.weights().array() > 0.0).all());
  CHECK(std::abs(q.weights().sum() - q.domain().length()) <= 1e-13 * q.domain().length());
  for (Eigen::Index i = 1; i < q.size(); ++i) CHECK(q.nodes()[i] > q.nodes()[i - 1]);
}
}  // namespace

TEST_CASE("constant profile needs one panel", "[mesh]") {
  const auto q = refine_adaptive(make_profile(3.0, {}, {0.0, 1.0}), 16, 1e-15);
  CHECK(q.panel_count() == 1);
  CHECK(q.size() == 16);
  check_partition(q);
}

TEST_CASE("single layer mesh is graded and small", "[mesh]") {
  const auto eps = tanh_layer_profile(500.0);
  const auto q = refine_adaptive(eps);
  check_partition(q);
  CHECK(q.min_panel_width() <= 16.0 / 500.0);
  CHECK(q.panel_count() <= 64);

  const double simpson = oracle::adaptive_simpson([](double x) { return oracle::single_layer(500.0, 1.0, x); }, 0.0, 2.0, 1e-13);
  const double mesh = q.integrate_at_nodes([&](double x) { return eps(x).value; });
  CHECK(std::abs(mesh - simpson) <= 1e-11 * std::abs(simpson));
}

TEST_CASE("partition invariants for the built-in profiles", "[mesh]") {
  for (const auto& eps : {tanh_layer_profile(100.0), tanh_layer_profile(3000.0), double_hill(), double_well()}) {
    check_partition(refine_adaptive(eps));
  }
}

TEST_CASE("refinement criteria hold on every panel", "[mesh]") {
  const auto eps = tanh_layer_profile(2000.0, 0.77);
  RefinementOptions opts;
  const auto q = refine_adaptive(eps, opts);
  const auto& ref = reference_rule(16);
  const auto rule = [&](auto f, double lo, double hi) {
    const auto s = scale_rule(ref, Interval{lo, hi});
    return s.integrate(f);
  };
  const auto val = [&](double x) { return eps(x).value; };
  const auto der = [&](double x) { return eps(x).derivative; };
  for (const auto& p : q.panels()) {
    const double m = p.midpoint();
    CHECK(std::abs(rule(val, p.lo, p.hi) - rule(val, p.lo, m) - rule(val, m, p.hi)) <= 1e-15 * (1 + eps.abs_integral()));
    CHECK(std::abs(rule(der, p.lo, p.hi) - rule(der, p.lo, m) - rule(der, m, p.hi)) <=
          1e-15 * (1 + eps.total_variation()));
  }
}

TEST_CASE("a layer centered on a dyadic point is still found", "[mesh]") {
  for (double d : {6400.0, 12800.0}) {
    const auto eps = tanh_layer_profile(d);
    const auto q = refine_adaptive(eps);
    CHECK(q.panel_count() > 4);
    CHECK(q.min_panel_width() < 16.0 / d);
  }
}

TEST_CASE("value-only refinement", "[mesh]") {
  RefinementOptions opts;
  opts.criterion = RefinementCriterion::ValueOnly;
  const auto loose = refine_adaptive(tanh_layer_profile(500.0, 0.7), opts);
  const auto full = refine_adaptive(tanh_layer_profile(500.0, 0.7));
  CHECK(loose.panel_count() <= full.panel_count());
  check_partition(loose);
}

TEST_CASE("refinement is idempotent", "[mesh]") {
  const auto eps = double_hill();
  const auto a = refine_adaptive(eps);
  const auto b = refine_adaptive(eps);
  REQUIRE(a.panel_count() == b.panel_count());
  for (std::size_t k = 0; k < a.panel_count(); ++k) CHECK(a.panel(k) == b.panel(k));
}

TEST_CASE("panel count grows logarithmically", "[mesh]") {
  std::vector<double> logd, counts;
  for (double d = 100.0; d <= 10000.0; d *= 1.5) {
    logd.push_back(std::log(d));
    counts.push_back(static_cast<double>(refine_adaptive(tanh_layer_profile(d, 0.9)).panel_count()));
  }
  // slope of count against log delta
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < logd.size(); ++i) mx += logd[i], my += counts[i];
  mx /= logd.size();
  my /= counts.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < logd.size(); ++i) sxy += (logd[i] - mx) * (counts[i] - my), sxx += (logd[i] - mx) * (logd[i] - mx);
  CHECK(sxy / sxx <= 12.0);
}

TEST_CASE("depth cap is reported with the panel", "[mesh]") {
  RefinementOptions opts;
  opts.max_depth = 3;
  try {
    refine_adaptive(tanh_layer_profile(5000.0), opts);
    FAIL("expected a refinement error");
  } catch (const RefinementError& e) {
    CHECK(std::string(e.what()).find("panel [") != std::string::npos);
  }
  CHECK_THROWS_AS(refine_adaptive(tanh_layer_profile(100.0), 1, 1e-15), Error);
  CHECK_THROWS_AS(refine_adaptive(tanh_layer_profile(100.0), 16, 0.0), Error);
}

TEST_CASE("panel lookup at shared endpoints", "[mesh]") {
  const auto q = uniform_mesh({0.0, 1.0}, 4, 16);
  CHECK(q.locate_panel(0.0) == 0);
  CHECK(q.locate_panel(0.25) == 1);
  CHECK(q.locate_panel(0.5) == 2);
  CHECK(q.locate_panel(0.6) == 2);
  CHECK(q.locate_panel(1.0) == 3);
  CHECK_THROWS_AS(q.locate_panel(1.01), Error);
}

TEST_CASE("barycentric interpolation", "[mesh]") {
  const auto q = uniform_mesh({0.0, 1.0}, 4, 16);
  Eigen::VectorXd s(q.size());

  std::mt19937_64 rng(3);
  const auto poly = oracle::random_polynomial(rng, 15);
  for (Eigen::Index i = 0; i < q.size(); ++i) s[i] = poly(q.nodes()[i]);
  for (double x : {0.0, 0.13, 0.25, 0.61, 0.9999, 1.0})
    CHECK(interpolate_on_panel(q, s, x) == Approx(poly(x)).epsilon(1e-12).margin(1e-13));
  for (Eigen::Index i = 0; i < q.size(); i += 5) CHECK(interpolate_on_panel(q, s, q.nodes()[i]) == s[i]);

  for (Eigen::Index i = 0; i < q.size(); ++i) s[i] = std::sin(std::numbers::pi * q.nodes()[i]);
  double worst = 0.0;
  for (double x = 0.0; x <= 1.0; x += 0.0037)
    worst = std::max(worst, std::abs(interpolate_on_panel(q, s, x) - std::sin(std::numbers::pi * x)));
  CHECK(worst < 1e-14);
}

TEST_CASE("spectral integration and differentiation", "[mesh]") {
  const auto q = uniform_mesh({0.0, 2.0}, 3, 16);
  Eigen::VectorXd s(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) s[i] = std::cos(q.nodes()[i]);
  const auto running = cumulative_integral(q, s);
  const auto slope = panel_derivative(q, s);
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    CHECK(running[i] == Approx(std::sin(q.nodes()[i])).margin(1e-14));
    CHECK(slope[i] == Approx(-std::sin(q.nodes()[i])).margin(1e-11));
  }
  const auto& ref = reference_panel(16);
  CHECK(ref.integration_row(1.0).sum() == Approx(2.0).epsilon(1e-14));
  CHECK(ref.moment_row(1.0).sum() == Approx(2.0).epsilon(1e-14));
  CHECK(ref.integration_row(-1.0).norm() == 0.0);
}

TEST_CASE("integrate_function honours breakpoints", "[mesh]") {
  const auto q = uniform_mesh({0.0, 1.0}, 2, 16);
  const auto step = [](double x) { return x < 0.3 ? 1.0 : 0.0; };
  CHECK(integrate_function(q, step, 0.0, 1.0, {0.3}) == Approx(0.3).epsilon(1e-14));
  CHECK(integrate_function(q, [](double x) { return x; }, 1.0, 0.0) == Approx(-0.5));
}

TEST_CASE("split mesh keeps the domain", "[mesh]") {
  const auto q = uniform_mesh({0.0, 1.0}, 2, 8);
  const auto s = split_mesh(q, {0.2, 0.5, 1.0, 3.0});
  CHECK(s.panel_count() == 3);
  check_partition(s);
}
