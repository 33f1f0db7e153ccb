#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "npie/experiments.hpp"
#include "npie/operators.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace npie;

namespace {

// int_lo^hi of a polynomial, from its antiderivative
double poly_integral(const oracle::Polynomial& p, double lo, double hi) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.c.size(); ++k)
    s += p.c[k] * (std::pow(hi, double(k + 1)) - std::pow(lo, double(k + 1))) / double(k + 1);
  return s;
}

// int_a^b G_x(x,t) g(t) dt = int_a^b (t-b)/L g + int_a^x g
double gx_poly(const oracle::Polynomial& g, double a, double b, double x) {
  oracle::Polynomial tg{{}};
  tg.c.assign(g.c.size() + 1, 0.0);
  for (std::size_t k = 0; k < g.c.size(); ++k) {
    tg.c[k + 1] += g.c[k];
    tg.c[k] -= b * g.c[k];
  }
  return poly_integral(tg, a, b) / (b - a) + poly_integral(g, a, x);
}

// int_a^b G(x,t) g(t) dt = (x-a)/L int (t-b) g + int_a^x (x-t) g
double g_poly(const oracle::Polynomial& g, double a, double b, double x) {
  oracle::Polynomial tg, xg;
  tg.c.assign(g.c.size() + 1, 0.0);
  xg.c.assign(g.c.size() + 1, 0.0);
  for (std::size_t k = 0; k < g.c.size(); ++k) {
    tg.c[k + 1] += g.c[k];
    tg.c[k] -= b * g.c[k];
    xg.c[k] += x * g.c[k];
    xg.c[k + 1] -= g.c[k];
  }
  return (x - a) / (b - a) * poly_integral(tg, a, b) + poly_integral(xg, a, x);
}

CoefficientProfile linear_eps() {
  return CoefficientProfile::analytic([](double x) { return CoefficientValue{1.0 + x, 1.0}; }, {0.0, 1.0});
}

}  // namespace

TEST_CASE("Green's function values", "[operators]") {
  const Interval unit{0.0, 1.0};
  CHECK(green_pair(0.0, 0.5, unit).g == 0.0);
  const auto below = green_pair(0.25, 0.5, unit);
  CHECK(below.g == Approx(-0.125));
  CHECK(below.g_x == Approx(-0.5));
  const auto above = green_pair(0.5, 0.25, unit);
  CHECK(above.g == Approx(-0.125));
  CHECK(above.g_x == Approx(0.25));
  CHECK(green_pair(0.3, 0.8, unit).g == Approx(green_pair(0.8, 0.3, unit).g));
  CHECK(green_pair(0.4, 0.4, unit).g_x == Approx(0.4));
  CHECK(green_t(0.25, 0.5, unit) == Approx(0.25));
  CHECK(green_t(0.5, 0.25, unit) == Approx(-0.5));
}

TEST_CASE("phi map preserves norms", "[operators]") {
  const auto q = uniform_mesh({0.0, 1.0}, 3, 16);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(q.size());
  CHECK(phi_map(ones, q, Norm::L2).norm() == Approx(1.0).epsilon(1e-14));
  CHECK(phi_map(ones, q, Norm::L1).norm() == Approx(1.0).epsilon(1e-14));
  CHECK(phi_map(ones, q, Norm::Inf).norm() == 1.0);

  std::mt19937_64 rng(5);
  const auto f = oracle::random_polynomial(rng, 7);
  Eigen::VectorXd s(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) s[i] = f(q.nodes()[i]);
  oracle::Polynomial sq;
  sq.c.assign(15, 0.0);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) sq.c[i + j] += f.c[i] * f.c[j];
  CHECK(phi_map(s, q, Norm::L2).norm() == Approx(std::sqrt(poly_integral(sq, 0.0, 1.0))).epsilon(1e-12));

  const auto v = phi_map(s, q, Norm::L2);
  CHECK((phi_map(v.unweight(), q, Norm::L2).entries - v.entries).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((v.unweight() - s).cwiseAbs().maxCoeff() <= 1e-15 * s.cwiseAbs().maxCoeff());
}

TEST_CASE("constant coefficient gives the identity", "[operators]") {
  const auto eps = make_profile(2.5, {}, {0.0, 1.0});
  const auto q = refine_adaptive(eps);
  const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(q.size(), 1.0, 2.0);
  for (auto form : {Formulation::Sigma, Formulation::U})
    for (auto p : {Norm::L1, Norm::L2, Norm::Inf})
      for (auto rule : {KernelRule::Corrected, KernelRule::Plain}) {
        const auto sys = assemble_system(form, eps, q, p, f, rule);
        CHECK((sys.matrix - Eigen::MatrixXd::Identity(q.size(), q.size())).cwiseAbs().maxCoeff() <= 1e-15);
      }
}

TEST_CASE("hand-computed entries with the sampled kernel", "[operators]") {
  // midpoints 0.25 and 0.75 with weights 0.5
  const auto q = uniform_mesh({0.0, 1.0}, 2, 1);
  REQUIRE(q.nodes()[0] == 0.25);
  REQUIRE(q.weights()[0] == 0.5);
  const auto sys = assemble_system(Formulation::Sigma, linear_eps(), q, Norm::L2, Eigen::VectorXd::Ones(2), KernelRule::Plain);
  CHECK(sys.matrix(0, 1) == Approx(-0.1).epsilon(1e-14));
  CHECK(sys.matrix(0, 0) == Approx(1.1).epsilon(1e-14));
  CHECK(sys.rhs[0] == Approx(std::sqrt(0.5) / 1.25));
  // diagonal minus one is the kernel term on the x >= t branch
  CHECK(sys.matrix(1, 1) - 1.0 == Approx(1.0 / 1.75 * 0.75 * 0.5));
}

TEST_CASE("uniform weights make the system independent of p", "[operators]") {
  const auto eps = tanh_layer_profile(50.0);
  const auto q = uniform_mesh(eps.domain(), 256, 1);
  for (auto form : {Formulation::Sigma, Formulation::U}) {
    const auto a1 = assemble_operator(form, eps, q, Norm::L1, KernelRule::Plain);
    const auto a2 = assemble_operator(form, eps, q, Norm::L2, KernelRule::Plain);
    const auto ai = assemble_operator(form, eps, q, Norm::Inf, KernelRule::Plain);
    CHECK((a1 - ai).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((a2 - ai).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("adaptive meshes make the system depend on p", "[operators]") {
  const auto eps = tanh_layer_profile(1000.0);
  const auto q = refine_adaptive(eps);
  const double c1 = cond_p(assemble_operator(Formulation::Sigma, eps, q, Norm::L1), Norm::L2);
  const double ci = cond_p(assemble_operator(Formulation::Sigma, eps, q, Norm::Inf), Norm::L2);
  CHECK(std::max(c1, ci) / std::min(c1, ci) > 10.0);
}

TEST_CASE("kernel matrices integrate polynomials exactly", "[operators]") {
  std::mt19937_64 rng(17);
  const auto q = refine_adaptive(tanh_layer_profile(300.0, 0.8));
  const double a = 0.0, b = 2.0;
  const auto g = oracle::random_polynomial(rng, 6);
  Eigen::VectorXd s(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) s[i] = g(q.nodes()[i]);
  const Eigen::VectorXd gx = green_x_matrix(q) * s;
  const Eigen::VectorXd gt = green_t_matrix(q) * s;
  const Eigen::VectorXd gg = green_matrix(q) * s;
  double ex = 0, et = 0, eg = 0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    const double x = q.nodes()[i];
    const double want_x = gx_poly(g, a, b, x);
    // G_t(x,t) = (x-b)/L + H(t-x)
    const double want_t = (x - b) / (b - a) * poly_integral(g, a, b) + poly_integral(g, x, b);
    ex = std::max(ex, std::abs(gx[i] - want_x));
    et = std::max(et, std::abs(gt[i] - want_t));
    eg = std::max(eg, std::abs(gg[i] - g_poly(g, a, b, x)));
  }
  CHECK(ex < 1e-13);
  CHECK(et < 1e-13);
  CHECK(eg < 1e-13);

  // the sampled kernel is only first-order accurate
  const Eigen::VectorXd plain = green_x_matrix(q, KernelRule::Plain) * s;
  double ep = 0;
  for (Eigen::Index i = 0; i < q.size(); ++i) ep = std::max(ep, std::abs(plain[i] - gx_poly(g, a, b, q.nodes()[i])));
  CHECK(ep > 1e-8);
}

TEST_CASE("doubling the panel order barely moves the discrete operator", "[operators]") {
  const auto eps = tanh_layer_profile(400.0);
  RefinementOptions o16, o32;
  o32.order = 32;
  const auto q16 = refine_adaptive(eps, o16);
  const auto q32 = refine_adaptive(eps, o32);
  // compare (K g)(x) at the order-16 nodes, interpolating the order-32 result
  const auto apply = [&](const CompositeQuadrature& q) {
    Eigen::VectorXd s(q.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) s[i] = std::cos(3.0 * q.nodes()[i]);
    return Eigen::VectorXd(kernel_matrix(Formulation::Sigma, eps, q) * s);
  };
  const auto k16 = apply(q16), k32 = apply(q32);
  double worst = 0;
  for (Eigen::Index i = 0; i < q16.size(); ++i)
    worst = std::max(worst, std::abs(k16[i] - interpolate_on_panel(q32, k32, q16.nodes()[i])));
  CHECK(worst < 1e-11);
}

TEST_CASE("weighted operator preserves the continuous p-norm", "[operators]") {
  std::mt19937_64 rng(23);
  const auto eps = tanh_layer_profile(100.0);
  const auto q = refine_adaptive(eps);
  std::vector<double> cuts{0.0};
  for (const auto& p : q.panels()) cuts.push_back(p.hi);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = oracle::random_polynomial(rng, 5);
    const auto image = [&](double x) {
      const double ratio = oracle::single_layer_dx(100.0, 1.0, x) / oracle::single_layer(100.0, 1.0, x);
      return g(x) + ratio * gx_poly(g, 0.0, 2.0, x);
    };
    const double want = std::sqrt(oracle::piecewise_simpson([&](double x) { return image(x) * image(x); }, cuts, 1e-14));
    Eigen::VectorXd s(q.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) s[i] = g(q.nodes()[i]);
    const Eigen::VectorXd got = assemble_operator(Formulation::Sigma, eps, q, Norm::L2) * phi_map(s, q, Norm::L2).entries;
    CHECK(got.norm() == Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("sampled kernels are dual off the diagonal", "[operators]") {
  const auto eps = tanh_layer_profile(200.0);
  const auto q = refine_adaptive(eps);
  Eigen::VectorXd e(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) e[i] = eps(q.nodes()[i]).value;
  const auto a2 = assemble_operator(Formulation::U, eps, q, Norm::L2, KernelRule::Plain);
  const auto a1 = assemble_operator(Formulation::Sigma, eps, q, Norm::L2, KernelRule::Plain);
  Eigen::MatrixXd dual = e.cwiseInverse().asDiagonal() * a1.transpose() * e.asDiagonal();
  dual.diagonal() = a2.diagonal();
  CHECK((dual - a2).cwiseAbs().maxCoeff() <= 1e-12 * a2.cwiseAbs().maxCoeff());
}

TEST_CASE("potential of a unit density", "[operators]") {
  const auto q = uniform_mesh({0.0, 1.0}, 2, 16);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(q.size());
  for (auto rule : {KernelRule::Corrected, KernelRule::Plain}) {
    CHECK(std::abs(potential_eval(one, q, 0.0, rule).g) < 1e-13);
    CHECK(std::abs(potential_eval(one, q, 1.0, rule).g) < 1e-13);
    CHECK(potential_eval(one, q, 0.0, rule).g_x == Approx(-0.5).epsilon(1e-13));
  }
  CHECK(potential_eval(one, q, 0.5).g == Approx(-0.125).epsilon(1e-14));
  for (double x : {0.1, 0.37, 0.5, 0.93})
    CHECK(potential_eval(one, q, x).g == Approx(0.5 * x * (x - 1.0)).epsilon(1e-13));
}

TEST_CASE("domain mismatch is rejected", "[operators]") {
  const auto eps = tanh_layer_profile(100.0);
  const auto q = uniform_mesh({0.0, 1.0}, 2, 16);
  CHECK_THROWS_AS(assemble_system(Formulation::Sigma, eps, q, Norm::L1, Eigen::VectorXd::Ones(q.size())), Error);
  const auto q2 = refine_adaptive(eps);
  CHECK_THROWS_AS(assemble_system(Formulation::Sigma, eps, q2, Norm::L1, Eigen::VectorXd::Ones(3)), Error);
}
