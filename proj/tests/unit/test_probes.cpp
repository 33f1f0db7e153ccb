#include "catch_amalgamated.hpp"

#include "npie/experiments.hpp"
#include "npie/operators.hpp"
#include "npie/probes.hpp"

using Catch::Approx;
using namespace npie;

TEST_CASE("constant coefficient probes see the identity", "[probes]") {
  const auto flat = make_profile(2.0, {}, {0.0, 1.0});
  const auto q = refine_adaptive(flat);
  const auto sup = extremal_probe_sup(flat, q);
  CHECK(sup.value == Approx(1.0).epsilon(1e-14));
  CHECK(sup.floor == -1.0);
  for (auto p : {Norm::L1, Norm::L2, Norm::Inf})
    CHECK(extremal_probe_inverse(flat, q, p, 0.5, 0.25).value == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("sup probe sits between the bounds", "[probes]") {
  for (double d : {200.0, 1000.0, 5000.0}) {
    const auto eps = tanh_layer_profile(d);
    const auto q = refine_adaptive(eps);
    const auto r = extremal_probe_sup(eps, q);
    CHECK(r.value >= r.floor);
    CHECK(r.value <= *r.ceiling);
    CHECK(r.location == Approx(1.0).margin(2.0 / d));
    // consistent with the assembled matrix norm
    const auto a = assemble_operator(Formulation::Sigma, eps, q, Norm::Inf);
    CHECK(r.value <= matrix_norm(a, Norm::Inf) * (1 + 1e-3));
  }
}

TEST_CASE("probe ball avoids the layers", "[probes]") {
  const auto b = choose_probe_ball(tanh_layer_profile(100.0));
  CHECK(b.xi == Approx(0.5));
  CHECK(b.c == Approx(0.25));
  const auto h = choose_probe_ball(double_hill());
  CHECK(h.xi == Approx(0.5481));
  CHECK(h.c == Approx(0.25));
  const auto flat = choose_probe_ball(make_profile(1.0, {}, {0.0, 0.4}));
  CHECK(flat.xi == Approx(0.2));
  CHECK(flat.c == Approx(0.1));
}

TEST_CASE("inverse probe beats its floor and grows with steepness", "[probes]") {
  const auto eps = tanh_layer_profile(1000.0);
  const auto q = refine_adaptive(eps);
  for (auto p : {Norm::L1, Norm::L2, Norm::Inf}) {
    const auto r = extremal_probe_inverse(eps, q, p);
    CHECK(r.value >= r.floor);
    CHECK(r.flat_fraction < 1e-6);
    const auto a = assemble_operator(Formulation::Sigma, eps, q, p);
    CHECK(r.value <= matrix_norm(DenseLU(a).inverse(), p) * (1 + 1e-6));
  }
  const auto e200 = tanh_layer_profile(200.0), e2000 = tanh_layer_profile(2000.0);
  CHECK(extremal_probe_inverse(e2000, refine_adaptive(e2000), Norm::L2).value >
        extremal_probe_inverse(e200, refine_adaptive(e200), Norm::L2).value);
}

TEST_CASE("probe ball must fit", "[probes]") {
  const auto eps = tanh_layer_profile(100.0);
  const auto q = refine_adaptive(eps);
  CHECK_THROWS_AS(extremal_probe_inverse(eps, q, Norm::L2, 0.1, 0.2), Error);
  CHECK_THROWS_AS(extremal_probe_inverse(eps, q, Norm::L2, 1.0, 0.0), Error);
  CHECK_THROWS_AS(extremal_probe_sup(eps, q, -1.0), Error);
}
