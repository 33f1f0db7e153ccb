#include "npie/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "npie/mesh.hpp"

namespace npie {

namespace {

constexpr std::size_t kMinSamples = 1001;
constexpr std::size_t kMaxSamples = 1000000;

std::size_t layer_sample_count(const std::vector<TanhLayer>& layers, Interval domain) {
  double steepest = 0.0;
  for (const auto& layer : layers) steepest = std::max(steepest, std::abs(layer.steepness));
  const double wanted = 10.0 * static_cast<double>(layers.size()) * steepest * domain.length();
  if (!(wanted < static_cast<double>(kMaxSamples))) return kMaxSamples;
  return std::max(kMinSamples, static_cast<std::size_t>(std::ceil(wanted)));
}

void check_domain(Interval domain) {
  if (!(domain.lo < domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi))
    throw Error("coefficient domain must satisfy a < b");
}

}  // namespace

CoefficientValue eval_layers(double base, const std::vector<TanhLayer>& layers, double x) {
  CoefficientValue out{base, 0.0};
  for (const auto& layer : layers) {
    const double z = layer.steepness * (x - layer.center);
    const double e = std::exp(-2.0 * std::abs(z));
    const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    out.value += layer.amplitude * std::tanh(z);
    out.derivative += layer.amplitude * layer.steepness * sech2;
  }
  return out;
}

CoefficientProfile::CoefficientProfile(double base, std::vector<TanhLayer> layers, Interval domain)
    : domain_(domain), base_(base), layers_(std::move(layers)), layer_family_(true) {
  check_domain(domain_);
  for (const auto& layer : layers_) {
    if (!(layer.steepness > 0.0) || !std::isfinite(layer.amplitude) || !std::isfinite(layer.center))
      throw Error("tanh layer needs a finite amplitude and center and a positive steepness");
  }
  eval_ = [base, layers = layers_](double x) { return eval_layers(base, layers, x); };
  sample_bounds(layer_sample_count(layers_, domain_));
}

CoefficientProfile::CoefficientProfile(Evaluator eval, Interval domain, std::size_t samples)
    : eval_(std::move(eval)), domain_(domain) {
  check_domain(domain_);
  sample_bounds(std::clamp(samples, std::size_t{2}, kMaxSamples));
}

CoefficientProfile CoefficientProfile::analytic(Evaluator eval, Interval domain, std::size_t samples) {
  return CoefficientProfile(std::move(eval), domain, samples);
}

void CoefficientProfile::sample_bounds(std::size_t samples) {
  sample_count_ = samples;
  const double h = domain_.length() / static_cast<double>(samples - 1);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double integral = 0.0, variation = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = k + 1 == samples ? domain_.hi : domain_.lo + h * static_cast<double>(k);
    const double v = eval_(x).value;
    if (!std::isfinite(v)) throw Error("coefficient is not finite at x = " + std::to_string(x));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (k > 0) {
      integral += 0.5 * h * (std::abs(prev) + std::abs(v));
      variation += std::abs(v - prev);
    }
    prev = v;
  }
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << "coefficient is not positive on [" << domain_.lo << ", " << domain_.hi
        << "]: sampled minimum " << lo;
    throw Error(msg.str());
  }
  min_ = lo;
  max_ = hi;
  abs_integral_ = integral;
  total_variation_ = variation;
}

CoefficientValue CoefficientProfile::eval(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream msg;
    msg << "x = " << x << " lies outside the coefficient domain [" << domain_.lo << ", " << domain_.hi << "]";
    throw Error(msg.str());
  }
  return eval_(x);
}

CoefficientProfile make_profile(double base, std::vector<TanhLayer> layers, Interval domain) {
  return CoefficientProfile(base, std::move(layers), domain);
}

CoefficientValue eval_profile(const CoefficientProfile& profile, double x) { return profile.eval(x); }

double lp_norm_ratio(const CoefficientProfile& profile, const CompositeQuadrature& quad, Norm p) {
  if (!(quad.domain() == profile.domain())) throw Error("lp_norm_ratio: mesh and coefficient domains differ");
  const auto& x = quad.nodes();
  const auto& w = quad.weights();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto c = profile(x[i]);
    const double r = std::abs(c.derivative / c.value);
    switch (p) {
      case Norm::L1: acc += w[i] * r; break;
      case Norm::L2: acc += w[i] * r * r; break;
      case Norm::Inf: acc = std::max(acc, r); break;
    }
  }
  return p == Norm::L2 ? std::sqrt(acc) : acc;
}

CoefficientProfile profile_from_json(const nlohmann::json& j) {
  try {
    const double base = j.at("base").get<double>();
    std::vector<TanhLayer> layers;
    if (j.contains("layers")) {
      for (const auto& item : j.at("layers")) {
        layers.push_back({item.at("amp").get<double>(), item.at("delta").get<double>(),
                          item.at("center").get<double>()});
      }
    }
    const auto& d = j.at("domain");
    if (!d.is_array() || d.size() != 2) throw Error("profile 'domain' must be a two-element array");
    return make_profile(base, std::move(layers), {d[0].get<double>(), d[1].get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed profile description: ") + e.what());
  }
}

nlohmann::json profile_to_json(const CoefficientProfile& profile) {
  if (!profile.is_layer_family()) throw Error("only tanh-layer profiles have a JSON description");
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : profile.layers())
    layers.push_back({{"amp", l.amplitude}, {"delta", l.steepness}, {"center", l.center}});
  return {{"base", profile.base()},
          {"layers", layers},
          {"domain", {profile.domain().lo, profile.domain().hi}}};
}

CoefficientProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open profile file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("cannot parse " + path.string() + ": " + e.what());
  }
  return profile_from_json(j);
}

}  // namespace npie
