#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "npie/types.hpp"

namespace npie {

class CompositeQuadrature;

/// Value of the coefficient and its exact derivative at a point.
struct CoefficientValue {
  double value = 0.0;
  double derivative = 0.0;
};

/// One term amplitude * tanh(steepness * (x - center)).
struct TanhLayer {
  double amplitude = 0.0;
  double steepness = 1.0;
  double center = 0.0;
};

/// Smooth positive coefficient eps(x) on a closed interval, evaluated in closed
/// form together with eps'(x).
///
/// The usual instance is the layer family base + sum_k a_k tanh(d_k (x - c_k)).
/// Arbitrary analytic coefficients (used by tests and hand examples) are
/// supported through `CoefficientProfile::analytic`. In both cases the bounds
/// min/max, the integral of |eps| and the total variation are taken from a dense
/// equally spaced sample at construction.
class CoefficientProfile {
 public:
  using Evaluator = std::function<CoefficientValue(double)>;

  CoefficientProfile(double base, std::vector<TanhLayer> layers, Interval domain);

  static CoefficientProfile analytic(Evaluator eval, Interval domain, std::size_t samples = 20001);

  /// Unchecked evaluation.
  CoefficientValue operator()(double x) const { return eval_(x); }

  /// Throws when x lies outside the domain.
  CoefficientValue eval(double x) const;

  double base() const { return base_; }
  const std::vector<TanhLayer>& layers() const { return layers_; }
  const Interval& domain() const { return domain_; }
  bool is_layer_family() const { return layer_family_; }

  double min() const { return min_; }
  double max() const { return max_; }
  double abs_integral() const { return abs_integral_; }
  double total_variation() const { return total_variation_; }
  std::size_t sample_count() const { return sample_count_; }

 private:
  CoefficientProfile(Evaluator eval, Interval domain, std::size_t samples);
  void sample_bounds(std::size_t samples);

  Evaluator eval_;
  Interval domain_;
  double base_ = 0.0;
  std::vector<TanhLayer> layers_;
  bool layer_family_ = false;
  double min_ = 0.0;
  double max_ = 0.0;
  double abs_integral_ = 0.0;
  double total_variation_ = 0.0;
  std::size_t sample_count_ = 0;
};

CoefficientProfile make_profile(double base, std::vector<TanhLayer> layers, Interval domain);

CoefficientValue eval_profile(const CoefficientProfile& profile, double x);

/// Evaluates a single layer sum without building a profile. sech^2 is formed
/// from exp(-2|z|) so it stays accurate far into the tails.
CoefficientValue eval_layers(double base, const std::vector<TanhLayer>& layers, double x);

/// ||eps'/eps||_p by quadrature (finite p) or as the maximum over the nodes (p = inf).
double lp_norm_ratio(const CoefficientProfile& profile, const CompositeQuadrature& quad, Norm p);

/// {"base": r, "layers": [{"amp": r, "delta": r, "center": r}], "domain": [a, b]}
CoefficientProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const CoefficientProfile& profile);
CoefficientProfile load_profile(const std::filesystem::path& path);

}  // namespace npie
