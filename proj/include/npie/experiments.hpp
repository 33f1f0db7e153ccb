#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "npie/coefficient.hpp"
#include "npie/linalg.hpp"
#include "npie/mesh.hpp"
#include "npie/types.hpp"

namespace npie {

/// 2 + tanh(delta (x - x0)).
CoefficientProfile tanh_layer_profile(double delta, double x0 = 1.0, Interval domain = {0.0, 2.0});

/// Two-bump and two-dip coefficients on [0, 2] with layer steepness 500.
/// Amplitudes and centers were fitted so the l2 condition numbers land near
/// the published reference table; they are reconstructions, not known values.
CoefficientProfile double_hill();
CoefficientProfile double_well();

/// Resolve "hill", "well" or a JSON profile file.
CoefficientProfile named_profile(const std::string& name);

std::vector<double> geometric_deltas(double first = 100.0, double factor = 2.0, int count = 8);
std::vector<double> arithmetic_deltas(double step = 100.0, int count = 100);

struct CondRow {
  double delta = 0.0;
  Formulation formulation = Formulation::Sigma;
  Norm p = Norm::L1;  // weighting of the assembled system
  Eigen::Index n = 0;
  std::size_t panels = 0;
  double cond1 = 0.0;
  double cond2 = 0.0;
  double cond_inf = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
  /// cond in the norm the system was weighted for.
  double matched() const;
};

using CondTable = std::vector<CondRow>;

/// Least-squares line through (log delta, log cond) with a 95% interval on the slope.
struct SlopeFit {
  Formulation formulation = Formulation::Sigma;
  Norm p = Norm::L1;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  std::size_t points = 0;
};

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct SweepOptions {
  std::vector<double> deltas = geometric_deltas();
  std::vector<Formulation> formulations{Formulation::Sigma, Formulation::U};
  std::vector<Norm> ps{Norm::L1, Norm::L2, Norm::Inf};
  double x0 = 1.0;
  Interval domain{0.0, 2.0};
  RefinementOptions mesh;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepResult {
  CondTable rows;
  std::vector<SlopeFit> fits;
};

/// One row per (delta, formulation, p). A failing row keeps its error text and
/// the sweep moves on. Rows come back in input order whatever the thread count.
SweepResult condition_sweep(const SweepOptions& opts);

/// All six weighted systems for one coefficient, f = 1.
CondTable condition_table(const CoefficientProfile& profile, double delta_label, const RefinementOptions& mesh = {});

struct GmresRun {
  std::string profile;
  Formulation formulation = Formulation::Sigma;
  Norm p = Norm::L1;
  Eigen::Index n = 0;
  double cond1 = 0.0;
  double cond2 = 0.0;
  GmresTrace trace;
};

struct GmresStudyOptions {
  double tol = 1e-15;
  int max_iter = 400;
  double gamma_a = 1.0;
  double gamma_b = 2.0;
  RefinementOptions mesh;
};

/// f = 1 with Dirichlet data gamma_a, gamma_b; every formulation and p.
std::vector<GmresRun> gmres_study(const std::string& name, const CoefficientProfile& profile,
                                  const GmresStudyOptions& opts = {});

/// Spearman rank correlation.
double rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

void write_cond_csv(std::ostream& out, const CondTable& rows);
void write_fit_csv(std::ostream& out, const std::vector<SlopeFit>& fits);
void write_gmres_csv(std::ostream& out, const std::vector<GmresRun>& runs);

nlohmann::json sweep_metadata(const SweepOptions& opts);
nlohmann::json table_metadata();

}  // namespace npie
