#include "npie/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "npie/operators.hpp"

namespace npie {

CoefficientProfile tanh_layer_profile(double delta, double x0, Interval domain) {
  return make_profile(2.0, {{1.0, delta, x0}}, domain);
}

CoefficientProfile double_hill() {
  const double amp = 1.933;
  return make_profile(1.0,
                      {{amp, 500.0, 1.0962}, {-amp, 500.0, 1.3776}, {amp, 500.0, 1.4510}, {-amp, 500.0, 1.5532}},
                      {0.0, 2.0});
}

CoefficientProfile double_well() {
  return make_profile(2.1878,
                      {{-0.78845, 500.0, 0.3472},
                       {0.78845, 500.0, 0.4350},
                       {-0.90725, 500.0, 0.9570},
                       {0.90725, 500.0, 1.8966}},
                      {0.0, 2.0});
}

CoefficientProfile named_profile(const std::string& name) {
  if (name == "hill") return double_hill();
  if (name == "well") return double_well();
  if (!std::filesystem::exists(name))
    throw Error("profile '" + name + "' is neither 'hill', 'well' nor an existing file");
  return load_profile(name);
}

std::vector<double> geometric_deltas(double first, double factor, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(first * std::pow(factor, k));
  return out;
}

std::vector<double> arithmetic_deltas(double step, int count) {
  std::vector<double> out;
  for (int j = 1; j <= count; ++j) out.push_back(step * j);
  return out;
}

double CondRow::matched() const {
  switch (p) {
    case Norm::L1: return cond1;
    case Norm::L2: return cond2;
    case Norm::Inf: return cond_inf;
  }
  return 0.0;
}

namespace {

double t_critical_975(std::size_t df) {
  static constexpr std::array<double, 30> table{12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                                                2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                                                2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                                                2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
  if (df == 0) return std::numeric_limits<double>::infinity();
  if (df <= table.size()) return table[df - 1];
  return 1.96 + 2.4 / static_cast<double>(df);
}

const std::array<Formulation, 2> kFormulations{Formulation::Sigma, Formulation::U};
const std::array<Norm, 3> kNorms{Norm::L1, Norm::L2, Norm::Inf};

CondRow condition_row(const CoefficientProfile& profile, const CompositeQuadrature& quad, double delta,
                      Formulation formulation, Norm p) {
  CondRow row;
  row.delta = delta;
  row.formulation = formulation;
  row.p = p;
  row.n = quad.size();
  row.panels = quad.panel_count();
  try {
    const auto c = condition_numbers(assemble_operator(formulation, profile, quad, p));
    row.cond1 = c.cond1;
    row.cond2 = c.cond2;
    row.cond_inf = c.cond_inf;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

template <typename Job>
void run_parallel(std::size_t count, unsigned threads, Job&& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("fit_loglog: length mismatch");
  SlopeFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  fit.points = lx.size();
  if (fit.points < 2) throw Error("fit_loglog: need at least two positive points");
  const double n = static_cast<double>(fit.points);
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw Error("fit_loglog: all abscissae coincide");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - fit.intercept - fit.slope * lx[i];
    sse += r * r;
  }
  const std::size_t df = fit.points - 2;
  const double half = df > 0 ? t_critical_975(df) * std::sqrt(sse / static_cast<double>(df) / sxx)
                             : std::numeric_limits<double>::infinity();
  fit.slope_lo = fit.slope - half;
  fit.slope_hi = fit.slope + half;
  return fit;
}

SweepResult condition_sweep(const SweepOptions& opts) {
  for (double d : opts.deltas)
    if (!(d > 0.0)) throw Error("condition_sweep: steepness values must be positive");
  const std::size_t per_delta = opts.formulations.size() * opts.ps.size();
  SweepResult result;
  result.rows.resize(opts.deltas.size() * per_delta);

  run_parallel(opts.deltas.size(), opts.threads, [&](std::size_t k) {
    const double delta = opts.deltas[k];
    std::size_t slot = k * per_delta;
    try {
      const auto profile = tanh_layer_profile(delta, opts.x0, opts.domain);
      const auto quad = refine_adaptive(profile, opts.mesh);
      for (auto f : opts.formulations)
        for (auto p : opts.ps) result.rows[slot++] = condition_row(profile, quad, delta, f, p);
    } catch (const std::exception& e) {
      for (auto f : opts.formulations)
        for (auto p : opts.ps) {
          auto& row = result.rows[slot++];
          row.delta = delta;
          row.formulation = f;
          row.p = p;
          row.error = e.what();
        }
    }
  });

  for (auto f : opts.formulations) {
    for (auto p : opts.ps) {
      std::vector<double> xs, ys;
      for (const auto& row : result.rows) {
        if (row.formulation == f && row.p == p && row.ok()) {
          xs.push_back(row.delta);
          ys.push_back(row.matched());
        }
      }
      if (xs.size() < 2) continue;
      auto fit = fit_loglog(xs, ys);
      fit.formulation = f;
      fit.p = p;
      result.fits.push_back(fit);
    }
  }
  return result;
}

CondTable condition_table(const CoefficientProfile& profile, double delta_label, const RefinementOptions& mesh) {
  const auto quad = refine_adaptive(profile, mesh);
  CondTable rows;
  for (auto f : kFormulations)
    for (auto p : kNorms) rows.push_back(condition_row(profile, quad, delta_label, f, p));
  return rows;
}

std::vector<GmresRun> gmres_study(const std::string& name, const CoefficientProfile& profile,
                                  const GmresStudyOptions& opts) {
  const auto quad = refine_adaptive(profile, opts.mesh);
  const double slope = (opts.gamma_b - opts.gamma_a) / profile.domain().length();
  Eigen::VectorXd f(quad.size());
  for (Eigen::Index i = 0; i < quad.size(); ++i) f[i] = 1.0 - slope * profile(quad.nodes()[i]).derivative;

  std::vector<GmresRun> runs;
  for (auto form : kFormulations) {
    for (auto p : kNorms) {
      const auto sys = assemble_system(form, profile, quad, p, f);
      GmresRun run;
      run.profile = name;
      run.formulation = form;
      run.p = p;
      run.n = sys.size();
      const auto c = condition_numbers(sys.matrix);
      run.cond1 = c.cond1;
      run.cond2 = c.cond2;
      run.trace = gmres(sys.matrix, sys.rhs, opts.tol, opts.max_iter);
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

double rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw Error("rank_correlation: need two equal-length samples");
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t s = 0; s < idx.size();) {
      std::size_t e = s;
      while (e + 1 < idx.size() && v[idx[e + 1]] == v[idx[s]]) ++e;
      for (std::size_t k = s; k <= e; ++k) r[idx[k]] = 0.5 * static_cast<double>(s + e);
      s = e + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

void write_cond_csv(std::ostream& out, const CondTable& rows) {
  out << std::setprecision(17);
  out << "delta,formulation,p,n,panels,cond1,cond2,cond_inf,error\n";
  for (const auto& r : rows) {
    out << r.delta << ',' << to_string(r.formulation) << ',' << to_string(r.p) << ',' << r.n << ',' << r.panels << ','
        << r.cond1 << ',' << r.cond2 << ',' << r.cond_inf << ',';
    if (!r.ok()) out << std::quoted(r.error, '"', '"');
    out << '\n';
  }
}

void write_fit_csv(std::ostream& out, const std::vector<SlopeFit>& fits) {
  out << std::setprecision(17);
  out << "formulation,p,slope,slope_lo,slope_hi,intercept,points\n";
  for (const auto& f : fits)
    out << to_string(f.formulation) << ',' << to_string(f.p) << ',' << f.slope << ',' << f.slope_lo << ','
        << f.slope_hi << ',' << f.intercept << ',' << f.points << '\n';
}

void write_gmres_csv(std::ostream& out, const std::vector<GmresRun>& runs) {
  out << std::setprecision(17);
  out << "profile,formulation,p,iteration,residual,true_residual\n";
  for (const auto& run : runs)
    for (std::size_t k = 0; k < run.trace.residuals.size(); ++k)
      out << run.profile << ',' << to_string(run.formulation) << ',' << to_string(run.p) << ',' << k << ','
          << run.trace.residuals[k] << ',' << run.trace.true_residuals[k] << '\n';
}

nlohmann::json sweep_metadata(const SweepOptions& opts) {
  nlohmann::json forms = nlohmann::json::array(), ps = nlohmann::json::array();
  for (auto f : opts.formulations) forms.push_back(to_string(f));
  for (auto p : opts.ps) ps.push_back(to_string(p));
  return {{"profile", "2 + tanh(delta (x - x0))"},
          {"x0", opts.x0},
          {"domain", {opts.domain.lo, opts.domain.hi}},
          {"deltas", opts.deltas},
          {"formulations", forms},
          {"p", ps},
          {"mesh", {{"order", opts.mesh.order}, {"tol", opts.mesh.tol}}}};
}

nlohmann::json table_metadata() {
  return {{"reconstructed_profiles", true},
          {"note", "hill and well parameters are fitted reconstructions; the originals are unpublished"},
          {"hill", profile_to_json(double_hill())},
          {"well", profile_to_json(double_well())}};
}

}  // namespace npie
