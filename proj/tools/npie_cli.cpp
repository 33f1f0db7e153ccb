#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "npie/experiments.hpp"
#include "npie/probes.hpp"
#include "npie/solver.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw npie::Error("cannot write " + path);
  return out;
}

void write_sidecar(const std::string& csv_path, const nlohmann::json& meta) {
  auto out = open_output(csv_path + ".json");
  out << meta.dump(2) << '\n';
}

std::vector<npie::Formulation> formulations_from(const std::string& s) {
  if (s == "both") return {npie::Formulation::Sigma, npie::Formulation::U};
  return {npie::parse_formulation(s)};
}

std::vector<npie::Norm> norms_from(const std::string& s) {
  if (s == "all") return {npie::Norm::L1, npie::Norm::L2, npie::Norm::Inf};
  return {npie::parse_norm(s)};
}

int run_sweep(const std::vector<double>& deltas, bool paper_grid, const std::string& formulation,
              const std::string& p, double x0, const std::vector<double>& domain, const std::string& out_path) {
  npie::SweepOptions opts;
  if (paper_grid) opts.deltas = npie::arithmetic_deltas();
  if (!deltas.empty()) opts.deltas = deltas;
  opts.formulations = formulations_from(formulation);
  opts.ps = norms_from(p);
  opts.x0 = x0;
  opts.domain = {domain.at(0), domain.at(1)};
  const auto result = npie::condition_sweep(opts);

  auto out = open_output(out_path);
  npie::write_cond_csv(out, result.rows);
  auto fits = open_output(out_path + ".fits.csv");
  npie::write_fit_csv(fits, result.fits);
  write_sidecar(out_path, npie::sweep_metadata(opts));

  std::size_t failed = 0;
  for (const auto& r : result.rows) failed += r.ok() ? 0 : 1;
  std::cout << result.rows.size() << " systems, " << failed << " failed\n";
  for (const auto& f : result.fits)
    std::cout << "A" << npie::to_string(f.formulation) << "," << npie::to_string(f.p) << "  slope " << f.slope
              << "  [" << f.slope_lo << ", " << f.slope_hi << "]\n";
  return 0;
}

int run_table1(const std::string& out_path) {
  npie::CondTable rows;
  for (const auto& [name, profile] : {std::pair{"hill", npie::double_hill()}, std::pair{"well", npie::double_well()}}) {
    auto t = npie::condition_table(profile, 500.0);
    std::cout << name << ":";
    for (const auto& r : t)
      std::cout << "  A" << npie::to_string(r.formulation) << "," << npie::to_string(r.p) << "=" << r.cond2;
    std::cout << '\n';
    rows.insert(rows.end(), t.begin(), t.end());
  }
  auto out = open_output(out_path);
  npie::write_cond_csv(out, rows);
  write_sidecar(out_path, npie::table_metadata());
  return 0;
}

int run_gmres(const std::string& profile_name, double tol, int max_iter, const std::string& out_path) {
  npie::GmresStudyOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  const auto runs = npie::gmres_study(profile_name, npie::named_profile(profile_name), opts);
  auto out = open_output(out_path);
  npie::write_gmres_csv(out, runs);
  for (const auto& r : runs)
    std::cout << "A" << npie::to_string(r.formulation) << "," << npie::to_string(r.p) << "  n=" << r.n
              << "  cond2=" << r.cond2 << "  iterations=" << r.trace.iterations
              << (r.trace.converged ? "  converged" : "  not converged") << "  residual=" << r.trace.true_residuals.back()
              << '\n';
  return 0;
}

int run_solve(const std::string& profile_path, double f_const, const std::vector<double>& bc,
              const std::string& formulation, const std::string& p, const std::string& method,
              const std::string& out_path) {
  const auto profile = npie::load_profile(profile_path);
  npie::SolveOptions opts;
  opts.formulation = npie::parse_formulation(formulation);
  opts.p = npie::parse_norm(p);
  opts.method = npie::parse_method(method);
  const auto report = npie::solve_bvp(profile, [f_const](double) { return f_const; }, bc.at(0), bc.at(1), opts);

  auto out = open_output(out_path);
  out << std::setprecision(17) << "x,u,u_x" << (report.sigma ? ",sigma" : "") << '\n';
  for (Eigen::Index i = 0; i < report.size(); ++i) {
    out << report.quad->nodes()[i] << ',' << report.u[i] << ',' << report.u_x[i];
    if (report.sigma) out << ',' << (*report.sigma)[i];
    out << '\n';
  }
  std::cout << "n=" << report.size() << "  panels=" << report.panel_count() << "  method="
            << (report.direct ? "direct" : "gmres");
  if (report.cond1) std::cout << "  cond1=" << *report.cond1 << "  cond2=" << *report.cond2;
  if (report.error_bound) std::cout << "  error_bound=" << *report.error_bound;
  std::cout << '\n';
  return 0;
}

int run_probe(const std::string& profile_path, const std::string& p) {
  const auto profile = npie::named_profile(profile_path);
  const auto quad = npie::refine_adaptive(profile);
  const auto norm = npie::parse_norm(p);
  if (norm == npie::Norm::Inf) {
    const auto r = npie::extremal_probe_sup(profile, quad);
    std::cout << "operator  p=inf  value=" << r.value << "  floor=" << r.floor << "  ceiling=" << *r.ceiling
              << "  x*=" << r.location << '\n';
  }
  const auto r = npie::extremal_probe_inverse(profile, quad, norm);
  std::cout << "inverse   p=" << npie::to_string(norm) << "  value=" << r.value << "  floor=" << r.floor
            << "  xi=" << r.location << "  c=" << r.radius << "  flat=" << r.flat_fraction << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditioning experiments for second-kind integral equations of (eps u')' = f"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "condition numbers of the single-layer family against delta");
  std::vector<double> deltas;
  bool paper_grid = false;
  std::string formulation = "both", p = "all", out_path = "sweep.csv";
  double x0 = 1.0;
  std::vector<double> domain{0.0, 2.0};
  sweep->add_option("--deltas", deltas, "layer steepness values (default 100 * 2^k, k = 0..7)");
  sweep->add_flag("--paper-grid", paper_grid, "use delta = 100 j, j = 1..100");
  sweep->add_option("--formulation", formulation, "1, 2 or both")->capture_default_str();
  sweep->add_option("--p", p, "1, 2, inf or all")->capture_default_str();
  sweep->add_option("--x0", x0, "layer center")->capture_default_str();
  sweep->add_option("--domain", domain, "interval ends")->expected(2);
  sweep->add_option("--out", out_path, "CSV output")->capture_default_str();

  auto* table = app.add_subcommand("table1", "l2 condition numbers for the double hill and double well");
  std::string table_out = "table1.csv";
  table->add_option("--out", table_out)->capture_default_str();

  auto* gm = app.add_subcommand("gmres", "GMRES residual histories for all six systems");
  std::string gm_profile = "hill", gm_out = "gmres.csv";
  double gm_tol = 1e-15;
  int gm_max = 400;
  gm->add_option("--profile", gm_profile, "hill, well or a JSON profile file")->capture_default_str();
  gm->add_option("--tol", gm_tol)->capture_default_str();
  gm->add_option("--max-iter", gm_max)->capture_default_str();
  gm->add_option("--out", gm_out)->capture_default_str();

  auto* solve = app.add_subcommand("solve", "solve one boundary value problem with constant f");
  std::string solve_profile, solve_form = "1", solve_p = "1", solve_method = "auto", solve_out = "solution.csv";
  double f_const = 1.0;
  std::vector<double> bc{0.0, 0.0};
  solve->add_option("--profile", solve_profile, "JSON profile file")->required();
  solve->add_option("--f-const", f_const)->capture_default_str();
  solve->add_option("--bc", bc, "u(a) u(b)")->expected(2);
  solve->add_option("--formulation", solve_form, "1 (density) or 2 (solution)")->capture_default_str();
  solve->add_option("--p", solve_p)->capture_default_str();
  solve->add_option("--method", solve_method, "auto, direct or gmres")->capture_default_str();
  solve->add_option("--out", solve_out)->capture_default_str();

  auto* probe = app.add_subcommand("probe", "extremal-function lower bounds on operator norms");
  std::string probe_profile, probe_p = "inf";
  probe->add_option("--profile", probe_profile, "hill, well or a JSON profile file")->required();
  probe->add_option("--p", probe_p)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return run_sweep(deltas, paper_grid, formulation, p, x0, domain, out_path);
    if (*table) return run_table1(table_out);
    if (*gm) return run_gmres(gm_profile, gm_tol, gm_max, gm_out);
    if (*solve) return run_solve(solve_profile, f_const, bc, solve_form, solve_p, solve_method, solve_out);
    if (*probe) return run_probe(probe_profile, probe_p);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
