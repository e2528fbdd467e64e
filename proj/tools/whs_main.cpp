// Command line front end: scenario-driven analysis of weakly hyperbolic
// systems D_t u - A(t, D_x) u = 0 with time-polynomial coefficients.

#include <CLI11.hpp>
#include <iostream>

#include "whs/pipeline.hpp"

namespace {

struct CommonOpts {
  std::string scenario_path;
  std::string out;
  double tol = -1.0;
  int q = -1;
  double xi_max = -1.0;
  int directions = -1;
  int seed = -1;
  std::string format;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--scenario", o.scenario_path, "scenario file")->required();
  cmd->add_option("--out", o.out, "output path (stdout when omitted)");
  cmd->add_option("--tol", o.tol, "integrator tolerance override");
  cmd->add_option("--q", o.q, "bad-set exponent override");
  cmd->add_option("--xi-max", o.xi_max, "largest dyadic frequency magnitude");
  cmd->add_option("--directions", o.directions, "number of xi directions");
  cmd->add_option("--seed", o.seed, "seed recorded in the report");
  cmd->add_option("--format", o.format, "csv or json");
  cmd->add_option("--threads", o.threads, "sweep worker threads (0 = hardware)");
}

whs::Scenario load(const CommonOpts& o) {
  whs::Scenario sc = whs::parse_scenario_file(o.scenario_path);
  if (o.tol > 0) sc.tol = o.tol;
  if (o.q >= 0) sc.q = o.q;
  if (o.xi_max > 0) { sc.xi_max = o.xi_max; sc.xi_magnitudes.clear(); }
  if (o.directions > 0) sc.directions = o.directions;
  if (o.seed >= 0) sc.seed = unsigned(o.seed);
  if (!o.format.empty()) sc.format = o.format;
  return sc;
}

void emit(const CommonOpts& o, const whs::Scenario& sc, const whs::Report& rep) {
  std::string payload;
  if (sc.format == "csv")
    payload = whs::sweep_csv(rep.sweep_table);
  else
    payload = whs::report_json(rep).dump(2) + "\n";
  if (!o.out.empty())
    whs::write_file(o.out, payload);
  else
    std::cout << payload;
  if (!sc.out_csv.empty()) whs::write_file(sc.out_csv, whs::sweep_csv(rep.sweep_table));
  if (!sc.out_json.empty())
    whs::write_file(sc.out_json, whs::report_json(rep).dump(2) + "\n");
}

int run_full(const CommonOpts& o) {
  whs::Scenario sc = load(o);
  whs::PipelineResult res = whs::run_scenario(sc, o.threads);
  emit(o, sc, res.report);
  for (const auto& w : res.report.warnings) std::cerr << "warning: " << w << "\n";
  return res.exit_code;
}

// analyze / reduce stop after the corresponding pipeline stage
int run_analyze(const CommonOpts& o, bool with_reduction) {
  whs::Scenario sc = load(o);
  whs::Report rep;
  rep.scenario_name = sc.name;
  rep.seed = sc.seed;
  rep.tol = sc.tol;
  rep.t_points = sc.t_points;
  int code = 0;

  std::vector<Eigen::VectorXd> xis = sc.xi_list();
  whs::HyperbolicityReport hyp =
      whs::hyperbolicity_scan(sc.system, whs::uniform_grid(0.0, sc.T, 65), xis);
  rep.hyperbolicity = hyp.verdict_string();
  rep.distinct_roots = hyp.r;
  if (hyp.verdict == whs::Verdict::NonHyperbolic) {
    rep.warnings.push_back("non-real spectrum detected");
    code = 2;
  } else {
    Eigen::VectorXd xi_ref = xis.back();
    whs::SymmetriserPath sp = whs::build_symmetriser(sc.system, xi_ref);
    std::vector<double> t_grid = whs::chebyshev_grid(0.0, sc.T, std::min(sc.t_points, 2048));
    if (whs::delta_identically_zero(sp.delta(), sp.Q.coeff_norm())) {
      rep.delta_identically_zero = true;
      rep.warnings.push_back("Delta(., xi) identically zero: hypothesis violated");
      code = 2;
    } else {
      rep.C_GR1m = whs::check_GR1m(sp, t_grid);
      rep.C_GRLevi = whs::check_GRLevi(sc.system.normalized_at_xi(xi_ref), sp, t_grid);
    }
    if (with_reduction) {
      whs::BlockSylvesterSystem bs = whs::block_sylvester_assemble(sc.system, xi_ref);
      whs::OperatorPoly dtmA = whs::OperatorPoly::d_t(sc.m) -
                               whs::OperatorPoly::multiplication(sc.system.at_xi(xi_ref));
      rep.reduction_residual = op_residual(compose(bs.L, dtmA), bs.mu - bs.C, 0.0, sc.T);
      rep.lower_order_c =
          whs::lower_order_bound_check(bs, sc.system, whs::uniform_grid(0.0, sc.T, 257), xi_ref);
    }
  }
  sc.format = "json";
  emit(o, sc, rep);
  return code;
}

int run_sweep_like(const CommonOpts& o, bool do_fit, bool evolve_single) {
  whs::Scenario sc = load(o);
  whs::Report rep;
  rep.scenario_name = sc.name;
  rep.seed = sc.seed;
  rep.tol = sc.tol;
  rep.t_points = sc.t_points;
  std::vector<Eigen::VectorXd> xis = sc.xi_list();
  std::vector<int> dirs = sc.direction_indices();
  if (evolve_single) {
    xis = {xis.back()};
    dirs = {dirs.back()};
  }
  rep.sweep_table = whs::sweep(sc.system, xis, sc.T, sc.tol, o.threads, sc.q, &dirs);
  if (do_fit) {
    try {
      rep.fit = whs::fit_growth(rep.sweep_table);
      rep.has_fit = true;
    } catch (const whs::InsufficientRange& e) {
      rep.warnings.push_back(e.what());
    }
  }
  if (do_fit) sc.format = o.format.empty() ? "json" : o.format;
  emit(o, sc, rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weakly hyperbolic system analyser"};
  app.require_subcommand(1);

  CommonOpts o;
  CLI::App* analyze = app.add_subcommand("analyze", "hyperbolicity and Levi conditions");
  CLI::App* reduce = app.add_subcommand("reduce", "block Sylvester reduction checks");
  CLI::App* evolve = app.add_subcommand("evolve", "integrate one frequency");
  CLI::App* sweepc = app.add_subcommand("sweep", "frequency sweep table");
  CLI::App* fitc = app.add_subcommand("fit", "sweep plus growth-law fit");
  CLI::App* reportc = app.add_subcommand("report", "full pipeline report");
  CLI::App* pipeline = app.add_subcommand("pipeline", "run everything");
  for (CLI::App* c : {analyze, reduce, evolve, sweepc, fitc, reportc, pipeline})
    add_common(c, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(o, false);
    if (reduce->parsed()) return run_analyze(o, true);
    if (evolve->parsed()) return run_sweep_like(o, false, true);
    if (sweepc->parsed()) return run_sweep_like(o, false, false);
    if (fitc->parsed()) return run_sweep_like(o, true, false);
    return run_full(o);
  } catch (const whs::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
