#pragma once

#include <string>

#include "whs/energy.hpp"
#include "whs/growth_fit.hpp"
#include "whs/levi.hpp"
#include "whs/reduction.hpp"
#include "whs/report.hpp"
#include "whs/scenario.hpp"
#include "whs/spectral.hpp"
#include "whs/symmetriser.hpp"

namespace whs {

// exit codes: 0 complete, 2 hypothesis violation (Delta == 0), 3 numerical failure
struct PipelineResult {
  Report report;
  int exit_code = 0;
};

// hyperbolicity -> symmetriser -> conditions -> reduction -> sweep -> fit
inline PipelineResult run_scenario(const Scenario& sc, int threads = 0) {
  PipelineResult res;
  Report& rep = res.report;
  rep.scenario_name = sc.name;
  rep.seed = sc.seed;
  rep.tol = sc.tol;
  rep.t_points = sc.t_points;

  const SymbolMatrix& A = sc.system;
  std::vector<double> t_grid = chebyshev_grid(0.0, sc.T, std::min(sc.t_points, 2048));
  std::vector<Eigen::VectorXd> xis = sc.xi_list();

  HyperbolicityReport hyp = hyperbolicity_scan(A, uniform_grid(0.0, sc.T, 65), xis);
  rep.hyperbolicity = hyp.verdict_string();
  rep.distinct_roots = hyp.r;
  if (hyp.verdict == Verdict::NonHyperbolic) {
    rep.warnings.push_back("non-real spectrum at t=" + fmt_num(hyp.witness_t) +
                           "; refusing to analyse further");
    res.exit_code = 2;
    return res;
  }

  // conditions at the reference frequency (largest magnitude, first direction)
  Eigen::VectorXd xi_ref = xis.back();
  SymmetriserPath sp = build_symmetriser(A, xi_ref);
  bool delta_zero = delta_identically_zero(sp.delta(), sp.Q.coeff_norm());
  rep.delta_identically_zero = delta_zero;
  if (delta_zero) {
    rep.warnings.push_back(
        "Delta(., xi) identically zero: theorem hypothesis violated; "
        "conditions skipped, sweep still measured");
    res.exit_code = 2;
  } else {
    try {
      rep.C_GR1m = check_GR1m(sp, t_grid);
      rep.C_GRLevi = check_GRLevi(A.normalized_at_xi(xi_ref), sp, t_grid);
      if (!std::isfinite(rep.C_GR1m))
        rep.warnings.push_back("GR1m constant unbounded on the grid");
      if (!std::isfinite(rep.C_GRLevi))
        rep.warnings.push_back("GRLevi constant unbounded on the grid");
    } catch (const IdenticallyZeroDelta&) {
      rep.delta_identically_zero = true;
      res.exit_code = 2;
    }
  }

  try {
    BlockSylvesterSystem bs = block_sylvester_assemble(A, xi_ref);
    OperatorPoly dtmA = OperatorPoly::d_t(A.size()) -
                        OperatorPoly::multiplication(A.at_xi(xi_ref));
    rep.reduction_residual = op_residual(compose(bs.L, dtmA), bs.mu - bs.C, 0.0, sc.T);
    rep.lower_order_c = lower_order_bound_check(bs, A, uniform_grid(0.0, sc.T, 257), xi_ref);

    std::vector<int> dirs = sc.direction_indices();
    rep.sweep_table = sweep(A, xis, sc.T, sc.tol, threads, sc.q, &dirs);
    try {
      rep.fit = fit_growth(rep.sweep_table);
      rep.has_fit = true;
    } catch (const InsufficientRange&) {
      rep.warnings.push_back("growth fit skipped: insufficient frequency range");
    }
  } catch (const std::exception& e) {
    rep.warnings.push_back(std::string("numerical failure: ") + e.what());
    res.exit_code = 3;
  }
  return res;
}

}  // namespace whs
