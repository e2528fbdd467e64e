#pragma once

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "whs/energy.hpp"
#include "whs/growth_fit.hpp"
#include "whs/spectral.hpp"

namespace whs {

struct Report {
  std::string scenario_name;
  unsigned seed = 0;
  double tol = 0.0;
  int t_points = 0;
  std::string hyperbolicity;       // verdict string
  int distinct_roots = 0;
  bool delta_identically_zero = false;
  double C_GR1m = 0.0;
  double C_GRLevi = 0.0;
  double reduction_residual = 0.0;
  double lower_order_c = 0.0;
  std::vector<SweepRow> sweep_table;
  bool has_fit = false;
  GrowthFit fit;
  std::vector<std::string> warnings;
};

// fixed formatting keeps CSV/JSON byte-stable for identical inputs
inline std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "xi_mag,direction_index,amplification,e_kov_final,e_hyp_final,bad_set_measure,status\n";
  for (const auto& r : rows) {
    out += fmt_num(r.xi_mag) + "," + std::to_string(r.direction_index) + "," +
           fmt_num(r.amplification) + "," + fmt_num(r.e_kov_final) + "," +
           fmt_num(r.e_hyp_final) + "," + fmt_num(r.bad_set_measure) + "," + r.status + "\n";
  }
  return out;
}

inline nlohmann::json report_json(const Report& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario_name;
  j["seed"] = r.seed;
  j["tolerance"] = r.tol;
  j["t_points"] = r.t_points;
  j["hyperbolicity"] = r.hyperbolicity;
  j["distinct_roots"] = r.distinct_roots;
  j["delta_identically_zero"] = r.delta_identically_zero;
  j["C_GR1m"] = fmt_num(r.C_GR1m);
  j["C_GRLevi"] = fmt_num(r.C_GRLevi);
  j["reduction_residual"] = fmt_num(r.reduction_residual);
  j["lower_order_c"] = fmt_num(r.lower_order_c);
  j["warnings"] = r.warnings;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : r.sweep_table) {
    table.push_back({{"xi_mag", fmt_num(row.xi_mag)},
                     {"direction_index", row.direction_index},
                     {"amplification", fmt_num(row.amplification)},
                     {"e_kov_final", fmt_num(row.e_kov_final)},
                     {"e_hyp_final", fmt_num(row.e_hyp_final)},
                     {"bad_set_measure", fmt_num(row.bad_set_measure)},
                     {"status", row.status}});
  }
  j["sweep"] = table;
  if (r.has_fit) {
    j["fit"] = {{"model", r.fit.model},
                {"kappa", fmt_num(r.fit.kappa)},
                {"r2_poly", fmt_num(r.fit.r2_poly)},
                {"theta", fmt_num(r.fit.theta)},
                {"c_gevrey", fmt_num(r.fit.c_gevrey)},
                {"r2_gevrey", fmt_num(r.fit.r2_gevrey)},
                {"rows_used", r.fit.rows_used}};
  }
  return j;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace whs
