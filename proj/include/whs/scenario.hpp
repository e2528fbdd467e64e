#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "whs/errors.hpp"
#include "whs/symbol.hpp"

namespace whs {

// Scenario file: flat key = value lines, '#' comments. Coefficient lists
// are bracketed, e.g.  system.entry.1.2.xi1 = [0, 0, 1]  meaning the
// TimePoly t^2 in the (1,2) entry of the xi_1 component.
struct Scenario {
  std::string name = "unnamed";
  int m = 0, n = 0;
  double T = 1.0;
  SymbolMatrix system;
  int t_points = 2048;
  std::vector<double> xi_magnitudes;  // default dyadic 2^0 .. xi_max
  double xi_max = 512.0;
  int directions = 1;
  double tol = 1e-8;
  int q = 1;
  unsigned seed = 0;
  std::string out_csv, out_json;
  std::string format = "csv";

  std::vector<int> direction_indices() const {
    std::vector<int> out;
    size_t mags = xi_magnitudes.size();
    if (mags == 0) {
      for (double x = 1.0; x <= xi_max * (1 + 1e-12); x *= 2.0) ++mags;
    }
    for (int d = 0; d < directions; ++d)
      for (size_t i = 0; i < mags; ++i) out.push_back(d);
    return out;
  }

  std::vector<Eigen::VectorXd> xi_list() const {
    std::vector<double> mags = xi_magnitudes;
    if (mags.empty())
      for (double x = 1.0; x <= xi_max * (1 + 1e-12); x *= 2.0) mags.push_back(x);
    std::vector<Eigen::VectorXd> xs;
    for (int d = 0; d < directions; ++d) {
      Eigen::VectorXd dir = Eigen::VectorXd::Zero(n);
      if (n == 1) {
        dir[0] = (d % 2 == 0) ? 1.0 : -1.0;
      } else {
        double ang = 2.0 * M_PI * d / directions;
        dir[0] = std::cos(ang);
        dir[1] = std::sin(ang);
      }
      for (double mag : mags) xs.push_back(mag * dir);
    }
    return xs;
  }
};

namespace detail {

inline std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& field, int line, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return x;
  } catch (const std::exception&) {
    throw ScenarioError(field, line, "not a number: '" + v + "'");
  }
}

inline std::vector<double> parse_list(const std::string& field, int line,
                                      const std::string& v) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw ScenarioError(field, line, "expected a bracketed list, got '" + v + "'");
  std::vector<double> out;
  std::string body = v.substr(1, v.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    if (item.empty()) throw ScenarioError(field, line, "empty list element");
    out.push_back(parse_number(field, line, item));
  }
  return out;
}

}  // namespace detail

inline Scenario parse_scenario_text(std::istream& in) {
  Scenario sc;
  struct Entry { int i, j, k; std::vector<double> coeffs; int line; };
  std::vector<Entry> entries;
  std::string line;
  int lineno = 0;
  bool saw_m = false, saw_n = false;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::strip(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ScenarioError(line, lineno, "expected 'key = value'");
    std::string key = detail::strip(line.substr(0, eq));
    std::string val = detail::strip(line.substr(eq + 1));
    if (val.empty()) throw ScenarioError(key, lineno, "empty value");

    if (key == "name") sc.name = val;
    else if (key == "m") { sc.m = int(detail::parse_number(key, lineno, val)); saw_m = true; }
    else if (key == "n") { sc.n = int(detail::parse_number(key, lineno, val)); saw_n = true; }
    else if (key == "T") sc.T = detail::parse_number(key, lineno, val);
    else if (key == "grid.t_points") sc.t_points = int(detail::parse_number(key, lineno, val));
    else if (key == "grid.xi_magnitudes") sc.xi_magnitudes = detail::parse_list(key, lineno, val);
    else if (key == "grid.xi_max") sc.xi_max = detail::parse_number(key, lineno, val);
    else if (key == "grid.directions") sc.directions = int(detail::parse_number(key, lineno, val));
    else if (key == "tol") sc.tol = detail::parse_number(key, lineno, val);
    else if (key == "q") sc.q = int(detail::parse_number(key, lineno, val));
    else if (key == "seed") sc.seed = unsigned(detail::parse_number(key, lineno, val));
    else if (key == "output.csv") sc.out_csv = val;
    else if (key == "output.json") sc.out_json = val;
    else if (key == "format") {
      if (val != "csv" && val != "json")
        throw ScenarioError(key, lineno, "format must be csv or json");
      sc.format = val;
    } else if (key.rfind("system.entry.", 0) == 0) {
      int i = 0, j = 0, k = 0;
      char dot1, dot2, x, ic;
      std::stringstream ks(key.substr(std::string("system.entry.").size()));
      if (!(ks >> i >> dot1 >> j >> dot2 >> x >> ic >> k) || dot1 != '.' || dot2 != '.' ||
          x != 'x' || ic != 'i')
        throw ScenarioError(key, lineno, "expected system.entry.<i>.<j>.xi<k>");
      entries.push_back({i, j, k, detail::parse_list(key, lineno, val), lineno});
    } else {
      throw ScenarioError(key, lineno, "unknown key");
    }
  }

  if (!saw_m || sc.m < 1) throw ScenarioError("m", 0, "missing or invalid matrix size");
  if (!saw_n || sc.n < 1) throw ScenarioError("n", 0, "missing or invalid spatial dimension");
  if (!(sc.T > 0.0)) throw ScenarioError("T", 0, "final time must be positive");
  if (entries.empty()) throw ScenarioError("system.entry", 0, "no coefficient entries");
  for (double mag : sc.xi_magnitudes)
    if (mag < 1.0) throw ScenarioError("grid.xi_magnitudes", 0, "magnitudes must be >= 1");
  if (sc.directions < 1) throw ScenarioError("grid.directions", 0, "must be >= 1");
  if (sc.directions > 1 && sc.n < 2)
    throw ScenarioError("grid.directions", 0, "multiple directions need n >= 2");

  sc.system = SymbolMatrix(sc.m, sc.n);
  for (const auto& e : entries) {
    std::string field = "system.entry." + std::to_string(e.i) + "." + std::to_string(e.j) +
                        ".xi" + std::to_string(e.k);
    if (e.i < 1 || e.i > sc.m || e.j < 1 || e.j > sc.m)
      throw ScenarioError(field, e.line, "entry index out of range for m=" + std::to_string(sc.m));
    if (e.k < 1 || e.k > sc.n)
      throw ScenarioError(field, e.line, "xi component out of range for n=" + std::to_string(sc.n));
    std::vector<Complex> c(e.coeffs.begin(), e.coeffs.end());
    sc.system.component(e.k - 1)(e.i - 1, e.j - 1) = TimePoly(std::move(c));
  }
  return sc;
}

inline Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("file", 0, "cannot open '" + path + "'");
  return parse_scenario_text(in);
}

}  // namespace whs
