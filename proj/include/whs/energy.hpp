#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "whs/levi.hpp"
#include "whs/ode.hpp"
#include "whs/reduction.hpp"
#include "whs/symmetriser.hpp"

namespace whs {

// Per-frequency evolution record of the reduced system.
struct EnergyTrace {
  Eigen::VectorXd xi;
  std::vector<double> t_samples;
  std::vector<Eigen::VectorXcd> V;
  std::vector<double> E_kov;   // |V|^2
  std::vector<double> E_hyp;   // <Q_block V, V>, NaN where Delta has no path
  BadSet bad_set;
  bool has_bad_set = false;
  double amplification = 0.0;  // |V(T)| / |V(0)|
  std::string status = "ok";
};

// Initial data map: U^(i)_j(0) = <xi>^{m-j} (M_{j-1}(0) g)_i with
// M_0 = I, M_{j+1} = D_t M_j + M_j A  (back-substitution of D_t u = A u).
inline Eigen::VectorXcd initial_state(const SymbolMatrix& A, const Eigen::VectorXd& xi,
                                      const Eigen::VectorXcd& g) {
  const int m = A.size();
  const double br = angle_bracket(xi);
  PolyMatrix Axi = A.at_xi(xi);
  Eigen::VectorXcd V(m * m);
  PolyMatrix M = PolyMatrix::identity(m);
  for (int j = 1; j <= m; ++j) {
    if (j > 1) M = M.derivative() * Complex(0.0, -1.0) + M * Axi;
    Eigen::VectorXcd w = M.eval(0.0) * g;
    for (int i = 0; i < m; ++i) V[i * m + (j - 1)] = std::pow(br, m - j) * w[i];
  }
  return V;
}

// block-diagonal symmetriser <Q V, V> restricted to one repeated Q block
inline double hyperbolic_energy(const PolyMatrix& Q, double t, const Eigen::VectorXcd& V,
                                int m) {
  Eigen::MatrixXcd q = Q.eval(t);
  Complex e = 0.0;
  for (int i = 0; i < m; ++i) {
    auto v = V.segment(i * m, m);
    e += v.dot(q * v);  // conjugate-linear in the first argument
  }
  return e.real();
}

// Integrate D_t V - script A V + script L V = 0 as V' = i (A - L) V.
inline EnergyTrace evolve_frequency(const BlockSylvesterSystem& bs,
                                    const SymmetriserPath& sp,
                                    const Eigen::VectorXcd& V0, double T, double tol,
                                    int n_samples = 257, int bad_set_q = 1,
                                    double bad_set_c1 = 0.25) {
  EnergyTrace tr;
  tr.xi = bs.xi;
  const int m = bs.m;
  const double br = angle_bracket(bs.xi);

  if (!delta_identically_zero(sp.delta())) {
    double eps = std::exp(-1.0) / br;  // eps = e^-1 <xi>^-1
    tr.bad_set = bad_set_detect(sp.delta(), eps, bad_set_c1, bad_set_q, 0.0, T, bs.xi);
    tr.has_bad_set = true;
  }

  double sup_norm_A = 0.0;
  for (int i = 0; i <= 32; ++i)
    sup_norm_A = std::max(sup_norm_A, bs.eval_A(T * i / 32.0).operatorNorm());
  double max_step = 0.5 / (1.0 + sup_norm_A);

  auto rhs = [&](double t, const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return Complex(0.0, 1.0) * (bs.eval_A(t) * v - bs.eval_L(t) * v);
  };

  tr.t_samples.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) tr.t_samples.push_back(T * i / double(n_samples - 1));
  tr.V.assign(n_samples, Eigen::VectorXcd());
  size_t next = 0;
  double last_t = 0.0;
  Eigen::VectorXcd last_v = V0;
  auto hook = [&](double t, const Eigen::VectorXcd& v) {
    while (next < tr.t_samples.size() && tr.t_samples[next] <= t + 1e-15) {
      // nearest accepted state; adequate at the output densities used here
      double want = tr.t_samples[next];
      tr.V[next] = (want - last_t <= t - want) ? last_v : v;
      ++next;
    }
    last_t = t;
    last_v = v;
  };

  DormandPrince54 ode;
  Eigen::VectorXcd VT = ode.integrate(rhs, 0.0, T, V0, tol, max_step, hook);
  while (next < tr.t_samples.size()) tr.V[next++] = VT;

  for (size_t i = 0; i < tr.V.size(); ++i) {
    tr.E_kov.push_back(tr.V[i].squaredNorm());
    tr.E_hyp.push_back(hyperbolic_energy(sp.Q, tr.t_samples[i], tr.V[i], m));
  }
  double n0 = V0.norm();
  tr.amplification = n0 > 0.0 ? VT.norm() / n0 : 0.0;
  return tr;
}

struct SweepRow {
  double xi_mag = 0.0;
  int direction_index = 0;
  double amplification = 0.0;
  double e_kov_final = 0.0;
  double e_hyp_final = 0.0;
  double bad_set_measure = 0.0;
  std::string status = "ok";
};

// Independent per-frequency jobs; the result table keeps the input row
// order regardless of completion order.
inline std::vector<SweepRow> sweep(const SymbolMatrix& A,
                                   const std::vector<Eigen::VectorXd>& xi_list,
                                   double T, double tol, int threads = 0,
                                   int bad_set_q = 1,
                                   const std::vector<int>* direction_index = nullptr) {
  const int m = A.size();
  std::vector<SweepRow> rows(xi_list.size());
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());

  auto run_one = [&](size_t idx) {
    const Eigen::VectorXd& xi = xi_list[idx];
    SweepRow& row = rows[idx];
    row.xi_mag = xi.norm();
    row.direction_index = direction_index ? (*direction_index)[idx] : 0;
    try {
      BlockSylvesterSystem bs = block_sylvester_assemble(A, xi);
      SymmetriserPath sp = build_symmetriser(A, xi);
      Eigen::VectorXcd g = Eigen::VectorXcd::Ones(m);  // flat spectrum probe
      Eigen::VectorXcd V0 = initial_state(A, xi, g);
      EnergyTrace tr = evolve_frequency(bs, sp, V0, T, tol, 65, bad_set_q);
      row.amplification = tr.amplification;
      row.e_kov_final = tr.E_kov.back();
      row.e_hyp_final = tr.E_hyp.back();
      row.bad_set_measure = tr.has_bad_set ? tr.bad_set.total_length() : 0.0;
    } catch (const StiffnessFailure&) {
      row.status = "stiffness_failure";
    } catch (const NonFiniteState&) {
      row.status = "overflow";
    } catch (const std::exception&) {
      row.status = "error";
    }
  };

  std::atomic<size_t> cursor{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (size_t i = cursor.fetch_add(1); i < xi_list.size(); i = cursor.fetch_add(1))
        run_one(i);
    });
  for (auto& th : pool) th.join();
  return rows;
}

struct GronwallCertificate {
  double c_A = 0.0;       // sup ||script A|| / <xi>
  double c_L = 0.0;       // sup ||script L||
  double c_prime = 0.0;   // smallest c' in dE_hyp <= c'(1 + |d Delta|/Delta) E_hyp
  bool kov_bound_holds = true;
  bool hyp_bound_bounded = true;
};

inline GronwallCertificate gronwall_certificate(const EnergyTrace& tr,
                                                const BlockSylvesterSystem& bs,
                                                const SymmetriserPath& sp) {
  GronwallCertificate cert;
  const double br = angle_bracket(tr.xi);
  for (double t : tr.t_samples) {
    cert.c_A = std::max(cert.c_A, bs.eval_A(t).operatorNorm() / br);
    cert.c_L = std::max(cert.c_L, bs.eval_L(t).operatorNorm());
  }
  const TimePoly& delta = sp.delta();
  TimePoly ddelta = delta.derivative();
  double kov_rate_bound = 2.0 * (cert.c_A * br + cert.c_L);
  for (size_t i = 0; i + 1 < tr.t_samples.size(); ++i) {
    double t0 = tr.t_samples[i], t1 = tr.t_samples[i + 1];
    double tm = 0.5 * (t0 + t1);
    bool in_bad = tr.has_bad_set && tr.bad_set.contains(tm);
    if (in_bad || !tr.has_bad_set) {
      double rate = (std::log(std::max(tr.E_kov[i + 1], 1e-300)) -
                     std::log(std::max(tr.E_kov[i], 1e-300))) / (t1 - t0);
      if (rate > kov_rate_bound * (1.0 + 1e-6) + 1e-9) cert.kov_bound_holds = false;
    } else {
      double e0 = tr.E_hyp[i], e1 = tr.E_hyp[i + 1];
      if (e0 <= 0.0 || e1 <= 0.0) continue;
      double rate = (std::log(e1) - std::log(e0)) / (t1 - t0);
      double dval = delta.eval(tm).real();
      if (dval <= 0.0) continue;
      double factor = 1.0 + std::abs(ddelta.eval(tm).real()) / dval;
      double c = rate / factor;
      if (c > cert.c_prime) cert.c_prime = c;
    }
  }
  if (cert.c_prime > 1e12) cert.hyp_bound_bounded = false;
  return cert;
}

}  // namespace whs
