#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "whs/energy.hpp"
#include "whs/growth_fit.hpp"

using namespace whs;

namespace {
Eigen::VectorXd xi1(double v) {
  Eigen::VectorXd xi(1);
  xi[0] = v;
  return xi;
}

SymbolMatrix jt_symbol() {
  SymbolMatrix A(2, 1);
  A.component(0)(0, 1) = TimePoly(1.0);
  A.component(0)(1, 0) = TimePoly({0, 0, 1});
  return A;
}

SymbolMatrix diag_symbol() {
  SymbolMatrix A(2, 1);
  A.component(0)(0, 0) = TimePoly(1.0);
  A.component(0)(1, 1) = TimePoly(2.0);
  return A;
}
}  // namespace

TEST_CASE("integrator accuracy on y' = i lambda y") {
  DormandPrince54 ode;
  double lam = 7.0;
  auto rhs = [&](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    return Complex(0.0, lam) * y;
  };
  Eigen::VectorXcd y0(1);
  y0[0] = Complex(1.0, 0.5);
  for (double tol : {1e-6, 1e-9}) {
    Eigen::VectorXcd yT = ode.integrate(rhs, 0.0, 1.0, y0, tol, 0.1);
    Complex exact = y0[0] * std::exp(Complex(0.0, lam));
    CHECK(std::abs(yT[0] - exact) < 500.0 * tol);
  }
}

TEST_CASE("integrator convergence order on a time-dependent oscillator") {
  // y' = i t y, exact y(T) = y0 exp(i T^2 / 2)
  DormandPrince54 ode;
  auto rhs = [](double t, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    return Complex(0.0, t) * y;
  };
  Eigen::VectorXcd y0 = Eigen::VectorXcd::Ones(1);
  Complex exact = std::exp(Complex(0.0, 2.0));
  double e6 = std::abs(ode.integrate(rhs, 0.0, 2.0, y0, 1e-6, 0.5)[0] - exact);
  double e9 = std::abs(ode.integrate(rhs, 0.0, 2.0, y0, 1e-9, 0.5)[0] - exact);
  CHECK(e6 < 1e-4);
  CHECK(e9 < e6);
  CHECK(e9 < 1e-7);
}

TEST_CASE("integrator norm conservation for a Hermitian generator") {
  DormandPrince54 ode;
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> rd(-1.0, 1.0);
  Eigen::MatrixXcd H(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) H(i, j) = Complex(rd(rng), rd(rng));
  H = (H + H.adjoint()).eval();
  auto rhs = [&](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    return Complex(0.0, 1.0) * (H * y);
  };
  Eigen::VectorXcd y0(3);
  y0 << 1.0, Complex(0.0, 1.0), -0.5;
  Eigen::VectorXcd yT = ode.integrate(rhs, 0.0, 3.0, y0, 1e-10, 0.2);
  CHECK(yT.norm() == doctest::Approx(y0.norm()).epsilon(1e-8));
}

TEST_CASE("integrator throws on blow-up in finite time") {
  DormandPrince54 ode;
  auto rhs = [](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    return y.array().square().matrix();  // y' = y^2, blows up at t = 1
  };
  Eigen::VectorXcd y0 = Eigen::VectorXcd::Ones(1);
  CHECK_THROWS_AS(ode.integrate(rhs, 0.0, 2.0, y0, 1e-8, 0.5),
                  std::exception);  // StiffnessFailure or NonFiniteState
}

TEST_CASE("initial state map satisfies the derivative substitution") {
  // V components must equal D_t^{j-1} u at 0 scaled by <xi>^{m-j}, where
  // u solves D_t u = A u. Check j = 2 against -i u'(0) = -i (iA(0)) g = A(0) g.
  SymbolMatrix A = jt_symbol();
  Eigen::VectorXd xi = xi1(3.0);
  Eigen::VectorXcd g(2);
  g << 1.0, Complex(0.5, -0.25);
  Eigen::VectorXcd V0 = initial_state(A, xi, g);
  double br = angle_bracket(xi);
  Eigen::VectorXcd w = A.eval(0.0, xi) * g;
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(V0[i * 2 + 0] - br * g[i]) < 1e-12);
    CHECK(std::abs(V0[i * 2 + 1] - w[i]) < 1e-12);
  }
}

TEST_CASE("constant diagonal system: amplification is exactly one") {
  SymbolMatrix A = diag_symbol();
  for (double x : {1.0, 8.0, 64.0}) {
    Eigen::VectorXd xi = xi1(x);
    BlockSylvesterSystem bs = block_sylvester_assemble(A, xi);
    SymmetriserPath sp = build_symmetriser(A, xi);
    Eigen::VectorXcd V0 = initial_state(A, xi, Eigen::VectorXcd::Ones(2));
    EnergyTrace tr = evolve_frequency(bs, sp, V0, 1.0, 1e-10);
    CHECK(tr.status == "ok");
    CHECK(tr.amplification == doctest::Approx(1.0).epsilon(1e-6));
    // Kovalevskaya energy flat over the whole trace
    for (double e : tr.E_kov) CHECK(e == doctest::Approx(tr.E_kov.front()).epsilon(1e-5));
  }
}

TEST_CASE("evolve_frequency on the jt system is finite with a shrinking bad set") {
  SymbolMatrix A = jt_symbol();
  double len_prev = -1.0;
  for (double x : {4.0, 32.0, 256.0}) {
    Eigen::VectorXd xi = xi1(x);
    BlockSylvesterSystem bs = block_sylvester_assemble(A, xi);
    SymmetriserPath sp = build_symmetriser(A, xi);
    Eigen::VectorXcd V0 = initial_state(A, xi, Eigen::VectorXcd::Ones(2));
    EnergyTrace tr = evolve_frequency(bs, sp, V0, 1.0, 1e-8);
    CHECK(tr.status == "ok");
    CHECK(std::isfinite(tr.amplification));
    CHECK(tr.amplification > 0.0);
    REQUIRE(tr.has_bad_set);
    CHECK(tr.bad_set.total_length() <= tr.bad_set.eps);
    if (len_prev >= 0.0) CHECK(tr.bad_set.total_length() < len_prev);
    len_prev = tr.bad_set.total_length();
    // E_kov is |V|^2 by definition at the sample points
    for (size_t i = 0; i < tr.V.size(); ++i)
      CHECK(tr.E_kov[i] == doctest::Approx(tr.V[i].squaredNorm()));
  }
}

TEST_CASE("sweep keeps row order and is deterministic across thread counts") {
  SymbolMatrix A = jt_symbol();
  std::vector<Eigen::VectorXd> xis;
  for (double x = 1.0; x <= 16.0; x *= 2.0) xis.push_back(xi1(x));
  auto r1 = sweep(A, xis, 1.0, 1e-8, 1);
  auto r4 = sweep(A, xis, 1.0, 1e-8, 4);
  REQUIRE(r1.size() == xis.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].xi_mag == xis[i].norm());
    CHECK(r1[i].status == "ok");
    CHECK(r1[i].amplification == r4[i].amplification);  // bitwise identical
    CHECK(r1[i].e_hyp_final == r4[i].e_hyp_final);
    CHECK(r1[i].bad_set_measure == r4[i].bad_set_measure);
  }
}

TEST_CASE("Gronwall certificate for the strict constant system") {
  SymbolMatrix A = diag_symbol();
  Eigen::VectorXd xi = xi1(8.0);
  BlockSylvesterSystem bs = block_sylvester_assemble(A, xi);
  SymmetriserPath sp = build_symmetriser(A, xi);
  Eigen::VectorXcd V0 = initial_state(A, xi, Eigen::VectorXcd::Ones(2));
  EnergyTrace tr = evolve_frequency(bs, sp, V0, 1.0, 1e-10);
  GronwallCertificate cert = gronwall_certificate(tr, bs, sp);
  CHECK(cert.c_L == 0.0);
  CHECK(cert.c_A > 0.0);
  CHECK(cert.kov_bound_holds);
  CHECK(cert.hyp_bound_bounded);
}

TEST_CASE("growth fit recovers synthetic polynomial and Gevrey laws") {
  auto make_table = [](auto amp_fn) {
    std::vector<SweepRow> t;
    for (double x = 1.0; x <= 1024.0; x *= 2.0) {
      SweepRow r;
      r.xi_mag = x;
      double br = std::sqrt(1.0 + x * x);
      r.amplification = amp_fn(br);
      t.push_back(r);
    }
    return t;
  };

  GrowthFit p = fit_growth(make_table([](double br) { return std::pow(br, 2.5); }));
  CHECK(p.model == "polynomial");
  CHECK(p.kappa == doctest::Approx(2.5).epsilon(1e-6));
  CHECK(p.r2_poly == doctest::Approx(1.0));

  GrowthFit g = fit_growth(
      make_table([](double br) { return std::exp(0.7 * std::pow(br, 0.5)); }));
  CHECK(g.model == "gevrey");
  CHECK(g.theta == doctest::Approx(0.5).epsilon(0.05));
  CHECK(g.c_gevrey == doctest::Approx(0.7).epsilon(0.05));

  // noise robustness: +-2% multiplicative noise keeps the classification
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> nd(0.98, 1.02);
  GrowthFit gn = fit_growth(make_table(
      [&](double br) { return nd(rng) * std::exp(0.7 * std::pow(br, 0.5)); }));
  CHECK(gn.model == "gevrey");
  CHECK(gn.theta == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("growth fit rejects short or narrow tables") {
  std::vector<SweepRow> few(4);
  for (int i = 0; i < 4; ++i) {
    few[i].xi_mag = std::pow(2.0, i);
    few[i].amplification = 1.0;
  }
  CHECK_THROWS_AS(fit_growth(few), InsufficientRange);

  std::vector<SweepRow> narrow(8);
  for (int i = 0; i < 8; ++i) {
    narrow[i].xi_mag = 1.0 + 0.1 * i;  // less than two decades of <xi>
    narrow[i].amplification = 1.0;
  }
  CHECK_THROWS_AS(fit_growth(narrow), InsufficientRange);
}
