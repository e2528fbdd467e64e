#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "whs/symmetriser.hpp"

using namespace whs;

namespace {
Eigen::VectorXd xi1(double v) {
  Eigen::VectorXd xi(1);
  xi[0] = v;
  return xi;
}

bool poly_close(const TimePoly& a, const TimePoly& b, double tol = 1e-10) {
  return (a - b).coeff_norm() <= tol * std::max({1.0, a.coeff_norm(), b.coeff_norm()});
}
}  // namespace

TEST_CASE("char_poly_path matches numeric eigenvalues") {
  std::mt19937 rng(11);
  for (int it = 0; it < 20; ++it) {
    SymbolMatrix A = whs_test::random_symbol(rng, 3, 2, 1.0);
    Eigen::VectorXd xi = xi1(2.0);
    CharPolyPath cp = char_poly_path(A, xi);
    double t = 0.6;
    Eigen::MatrixXcd A0 = A.eval(t, xi) / angle_bracket(xi);
    Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(A0, false).eigenvalues();
    for (int i = 0; i < ev.size(); ++i)
      CHECK(std::abs(cp.eval(t, ev[i])) < 1e-9 * std::pow(1.0 + std::abs(ev[i]), 3));
  }
}

TEST_CASE("m = 2 closed-form symmetriser") {
  std::mt19937 rng(5);
  for (int it = 0; it < 25; ++it) {
    TimePoly mu1 = whs_test::random_time_poly(rng, 2);
    TimePoly mu2 = whs_test::random_time_poly(rng, 2);
    CharPolyPath cp = whs_test::path_from_eigenvalues({mu1, mu2}, xi1(1.0));
    SymmetriserPath sp = build_symmetriser(cp);

    TimePoly s = mu1 + mu2;
    CHECK(poly_close(sp.Q(0, 0), mu1 * mu1 + mu2 * mu2));
    CHECK(poly_close(sp.Q(0, 1), -s));
    CHECK(poly_close(sp.Q(1, 0), -s));
    CHECK(poly_close(sp.Q(1, 1), TimePoly(2.0)));

    TimePoly d = mu1 - mu2;
    CHECK(poly_close(sp.delta(), d * d));
    CHECK(poly_close(sp.minors[0], TimePoly(2.0)));
  }
}

TEST_CASE("Sylvester example t^2 symbol: diagonal Q, psi identically zero") {
  SymbolMatrix A(2, 1);
  A.component(0)(0, 1) = TimePoly(1.0);
  A.component(0)(1, 0) = TimePoly({0, 0, 1});
  Eigen::VectorXd xi = xi1(3.0);
  SymmetriserPath sp = build_symmetriser(A, xi);

  double c2 = 9.0 / (1.0 + 9.0);  // (xi / <xi>)^2
  CHECK(poly_close(sp.Q(0, 0), TimePoly({0, 0, 2 * c2})));
  CHECK(poly_close(sp.Q(0, 1), TimePoly()));
  CHECK(poly_close(sp.Q(1, 1), TimePoly(2.0)));
  CHECK(poly_close(sp.delta(), TimePoly({0, 0, 4 * c2})));
  CHECK(sp.psi_defined);
  CHECK(sp.psi.coeff_norm() < 1e-12);
}

TEST_CASE("Bezoutian determinant is the discriminant (m = 3)") {
  std::mt19937 rng(17);
  for (int it = 0; it < 15; ++it) {
    std::vector<TimePoly> mu(3);
    for (auto& p : mu) p = whs_test::random_time_poly(rng, 1);
    CharPolyPath cp = whs_test::path_from_eigenvalues(mu, xi1(1.0));
    SymmetriserPath sp = build_symmetriser(cp);
    for (double t : {0.1, 0.5, 0.9}) {
      Complex disc = 1.0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          Complex d = mu[i].eval(t) - mu[j].eval(t);
          disc *= d * d;
        }
      Complex det = sp.delta().eval(t);
      CHECK(std::abs(det - disc) < 1e-8 * (1.0 + std::abs(disc)));
    }
  }
}

TEST_CASE("Q symmetric, positive semidefinite, and symmetrises the companion symbol") {
  std::mt19937 rng(23);
  for (int it = 0; it < 15; ++it) {
    std::vector<TimePoly> mu(3);
    for (auto& p : mu) p = whs_test::random_time_poly(rng, 2);
    CharPolyPath cp = whs_test::path_from_eigenvalues(mu, xi1(1.0));
    SymmetriserPath sp = build_symmetriser(cp);
    for (double t : {0.0, 0.3, 0.8}) {
      Eigen::MatrixXcd Q = sp.Q.eval(t);
      CHECK((Q - Q.transpose()).cwiseAbs().maxCoeff() < 1e-10);
      Eigen::MatrixXcd A0 = whs_test::companion_at(cp, t).cast<Complex>();
      Eigen::MatrixXcd QA = Q * A0;
      CHECK((QA - QA.transpose()).cwiseAbs().maxCoeff() <
            1e-9 * (1.0 + QA.cwiseAbs().maxCoeff()));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q.real());
      CHECK(es.eigenvalues().minCoeff() > -1e-9 * (1.0 + Q.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("generalised Hamilton-Cayley coefficients") {
  std::mt19937 rng(29);
  for (int m : {2, 3}) {
    for (int it = 0; it < 10; ++it) {
      std::vector<TimePoly> mu(m);
      for (auto& p : mu) p = whs_test::random_time_poly(rng, 2);
      SymmetriserPath sp = build_symmetriser(whs_test::path_from_eigenvalues(mu, xi1(1.0)));

      // d_0 = det Q, d_1 = -d_t det Q (Jacobi), d_2 = psi
      CHECK(poly_close(sp.hc[0], sp.delta(), 1e-8));
      CHECK(poly_close(sp.hc[1], -sp.delta().derivative(), 1e-8));
      CHECK(poly_close(sp.hc[2], sp.psi, 1e-8));

      // det(tau Q - Qdot) = sum_j d_j tau^{m-j} at sample points
      double t = 0.41;
      Complex tau(0.7, 0.0);
      Eigen::MatrixXcd M = tau * sp.Q.eval(t) - sp.Q.derivative().eval(t);
      Complex lhs = M.determinant();
      Complex rhs = 0.0;
      for (int j = 0; j <= m; ++j)
        rhs += sp.hc[j].eval(t) * std::pow(tau, double(m - j));
      CHECK(std::abs(lhs - rhs) < 1e-7 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("trailing principal minors follow the nested block pattern") {
  std::mt19937 rng(31);
  std::vector<TimePoly> mu(3);
  for (auto& p : mu) p = whs_test::random_time_poly(rng, 1);
  SymmetriserPath sp = build_symmetriser(whs_test::path_from_eigenvalues(mu, xi1(1.0)));
  REQUIRE(sp.minors.size() == 3);
  // Delta_1 is the corner entry Q_{mm} = m (Bezoutian of monic p and p')
  CHECK(poly_close(sp.minors[0], TimePoly(3.0)));
  double t = 0.55;
  Eigen::MatrixXcd Q = sp.Q.eval(t);
  CHECK(std::abs(sp.minors[1].eval(t) - Q.bottomRightCorner(2, 2).determinant()) < 1e-9);
  CHECK(std::abs(sp.minors[2].eval(t) - Q.determinant()) < 1e-9);
}
