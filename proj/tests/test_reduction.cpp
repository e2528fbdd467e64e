#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "whs/reduction.hpp"
#include "whs/spectral.hpp"

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

// relative residual of L o (D_t I - A) = mu I - C
double reduction_residual(const SymbolMatrix& A, const Eigen::VectorXd& xi) {
  const int m = A.size();
  OperatorPoly L = cofactor_operator(A, xi);
  auto [mu, C] = principal_and_lower(A, xi);
  OperatorPoly D = OperatorPoly::d_t(m) - OperatorPoly::multiplication(A.at_xi(xi));
  OperatorPoly lhs = compose(L, D);
  OperatorPoly rhs = mu - C;
  double scale = std::max({1.0, lhs.coeff_norm(), rhs.coeff_norm()});
  return op_residual(lhs, rhs) / scale;
}
}  // namespace

TEST_CASE("cofactor operator is the adjugate at frozen tau") {
  std::mt19937 rng(41);
  for (int m : {2, 3, 4}) {
    SymbolMatrix A = whs_test::random_symbol(rng, m, 2, 1.0);
    Eigen::VectorXd xi = xi1(1.5);
    OperatorPoly L = cofactor_operator(A, xi);
    double t = 0.3;
    Complex tau(0.8, 0.2);
    Eigen::MatrixXcd Lt = Eigen::MatrixXcd::Zero(m, m);
    for (int h = 0; h <= L.order(); ++h) Lt += L.coeff(h).eval(t) * std::pow(tau, double(h));
    Eigen::MatrixXcd M = tau * Eigen::MatrixXcd::Identity(m, m) - A.eval(t, xi);
    Eigen::MatrixXcd prod = Lt * M;  // = det(M) I
    Complex det = M.determinant();
    CHECK((prod - det * Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff() <
          1e-9 * (1.0 + std::abs(det)));
  }
}

TEST_CASE("operator identity L o (D_t - A) = mu - C, random symbols m = 2, 3, 4") {
  std::mt19937 rng(43);
  for (int m : {2, 3, 4})
    for (int it = 0; it < 5; ++it) {
      SymbolMatrix A = whs_test::random_symbol(rng, m, 3, 1.0);
      CHECK(reduction_residual(A, xi1(2.0)) < 1e-9);
    }
  CHECK(reduction_residual(jt_symbol(), xi1(4.0)) < 1e-9);
}

TEST_CASE("constant coefficients give C identically zero") {
  SymbolMatrix A(2, 1);
  A.component(0)(0, 0) = TimePoly(1.0);
  A.component(0)(0, 1) = TimePoly(0.5);
  A.component(0)(1, 1) = TimePoly(2.0);
  auto [mu, C] = principal_and_lower(A, xi1(3.0));
  CHECK(C.effective_order() == -1);
  CHECK(mu.order() == 2);
}

TEST_CASE("block structure of the assembled system") {
  SymbolMatrix A = jt_symbol();
  Eigen::VectorXd xi = xi1(2.0);
  double br = angle_bracket(xi);
  BlockSylvesterSystem bs = block_sylvester_assemble(A, xi);
  REQUIRE(bs.m == 2);
  // superdiagonal <xi>
  CHECK(bs.block(0, 1).eval(0.7).real() == doctest::Approx(br));
  CHECK(bs.block(0, 0).coeff_norm() == 0.0);
  // char poly of A at xi: tau^2 - t^2 xi^2, so b_1 = 0, b_2 = -t^2 xi^2
  // last row: col 1 -> -b_2 <xi>^{-1} = t^2 xi^2 / <xi>, col 2 -> -b_1 = 0
  double t = 0.6;
  CHECK(bs.block(1, 0).eval(t).real() == doctest::Approx(t * t * 4.0 / br));
  CHECK(bs.block(1, 1).coeff_norm() == 0.0);
  // script L supported on block-last rows only
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r % 2 != 1) CHECK(bs.lower(r, c).coeff_norm() == 0.0);
}

TEST_CASE("block spectrum is m copies of the symbol spectrum") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> td(0.0, 1.0), xd(1.0, 64.0);
  std::vector<SymbolMatrix> symbols{jt_symbol()};
  symbols.push_back(whs_test::random_symbol(rng, 3, 2, 1.0));
  for (const auto& A : symbols) {
    const int m = A.size();
    for (int s = 0; s < 50; ++s) {
      double t = td(rng);
      Eigen::VectorXd xi = xi1(xd(rng));
      BlockSylvesterSystem bs = block_sylvester_assemble(A, xi);
      Eigen::VectorXcd evA =
          Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(A.eval(t, xi), false).eigenvalues();
      Eigen::VectorXcd evB =
          Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(bs.eval_A(t), false).eigenvalues();
      std::vector<Complex> a, b;
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) a.push_back(evA[i]);
      for (int i = 0; i < m * m; ++i) b.push_back(evB[i]);
      // greedy nearest matching; defective points perturb eigenvalues by
      // ~ sqrt(eps) ||A||, and sorting mispairs conjugate clusters
      double scale = 1.0 + A.eval(t, xi).norm();
      std::vector<bool> used(b.size(), false);
      for (const auto& z : a) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < b.size(); ++i)
          if (!used[i] && std::abs(z - b[i]) < bd) { bd = std::abs(z - b[i]); best = int(i); }
        used[best] = true;
        CHECK(bd < 1e-7 * scale);
      }
    }
  }
}

TEST_CASE("lower order bound: zero for constant systems, grid-stable for jt") {
  SymbolMatrix K(2, 1);
  K.component(0)(0, 0) = TimePoly(1.0);
  K.component(0)(1, 1) = TimePoly(2.0);
  Eigen::VectorXd xi = xi1(2.0);
  BlockSylvesterSystem bsK = block_sylvester_assemble(K, xi);
  CHECK(lower_order_bound_check(bsK, K, uniform_grid(0.0, 1.0, 65), xi) == 0.0);

  SymbolMatrix A = jt_symbol();
  BlockSylvesterSystem bs = block_sylvester_assemble(A, xi);
  double c1 = lower_order_bound_check(bs, A, chebyshev_grid(0.0, 1.0, 257), xi);
  double c2 = lower_order_bound_check(bs, A, chebyshev_grid(0.0, 1.0, 513), xi);
  CHECK(std::isfinite(c1));
  CHECK(c1 > 0.0);
  CHECK(std::abs(c2 - c1) <= 0.05 * c1);
}
