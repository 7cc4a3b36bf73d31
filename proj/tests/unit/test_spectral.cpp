#include "doctest.h"

#include <cmath>
#include <random>

#include "dochar/errors.hpp"
#include "dochar/spectral.hpp"

using namespace dochar;

namespace {
const PotentialFn kOsc = [](double y) { return y * y; };
}

TEST_CASE("oscillator window: h^2 error and Richardson value") {
  const Discretization d{12.0, 4000, 0.0};
  const auto s = eigenvalues_in_window(kOsc, d, 0.0, 10.0);
  const auto f = eigenvalues_in_window(kOsc, d.refined(), 0.0, 10.0);
  REQUIRE(s.eigenvalues.size() == 5);
  REQUIRE(f.eigenvalues.size() == 5);
  const double h2 = d.h() * d.h();
  for (int j = 0; j < 5; ++j) {
    const double exact = 2 * j + 1;
    CHECK(std::fabs(s.eigenvalues[j] - exact) <= h2 * exact * exact);
    const double rich = (4 * f.eigenvalues[j] - s.eigenvalues[j]) / 3;
    CHECK(rich == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("shifted oscillator has a single zero eigenvalue near 0") {
  const auto s = eigenvalues_in_window([](double y) { return y * y - 1; },
                                       Discretization{12.0, 8000, 0.0}, -0.5, 0.5);
  REQUIRE(s.eigenvalues.size() == 1);
  CHECK(std::fabs(s.eigenvalues[0]) < 1e-6);
}

TEST_CASE("factorized A operators are nonnegative") {
  const auto a = CoefficientSpec::constant(1.0);
  for (int k : {1, 2, 3}) {
    for (auto [eta, tau] : {std::pair{1.0, 1.0}, {-3.0, 2.0}, {0.5, -4.0}, {10.0, 20.0}}) {
      const auto op = OperatorInstance::family_a(eta, tau, k, a, CutoffSpec{});
      // The FD ground level of a factorized operator sits O(h^2) below
      // zero; one Richardson step removes that.
      const Discretization d = covering_discretization(op, 5.0, 4000);
      const double c = FdOperator(op.potential_fn(), d).eigenvalue(0, 1e-13);
      const double f = FdOperator(op.potential_fn(), d.refined()).eigenvalue(0, 1e-13);
      CHECK((4 * f - c) / 3 >= -1e-7);
    }
  }
}

TEST_CASE("min modulus") {
  const Discretization d{12.0, 8000, 0.0};
  CHECK(min_modulus_eigenvalue(kOsc, d) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(min_modulus_eigenvalue([](double y) { return y * y - 3; }, d) < 1e-5);
  // k = 2, a = 1, b = 0, eps = 0.1: Lambda_2 = 0 for n = 0, so the small
  // eigenvalue is O(eps^3).
  const auto op = OperatorInstance::family_b(0.0, 0.1, 2, CoefficientSpec::constant(1.0),
                                             {}, BChart::WellCentered);
  const double m = min_modulus_eigenvalue(op, Discretization{8.0, 16001, 0.0}, 1e-12);
  CHECK(m < 2e-3);
}

TEST_CASE("decay diagnostic") {
  const auto osc = OperatorInstance::family_b(0.0, 0.0, 1, CoefficientSpec::constant(1.0),
                                              {}, BChart::WellCentered);
  const Discretization d{10.0, 8000, 0.0};
  const double v = decay_diagnostic(osc, d, 0, 0.5);
  // Oracle: int e^{-y^2 + r|y|}(1 + y^2) / int e^{-y^2} by the trapezoid rule.
  double num = 0, den = 0;
  for (int i = -20000; i <= 20000; ++i) {
    const double y = i * 5e-4;
    num += std::exp(-y * y + 0.5 * std::fabs(y)) * (1 + y * y);
    den += std::exp(-y * y);
  }
  CHECK(v <= 4.0);
  CHECK(v == doctest::Approx(num / den).epsilon(2e-3));
  // r = 0: 1 + ||phi'||^2/||phi||^2 = 1 + 1/2 for the ground state.
  CHECK(decay_diagnostic(osc, d, 0, 0.0) == doctest::Approx(1.5).epsilon(1e-4));

  const auto a = CoefficientSpec::constant(1.0);
  auto diag = [&](double eps) {
    const auto op = OperatorInstance::family_b(0.0, eps, 2, a);
    const Discretization dd = covering_discretization(op, 1.0, 8000);
    return decay_diagnostic(op, dd, 0, 0.25);
  };
  const double r = diag(0.1) / diag(0.2);
  CHECK(r <= 2.0);
  CHECK(r >= 0.5);
}

TEST_CASE("refine_until") {
  const auto s = refine_until(kOsc, Discretization{12.0, 8000, 0.0}, 0.0, 10.0, 1e-8);
  CHECK(s.converged);
  for (int j = 0; j < 5; ++j) CHECK(std::fabs(s.eigenvalues[j] - (2 * j + 1)) < 1e-7);

  RefineOptions ro;
  ro.want_vectors = true;
  const auto small = refine_until(kOsc, Discretization{3.0, 500, 0.0}, 0.0, 4.0, 1e-6, ro);
  CHECK(small.converged);
  CHECK(small.disc.R > 3.0);
  REQUIRE(small.eigenvalues.size() == 2);
  CHECK(small.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(small.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-5));

  CHECK_THROWS_AS(refine_until(kOsc, Discretization{12.0, 200, 0.0}, 0.0, 4.0, 1e-30),
                  BudgetExceeded);
}

TEST_CASE("sturm count agrees with the eigenvalue list") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto op = OperatorInstance::family_a(-4.0, 3.0, 2, CoefficientSpec::flat(1.0, 2.0),
                                             CutoffSpec{});
  const Discretization d = covering_discretization(op, 40.0, 1500);
  const FdOperator fd(op.potential_fn(), d);
  const auto s = eigenvalues_in_window(op, d, -20.0, 60.0);
  for (int i = 0; i < 100; ++i) {
    const double lam = -20.0 + 80.0 * u(gen);
    int below = 0;
    for (double e : s.eigenvalues) below += e < lam;
    CHECK(fd.sturm_count(lam) - fd.sturm_count(-20.0) == below);
  }
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i)
    CHECK(s.eigenvalues[i] - s.eigenvalues[i - 1] > 1e-8);
}

TEST_CASE("eigenvectors: unit norm, orthogonal, sign rule") {
  SolverOptions so;
  so.want_vectors = true;
  const auto s = eigenvalues_in_window(kOsc, Discretization{10.0, 2000, 0.0}, 0.0, 8.0, so);
  REQUIRE(s.eigenvectors.size() == s.eigenvalues.size());
  for (std::size_t i = 0; i < s.eigenvectors.size(); ++i) {
    const auto& v = s.eigenvectors[i];
    double nn = 0, vmax = 0;
    for (double x : v) {
      nn += x * x;
      vmax = std::max(vmax, std::fabs(x));
    }
    CHECK(nn == doctest::Approx(1.0));
    for (double x : v) {
      if (std::fabs(x) > 1e-8 * vmax) {
        CHECK(x > 0);
        break;
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0;
      for (std::size_t m = 0; m < v.size(); ++m) dot += v[m] * s.eigenvectors[j][m];
      CHECK(std::fabs(dot) < 1e-8);
    }
  }
}

TEST_CASE("Richardson order of the grid error") {
  const Discretization d{10.0, 1000, 0.0};
  const auto e1 = eigenvalues_in_window(kOsc, d, 0.0, 6.0).eigenvalues;
  const auto e2 = eigenvalues_in_window(kOsc, d.refined(), 0.0, 6.0).eigenvalues;
  const auto e3 = eigenvalues_in_window(kOsc, d.refined().refined(), 0.0, 6.0).eigenvalues;
  for (int j = 0; j < 3; ++j) {
    const double r = (e1[j] - (2 * j + 1)) / (e2[j] - (2 * j + 1));
    const double r2 = (e2[j] - (2 * j + 1)) / (e3[j] - (2 * j + 1));
    CHECK(r >= 3.5);
    CHECK(r <= 4.5);
    CHECK(r2 >= 3.5);
    CHECK(r2 <= 4.5);
  }
}

TEST_CASE("chart consistency of spectra") {
  // Ground levels compared after one Richardson step, since the A chart
  // squeezes the well into a small fraction of its covering interval.
  auto ground = [](const OperatorInstance& op, double hi) {
    const Discretization d = covering_discretization(op, hi, 12000);
    const double c = FdOperator(op.potential_fn(), d).eigenvalue(0, 1e-11);
    const double f = FdOperator(op.potential_fn(), d.refined()).eigenvalue(0, 1e-11);
    return (4 * f - c) / 3;
  };
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto a = CoefficientSpec::polynomial(1.0, {0.0, 0.0, 1.0});
  const CutoffSpec cut{0.5};
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + i % 2;
    const double tau = 200.0 + 800.0 * u(gen);
    const double eta = -(3.0 + 0.2 * u(gen) * std::sqrt(tau));
    const auto A = OperatorInstance::family_a(eta, tau, k, a, cut);
    const double ma = ground(A, 200.0);
    const ChartC c = chart_c(eta, tau, k);
    const double mb = scale_c(c) * ground(operator_from_chart(c, k, a, cut), 1.0);
    const ChartD dch = chart_d(eta, tau, k);
    const double md = scale_d(dch) * ground(operator_from_chart(dch, k, a, cut), 5.0);
    CHECK(mb == doctest::Approx(ma).epsilon(1e-4));
    CHECK(md == doctest::Approx(ma).epsilon(1e-4));
  }
}

TEST_CASE("chart D scaling identity on converged grids") {
  const auto a = CoefficientSpec::constant(1.0);
  const double eta = 3.0, tau = 27.0;
  const int k = 2;
  const auto A = OperatorInstance::family_a(eta, tau, k, a);
  const ChartD dch = chart_d(eta, tau, k);
  const auto D = operator_from_chart(dch, k, a, CutoffSpec{});
  const auto sa = refine_until(A, covering_discretization(A, 60.0, 4000), -1.0, 60.0, 1e-6);
  const double s = scale_d(dch);
  const auto sd = refine_until(D, covering_discretization(D, 60.0 / s, 4000), -1.0 / s,
                               60.0 / s, 1e-6 / s);
  REQUIRE(sa.eigenvalues.size() == sd.eigenvalues.size());
  for (std::size_t i = 0; i < sa.eigenvalues.size(); ++i)
    CHECK(s * sd.eigenvalues[i] == doctest::Approx(sa.eigenvalues[i]).epsilon(1e-6));
}
