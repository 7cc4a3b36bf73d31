#include "doctest.h"

#include <cmath>
#include <random>

#include "dochar/errors.hpp"
#include "dochar/operator_models.hpp"
#include "dochar/spectral.hpp"

using namespace dochar;

TEST_CASE("coefficient kinds and vanishing order") {
  const auto c = CoefficientSpec::constant(1.0);
  CHECK_FALSE(c.vanishing_order().has_value());
  CHECK(c.perturbation(0.3) == 0.0);

  const auto p = CoefficientSpec::polynomial(1.0, {0.0, 0.0, 0.5, 1.0});
  REQUIRE(p.vanishing_order().has_value());
  CHECK(*p.vanishing_order() == 2);
  CHECK(p.perturbation(2.0) == doctest::Approx(0.5 * 4 + 8));
  CHECK(p.derivative_at_zero(2) == doctest::Approx(1.0));
  CHECK(p.derivative_at_zero(3) == doctest::Approx(6.0));
  CHECK_THROWS_AS(CoefficientSpec::polynomial(1.0, {1.0, 2.0}), std::invalid_argument);

  const auto f = CoefficientSpec::flat(3.0, 2.0);
  CHECK_FALSE(f.vanishing_order().has_value());
  CHECK(f.perturbation(0.0) == 0.0);
  for (int m = 1; m <= 6; ++m) CHECK(f.derivative_at_zero(m) == 0.0);
  CHECK(f.perturbation(1.0) == doctest::Approx(std::exp(-0.25)));
}

TEST_CASE("cutoff plateau, support and range") {
  const CutoffSpec z{0.2};
  CHECK(z(0.0) == 1.0);
  CHECK(z(0.2) == 1.0);
  CHECK(z(-0.2) == 1.0);
  CHECK(z(0.4) == 0.0);
  CHECK(z(-1.0) == 0.0);
  for (double x = 0.2; x <= 0.4; x += 0.001) {
    CHECK(z(x) >= 0.0);
    CHECK(z(x) <= 1.0);
    CHECK(z(x) == doctest::Approx(z(-x)));
  }
  // Derivatives against central differences.
  const double h = 1e-5;
  for (double x : {0.25, 0.3, 0.33, 0.37}) {
    CHECK(z.derivative(x) ==
          doctest::Approx((z(x + h) - z(x - h)) / (2 * h)).epsilon(1e-6));
    CHECK(z.second_derivative(x) ==
          doctest::Approx((z.derivative(x + h) - z.derivative(x - h)) / (2 * h))
              .epsilon(1e-5));
  }
}

TEST_CASE("potential examples") {
  const auto a1 = CoefficientSpec::constant(1.0);
  CHECK(evaluate_potential(OperatorInstance::family_a(0.0, 1.0, 1, a1), 0.0) == -1.0);
  CHECK(evaluate_potential(OperatorInstance::family_b(0.7, 0.5, 2, a1), 2.0) ==
        doctest::Approx(-1.0));
  CHECK(evaluate_potential(OperatorInstance::family_d(1.0, 0.3, 1, 2, a1), 0.0) == 1.0);
}

TEST_CASE("well-centered B chart matches the original chart") {
  const auto a = CoefficientSpec::polynomial(3.0, {0.0, 0.0, 1.0});
  for (int k : {1, 2, 3}) {
    const auto o = OperatorInstance::family_b(0.1, 0.05, k, a, {}, BChart::Original);
    const auto w = OperatorInstance::family_b(0.1, 0.05, k, a, {}, BChart::WellCentered);
    for (double y : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
      CHECK(w.potential(y) == doctest::Approx(o.potential(y + 20.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("chart C examples and round trip") {
  const ChartC c = chart_c(-0.5, 0.5, 2);
  CHECK(c.z == doctest::Approx(1.0));
  CHECK(c.eps == doctest::Approx(1.0));
  CHECK_THROWS_AS(chart_c(0.5, 0.5, 2), DomainError);

  const ChartC big = chart_c(-1000.0, 1e6, 2);
  CHECK(big.eps * big.eps == doctest::Approx(0.5 * std::pow(1000.0, -1.5) * 1e3));

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const int k = 1 + i % 4;
    const double tau = std::copysign(std::pow(10.0, 1 + 3 * std::fabs(u(gen))), u(gen));
    double eta = std::pow(10.0, 2 * u(gen)) * (u(gen) > 0 ? 1 : -1);
    if (k % 2 == 0 && eta * tau > 0) eta = -eta;
    const ChartC cc = chart_c(eta, tau, k);
    const auto [e2, t2] = chart_c_inverse(cc, k);
    CHECK(e2 == doctest::Approx(eta).epsilon(1e-12));
    CHECK(t2 == doctest::Approx(tau).epsilon(1e-12));
  }
}

TEST_CASE("chart D examples and round trip") {
  const ChartD d1 = chart_d(0.0, 16.0, 1);
  CHECK(d1.w == 0.0);
  CHECK(d1.eps == doctest::Approx(0.25));
  const ChartD d2 = chart_d(3.0, -8.0, 2);
  CHECK(d2.eps == doctest::Approx(0.5));
  CHECK(d2.w == doctest::Approx(-1.5));
  CHECK_THROWS_AS(chart_d(1.0, 0.0, 2), DomainError);
  for (double eta : {-30.0, -1.0, 0.5, 12.0}) {
    for (double tau : {-500.0, 3.0, 4000.0}) {
      const auto [e2, t2] = chart_d_inverse(chart_d(eta, tau, 3), 3);
      CHECK(e2 == doctest::Approx(eta).epsilon(1e-12));
      CHECK(t2 == doctest::Approx(tau).epsilon(1e-12));
    }
  }
}

TEST_CASE("jacobian of chart C integrates to the cell area") {
  // Map a (z, eps) rectangle forward and compare its (eta, tau) area,
  // computed as a polygon with many boundary points, with the integral of
  // the Jacobian.
  for (int k : {1, 2, 3}) {
    const double z0 = 0.3, z1 = 0.4, e0 = 0.05, e1 = 0.06;
    const int n = 400;
    double integral = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double z = z0 + (i + 0.5) * (z1 - z0) / n;
        const double e = e0 + (j + 0.5) * (e1 - e0) / n;
        integral += jacobian_c(z, e, k);
      }
    integral *= (z1 - z0) * (e1 - e0) / (double(n) * n);
    std::vector<std::pair<double, double>> poly;
    auto push = [&](double z, double e) { poly.push_back(chart_c_inverse({z, e, false}, k)); };
    for (int i = 0; i < n; ++i) push(z0 + (z1 - z0) * i / n, e0);
    for (int i = 0; i < n; ++i) push(z1, e0 + (e1 - e0) * i / n);
    for (int i = 0; i < n; ++i) push(z1 - (z1 - z0) * i / n, e1);
    for (int i = 0; i < n; ++i) push(z0, e1 - (e1 - e0) * i / n);
    double area = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& p = poly[i];
      const auto& q = poly[(i + 1) % poly.size()];
      area += p.first * q.second - q.first * p.second;
    }
    area = std::fabs(area) / 2.0;
    CHECK(integral == doctest::Approx(area).epsilon(0.01));
  }
}

TEST_CASE("region classification") {
  const RegionConstants rc{100.0, 2.0, 0.25};
  CHECK(classify_region(0.0, 50.0, 1, rc) == Region::B);
  CHECK(classify_region(5.0, 1e6, 1, rc) == Region::D);
  CHECK(classify_region(5e5, 1e6, 1, rc) == Region::B);
  CHECK(classify_region(5e3, 1e6, 1, rc) == Region::C);
  CHECK(rc.nested(1));
  CHECK_FALSE(RegionConstants{100.0, 10.0, 2.0}.nested(1));
}

TEST_CASE("sign flip identity A_{-eta,-tau}[-a] = A_{eta,tau}[a]") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto a = CoefficientSpec::polynomial(1.5, {0.0, 0.3, -0.7, 0.2});
  const auto na = a.negated();
  for (int i = 0; i < 200000; ++i) {
    const int k = 1 + i % 4;
    const double eta = 50 * u(gen), tau = 50 * u(gen), x = 2 * u(gen);
    const double v1 = OperatorInstance::family_a(eta, tau, k, a).potential(x);
    const double v2 = OperatorInstance::family_a(-eta, -tau, k, na).potential(x);
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("reflection symmetry for odd k and even b") {
  const auto a = CoefficientSpec::polynomial(1.0, {0.0, 0.0, 0.8, 0.0, -0.3});
  for (int k : {1, 3}) {
    const auto p = OperatorInstance::family_a(2.0, 5.0, k, a);
    const auto m = OperatorInstance::family_a(-2.0, 5.0, k, a);
    for (double x : {-1.3, -0.2, 0.0, 0.4, 1.1}) {
      CHECK(p.potential(-x) == doctest::Approx(m.potential(x)));
    }
    const Discretization d{6.0, 3000, 0.0};
    const auto sp = eigenvalues_in_window(p, d, -5.0, 30.0);
    const auto sm = eigenvalues_in_window(m, d, -5.0, 30.0);
    REQUIRE(sp.eigenvalues.size() == sm.eigenvalues.size());
    for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
      CHECK(sp.eigenvalues[i] == doctest::Approx(sm.eigenvalues[i]).epsilon(1e-8));
  }
}

TEST_CASE("every (eta, tau) gets exactly one region") {
  const RegionConstants rc{};
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double tau = std::copysign(std::pow(10.0, 4 * std::fabs(u(gen))), u(gen));
    const double eta = std::pow(10.0, 4 * u(gen)) * (u(gen) > 0 ? 1 : -1);
    const Region r = classify_region(eta, tau, 1 + i % 3, rc);
    CHECK((r == Region::B || r == Region::C || r == Region::D));
  }
}
