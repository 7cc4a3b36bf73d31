#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "dochar/regions.hpp"
#include "dochar/spectral.hpp"
#include "dochar/sublevel.hpp"
#include "dochar/uncertainty.hpp"

using namespace dochar;

TEST_CASE("sweep is deterministic and well formed") {
  SweepOptions o;
  o.samples = 32;
  o.seed = 7;
  const auto flat = CoefficientSpec::flat(1.0, 1.0);
  const auto r1 = sweep(2, flat, Region::C, 7, 8, o);
  const auto r2 = sweep(2, flat, Region::C, 7, 8, o);
  CHECK(to_csv(r1) == to_csv(r2));
  REQUIRE(r1.shells.size() == 2);
  CHECK(r1.shells[0].q == 7);
  CHECK(r1.shells[1].q == 8);
  for (const auto& s : r1.shells) {
    CHECK(s.frac_below >= 0.0);
    CHECK(s.frac_below <= 1.0);
    CHECK(s.failures == 0);
  }
  CHECK(to_csv(r1).rfind("q,region,samples,frac_below,measure_est,failures\n", 0) == 0);
  o.seed = 8;
  const auto r3 = sweep(2, flat, Region::C, 7, 8, o);
  CHECK(r3.shells[0].min_modulus_seen != r1.shells[0].min_modulus_seen);
}

TEST_CASE("sweep sanity") {
  SweepOptions o;
  o.samples = 32;
  o.M = 1.0;
  // a(0) = 1 is exceptional for k = 2, so small levels must show up.
  const auto one = sweep_shell(2, CoefficientSpec::constant(1.0), Region::C, 8, o);
  CHECK(one.frac_below > 0.0);
  const auto three = sweep_shell(2, CoefficientSpec::constant(3.0), Region::C, 8, o);
  CHECK(three.frac_below == 0.0);
  CHECK(three.min_modulus_seen > 0.0);
  const auto d = sweep_shell(1, CoefficientSpec::constant(1.0), Region::D, 8, o);
  CHECK(d.failures == 0);
  CHECK_THROWS_AS(sweep_shell(2, CoefficientSpec::constant(1.0), Region::C, 3, o),
                  std::invalid_argument);
}

TEST_CASE("empirical Jacobian exponent") {
  SweepOptions o;
  o.samples = 32;
  const auto r = sweep(1, CoefficientSpec::constant(1.0), Region::C, 7, 9, o);
  CHECK(r.r_emp == doctest::Approx(2.5).epsilon(0.02));
}

TEST_CASE("positivity near the origin of the frequency plane") {
  const auto a = CoefficientSpec::constant(1.0);
  const double d0 = 0.05;
  const double lam = bk_dirichlet_eigenvalue(0.0, 0.5, 1, a, CutoffSpec{}, d0);
  CHECK(lam >= 0.5 / (d0 * d0) - 100.0);
  // Quadratic growth in tau along |eta| = 2 gamma1 |tau|.
  const double l1 = bk_dirichlet_eigenvalue(0.5 * 4000, 4000, 1, a, CutoffSpec{}, 0.2, 2001);
  const double l2 = bk_dirichlet_eigenvalue(0.5 * 8000, 8000, 1, a, CutoffSpec{}, 0.2, 2001);
  CHECK(l2 / l1 == doctest::Approx(4.0).epsilon(0.1));

  const auto rep = certify_Bk_positivity(1, a, RegionConstants{}, d0, 64);
  CHECK(rep.samples == 64);
  CHECK(rep.violations == 0);
  CHECK(rep.implied_C > 0.0);

  const auto bad = certify_Bk_positivity(1, CoefficientSpec::constant(3.0),
                                         RegionConstants{1000.0, 2.0, 0.5}, 10.0, 64);
  CHECK(bad.violations > 0);
}

TEST_CASE("gap counts") {
  const auto one = CoefficientSpec::constant(1.0);
  const auto g = gap_check(2, one, 0.0, 0.1, 0.3);
  CHECK(g.count_small == 1);
  CHECK(g.count_gap == 0);
  CHECK(g.gap_ok);
  CHECK(gap_check(2, CoefficientSpec::constant(2.0), 0.0, 0.1, 0.3).count_small == 0);
}

TEST_CASE("zero-eps spectrum is the shifted oscillator") {
  const auto a = CoefficientSpec::polynomial(1.0, {0.0, 0.0, 1.0});
  const auto op = OperatorInstance::family_b(0.3, 0.0, 2, a, CutoffSpec{0.5},
                                             BChart::WellCentered);
  const auto s = refine_until(op, Discretization{10.0, 4000, 0.0}, -1.0, 4.5, 1e-9);
  REQUIRE(s.eigenvalues.size() == 3);
  for (int j = 0; j < 3; ++j)
    CHECK(s.eigenvalues[j] == doctest::Approx(2 * j + 1 - 1.0 - 0.09).epsilon(1e-7));
}

TEST_CASE("sublevel measures") {
  const int res = 1000;
  const double cell = 2.0 / res;
  const auto lin = sample_grid([](double y) { return y; }, res);
  CHECK(std::fabs(sublevel_measure(lin, 0.1) - 0.2) <= cell);
  const auto sq = sample_grid([](double y) { return y * y; }, res);
  CHECK(std::fabs(sublevel_measure(sq, 0.01) - 0.2) <= cell);
  for (int m : {1, 2, 3}) {
    const auto f = sample_grid([m](double y) { return std::pow(y, m); }, 1 << 20);
    const double e = sublevel_exponent(f, {1e-4, 1e-3, 1e-2, 1e-1});
    CHECK(e == doctest::Approx(1.0 / m).epsilon(0.05));
  }
  const auto f2 = sample_grid([](double x, double y) { return x * x + y * y; }, 512);
  CHECK(sublevel_measure(f2, 0.25) == doctest::Approx(M_PI * 0.25).epsilon(0.02));
  CHECK_THROWS_AS(sublevel_measure(sample_grid([](double y) { return y; }, 100), 0.1),
                  std::invalid_argument);
}

TEST_CASE("uncertainty inequality") {
  const int n = 1024;
  std::vector<std::complex<double>> f(n, 0.0);
  f[17] = 1.0;
  CHECK(uncertainty_check(f, 1, {}));
  std::vector<int> E;
  for (int i = 0; i < n / 32; ++i) E.push_back(3 * i);
  CHECK(uncertainty_check(f, 1, E));
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::complex<double>> g(n, 0.0);
    const int s = 1 + static_cast<int>(gen() % 8);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), gen);
    for (int i = 0; i < s; ++i)
      g[idx[i]] = {double(gen() % 1000) / 500 - 1, double(gen() % 1000) / 500 - 1};
    std::shuffle(idx.begin(), idx.end(), gen);
    const int e = static_cast<int>(gen() % (n / (16 * s) + 1));
    CHECK(uncertainty_check(g, s, std::vector<int>(idx.begin(), idx.begin() + e)));
  }
  CHECK_THROWS_AS(uncertainty_check(f, 1, std::vector<int>(n / 8, 0)),
                  std::invalid_argument);
}

TEST_CASE("unitary DFT preserves the norm") {
  std::vector<std::complex<double>> f(256);
  for (int i = 0; i < 256; ++i) f[i] = {std::sin(i * 0.3), std::cos(i * 0.11)};
  const auto g = unitary_dft(f);
  double a = 0, b = 0;
  for (int i = 0; i < 256; ++i) {
    a += std::norm(f[i]);
    b += std::norm(g[i]);
  }
  CHECK(b == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("low-discrepancy points stay in the unit square") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto p = r2_point(i, 0.3, 0.9);
    CHECK(p[0] >= 0.0);
    CHECK(p[0] < 1.0);
    CHECK(p[1] >= 0.0);
    CHECK(p[1] < 1.0);
  }
}
