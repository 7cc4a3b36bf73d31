#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dochar/operator_models.hpp"

namespace dochar {

struct SweepOptions {
  RegionConstants rc{};
  CutoffSpec cutoff{};
  double M = 8.0;
  int samples = 64;
  std::uint64_t seed = 0;
  /// Grid points for each chart-operator solve.
  int N = 4001;
  double tol_eig = 1e-12;
  /// Fraction of failed samples above which a shell is unreliable.
  double max_failure_fraction = 0.01;
};

struct ShellRecord {
  int q = 0;
  Region region = Region::C;
  int samples = 0;
  /// Fraction of successful samples with min |mu_j| <= 2^{-M q}.
  double frac_below = 0.0;
  /// Lebesgue measure of shell ∩ region times frac_below.
  double measure_est = 0.0;
  int failures = 0;
  bool unreliable = false;
  /// Area of shell ∩ region in the (eta, tau) plane.
  double area = 0.0;
  /// log2 of the largest chart-C Jacobian over the shell (C only).
  double log2_jacobian_max = 0.0;
  /// Smallest min-modulus value seen in the shell.
  double min_modulus_seen = 0.0;
};

struct SweepReport {
  std::vector<ShellRecord> shells;
  double M = 8.0;
  /// Slope of log2_jacobian_max against q (C sweeps with >= 2 shells).
  double r_emp = 0.0;
  std::string notes;
};

/// Quasi-random (eta, tau) with 2^q <= tau <= 2^{q+1} in the region, min
/// modulus through chart C (B_{z,eps}) or chart D (D_{w,eps}), rescaled.
/// For even k the eta tau > 0 half of C has no C chart and goes through D.
ShellRecord sweep_shell(int k, const CoefficientSpec& coeff, Region region,
                        int q, const SweepOptions& opts);

SweepReport sweep(int k, const CoefficientSpec& coeff, Region region, int q_lo,
                  int q_hi, const SweepOptions& opts);

/// min_j |mu_j(eta, tau)| of A_{eta,tau}, computed through the chart that
/// matches the region of (eta, tau).
double min_modulus_a(double eta, double tau, int k, const CoefficientSpec& coeff,
                     const SweepOptions& opts);

/// Header q,region,samples,frac_below,measure_est,failures; '\n' endings;
/// numbers in %.17g.
std::string to_csv(const SweepReport& report);

/// Lowest Dirichlet eigenvalue of A_{eta,tau} on [-delta0, delta0].
double bk_dirichlet_eigenvalue(double eta, double tau, int k,
                               const CoefficientSpec& coeff,
                               const CutoffSpec& cutoff, double delta0,
                               int N = 801);

struct BkOptions {
  std::uint64_t seed = 0;
  /// Sampling box in the (eta, tau) plane, in units of tau0.
  double tau_box = 16.0;
  int N = 801;
  CutoffSpec cutoff{};
};

struct BkReport {
  int samples = 0;
  double min_eigenvalue = 0.0;
  /// 1 / min_eigenvalue when positive, infinity otherwise.
  double implied_C = 0.0;
  int violations = 0;
  /// (eta, tau, eigenvalue) for every sample with eigenvalue <= 0.
  std::vector<std::array<double, 3>> violation_samples;
};

BkReport certify_Bk_positivity(int k, const CoefficientSpec& coeff,
                               const RegionConstants& rc, double delta0,
                               int samples, const BkOptions& opts = {});

struct GapResult {
  int count_small = 0;
  int count_gap = 0;
  bool gap_ok = false;
};

/// Eigenvalue counts of B_{z,eps} in [-theta, theta] and in
/// theta < |lambda| <= 4 theta. eps = 0 uses well-centered coordinates.
GapResult gap_check(int k, const CoefficientSpec& coeff, double z, double eps,
                    double theta, const CutoffSpec& cutoff = {},
                    double max_h = 0.01);

/// Point i of the 2D R2 low-discrepancy sequence shifted by (s0, s1).
std::array<double, 2> r2_point(std::uint64_t i, double s0, double s1);

}  // namespace dochar
