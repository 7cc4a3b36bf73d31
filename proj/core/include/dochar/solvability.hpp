#pragma once

#include <string>
#include <vector>

#include "dochar/operator_models.hpp"
#include "dochar/spectral.hpp"

namespace dochar {

enum class SolvabilityRule { Subelliptic, PerturbedExceptional, FlatExceptional };
std::string to_string(SolvabilityRule rule);

struct Verdict {
  bool solvable = true;
  SolvabilityRule rule = SolvabilityRule::Subelliptic;
  /// "{±1,±3,±5,...}" for k = 1, "{±1}" for k > 1.
  std::string exceptional_set_used;
};

/// Whether a(0) lies in the exceptional set for this k.
bool is_exceptional(int k, double a0);

/// Local solvability verdict at the origin. Throws std::invalid_argument for
/// k < 1.
Verdict classify(int k, const CoefficientSpec& coeff);

struct NullResidual {
  /// ||g' - (eta - tau x^k) g|| / ||g|| for g = exp(eta x - tau x^{k+1}/(k+1)).
  double first_order = 0.0;
  /// ||(-d^2 + u^2 - u') g^|| / ||g^|| for u = eta + tau x^k and
  /// g^ = exp(-eta x - tau x^{k+1}/(k+1)).
  double second_order = 0.0;

  double total() const { return first_order + second_order; }
};

/// Central second-order differences on the interior of disc. Throws
/// OverflowGuard when either unnormalized function leaves double range and
/// std::invalid_argument unless eta, tau > 0.
NullResidual null_solution_residuals(int k, double eta, double tau,
                                     const Discretization& disc);
double null_solution_residual(int k, double eta, double tau,
                              const Discretization& disc);

/// (eta/tau)^{1/k}.
double null_critical_point(int k, double eta, double tau);

/// G_{eta,tau}(x), normalized so that it equals 1 at the critical point.
double normalized_null_solution(int k, double eta, double tau, double x);

struct ProbeOptions {
  /// phi_lambda has radius lambda^{-B} (k > 1).
  double B = 2.0;
  /// Points per axis of the 3D grid over the support of the cutoff (64
  /// intervals; odd so the grid hits the center).
  int grid = 65;
  double lambda_max = 256.0;
  /// Quadrature tolerance for the packet.
  double rel_tol = 1e-4;
};

struct ProbeRow {
  double lambda = 0.0;
  /// |int phi psi| / (||phi||_C0 ||L psi||_C0).
  double rho = 0.0;
  double int_phi_psi = 0.0;
  double norm_phi_c0 = 1.0;
  double norm_Lpsi_c0 = 0.0;
  double norm_psi_c0 = 0.0;
  /// ||L psi||_C0 / ||psi||_C0.
  double relative_residual = 0.0;
};

struct ProbeReport {
  int k = 0;
  std::string path;  // "packet" (k > 1) or "scaled" (k = 1)
  ProbeOptions options;
  std::vector<ProbeRow> rows;
  /// rho(lambda_{i+1}) / rho(lambda_i).
  std::vector<double> growth;
  /// Every growth factor is at least 2.
  bool unbounded = false;
};

/// Finite-lambda probe of the solvability inequality with the C0 norm as a
/// proxy. k > 1 uses the localized packet times its cutoff; k = 1 uses the
/// parabolically scaled Gaussian family. Throws GridBudget above
/// lambda_max, std::invalid_argument if a(0) is not exceptional.
ProbeReport solvability_probe(int k, const CoefficientSpec& coeff,
                              const std::vector<double>& lambdas,
                              const ProbeOptions& opts = {});

struct WitnessOptions {
  /// Plateau half-width of the fixed cutoff in x, y and t.
  double delta = 2.0;
  /// Box in the scaled variables (X, Y, T) that holds the base function.
  double box_x = 8.0;
  double box_y = 24.0;
  double box_t = 24.0;
  int nx = 121;
  int ny = 97;
  int nt = 161;
  /// Gauss panels per window axis.
  int panels = 3;
  double lambda_max = 64.0;
};

struct WitnessRow {
  double lambda = 0.0;
  double norm_F = 0.0;
  double norm_LF = 0.0;
  double ratio = 0.0;
  double norm_Ft = 0.0;
  /// ||d_t F_lambda|| / ||F_lambda|| / lambda^{k+1}.
  double dt_ratio_scaled = 0.0;
};

struct WitnessReport {
  int k = 0;
  WitnessOptions options;
  std::vector<WitnessRow> rows;
};

/// L2 witness family lambda^{(k+3)/2} f(lambda x, lambda y, lambda^{k+1} t)
/// zeta(x, y, t) built from Schwartz null solutions of the unperturbed
/// operator. Requires odd k, exceptional a(0) and a - a(0) = O(x^3).
WitnessReport l2_witness(int k, const CoefficientSpec& coeff,
                         const std::vector<double>& lambdas,
                         const WitnessOptions& opts = {});

}  // namespace dochar
