#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "dochar/hermite.hpp"
#include "dochar/operator_models.hpp"

namespace dochar {

/// Small-parameter expansion of B_{0,eps} about the oscillator mode n with
/// a(0) = 2n + 1: B ~ (H - (2n+1)) + eps beta1 + eps^2 beta2, where the
/// betas are multiplication by polynomials in y.
struct PerturbationProblem {
  int n = 0;
  int k = 1;
  std::vector<mpq_class> beta1;  // (k-1)(y^3 - (2n+1) y)
  std::vector<mpq_class> beta2;  // (k-1)((7k-11)/12 y^4 - (2n+1)(k-2)/2 y^2)

  static PerturbationProblem make(int k, int n);
};

struct SeriesResult {
  std::vector<mpq_class> lambdas;          // Lambda_0 .. Lambda_order
  std::vector<HermiteCoefficients> psis;   // psi_0, psi_1
};

/// Exact Rayleigh-Schroedinger coefficients up to order 1 or 2.
SeriesResult rs_step(const PerturbationProblem& problem, int order);

/// (k-1) n (n+1) / 2.
mpq_class lambda2_closed_form(int k, int n);

/// Lambda_2 assembled from the two squared norms of y psi_0, y^2 psi_0 and
/// lemma41_bracket(n), term by term.
mpq_class lambda2_from_bracket(int k, int n);

struct SmallEigenOptions {
  double theta = 0.5;
  /// Half-width of the y-domain; capped at 0.9/|eps| to stay clear of the
  /// second well for even k.
  double R = 12.0;
  int N = 8001;
  /// Combine grids h and h/2 to cancel the O(h^2) discretization error.
  bool richardson = true;
  double tol_eig = 1e-13;
  CutoffSpec cutoff{};
};

/// The unique eigenvalue of op in [-theta, theta]. Throws WindowEmpty or
/// WindowNotUnique. op should be in well-centered coordinates.
double small_eigenvalue(const OperatorInstance& op,
                        const SmallEigenOptions& opts = {});

struct EpsFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double resid = 0.0;
  std::vector<double> eps;
  std::vector<double> lambda;
};

/// Least-squares fit c0 + c1 eps + c2 eps^2 to the small eigenvalue of
/// B_{0,eps} with a = 2n + 1 constant.
EpsFit fit_eps_series(int k, int n, const std::vector<double>& eps_grid,
                      const SmallEigenOptions& opts = {});

/// Small eigenvalue of B_{z,eps} for each z in z_grid.
std::vector<std::pair<double, double>> eigenvalue_vs_z(
    int k, int n, const CoefficientSpec& coeff, double eps,
    const std::vector<double>& z_grid, const SmallEigenOptions& opts = {});

}  // namespace dochar
