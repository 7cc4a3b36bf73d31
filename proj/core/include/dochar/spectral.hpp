#pragma once

#include <functional>
#include <vector>

#include "dochar/operator_models.hpp"

namespace dochar {

using PotentialFn = std::function<double(double)>;

/// Uniform Dirichlet grid on [center - R, center + R] with N interior
/// points x_i = center - R + (i+1) h, h = 2R/(N+1).
struct Discretization {
  double R = 10.0;
  int N = 2000;
  double center = 0.0;

  double h() const { return 2.0 * R / (N + 1); }
  double x(int i) const { return center - R + (i + 1) * h(); }
  /// Throws std::invalid_argument unless N >= 16 and R > 0.
  void validate() const;
  /// Same interval, h halved exactly (N -> 2N + 1).
  Discretization refined() const;
};

/// Symmetric tridiagonal matrix: diagonal d (size n), off-diagonal e
/// (size n - 1, e[i] couples i and i+1).
struct SymTridiag {
  std::vector<double> d;
  std::vector<double> e;

  int size() const { return static_cast<int>(d.size()); }
};

/// Number of eigenvalues strictly below lambda (LDL^T pivot signs).
int sturm_count(const SymTridiag& t, double lambda);

/// [lo, hi] containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymTridiag& t);

/// The second-difference matrix -u'' + V u on a uniform grid, kept as
/// potential samples so the Sturm count can run in the scaled Riccati form
/// g_i = h^2 (V_i - lambda) + g_{i-1} / (1 + g_{i-1}), which loses no
/// digits to the 2/h^2 diagonal on fine grids.
class FdOperator {
 public:
  FdOperator(const PotentialFn& V, const Discretization& disc);

  const Discretization& disc() const { return disc_; }
  const std::vector<double>& potential() const { return v_; }
  int size() const { return static_cast<int>(v_.size()); }

  int sturm_count(double lambda) const;
  std::pair<double, double> gershgorin_bounds() const;
  SymTridiag matrix() const;

  /// Eigenvalue number j (0-based, ascending) by bisection.
  double eigenvalue(int j, double tol) const;

  /// Unit l2-norm eigenvector for the eigenvalue lambda by inverse
  /// iteration, orthogonalized against `against`. Sign: first entry with
  /// magnitude above 1e-8 of the maximum is positive.
  std::vector<double> eigenvector(double lambda,
                                  const std::vector<std::vector<double>>& against,
                                  int max_iter) const;

 private:
  Discretization disc_;
  std::vector<double> v_;
};

struct SolverOptions {
  double tol_eig = 1e-9;
  int max_iter = 50;
  bool want_vectors = false;
};

struct Spectrum {
  std::vector<double> eigenvalues;
  /// Present only when requested; unit l2-norm grid vectors.
  std::vector<std::vector<double>> eigenvectors;
  bool converged = false;
  double est_error = 0.0;
  Discretization disc;
  /// Eigenvalue lists of every refinement level (refine_until only).
  std::vector<std::vector<double>> history;
  std::vector<Discretization> levels;
};

Spectrum eigenvalues_in_window(const PotentialFn& V, const Discretization& disc,
                               double lo, double hi,
                               const SolverOptions& opts = {});
Spectrum eigenvalues_in_window(const OperatorInstance& op,
                               const Discretization& disc, double lo,
                               double hi, const SolverOptions& opts = {});

/// min_j |mu_j|, taken from the two eigenvalues adjacent to zero, which
/// agrees with scanning [-cap, cap] and falling back to the first
/// eigenvalue above cap.
double min_modulus_eigenvalue(const PotentialFn& V, const Discretization& disc,
                              double tol_eig = 1e-9);
double min_modulus_eigenvalue(const OperatorInstance& op,
                              const Discretization& disc,
                              double tol_eig = 1e-9);

/// Distance to the nearest well: |x -+ 1/eps| for the B family, distance to
/// the grid minimizer of V otherwise.
std::function<double(double)> well_distance(const OperatorInstance& op,
                                            const Discretization& disc);

/// int (phi^2 + phi'^2) e^{r w} / ||phi||^2 for eigenfunction eig_index.
double decay_diagnostic(const OperatorInstance& op, const Discretization& disc,
                        int eig_index, double r);

struct RefineOptions {
  int max_doublings = 8;
  /// Eigenfunction boundary magnitude (relative) that triggers R *= 1.25.
  double boundary_tol = 1e-10;
  double tol_eig = 1e-12;
  bool want_vectors = false;
};

/// Doubles the grid until successive eigenvalue lists in [lo, hi] agree to
/// tol componentwise. Throws BudgetExceeded after max_doublings.
Spectrum refine_until(const PotentialFn& V, Discretization initial, double lo,
                      double hi, double tol, const RefineOptions& opts = {});
Spectrum refine_until(const OperatorInstance& op, Discretization initial,
                      double lo, double hi, double tol,
                      const RefineOptions& opts = {});

/// Interval holding {V < hi + margin}: starting from search_halfwidth,
/// doubles until V exceeds the level at both ends, samples, and pads the
/// sublevel hull by a quarter of its half-width plus one.
Discretization covering_discretization(const PotentialFn& V, double hi, int N,
                                       double margin = 25.0,
                                       double search_center = 0.0,
                                       double search_halfwidth = 1.0);

/// Same, with the search half-width taken from where the family's wells
/// can sit (|x| = |eta/tau|^{1/k}, 1/eps, |w|^{1/k}).
Discretization covering_discretization(const OperatorInstance& op, double hi,
                                       int N, double margin = 25.0);

}  // namespace dochar
