#include "dochar/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dochar/errors.hpp"
#include "dochar/spectral.hpp"

namespace dochar {

PerturbationProblem PerturbationProblem::make(int k, int n) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  PerturbationProblem p;
  p.k = k;
  p.n = n;
  const mpq_class km1(k - 1);
  const mpq_class a0(2 * n + 1);
  p.beta1 = {0, -km1 * a0, 0, km1};
  mpq_class y4 = km1 * mpq_class(7 * k - 11, 12);
  mpq_class y2 = -km1 * a0 * mpq_class(k - 2, 2);
  y4.canonicalize();
  y2.canonicalize();
  p.beta2 = {0, 0, y2, 0, y4};
  return p;
}

SeriesResult rs_step(const PerturbationProblem& problem, int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("rs_step order must be 1 or 2");
  }
  const int n = problem.n;
  const HermiteFunction psi0 = HermiteFunction::mode(n);
  const mpq_class norm0 = inner_product(psi0, psi0);

  SeriesResult out;
  out.lambdas.push_back(0);
  out.psis.push_back(HermiteCoefficients{{n, mpq_class(1)}});

  const HermiteFunction b1psi0 = mul_poly(psi0, problem.beta1);
  mpq_class lambda1 = inner_product(b1psi0, psi0) / norm0;
  lambda1.canonicalize();
  out.lambdas.push_back(lambda1);

  // H_n psi1 = -(beta1 - Lambda1) psi0, solvable because the right side has
  // no mode-n component.
  const HermiteFunction rhs = b1psi0 - psi0 * lambda1;
  const HermiteCoefficients rhs_c = to_coefficients(rhs);
  if (auto it = rhs_c.find(n); it != rhs_c.end() && it->second != 0) {
    throw std::logic_error("rs_step: solvability condition violated");
  }
  HermiteCoefficients psi1 = resolvent(n, rhs_c);
  for (auto& [q, c] : psi1) c = -c;
  out.psis.push_back(psi1);
  if (order == 1) return out;

  const HermiteFunction psi1_f = from_coefficients(psi1);
  const HermiteFunction second =
      mul_poly(psi0, problem.beta2) + mul_poly(psi1_f, problem.beta1);
  mpq_class lambda2 = inner_product(psi0, second) / norm0;
  lambda2.canonicalize();
  out.lambdas.push_back(lambda2);
  return out;
}

mpq_class lambda2_closed_form(int k, int n) {
  if (k < 1 || n < 0) throw std::invalid_argument("need k >= 1, n >= 0");
  mpq_class r(static_cast<long>(k - 1) * n * (n + 1), 2);
  r.canonicalize();
  return r;
}

mpq_class lambda2_from_bracket(int k, int n) {
  if (k < 1 || n < 0) throw std::invalid_argument("need k >= 1, n >= 0");
  const HermiteFunction h = HermiteFunction::mode(n);
  const mpq_class norm0 = inner_product(h, h);
  const HermiteFunction y1 = mul_y(h, 1);
  const HermiteFunction y2 = mul_y(h, 2);
  const mpq_class ny1 = inner_product(y1, y1) / norm0;
  const mpq_class ny2 = inner_product(y2, y2) / norm0;
  const mpq_class a0(2 * n + 1);
  mpq_class r = mpq_class(k - 1) *
                (mpq_class(7 * k - 11, 12) * ny2 -
                 a0 * mpq_class(k - 2, 2) * ny1 -
                 mpq_class(k - 1) * lemma41_bracket(n) / 48);
  r.canonicalize();
  return r;
}

namespace {

double window_eigenvalue(const PotentialFn& V, const Discretization& disc,
                         const SmallEigenOptions& opts) {
  SolverOptions so;
  so.tol_eig = opts.tol_eig;
  const Spectrum s = eigenvalues_in_window(V, disc, -opts.theta, opts.theta, so);
  if (s.eigenvalues.empty()) {
    throw WindowEmpty("no eigenvalue in [-theta, theta]");
  }
  if (s.eigenvalues.size() > 1) {
    throw WindowNotUnique(std::to_string(s.eigenvalues.size()) +
                          " eigenvalues in [-theta, theta]");
  }
  return s.eigenvalues.front();
}

}  // namespace

double small_eigenvalue(const OperatorInstance& op,
                        const SmallEigenOptions& opts) {
  double R = opts.R;
  if (const auto* b = std::get_if<FamilyB>(&op.params())) {
    if (b->chart == BChart::WellCentered && b->eps != 0.0) {
      R = std::min(R, 0.9 / std::fabs(b->eps));
    }
  }
  Discretization disc{R, opts.N, 0.0};
  const PotentialFn V = op.potential_fn();
  const double coarse = window_eigenvalue(V, disc, opts);
  if (!opts.richardson) return coarse;
  const double fine = window_eigenvalue(V, disc.refined(), opts);
  return (4.0 * fine - coarse) / 3.0;
}

EpsFit fit_eps_series(int k, int n, const std::vector<double>& eps_grid,
                      const SmallEigenOptions& opts) {
  if (eps_grid.size() < 3) {
    throw std::invalid_argument("fit_eps_series needs at least 3 eps values");
  }
  for (double e : eps_grid) {
    if (!(e > 0.0 && e <= 0.2)) {
      throw std::invalid_argument("eps values must lie in (0, 0.2]");
    }
  }
  EpsFit fit;
  fit.eps = eps_grid;
  const CoefficientSpec a = CoefficientSpec::constant(2.0 * n + 1.0);
  for (double e : eps_grid) {
    const auto op = OperatorInstance::family_b(0.0, e, k, a, opts.cutoff,
                                               BChart::WellCentered);
    fit.lambda.push_back(small_eigenvalue(op, opts));
  }
  // Normal equations for three unknowns; the grids are small and well
  // scaled so this is accurate enough.
  double S[5] = {0, 0, 0, 0, 0};
  double T[3] = {0, 0, 0};
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    double p = 1.0;
    for (int j = 0; j < 5; ++j) {
      S[j] += p;
      if (j < 3) T[j] += p * fit.lambda[i];
      p *= eps_grid[i];
    }
  }
  double A[3][4] = {{S[0], S[1], S[2], T[0]},
                    {S[1], S[2], S[3], T[1]},
                    {S[2], S[3], S[4], T[2]}};
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
    }
    std::swap(A[c], A[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = A[r][c] / A[c][c];
      for (int j = c; j < 4; ++j) A[r][j] -= f * A[c][j];
    }
  }
  fit.c0 = A[0][3] / A[0][0];
  fit.c1 = A[1][3] / A[1][1];
  fit.c2 = A[2][3] / A[2][2];
  double ss = 0.0;
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    const double e = eps_grid[i];
    const double r = fit.lambda[i] - (fit.c0 + fit.c1 * e + fit.c2 * e * e);
    ss += r * r;
  }
  fit.resid = std::sqrt(ss);
  return fit;
}

std::vector<std::pair<double, double>> eigenvalue_vs_z(
    int k, int n, const CoefficientSpec& coeff, double eps,
    const std::vector<double>& z_grid, const SmallEigenOptions& opts) {
  if (coeff.a0() != 2.0 * n + 1.0) {
    throw std::invalid_argument("eigenvalue_vs_z: a(0) must equal 2n+1");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(z_grid.size());
  for (double z : z_grid) {
    const auto op = OperatorInstance::family_b(z, eps, k, coeff, opts.cutoff,
                                               BChart::WellCentered);
    out.emplace_back(z, small_eigenvalue(op, opts));
  }
  return out;
}

}  // namespace dochar
