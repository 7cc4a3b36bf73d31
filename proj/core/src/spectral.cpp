#include "dochar/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dochar/errors.hpp"

namespace dochar {

void Discretization::validate() const {
  if (N < 16) throw std::invalid_argument("Discretization: N must be >= 16");
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("Discretization: R must be positive");
  }
}

Discretization Discretization::refined() const {
  Discretization d = *this;
  d.N = 2 * N + 1;
  return d;
}

// ---------------------------------------------------------------------------
// Generic symmetric tridiagonal helpers

int sturm_count(const SymTridiag& t, double lambda) {
  const int n = t.size();
  if (n == 0) return 0;
  double emax = 0.0;
  for (double v : t.e) emax = std::max(emax, std::fabs(v));
  const double pivmin =
      std::numeric_limits<double>::min() * std::max(1.0, emax * emax);
  int count = 0;
  double p = t.d[0] - lambda;
  if (std::fabs(p) < pivmin) p = -pivmin;
  if (p < 0) ++count;
  for (int i = 1; i < n; ++i) {
    p = (t.d[i] - lambda) - t.e[i - 1] * t.e[i - 1] / p;
    if (std::fabs(p) < pivmin) p = -pivmin;
    if (p < 0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const SymTridiag& t) {
  const int n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::fabs(t.e[i - 1]);
    if (i + 1 < n) r += std::fabs(t.e[i]);
    lo = std::min(lo, t.d[i] - r);
    hi = std::max(hi, t.d[i] + r);
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// FdOperator

FdOperator::FdOperator(const PotentialFn& V, const Discretization& disc)
    : disc_(disc) {
  disc_.validate();
  v_.resize(disc_.N);
  for (int i = 0; i < disc_.N; ++i) {
    v_[i] = V(disc_.x(i));
    if (!std::isfinite(v_[i])) {
      throw std::domain_error("potential is not finite on the grid");
    }
  }
}

int FdOperator::sturm_count(double lambda) const {
  // Pivots of h^2 (T - lambda) are p_i = 1 + g_i.
  const double h2 = disc_.h() * disc_.h();
  constexpr double tiny = 1e-300;
  int count = 0;
  double g = 1.0 + h2 * (v_[0] - lambda);
  if (g < -1.0) ++count;
  const int n = size();
  for (int i = 1; i < n; ++i) {
    double p = 1.0 + g;
    if (std::fabs(p) < tiny) p = -tiny;
    g = h2 * (v_[i] - lambda) + g / p;
    if (g < -1.0) ++count;
  }
  return count;
}

std::pair<double, double> FdOperator::gershgorin_bounds() const {
  const double h2 = disc_.h() * disc_.h();
  const auto [mn, mx] = std::minmax_element(v_.begin(), v_.end());
  return {*mn, *mx + 4.0 / h2};
}

SymTridiag FdOperator::matrix() const {
  const double h2 = disc_.h() * disc_.h();
  SymTridiag t;
  t.d.resize(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) t.d[i] = 2.0 / h2 + v_[i];
  t.e.assign(v_.size() - 1, -1.0 / h2);
  return t;
}

namespace {

double bisect(const FdOperator& op, int j, double lo, double hi, double tol) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (hi - lo <= tol) break;
    if (op.sturm_count(mid) > j) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// LU with partial pivoting of a tridiagonal matrix followed by solves, in
// the layout of LAPACK's gttrf/gtts2.
class TridiagLU {
 public:
  TridiagLU(std::vector<double> dl, std::vector<double> d,
            std::vector<double> du)
      : dl_(std::move(dl)), d_(std::move(d)), du_(std::move(du)) {
    const int n = static_cast<int>(d_.size());
    du2_.assign(n > 2 ? n - 2 : 0, 0.0);
    piv_.assign(n > 1 ? n - 1 : 0, 0);
    for (int i = 0; i + 1 < n; ++i) {
      if (std::fabs(d_[i]) >= std::fabs(dl_[i])) {
        if (d_[i] != 0.0) {
          const double fact = dl_[i] / d_[i];
          dl_[i] = fact;
          d_[i + 1] -= fact * du_[i];
        }
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        piv_[i] = 1;
      }
    }
    double scale = 0.0;
    for (double v : d_) scale = std::max(scale, std::fabs(v));
    const double floor = std::max(scale, 1.0) * 1e-300;
    for (double& v : d_) {
      if (std::fabs(v) < floor) v = v < 0 ? -floor : floor;
    }
  }

  void solve(std::vector<double>& b) const {
    const int n = static_cast<int>(d_.size());
    for (int i = 0; i + 1 < n; ++i) {
      if (!piv_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (int i = n - 3; i >= 0; --i) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<char> piv_;
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::fabs(x));
  for (double x : v) {
    if (std::fabs(x) > 1e-8 * mx) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

}  // namespace

double FdOperator::eigenvalue(int j, double tol) const {
  if (j < 0 || j >= size()) throw std::out_of_range("eigenvalue index");
  auto [lo, hi] = gershgorin_bounds();
  // Tighten the upper end by doubling from a modest guess.
  double guess = std::max(1.0, std::fabs(lo)) + lo;
  double step = std::max(1.0, std::fabs(lo));
  while (guess < hi && sturm_count(guess) <= j) {
    lo = guess;
    step *= 2.0;
    guess = lo + step;
  }
  hi = std::min(hi, guess);
  return bisect(*this, j, lo, hi, tol);
}

std::vector<double> FdOperator::eigenvector(
    double lambda, const std::vector<std::vector<double>>& against,
    int max_iter) const {
  const int n = size();
  const double h2 = disc_.h() * disc_.h();
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = 2.0 + h2 * (v_[i] - lambda);
  TridiagLU lu(std::vector<double>(n - 1, -1.0), std::move(d),
               std::vector<double>(n - 1, -1.0));

  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.25 * std::sin(0.7 * i + 0.3);
  auto orthonormalize = [&](std::vector<double>& v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : against) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += u[i] * v[i];
        for (int i = 0; i < n; ++i) v[i] -= dot * u[i];
      }
    }
    const double nv = norm2(v);
    if (!(nv > 0.0) || !std::isfinite(nv)) return false;
    for (double& y : v) y /= nv;
    return true;
  };
  if (!orthonormalize(x)) throw ConvergenceError("inverse iteration: bad start");

  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> y = x;
    lu.solve(y);
    if (!orthonormalize(y)) {
      throw ConvergenceError("inverse iteration: iterate collapsed");
    }
    double dot = 0.0;
    for (int i = 0; i < n; ++i) dot += x[i] * y[i];
    x = std::move(y);
    if (it >= 1 && std::fabs(dot) > 1.0 - 1e-13) {
      fix_sign(x);
      return x;
    }
  }
  throw ConvergenceError("inverse iteration did not converge in " +
                         std::to_string(max_iter) + " iterations");
}

// ---------------------------------------------------------------------------
// Window solves

Spectrum eigenvalues_in_window(const PotentialFn& V, const Discretization& disc,
                               double lo, double hi,
                               const SolverOptions& opts) {
  if (!(lo < hi)) throw std::invalid_argument("window must satisfy lo < hi");
  const FdOperator op(V, disc);
  const int c_lo = op.sturm_count(lo);
  const int c_hi = op.sturm_count(hi);
  Spectrum s;
  s.disc = disc;
  double left = lo;
  for (int j = c_lo; j < c_hi; ++j) {
    const double ev = bisect(op, j, left, hi, opts.tol_eig);
    s.eigenvalues.push_back(ev);
    left = std::max(left, ev - 2.0 * opts.tol_eig);
  }
  if (opts.want_vectors) {
    for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) {
      std::vector<std::vector<double>> cluster;
      const double ev = s.eigenvalues[j];
      for (std::size_t i = 0; i < j; ++i) {
        if (std::fabs(s.eigenvalues[i] - ev) < 1e-6 * (1.0 + std::fabs(ev))) {
          cluster.push_back(s.eigenvectors[i]);
        }
      }
      s.eigenvectors.push_back(op.eigenvector(ev, cluster, opts.max_iter));
    }
  }
  s.converged = true;
  s.est_error = opts.tol_eig;
  return s;
}

Spectrum eigenvalues_in_window(const OperatorInstance& op,
                               const Discretization& disc, double lo,
                               double hi, const SolverOptions& opts) {
  return eigenvalues_in_window(op.potential_fn(), disc, lo, hi, opts);
}

double min_modulus_eigenvalue(const PotentialFn& V, const Discretization& disc,
                              double tol_eig) {
  const FdOperator op(V, disc);
  const int c0 = op.sturm_count(0.0);
  double best = std::numeric_limits<double>::infinity();
  if (c0 < op.size()) {
    double hi = 1.0;
    while (op.sturm_count(hi) <= c0) hi *= 2.0;
    best = bisect(op, c0, 0.0, hi, tol_eig);
  }
  if (c0 > 0) {
    double lo = -1.0;
    while (op.sturm_count(lo) > c0 - 1) lo *= 2.0;
    best = std::min(best, std::fabs(bisect(op, c0 - 1, lo, 0.0, tol_eig)));
  }
  return best;
}

double min_modulus_eigenvalue(const OperatorInstance& op,
                              const Discretization& disc, double tol_eig) {
  return min_modulus_eigenvalue(op.potential_fn(), disc, tol_eig);
}

std::function<double(double)> well_distance(const OperatorInstance& op,
                                            const Discretization& disc) {
  if (const auto* b = std::get_if<FamilyB>(&op.params())) {
    const double eps = b->eps;
    if (b->chart == BChart::Original) {
      const double c = 1.0 / std::fabs(eps);
      return [c](double x) { return x >= 0 ? std::fabs(x - c) : std::fabs(x + c); };
    }
    if (eps == 0.0) return [](double y) { return std::fabs(y); };
    const double c = 1.0 / std::fabs(eps);
    return [c](double y) {
      return y >= -c ? std::fabs(y) : std::fabs(y + 2.0 * c);
    };
  }
  double best_x = disc.x(0);
  double best_v = op.potential(best_x);
  for (int i = 1; i < disc.N; ++i) {
    const double v = op.potential(disc.x(i));
    if (v < best_v) {
      best_v = v;
      best_x = disc.x(i);
    }
  }
  return [best_x](double x) { return std::fabs(x - best_x); };
}

double decay_diagnostic(const OperatorInstance& op, const Discretization& disc,
                        int eig_index, double r) {
  const FdOperator fd(op.potential_fn(), disc);
  const double ev = fd.eigenvalue(eig_index, 1e-12);
  const std::vector<double> phi = fd.eigenvector(ev, {}, 50);
  const auto w = well_distance(op, disc);
  const double h = disc.h();
  const int n = disc.N;
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += phi[i] * phi[i] * std::exp(r * w(disc.x(i)));
    den += phi[i] * phi[i];
  }
  // Differences on the n+1 cells, with the Dirichlet zeros at both ends.
  for (int i = -1; i < n; ++i) {
    const double a = i >= 0 ? phi[i] : 0.0;
    const double b = i + 1 < n ? phi[i + 1] : 0.0;
    const double xm = disc.x(i) + 0.5 * h;
    const double dphi = (b - a) / h;
    num += dphi * dphi * std::exp(r * w(xm));
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// Refinement

Spectrum refine_until(const PotentialFn& V, Discretization disc, double lo,
                      double hi, double tol, const RefineOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  std::vector<std::vector<double>> history;
  std::vector<Discretization> levels;
  SolverOptions so;
  so.tol_eig = std::min(opts.tol_eig, 0.01 * tol);
  so.want_vectors = true;
  for (int level = 0; level <= opts.max_doublings; ++level) {
    Spectrum s = eigenvalues_in_window(V, disc, lo, hi, so);
    history.push_back(s.eigenvalues);
    levels.push_back(disc);
    bool grow = false;
    for (const auto& v : s.eigenvectors) {
      double mx = 0.0;
      for (double x : v) mx = std::max(mx, std::fabs(x));
      if (std::max(std::fabs(v.front()), std::fabs(v.back())) > opts.boundary_tol * mx) {
        grow = true;
      }
    }
    if (history.size() >= 2 && !grow) {
      const auto& prev = history[history.size() - 2];
      const auto& cur = history.back();
      if (prev.size() == cur.size()) {
        double diff = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
          diff = std::max(diff, std::fabs(cur[i] - prev[i]));
        }
        if (diff < tol) {
          s.converged = true;
          s.est_error = diff / 3.0;
          if (!opts.want_vectors) s.eigenvectors.clear();
          s.history = std::move(history);
          s.levels = std::move(levels);
          return s;
        }
      }
    }
    disc = disc.refined();
    if (grow) disc.R *= 1.25;
  }
  throw BudgetExceeded("refine_until: no convergence to tol " +
                       std::to_string(tol) + " within " +
                       std::to_string(opts.max_doublings) + " doublings");
}

Spectrum refine_until(const OperatorInstance& op, Discretization initial,
                      double lo, double hi, double tol,
                      const RefineOptions& opts) {
  return refine_until(op.potential_fn(), initial, lo, hi, tol, opts);
}

Discretization covering_discretization(const PotentialFn& V, double hi, int N,
                                       double margin, double search_center,
                                       double search_halfwidth) {
  const double thr = hi + margin;
  double L = std::max(1.0, search_halfwidth);
  while (L < 1e6 && (V(search_center - L) < thr || V(search_center + L) < thr)) {
    L *= 2.0;
  }
  constexpr int kSamples = 40001;
  double a = std::numeric_limits<double>::infinity();
  double b = -a;
  double best_x = search_center;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const double x = search_center - L + 2.0 * L * i / (kSamples - 1);
    const double v = V(x);
    if (v < thr) {
      a = std::min(a, x);
      b = std::max(b, x);
    }
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  if (!(a <= b)) {
    a = b = best_x;
  }
  Discretization d;
  d.center = 0.5 * (a + b);
  d.R = 1.25 * 0.5 * (b - a) + 1.0;
  d.N = N;
  return d;
}

Discretization covering_discretization(const OperatorInstance& op, double hi,
                                       int N, double margin) {
  const int k = op.k();
  double half = 1.0;
  if (const auto* a = std::get_if<FamilyA>(&op.params())) {
    if (a->tau != 0.0) half = 2.0 * std::pow(std::fabs(a->eta / a->tau), 1.0 / k) + 2.0;
  } else if (const auto* b = std::get_if<FamilyB>(&op.params())) {
    half = b->chart == BChart::Original ? 1.0 / std::fabs(b->eps) + 10.0 : 12.0;
  } else {
    const auto& d = std::get<FamilyD>(op.params());
    half = std::pow(std::fabs(d.w), 1.0 / k) + 4.0;
  }
  return covering_discretization(op.potential_fn(), hi, N, margin, 0.0, half);
}

}  // namespace dochar
