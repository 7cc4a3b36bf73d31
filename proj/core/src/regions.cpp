#include "dochar/regions.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dochar/errors.hpp"
#include "dochar/parallel.hpp"
#include "dochar/spectral.hpp"

namespace dochar {

std::array<double, 2> r2_point(std::uint64_t i, double s0, double s1) {
  constexpr double phi = 1.32471795724474602596;
  constexpr double a1 = 1.0 / phi;
  constexpr double a2 = 1.0 / (phi * phi);
  const double n = static_cast<double>(i + 1);
  double x = s0 + n * a1;
  double y = s1 + n * a2;
  x -= std::floor(x);
  y -= std::floor(y);
  return {x, y};
}

namespace {

double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::array<double, 2> shell_shift(std::uint64_t seed, int q, Region region) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(q),
                    static_cast<std::uint32_t>(region)};
  std::mt19937_64 gen(seq);
  const double s0 = unit_from_bits(gen());
  const double s1 = unit_from_bits(gen());
  return {s0, s1};
}

double min_modulus_of(const OperatorInstance& op, const SweepOptions& opts) {
  const Discretization disc = covering_discretization(op, 1.0, opts.N);
  return min_modulus_eigenvalue(op.potential_fn(), disc, opts.tol_eig);
}

double power_integral(double a, double b, double p) {
  return (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0);
}

}  // namespace

double min_modulus_a(double eta, double tau, int k, const CoefficientSpec& coeff,
                     const SweepOptions& opts) {
  const Region region = classify_region(eta, tau, k, opts.rc);
  if (region == Region::C) {
    try {
      const ChartC c = chart_c(eta, tau, k);
      const auto op = operator_from_chart(c, k, coeff, opts.cutoff);
      return scale_c(c) * min_modulus_of(op, opts);
    } catch (const DomainError&) {
      // eta tau > 0 with k even: fall through to the D chart.
    }
  }
  if (region == Region::B) {
    const auto op = OperatorInstance::family_a(eta, tau, k, coeff, opts.cutoff);
    return min_modulus_of(op, opts);
  }
  const ChartD d = chart_d(eta, tau, k);
  const auto op = operator_from_chart(d, k, coeff, opts.cutoff);
  return scale_d(d) * min_modulus_of(op, opts);
}

ShellRecord sweep_shell(int k, const CoefficientSpec& coeff, Region region,
                        int q, const SweepOptions& opts) {
  if (region == Region::B) {
    throw std::invalid_argument("sweep_shell: region must be C or D");
  }
  if (std::ldexp(1.0, q) < opts.rc.tau0) {
    throw std::invalid_argument("sweep_shell: need 2^q >= tau0");
  }
  if (opts.samples < 32) {
    throw std::invalid_argument("sweep_shell: need at least 32 samples");
  }
  const double t0 = std::ldexp(1.0, q);
  const double t1 = 2.0 * t0;
  const double e = 1.0 / (k + 1);
  const auto& rc = opts.rc;

  ShellRecord rec;
  rec.q = q;
  rec.region = region;
  rec.samples = opts.samples;
  if (region == Region::C) {
    rec.area = 2.0 * (rc.gamma1 * power_integral(t0, t1, 1.0) -
                      rc.gamma0 * power_integral(t0, t1, e));
  } else {
    rec.area = 2.0 * rc.gamma0 * power_integral(t0, t1, e);
  }

  const auto shift = shell_shift(opts.seed, q, region);
  const double threshold = std::pow(2.0, -opts.M * q);
  std::vector<std::optional<double>> mins(opts.samples);
  std::vector<double> weights(opts.samples);
  std::vector<double> jac(opts.samples, 0.0);

  parallel_for(static_cast<std::size_t>(opts.samples), [&](std::size_t i) {
    const auto u = r2_point(i, shift[0], shift[1]);
    const double tau = t0 * (1.0 + u[0]);
    double lo, hi;
    if (region == Region::C) {
      lo = rc.gamma0 * std::pow(tau, e);
      hi = rc.gamma1 * tau;
    } else {
      lo = 0.0;
      hi = rc.gamma0 * std::pow(tau, e);
    }
    const double s = 2.0 * u[1] - 1.0;
    const double eta = std::copysign(lo + std::fabs(s) * (hi - lo), s);
    // d(tau, eta)/d(u0, u1) = t0 * 2 (hi - lo)
    weights[i] = t0 * 2.0 * (hi - lo);
    if (region == Region::C) {
      try {
        const ChartC c = chart_c(eta, tau, k);
        jac[i] = jacobian_c(c.z, c.eps, k);
      } catch (const DomainError&) {
      }
    }
    try {
      mins[i] = min_modulus_a(eta, tau, k, coeff, opts);
    } catch (const std::exception&) {
      mins[i].reset();
    }
  });

  int below = 0;
  int ok = 0;
  double weighted = 0.0;
  double seen = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opts.samples; ++i) {
    if (!mins[i]) {
      ++rec.failures;
      continue;
    }
    ++ok;
    seen = std::min(seen, *mins[i]);
    if (*mins[i] <= threshold) {
      ++below;
      weighted += weights[i];
    }
  }
  rec.frac_below = ok > 0 ? static_cast<double>(below) / ok : 0.0;
  rec.measure_est = ok > 0 ? weighted / ok : 0.0;
  rec.unreliable = rec.failures > opts.max_failure_fraction * opts.samples;
  rec.min_modulus_seen = seen;
  if (region == Region::C) {
    double jmax = *std::max_element(jac.begin(), jac.end());
    const ChartC corner = chart_c(-rc.gamma1 * t1, t1, k);
    jmax = std::max(jmax, jacobian_c(corner.z, corner.eps, k));
    rec.log2_jacobian_max = std::log2(jmax);
  }
  return rec;
}

SweepReport sweep(int k, const CoefficientSpec& coeff, Region region, int q_lo,
                  int q_hi, const SweepOptions& opts) {
  if (q_hi < q_lo) throw std::invalid_argument("sweep: empty q range");
  SweepReport report;
  report.M = opts.M;
  for (int q = q_lo; q <= q_hi; ++q) {
    report.shells.push_back(sweep_shell(k, coeff, region, q, opts));
  }
  if (region == Region::C && report.shells.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(report.shells.size());
    for (const auto& s : report.shells) {
      sx += s.q;
      sy += s.log2_jacobian_max;
      sxx += static_cast<double>(s.q) * s.q;
      sxy += s.q * s.log2_jacobian_max;
    }
    report.r_emp = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  std::ostringstream notes;
  notes << "threshold 2^(-M q); frac_below over successful samples; "
           "measure_est is the weighted Monte Carlo estimate";
  report.notes = notes.str();
  return report;
}

std::string to_csv(const SweepReport& report) {
  std::string out = "q,region,samples,frac_below,measure_est,failures\n";
  char buf[256];
  for (const auto& s : report.shells) {
    std::snprintf(buf, sizeof buf, "%d,%s,%d,%.17g,%.17g,%d\n", s.q,
                  to_string(s.region).c_str(), s.samples, s.frac_below,
                  s.measure_est, s.failures);
    out += buf;
  }
  return out;
}

double bk_dirichlet_eigenvalue(double eta, double tau, int k,
                               const CoefficientSpec& coeff,
                               const CutoffSpec& cutoff, double delta0, int N) {
  if (!(delta0 > 0.0)) throw std::invalid_argument("delta0 must be positive");
  const auto op = OperatorInstance::family_a(eta, tau, k, coeff, cutoff);
  const FdOperator fd(op.potential_fn(), Discretization{delta0, N, 0.0});
  return fd.eigenvalue(0, 1e-9);
}

BkReport certify_Bk_positivity(int k, const CoefficientSpec& coeff,
                               const RegionConstants& rc, double delta0,
                               int samples, const BkOptions& opts) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const auto shift = shell_shift(opts.seed, -1, Region::B);
  const double box = opts.tau_box * rc.tau0;
  std::vector<std::array<double, 2>> points;
  for (std::uint64_t i = 0;
       points.size() < static_cast<std::size_t>(samples) &&
       i < 100ull * static_cast<std::uint64_t>(samples);
       ++i) {
    const auto u = r2_point(i, shift[0], shift[1]);
    const double eta = box * (2.0 * u[0] - 1.0);
    const double tau = box * (2.0 * u[1] - 1.0);
    if (classify_region(eta, tau, k, rc) == Region::B) points.push_back({eta, tau});
  }
  std::vector<double> eig(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    eig[i] = bk_dirichlet_eigenvalue(points[i][0], points[i][1], k, coeff,
                                     opts.cutoff, delta0, opts.N);
  });
  BkReport rep;
  rep.samples = static_cast<int>(points.size());
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, eig[i]);
    if (eig[i] <= 0.0) {
      ++rep.violations;
      rep.violation_samples.push_back({points[i][0], points[i][1], eig[i]});
    }
  }
  rep.implied_C = rep.min_eigenvalue > 0.0
                      ? 1.0 / rep.min_eigenvalue
                      : std::numeric_limits<double>::infinity();
  return rep;
}

GapResult gap_check(int k, const CoefficientSpec& coeff, double z, double eps,
                    double theta, const CutoffSpec& cutoff, double max_h) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  const auto op =
      eps == 0.0
          ? OperatorInstance::family_b(z, 0.0, k, coeff, cutoff,
                                       BChart::WellCentered)
          : OperatorInstance::family_b(z, eps, k, coeff, cutoff,
                                       BChart::Original);
  const PotentialFn V = op.potential_fn();
  Discretization disc = covering_discretization(op, 4.0 * theta, 16);
  disc.N = std::max(2000, static_cast<int>(std::ceil(2.0 * disc.R / max_h)));
  SolverOptions so;
  so.tol_eig = 1e-10;
  const Spectrum s = eigenvalues_in_window(V, disc, -4.0 * theta, 4.0 * theta, so);
  GapResult r;
  for (double ev : s.eigenvalues) {
    if (std::fabs(ev) <= theta) {
      ++r.count_small;
    } else {
      ++r.count_gap;
    }
  }
  r.gap_ok = r.count_small == 1 && r.count_gap == 0;
  return r;
}

}  // namespace dochar
