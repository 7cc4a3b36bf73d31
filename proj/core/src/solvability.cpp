#include "dochar/solvability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dochar/errors.hpp"
#include "dochar/wave_packet.hpp"

namespace dochar {

std::string to_string(SolvabilityRule rule) {
  switch (rule) {
    case SolvabilityRule::Subelliptic:
      return "Subelliptic";
    case SolvabilityRule::PerturbedExceptional:
      return "PerturbedExceptional";
    case SolvabilityRule::FlatExceptional:
      return "FlatExceptional";
  }
  return "?";
}

bool is_exceptional(int k, double a0) {
  const double m = std::fabs(a0);
  if (k == 1) {
    if (m != std::round(m) || m > 1e15) return false;
    return std::fmod(m, 2.0) == 1.0;
  }
  return m == 1.0;
}

Verdict classify(int k, const CoefficientSpec& coeff) {
  if (k < 1) throw std::invalid_argument("classify: k must be >= 1");
  Verdict v;
  v.exceptional_set_used = k == 1 ? "{±1,±3,±5,...}" : "{±1}";
  if (!is_exceptional(k, coeff.a0())) {
    v.rule = SolvabilityRule::Subelliptic;
  } else if (coeff.vanishing_order()) {
    v.rule = SolvabilityRule::PerturbedExceptional;
  } else {
    v.rule = SolvabilityRule::FlatExceptional;
  }
  v.solvable = v.rule != SolvabilityRule::FlatExceptional;
  return v;
}

double null_critical_point(int k, double eta, double tau) {
  return std::pow(eta / tau, 1.0 / k);
}

double normalized_null_solution(int k, double eta, double tau, double x) {
  return std::exp(WavePacket::log_G(k, x, eta, tau));
}

NullResidual null_solution_residuals(int k, double eta, double tau,
                                     const Discretization& disc) {
  if (k < 1) throw std::invalid_argument("null_solution_residual: k < 1");
  if (!(eta > 0.0 && tau > 0.0)) {
    throw std::invalid_argument("null_solution_residual: need eta, tau > 0");
  }
  disc.validate();
  const int n = disc.N;
  const double h = disc.h();
  std::vector<double> lg(n), lgh(n);
  double top = -std::numeric_limits<double>::infinity();
  double toph = top;
  for (int i = 0; i < n; ++i) {
    const double x = disc.x(i);
    const double p = tau * ipow(x, k + 1) / (k + 1);
    lg[i] = eta * x - p;
    lgh[i] = -eta * x - p;
    top = std::max(top, lg[i]);
    toph = std::max(toph, lgh[i]);
  }
  constexpr double kMaxLog = 709.0;
  if (top > kMaxLog || toph > kMaxLog) {
    throw OverflowGuard("unnormalized null solution overflows; use G");
  }
  std::vector<double> g(n), gh(n);
  for (int i = 0; i < n; ++i) {
    g[i] = std::exp(lg[i]);
    gh[i] = std::exp(lgh[i]);
  }
  double r1 = 0, n1 = 0, r2 = 0, n2 = 0;
  for (int i = 1; i + 1 < n; ++i) {
    const double x = disc.x(i);
    const double xk = ipow(x, k);
    const double d1 = (g[i + 1] - g[i - 1]) / (2.0 * h);
    const double e1 = d1 - (eta - tau * xk) * g[i];
    r1 += e1 * e1;
    n1 += g[i] * g[i];
    const double u = eta + tau * xk;
    const double du = k * tau * ipow(x, k - 1);
    const double d2 = (gh[i + 1] - 2.0 * gh[i] + gh[i - 1]) / (h * h);
    const double e2 = -d2 + (u * u - du) * gh[i];
    r2 += e2 * e2;
    n2 += gh[i] * gh[i];
  }
  NullResidual r;
  r.first_order = std::sqrt(r1 / n1);
  r.second_order = std::sqrt(r2 / n2);
  return r;
}

double null_solution_residual(int k, double eta, double tau,
                              const Discretization& disc) {
  return null_solution_residuals(k, eta, tau, disc).total();
}

namespace {

// Cutoff factor Z((p - center) / scale) along one axis, with derivatives in p.
struct AxisCut {
  std::vector<double> v, d1, d2;
};

AxisCut make_axis(const std::vector<double>& p, double center, double scale,
                  const CutoffSpec& z) {
  AxisCut a;
  for (double q : p) {
    const double u = (q - center) / scale;
    a.v.push_back(z(u));
    a.d1.push_back(z.derivative(u) / scale);
    a.d2.push_back(z.second_derivative(u) / (scale * scale));
  }
  return a;
}

// Physical-coordinate view of a base field grid: F_phys(x, y, t) =
// amp * F(sx x, sy y, st t).
struct Scaling {
  double amp = 1.0;
  double sx = 1.0, sy = 1.0, st = 1.0;
};

// L(zeta F) at every grid point, for L = -d_x^2 - W^2 + i a(x) k x^{k-1} d_t
// with W = ysign d_y + x^k d_t. Calls visit(idx, psi, Lpsi).
template <class Visit>
void apply_L(int k, const CoefficientSpec& coeff, double ysign,
             const FieldGrid& g, const Scaling& s, const AxisCut& cx,
             const AxisCut& cy, const AxisCut& ct, Visit visit) {
  const cplx I(0.0, 1.0);
  const double a0 = coeff.a0();
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    const double x = g.xs[i] / s.sx;
    const double xk = ipow(x, k);
    const double xk1 = ipow(x, k - 1);
    const double b = coeff.perturbation(x);
    for (std::size_t j = 0; j < g.ys.size(); ++j) {
      for (std::size_t l = 0; l < g.ts.size(); ++l) {
        const std::size_t idx = g.index(i, j, l);
        const cplx F = s.amp * g.F[idx];
        const cplx Fx = s.amp * s.sx * g.Fx[idx];
        const cplx Fy = s.amp * s.sy * g.Fy[idx];
        const cplx Ft = s.amp * s.st * g.Ft[idx];
        const double z = cx.v[i] * cy.v[j] * ct.v[l];
        const double zx = cx.d1[i] * cy.v[j] * ct.v[l];
        const double zxx = cx.d2[i] * cy.v[j] * ct.v[l];
        const double zy = cx.v[i] * cy.d1[j] * ct.v[l];
        const double zyy = cx.v[i] * cy.d2[j] * ct.v[l];
        const double zt = cx.v[i] * cy.v[j] * ct.d1[l];
        const double ztt = cx.v[i] * cy.v[j] * ct.d2[l];
        const double zyt = cx.v[i] * cy.d1[j] * ct.d1[l];
        const double Wz = ysign * zy + xk * zt;
        const double WWz = zyy + 2.0 * ysign * xk * zyt + xk * xk * ztt;
        const cplx WF = ysign * Fy + xk * Ft;
        const cplx Lpsi = z * I * double(k) * xk1 * b * Ft - zxx * F -
                          2.0 * zx * Fx - WWz * F - 2.0 * Wz * WF +
                          I * (a0 + b) * double(k) * xk1 * zt * F;
        visit(idx, z * F, Lpsi);
      }
    }
  }
}

std::vector<double> grid_axis(double c, double half, int n) {
  return linspace(c - half, c + half, n);
}

// sigma (2n+1) kernel for k = 1, sigma kernel for odd k > 1, in the
// unflipped convention Y = d_y + x^k d_t.
struct KernelFamily {
  int k;
  int n;
  double sigma;
};

KernelFamily kernel_family(int k, double a0) {
  if (k % 2 == 0) throw std::invalid_argument("scaled family needs odd k");
  if (!is_exceptional(k, a0)) {
    throw std::invalid_argument("scaled family needs exceptional a(0)");
  }
  KernelFamily f;
  f.k = k;
  f.sigma = a0 > 0 ? 1.0 : -1.0;
  f.n = static_cast<int>((std::fabs(a0) - 1.0) / 2.0 + 0.5);
  return f;
}

// Physicists' Hermite H_n(s) and H_n'(s) = 2 n H_{n-1}(s).
void hermite_phys(int n, double s, double& H, double& dH) {
  double hm = 0.0, h0 = 1.0;
  for (int m = 0; m < n; ++m) {
    const double hp = 2.0 * s * h0 - 2.0 * m * hm;
    hm = h0;
    h0 = hp;
  }
  H = h0;
  dH = 2.0 * n * hm;
}

// eta weight: the bump h(eta / (2 eta_half)), or with gauss_eta set the
// Gaussian exp(-eta^2 / (2 gauss_eta^2)) truncated at |eta| = eta_half.
Superposition scaled_superposition(const KernelFamily& fam, double eta_half,
                                   double tau_lo, double tau_hi,
                                   int panels_eta, int panels_tau,
                                   double gauss_eta = 0.0) {
  Superposition s;
  composite_gauss(-eta_half, eta_half, panels_eta, s.eta, s.w_eta);
  composite_gauss(fam.sigma * tau_lo, fam.sigma * tau_hi, panels_tau, s.tau,
                  s.w_tau);
  if (fam.sigma < 0) {
    std::reverse(s.tau.begin(), s.tau.end());
    std::reverse(s.w_tau.begin(), s.w_tau.end());
    for (double& w : s.w_tau) w = std::fabs(w);
  }
  const double tc = 0.5 * (tau_lo + tau_hi);
  const double tw = tau_hi - tau_lo;
  for (std::size_t j = 0; j < s.eta.size(); ++j) {
    const double e = s.eta[j];
    s.w_eta[j] *= gauss_eta > 0.0
                      ? std::exp(-0.5 * e * e / (gauss_eta * gauss_eta))
                      : packet_bump(e / (2.0 * eta_half));
  }
  for (std::size_t l = 0; l < s.tau.size(); ++l)
    s.w_tau[l] *= packet_bump((std::fabs(s.tau[l]) - tc) / tw);
  const KernelFamily f = fam;
  s.profile = [f](double x, double eta, double tau, double& v, double& vx) {
    if (f.k == 1) {
      // A = |tau| (-d_s^2 + s^2) - a0 tau with s = (eta + tau x)/sqrt|tau|.
      const double r = std::sqrt(std::fabs(tau));
      const double sv = (eta + tau * x) / r;
      double H, dH;
      hermite_phys(f.n, sv, H, dH);
      const double e = std::exp(-0.5 * sv * sv);
      v = H * e;
      vx = (dH - sv * H) * e * (tau / r);
    } else {
      // (d + sigma u) v = 0 with u = eta + tau x^k, shifted by its maximum
      // over x so that v <= 1.
      const double kk = f.k;
      const double xs =
          std::copysign(std::pow(std::fabs(eta / tau), 1.0 / kk), -eta / tau);
      auto phase = [&](double q) {
        return -f.sigma * (eta * q + tau * ipow(q, f.k + 1) / (kk + 1.0));
      };
      v = std::exp(phase(x) - phase(xs));
      vx = -f.sigma * (eta + tau * ipow(x, f.k)) * v;
    }
  };
  return s;
}

ProbeRow packet_probe(int k, const CoefficientSpec& coeff, double lambda,
                      const ProbeOptions& opts) {
  const WavePacket wp({lambda, k});
  const double xl = wp.x_lambda();
  const double sx = std::pow(lambda, -1.0 / (2.0 * k));
  const double sy = std::pow(lambda, -1.0 / (8.0 * k));
  const double st = std::pow(lambda, -1.0 / 8.0);
  const double edge = 2.0 / 3.0;
  const int panels = wp.panels_for({{xl, 0.0, 0.0},
                                    {xl, edge * sy, edge * st},
                                    {xl - edge * sx, edge * sy, edge * st},
                                    {xl + edge * sx, 0.0, edge * st}},
                                   opts.rel_tol);
  const Superposition sup = wp.superposition(panels);
  const CutoffSpec z{1.0 / 3.0};

  const FieldGrid g = evaluate_fields(sup, grid_axis(xl, edge * sx, opts.grid),
                                      grid_axis(0.0, edge * sy, opts.grid),
                                      grid_axis(0.0, edge * st, opts.grid));
  const AxisCut cx = make_axis(g.xs, xl, sx, z);
  const AxisCut cy = make_axis(g.ys, 0.0, sy, z);
  const AxisCut ct = make_axis(g.ts, 0.0, st, z);
  ProbeRow row;
  row.lambda = lambda;
  apply_L(k, coeff, -1.0, g, Scaling{}, cx, cy, ct,
          [&](std::size_t, cplx psi, cplx Lpsi) {
            row.norm_psi_c0 = std::max(row.norm_psi_c0, std::abs(psi));
            row.norm_Lpsi_c0 = std::max(row.norm_Lpsi_c0, std::abs(Lpsi));
          });

  // int phi psi over the ball of radius lambda^{-B}, where zeta = 1.
  const double r = std::pow(lambda, -opts.B);
  std::vector<double> nodes, weights;
  composite_gauss(-r, r, 2, nodes, weights);
  std::vector<double> xs(nodes);
  for (double& x : xs) x += xl;
  const FieldGrid b = evaluate_fields(sup, xs, nodes, nodes);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < nodes.size(); ++j)
      for (std::size_t l = 0; l < nodes.size(); ++l) {
        const double rad = std::sqrt(nodes[i] * nodes[i] + nodes[j] * nodes[j] +
                                     nodes[l] * nodes[l]);
        const double phi = smooth_step(2.0 * rad / r - 1.0).value;
        acc += weights[i] * weights[j] * weights[l] * phi * b.F[b.index(i, j, l)];
      }
  row.int_phi_psi = std::abs(acc);
  return row;
}

ProbeRow scaled_probe(int k, const CoefficientSpec& coeff, double lambda,
                      const ProbeOptions& opts) {
  const KernelFamily fam = kernel_family(k, coeff.a0());
  const CutoffSpec z{1.0 / 3.0};
  // psi = F(lambda x, lambda y, lambda^{k+1} t) zeta(lambda^{1/2} x)
  // zeta(lambda^{1/2} y) zeta(lambda t); grids in the scaled variables.
  const double lk = std::pow(lambda, k + 1);
  const double hx = 2.0 / 3.0 * std::sqrt(lambda);
  const double ht = 2.0 / 3.0 * lk / lambda;
  // A Gaussian eta weight keeps F Gaussian in Y; a compact one only gives
  // exp(-sqrt|Y|) decay. Panels follow the phase range (about four
  // oscillations per 20-node panel).
  constexpr double kTwoPi = 6.283185307179586;
  const double eta_half = 16.0, tau_lo = 4.0, tau_hi = 12.0;
  const int pe = 2 + static_cast<int>(2.0 * eta_half * hx / kTwoPi / 4.0);
  const int pt = 2 + static_cast<int>((tau_hi - tau_lo) * ht / kTwoPi / 4.0);
  const Superposition sup =
      scaled_superposition(fam, eta_half, tau_lo, tau_hi, pe, pt, 2.0);
  const FieldGrid g = evaluate_fields(sup, grid_axis(0.0, hx, opts.grid),
                                      grid_axis(0.0, hx, opts.grid),
                                      grid_axis(0.0, ht, opts.grid));
  const double cs = 1.0 / std::sqrt(lambda);
  auto physical = [](const std::vector<double>& v, double scale) {
    std::vector<double> p(v);
    for (double& q : p) q /= scale;
    return p;
  };
  const AxisCut cx = make_axis(physical(g.xs, lambda), 0.0, cs, z);
  const AxisCut cy = make_axis(physical(g.ys, lambda), 0.0, cs, z);
  const AxisCut ct = make_axis(physical(g.ts, lk), 0.0, 1.0 / lambda, z);
  Scaling sc;
  sc.sx = lambda;
  sc.sy = lambda;
  sc.st = lk;
  ProbeRow row;
  row.lambda = lambda;
  apply_L(k, coeff, 1.0, g, sc, cx, cy, ct,
          [&](std::size_t, cplx psi, cplx Lpsi) {
            row.norm_psi_c0 = std::max(row.norm_psi_c0, std::abs(psi));
            row.norm_Lpsi_c0 = std::max(row.norm_Lpsi_c0, std::abs(Lpsi));
          });

  // phi_lambda = phi(lambda x, lambda y, lambda^{k+1} t) with phi a bump of
  // radius 1/4 about 0, where zeta_lambda = 1 for lambda >= 1.
  const double r = 0.25;
  std::vector<double> nodes, weights;
  composite_gauss(-r, r, 2, nodes, weights);
  const FieldGrid b = evaluate_fields(sup, nodes, nodes, nodes);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < nodes.size(); ++j)
      for (std::size_t l = 0; l < nodes.size(); ++l) {
        const double rad = std::sqrt(nodes[i] * nodes[i] + nodes[j] * nodes[j] +
                                     nodes[l] * nodes[l]);
        const double phi = smooth_step(2.0 * rad / r - 1.0).value;
        acc += weights[i] * weights[j] * weights[l] * phi * b.F[b.index(i, j, l)];
      }
  row.int_phi_psi = std::abs(acc) / (lambda * lambda * lk);
  return row;
}

}  // namespace

ProbeReport solvability_probe(int k, const CoefficientSpec& coeff,
                              const std::vector<double>& lambdas,
                              const ProbeOptions& opts) {
  if (k < 1) throw std::invalid_argument("solvability_probe: k must be >= 1");
  if (lambdas.empty()) throw std::invalid_argument("solvability_probe: no lambdas");
  if (opts.grid < 8) throw std::invalid_argument("solvability_probe: grid < 8");
  if (k > 1 && coeff.a0() != 1.0) {
    throw std::invalid_argument("solvability_probe: k > 1 needs a(0) = 1");
  }
  for (double lam : lambdas) {
    if (lam > opts.lambda_max) {
      throw GridBudget("solvability_probe: lambda above lambda_max");
    }
    if (!(lam >= (k > 1 ? 16.0 : 1.0))) {
      throw std::invalid_argument("solvability_probe: lambda too small");
    }
  }
  ProbeReport rep;
  rep.k = k;
  rep.path = k > 1 ? "packet" : "scaled";
  rep.options = opts;
  for (double lam : lambdas) {
    ProbeRow row = k > 1 ? packet_probe(k, coeff, lam, opts)
                         : scaled_probe(k, coeff, lam, opts);
    row.rho = row.int_phi_psi / (row.norm_phi_c0 * row.norm_Lpsi_c0);
    row.relative_residual = row.norm_Lpsi_c0 / row.norm_psi_c0;
    rep.rows.push_back(row);
  }
  rep.unbounded = rep.rows.size() >= 2;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const double g = rep.rows[i].rho / rep.rows[i - 1].rho;
    rep.growth.push_back(g);
    if (!(g >= 2.0)) rep.unbounded = false;
  }
  return rep;
}

WitnessReport l2_witness(int k, const CoefficientSpec& coeff,
                         const std::vector<double>& lambdas,
                         const WitnessOptions& opts) {
  const KernelFamily fam = kernel_family(k, coeff.a0());
  if (coeff.derivative_at_zero(1) != 0.0 || coeff.derivative_at_zero(2) != 0.0) {
    throw std::invalid_argument("l2_witness: need a - a(0) = O(x^3)");
  }
  if (lambdas.empty()) throw std::invalid_argument("l2_witness: no lambdas");
  const double cells = double(opts.nx) * opts.ny * opts.nt;
  if (cells > 4.0e6) throw GridBudget("l2_witness: grid too large");
  for (double lam : lambdas) {
    if (!(lam >= 1.0)) throw std::invalid_argument("l2_witness: lambda < 1");
    if (lam > opts.lambda_max) throw GridBudget("l2_witness: lambda above cap");
  }
  const Superposition sup = scaled_superposition(fam, 1.0, 1.0, 3.0, opts.panels, opts.panels);
  const FieldGrid g = evaluate_fields(sup, grid_axis(0.0, opts.box_x, opts.nx),
                                      grid_axis(0.0, opts.box_y, opts.ny),
                                      grid_axis(0.0, opts.box_t, opts.nt));
  const double dX = g.xs[1] - g.xs[0];
  const double dY = g.ys[1] - g.ys[0];
  const double dT = g.ts[1] - g.ts[0];
  const CutoffSpec z{opts.delta};

  WitnessReport rep;
  rep.k = k;
  rep.options = opts;
  for (double lam : lambdas) {
    const double lk = std::pow(lam, k + 1);
    auto physical = [](const std::vector<double>& v, double scale) {
      std::vector<double> p(v);
      for (double& q : p) q /= scale;
      return p;
    };
    const std::vector<double> pt = physical(g.ts, lk);
    const AxisCut cx = make_axis(physical(g.xs, lam), 0.0, 1.0, z);
    const AxisCut cy = make_axis(physical(g.ys, lam), 0.0, 1.0, z);
    const AxisCut ct = make_axis(pt, 0.0, 1.0, z);
    Scaling sc;
    sc.amp = std::pow(lam, 0.5 * (k + 3));
    sc.sx = lam;
    sc.sy = lam;
    sc.st = lk;
    const double vol = dX * dY * dT / (lam * lam * lk);
    double nF = 0, nL = 0, nT = 0;
    apply_L(k, coeff, 1.0, g, sc, cx, cy, ct,
            [&](std::size_t idx, cplx psi, cplx Lpsi) {
              nF += std::norm(psi);
              nL += std::norm(Lpsi);
              const std::size_t l = idx % g.ts.size();
              const std::size_t ij = idx / g.ts.size();
              const std::size_t j = ij % g.ys.size();
              const std::size_t i = ij / g.ys.size();
              const double zz = cx.v[i] * cy.v[j];
              const cplx dt = zz * (ct.d1[l] * sc.amp * g.F[idx] +
                                    ct.v[l] * sc.amp * lk * g.Ft[idx]);
              nT += std::norm(dt);
            });
    WitnessRow row;
    row.lambda = lam;
    row.norm_F = std::sqrt(nF * vol);
    row.norm_LF = std::sqrt(nL * vol);
    row.norm_Ft = std::sqrt(nT * vol);
    row.ratio = row.norm_LF / row.norm_F;
    row.dt_ratio_scaled = row.norm_Ft / row.norm_F / lk;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace dochar
