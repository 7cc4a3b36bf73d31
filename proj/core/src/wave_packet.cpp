#include "dochar/wave_packet.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dochar/errors.hpp"
#include "dochar/operator_models.hpp"
#include "dochar/parallel.hpp"

namespace dochar {

double packet_bump(double s) {
  const double u = 4.0 * s * s;
  if (u >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u));
}

void composite_gauss(double a, double b, int panels, std::vector<double>& nodes,
                     std::vector<double>& weights) {
  if (panels < 1) throw std::invalid_argument("composite_gauss: panels < 1");
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& xa = rule::abscissa();
  const auto& wa = rule::weights();
  nodes.clear();
  weights.clear();
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = xa.size(); i-- > 0;) {
      nodes.push_back(mid - half * xa[i]);
      weights.push_back(half * wa[i]);
    }
    for (std::size_t i = 0; i < xa.size(); ++i) {
      if (xa[i] == 0.0) continue;
      nodes.push_back(mid + half * xa[i]);
      weights.push_back(half * wa[i]);
    }
  }
}

cplx evaluate_point(const Superposition& s, double x, double y, double t) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < s.eta.size(); ++j) {
    cplx inner = 0.0;
    for (std::size_t l = 0; l < s.tau.size(); ++l) {
      double f, fx;
      s.profile(x, s.eta[j], s.tau[l], f, fx);
      inner += s.w_tau[l] * f * std::polar(1.0, s.tau[l] * t);
    }
    sum += s.w_eta[j] * inner * std::polar(1.0, s.eta[j] * y);
  }
  return sum;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace: n < 2");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

FieldGrid evaluate_fields(const Superposition& s, const std::vector<double>& xs,
                          const std::vector<double>& ys,
                          const std::vector<double>& ts) {
  const std::size_t ne = s.eta.size(), nu = s.tau.size();
  const std::size_t nx = xs.size(), ny = ys.size(), nt = ts.size();
  FieldGrid g;
  g.xs = xs;
  g.ys = ys;
  g.ts = ts;
  const std::size_t total = nx * ny * nt;
  g.F.assign(total, 0.0);
  g.Fx.assign(total, 0.0);
  g.Fy.assign(total, 0.0);
  g.Ft.assign(total, 0.0);

  // Phase tables e^{i tau_l t_m} and e^{i eta_j y_m}.
  std::vector<cplx> et(nt * nu), ey(ny * ne);
  for (std::size_t m = 0; m < nt; ++m)
    for (std::size_t l = 0; l < nu; ++l)
      et[m * nu + l] = std::polar(1.0, s.tau[l] * ts[m]);
  for (std::size_t m = 0; m < ny; ++m)
    for (std::size_t j = 0; j < ne; ++j)
      ey[m * ne + j] = std::polar(s.w_eta[j], s.eta[j] * ys[m]);

  parallel_for(nx, [&](std::size_t i) {
    std::vector<double> M(ne * nu), Mx(ne * nu);
    for (std::size_t j = 0; j < ne; ++j) {
      for (std::size_t l = 0; l < nu; ++l) {
        double f, fx;
        s.profile(xs[i], s.eta[j], s.tau[l], f, fx);
        M[j * nu + l] = s.w_tau[l] * f;
        Mx[j * nu + l] = s.w_tau[l] * fx;
      }
    }
    // A[m][j] = sum_l e^{i tau_l t_m} M[j][l], and the tau-weighted and
    // x-derivative variants.
    std::vector<cplx> A(nt * ne), At(nt * ne), Ax(nt * ne);
    for (std::size_t m = 0; m < nt; ++m) {
      const cplx* e = &et[m * nu];
      for (std::size_t j = 0; j < ne; ++j) {
        cplx a = 0.0, at = 0.0, ax = 0.0;
        const double* mj = &M[j * nu];
        const double* mxj = &Mx[j * nu];
        for (std::size_t l = 0; l < nu; ++l) {
          a += e[l] * mj[l];
          at += e[l] * (mj[l] * s.tau[l]);
          ax += e[l] * mxj[l];
        }
        A[m * ne + j] = a;
        At[m * ne + j] = cplx(0.0, 1.0) * at;
        Ax[m * ne + j] = ax;
      }
    }
    for (std::size_t jy = 0; jy < ny; ++jy) {
      const cplx* e = &ey[jy * ne];
      for (std::size_t m = 0; m < nt; ++m) {
        cplx f = 0.0, fy = 0.0, ft = 0.0, fx = 0.0;
        const cplx* a = &A[m * ne];
        const cplx* at = &At[m * ne];
        const cplx* ax = &Ax[m * ne];
        for (std::size_t j = 0; j < ne; ++j) {
          const cplx ea = e[j] * a[j];
          f += ea;
          fy += ea * s.eta[j];
          ft += e[j] * at[j];
          fx += e[j] * ax[j];
        }
        const std::size_t idx = g.index(i, jy, m);
        g.F[idx] = f;
        g.Fy[idx] = cplx(0.0, 1.0) * fy;
        g.Ft[idx] = ft;
        g.Fx[idx] = fx;
      }
    }
  });
  return g;
}

WavePacket::WavePacket(WavePacketParams p) : p_(p) {
  if (!(p_.lambda >= 16.0)) {
    throw std::invalid_argument("WavePacket: lambda must be >= 16");
  }
  if (p_.k < 1) throw std::invalid_argument("WavePacket: k must be >= 1");
}

double WavePacket::x_lambda() const {
  return std::pow(p_.lambda, -1.0 / (2.0 * p_.k));
}

double WavePacket::log_G(int k, double x, double eta, double tau) {
  const double kk = k;
  return eta * x - tau * ipow(x, k + 1) / (kk + 1.0) -
         kk / (kk + 1.0) * std::pow(eta, (kk + 1.0) / kk) *
             std::pow(tau, -1.0 / kk);
}

Superposition WavePacket::superposition(int panels) const {
  const double lam = p_.lambda;
  const double wt = std::pow(lam, 0.75);
  const double we = std::pow(lam, 0.25);
  const double ec = std::sqrt(lam);
  Superposition s;
  composite_gauss(ec - 0.5 * we, ec + 0.5 * we, panels, s.eta, s.w_eta);
  composite_gauss(lam - 0.5 * wt, lam + 0.5 * wt, panels, s.tau, s.w_tau);
  for (std::size_t j = 0; j < s.eta.size(); ++j)
    s.w_eta[j] *= packet_bump((s.eta[j] - ec) / we);
  for (std::size_t l = 0; l < s.tau.size(); ++l)
    s.w_tau[l] *= packet_bump((s.tau[l] - lam) / wt);
  const int k = p_.k;
  s.profile = [k](double x, double eta, double tau, double& f, double& fx) {
    f = std::exp(log_G(k, x, eta, tau));
    fx = (eta - tau * ipow(x, k)) * f;
  };
  return s;
}

int WavePacket::panels_for(const std::vector<std::array<double, 3>>& points,
                           double rel_tol, int max_panels) const {
  std::vector<cplx> prev;
  for (int panels = 1; panels <= max_panels; panels *= 2) {
    const Superposition s = superposition(panels);
    std::vector<cplx> cur;
    double scale = 0.0;
    for (const auto& p : points) {
      cur.push_back(evaluate_point(s, p[0], p[1], p[2]));
      scale = std::max(scale, std::abs(cur.back()));
    }
    if (!prev.empty()) {
      bool ok = true;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        // Points far below the largest value are judged against it.
        const double ref = std::max(std::abs(cur[i]), 1e-6 * scale);
        if (std::abs(cur[i] - prev[i]) > rel_tol * ref) ok = false;
      }
      if (ok) return panels;
    }
    prev = std::move(cur);
  }
  throw QuadratureBudget("wave packet quadrature did not settle within " +
                         std::to_string(max_panels) + " panels");
}

cplx WavePacket::evaluate(double x, double y, double t, double rel_tol) const {
  const int panels = panels_for({{x, y, t}}, rel_tol);
  return evaluate_point(superposition(panels), x, y, t);
}

cplx evaluate_wave_packet(const WavePacketParams& p, double x, double y,
                          double t) {
  return WavePacket(p).evaluate(x, y, t);
}

double packet_t_decay_slope(const WavePacket& wp, int samples) {
  if (samples < 2) throw std::invalid_argument("packet_t_decay_slope: samples < 2");
  const double t0 = std::pow(wp.params().lambda, -0.25);
  const double x = wp.x_lambda();
  std::vector<double> lt(samples), la(samples);
  for (int j = 0; j < samples; ++j) {
    const double t = t0 * std::pow(2.0, 0.5 * j);
    lt[j] = std::log(t);
    la[j] = std::log(std::abs(wp.evaluate(x, 0.0, t)));
  }
  for (int j = samples - 2; j >= 0; --j) la[j] = std::max(la[j], la[j + 1]);
  double mx = 0, my = 0;
  for (int j = 0; j < samples; ++j) {
    mx += lt[j];
    my += la[j];
  }
  mx /= samples;
  my /= samples;
  double sxy = 0, sxx = 0;
  for (int j = 0; j < samples; ++j) {
    sxy += (lt[j] - mx) * (la[j] - my);
    sxx += (lt[j] - mx) * (lt[j] - mx);
  }
  return sxy / sxx;
}

}  // namespace dochar
