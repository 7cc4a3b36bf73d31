#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace dochar {

using cplx = std::complex<double>;

/// C-infinity bump on [-1/2, 1/2] with h(0) = 1: exp(1 - 1/(1 - 4 s^2)).
double packet_bump(double s);

/// Gauss-Legendre rule on [a, b] split into `panels` equal panels of 20
/// nodes each.
void composite_gauss(double a, double b, int panels, std::vector<double>& nodes,
                     std::vector<double>& weights);

/// F(x, y, t) = sum_{j,l} w_j v_l e^{i(eta_j y + tau_l t)} f(x; eta_j, tau_l):
/// a quadrature-discretized superposition of x-profiles. The profile callback
/// returns f and df/dx.
struct Superposition {
  std::vector<double> eta;
  std::vector<double> w_eta;
  std::vector<double> tau;
  std::vector<double> w_tau;
  std::function<void(double x, double eta, double tau, double& f, double& fx)>
      profile;
};

cplx evaluate_point(const Superposition& s, double x, double y, double t);

/// F and its first partials on a tensor grid; index (i * ny + j) * nt + l
/// for (xs[i], ys[j], ts[l]).
struct FieldGrid {
  std::vector<double> xs, ys, ts;
  std::vector<cplx> F, Fx, Fy, Ft;

  std::size_t index(std::size_t i, std::size_t j, std::size_t l) const {
    return (i * ys.size() + j) * ts.size() + l;
  }
};

/// Separable evaluation: cost O(nx (n_eta n_tau nt + n_eta ny nt)).
FieldGrid evaluate_fields(const Superposition& s, const std::vector<double>& xs,
                          const std::vector<double>& ys,
                          const std::vector<double>& ts);

/// n equally spaced points from a to b inclusive.
std::vector<double> linspace(double a, double b, int n);

struct WavePacketParams {
  double lambda = 16.0;
  int k = 2;
};

/// The localized packet built from normalized null solutions
/// G(x) = exp(eta x - tau x^{k+1}/(k+1) - k/(k+1) eta^{(k+1)/k} tau^{-1/k}),
/// superposed over the windows |tau - lambda| < lambda^{3/4}/2 and
/// |eta - lambda^{1/2}| < lambda^{1/4}/2 with bump weights.
class WavePacket {
 public:
  /// Throws std::invalid_argument unless lambda >= 16 and k >= 1.
  explicit WavePacket(WavePacketParams p);

  const WavePacketParams& params() const { return p_; }
  double x_lambda() const;

  /// log G_{eta,tau}(x); zero at the critical point (eta/tau)^{1/k}.
  static double log_G(int k, double x, double eta, double tau);

  /// Quadrature of the packet with `panels` panels per window axis.
  Superposition superposition(int panels) const;

  /// Smallest panel count (doubling from 1) at which the value at every
  /// probe point changes by less than rel_tol. Throws QuadratureBudget.
  int panels_for(const std::vector<std::array<double, 3>>& points,
                 double rel_tol = 1e-4, int max_panels = 64) const;

  /// Adaptive point value.
  cplx evaluate(double x, double y, double t, double rel_tol = 1e-4) const;

 private:
  WavePacketParams p_;
};

cplx evaluate_wave_packet(const WavePacketParams& p, double x, double y,
                          double t);

/// Log-log slope of |F(x_lambda, 0, t)| for t = lambda^{-1/4} 2^{j/2},
/// j = 0..samples-1. The samples are replaced by their running maximum from
/// the far end first, so the fit sees the decay envelope rather than the
/// oscillation.
double packet_t_decay_slope(const WavePacket& wp, int samples = 11);

}  // namespace dochar
