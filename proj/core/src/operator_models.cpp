#include "dochar/operator_models.hpp"

#include <cmath>
#include <stdexcept>

#include "dochar/errors.hpp"

namespace dochar {

std::string to_string(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::Constant: return "constant";
    case CoefficientKind::Polynomial: return "polynomial";
    case CoefficientKind::Flat: return "flat";
  }
  return "unknown";
}

std::string to_string(Region region) {
  switch (region) {
    case Region::B: return "B";
    case Region::C: return "C";
    case Region::D: return "D";
  }
  return "unknown";
}

std::string to_string(Family family) {
  switch (family) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
  }
  return "unknown";
}

double ipow(double x, int n) {
  double r = 1.0;
  double b = x;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// CoefficientSpec

CoefficientSpec CoefficientSpec::constant(double a0) {
  CoefficientSpec c;
  c.kind_ = CoefficientKind::Constant;
  c.a0_ = a0;
  return c;
}

CoefficientSpec CoefficientSpec::polynomial(double a0,
                                            std::vector<double> taylor) {
  if (taylor.empty() || taylor[0] != 0.0) {
    throw std::invalid_argument(
        "polynomial coefficient: taylor[0] must be present and zero");
  }
  while (!taylor.empty() && taylor.back() == 0.0) taylor.pop_back();
  if (taylor.size() < 2) {
    throw std::invalid_argument(
        "polynomial coefficient: needs a nonzero entry of order >= 1");
  }
  CoefficientSpec c;
  c.kind_ = CoefficientKind::Polynomial;
  c.a0_ = a0;
  c.taylor_ = std::move(taylor);
  return c;
}

CoefficientSpec CoefficientSpec::flat(double a0, double scale,
                                      double amplitude) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("flat coefficient: scale must be positive");
  }
  CoefficientSpec c;
  c.kind_ = CoefficientKind::Flat;
  c.a0_ = a0;
  c.flat_scale_ = scale;
  c.flat_amplitude_ = amplitude;
  return c;
}

std::optional<int> CoefficientSpec::vanishing_order() const {
  if (kind_ != CoefficientKind::Polynomial) return std::nullopt;
  for (std::size_t m = 1; m < taylor_.size(); ++m) {
    if (taylor_[m] != 0.0) return static_cast<int>(m);
  }
  return std::nullopt;
}

double CoefficientSpec::perturbation(double x) const {
  switch (kind_) {
    case CoefficientKind::Constant:
      return 0.0;
    case CoefficientKind::Polynomial: {
      double r = 0.0;
      for (std::size_t m = taylor_.size(); m-- > 1;) r = (r + taylor_[m]) * x;
      return r;
    }
    case CoefficientKind::Flat: {
      if (x == 0.0) return 0.0;
      const double s = flat_scale_ * x;
      return flat_amplitude_ * std::exp(-1.0 / (s * s));
    }
  }
  return 0.0;
}

double CoefficientSpec::derivative_at_zero(int m) const {
  if (m < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (m == 0) return a0_;
  if (kind_ != CoefficientKind::Polynomial) return 0.0;
  if (static_cast<std::size_t>(m) >= taylor_.size()) return 0.0;
  return std::tgamma(m + 1.0) * taylor_[m];
}

CoefficientSpec CoefficientSpec::negated() const {
  CoefficientSpec c = *this;
  c.a0_ = -a0_;
  for (double& t : c.taylor_) t = -t;
  c.flat_amplitude_ = -flat_amplitude_;
  return c;
}

CoefficientSpec CoefficientSpec::reflected() const {
  CoefficientSpec c = *this;
  for (std::size_t m = 1; m < c.taylor_.size(); m += 2) c.taylor_[m] = -c.taylor_[m];
  return c;
}

// ---------------------------------------------------------------------------
// Cutoffs

SmoothStep smooth_step(double t) {
  if (t <= 0.0) return {1.0, 0.0, 0.0};
  if (t >= 1.0) return {0.0, 0.0, 0.0};
  // S = 1/(1+e^phi), phi = 1/(1-t) - 1/t.
  const double u = 1.0 - t;
  const double phi = 1.0 / u - 1.0 / t;
  const double dphi = 1.0 / (u * u) + 1.0 / (t * t);
  const double d2phi = 2.0 / (u * u * u) - 2.0 / (t * t * t);
  double s;
  if (phi > 0) {
    const double e = std::exp(-phi);
    s = e / (1.0 + e);
  } else {
    s = 1.0 / (1.0 + std::exp(phi));
  }
  const double s1m = 1.0 - s;
  const double d1 = -dphi * s * s1m;
  const double d2 = -d2phi * s * s1m - dphi * d1 * (1.0 - 2.0 * s);
  return {s, d1, d2};
}

double CutoffSpec::operator()(double x) const {
  return smooth_step((std::fabs(x) - delta0) / delta0).value;
}

double CutoffSpec::derivative(double x) const {
  const double d = smooth_step((std::fabs(x) - delta0) / delta0).d1 / delta0;
  return x < 0 ? -d : d;
}

double CutoffSpec::second_derivative(double x) const {
  return smooth_step((std::fabs(x) - delta0) / delta0).d2 / (delta0 * delta0);
}

bool RegionConstants::nested(int k) const {
  return gamma1 < 1.0 && tau0 > 0.0 && gamma0 > 0.0 && gamma1 > 0.0 &&
         gamma0 * std::pow(tau0, 1.0 / (k + 1)) < gamma1 * tau0;
}

// ---------------------------------------------------------------------------
// OperatorInstance

OperatorInstance::OperatorInstance(Params params, int k, CoefficientSpec coeff,
                                   CutoffSpec cutoff)
    : params_(params), k_(k), coeff_(std::move(coeff)), cutoff_(cutoff) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(cutoff.delta0 > 0.0)) {
    throw std::invalid_argument("cutoff delta0 must be positive");
  }
}

OperatorInstance OperatorInstance::family_a(double eta, double tau, int k,
                                            CoefficientSpec coeff,
                                            CutoffSpec cutoff) {
  return OperatorInstance(FamilyA{eta, tau}, k, std::move(coeff), cutoff);
}

OperatorInstance OperatorInstance::family_b(double z, double eps, int k,
                                            CoefficientSpec coeff,
                                            CutoffSpec cutoff, BChart chart) {
  if (chart == BChart::Original && eps == 0.0) {
    throw DomainError("B family in original coordinates needs eps != 0");
  }
  return OperatorInstance(FamilyB{z, eps, chart}, k, std::move(coeff), cutoff);
}

OperatorInstance OperatorInstance::family_d(double w, double eps, int sign_tau,
                                            int k, CoefficientSpec coeff,
                                            CutoffSpec cutoff) {
  if (sign_tau != 1 && sign_tau != -1) {
    throw std::invalid_argument("sign_tau must be +1 or -1");
  }
  return OperatorInstance(FamilyD{w, eps, sign_tau}, k, std::move(coeff),
                          cutoff);
}

Family OperatorInstance::family() const {
  switch (params_.index()) {
    case 0: return Family::A;
    case 1: return Family::B;
    default: return Family::D;
  }
}

double OperatorInstance::b(double s) const {
  const double c = cutoff_(s);
  if (c == 0.0) return 0.0;
  return coeff_.perturbation(s) * c;
}

namespace {

// ((1 + eps y)^k - 1) / (eps k), expanded so it stays accurate as eps -> 0.
double centered_q(double y, double eps, int k) {
  double sum = 0.0;
  double binom = k;  // C(k, 1)
  double term = y;   // eps^{j-1} y^j
  for (int j = 1; j <= k; ++j) {
    sum += binom * term;
    binom = binom * (k - j) / (j + 1);
    term *= eps * y;
  }
  return sum / k;
}

}  // namespace

double OperatorInstance::potential(double x) const {
  const int k = k_;
  const double a0 = coeff_.a0();
  if (const auto* p = std::get_if<FamilyA>(&params_)) {
    const double u = p->eta + p->tau * ipow(x, k);
    return u * u - (a0 + b(x)) * k * p->tau * ipow(x, k - 1);
  }
  if (const auto* p = std::get_if<FamilyB>(&params_)) {
    if (p->chart == BChart::Original) {
      const double ex = p->eps * x;
      const double q = (ipow(ex, k) - 1.0) / (p->eps * k);
      const double dq = ipow(ex, k - 1);
      return q * q - (a0 + b(p->z * ex)) * dq;
    }
    const double u = 1.0 + p->eps * x;
    const double q = centered_q(x, p->eps, k);
    const double dq = ipow(u, k - 1);
    return q * q - (a0 + b(p->z * u)) * dq;
  }
  const auto& p = std::get<FamilyD>(params_);
  const double u = ipow(x, k) + p.w;
  return u * u - p.sign_tau * (a0 + b(p.eps * x)) * k * ipow(x, k - 1);
}

std::function<double(double)> OperatorInstance::potential_fn() const {
  return [op = *this](double x) { return op.potential(x); };
}

double evaluate_potential(const OperatorInstance& op, double x) {
  return op.potential(x);
}

// ---------------------------------------------------------------------------
// Charts

ChartC chart_c(double eta, double tau, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (tau == 0.0) throw DomainError("chart C: tau must be nonzero");
  if (eta == 0.0) throw DomainError("chart C: eta must be nonzero");
  bool flipped = false;
  if (k % 2 == 1 && tau < 0.0) {
    eta = -eta;
    tau = -tau;
    flipped = true;
  }
  const double r = -eta / tau;
  double z;
  if (k % 2 == 0) {
    if (r <= 0.0) {
      throw DomainError("chart C: -eta/tau must be positive for even k");
    }
    z = std::copysign(std::pow(r, 1.0 / k), tau);
  } else {
    z = std::copysign(std::pow(std::fabs(r), 1.0 / k), r);
  }
  const double eps2 = std::pow(std::fabs(eta), -(k + 1.0) / k) *
                      std::pow(std::fabs(tau), 1.0 / k) / k;
  return {z, std::sqrt(eps2), flipped};
}

std::pair<double, double> chart_c_inverse(const ChartC& chart, int k) {
  const double e2 = chart.eps * chart.eps;
  double eta = -1.0 / (k * e2 * chart.z);
  double tau = 1.0 / (k * e2 * ipow(chart.z, k + 1));
  if (chart.flipped) {
    eta = -eta;
    tau = -tau;
  }
  return {eta, tau};
}

double jacobian_c(double z, double eps, int k) {
  return 2.0 / k * std::fabs(std::pow(eps, -5.0) * std::pow(std::fabs(z), -(k + 3.0)));
}

double scale_c(const ChartC& chart) {
  const double s = chart.eps * chart.z;
  return 1.0 / (s * s);
}

ChartD chart_d(double eta, double tau, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (tau == 0.0) throw DomainError("chart D: tau must be nonzero");
  const double eps = std::pow(std::fabs(tau), -1.0 / (k + 1));
  const int sign = tau > 0 ? 1 : -1;
  return {sign * eta * eps, eps, sign};
}

std::pair<double, double> chart_d_inverse(const ChartD& chart, int k) {
  const double abs_tau = std::pow(chart.eps, -(k + 1.0));
  return {chart.sign_tau * chart.w / chart.eps, chart.sign_tau * abs_tau};
}

double scale_d(const ChartD& chart) { return 1.0 / (chart.eps * chart.eps); }

OperatorInstance operator_from_chart(const ChartC& chart, int k,
                                     const CoefficientSpec& coeff,
                                     const CutoffSpec& cutoff,
                                     BChart b_chart) {
  return OperatorInstance::family_b(chart.z, chart.eps, k,
                                    chart.flipped ? coeff.negated() : coeff,
                                    cutoff, b_chart);
}

OperatorInstance operator_from_chart(const ChartD& chart, int k,
                                     const CoefficientSpec& coeff,
                                     const CutoffSpec& cutoff) {
  return OperatorInstance::family_d(chart.w, chart.eps, chart.sign_tau, k,
                                    coeff, cutoff);
}

Region classify_region(double eta, double tau, int k,
                       const RegionConstants& rc) {
  const double at = std::fabs(tau);
  const double ae = std::fabs(eta);
  if (at <= rc.tau0 || ae >= rc.gamma1 * at) return Region::B;
  if (ae >= rc.gamma0 * std::pow(at, 1.0 / (k + 1))) return Region::C;
  return Region::D;
}

}  // namespace dochar
