#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dochar {

enum class CoefficientKind { Constant, Polynomial, Flat };

std::string to_string(CoefficientKind kind);

/// The coefficient a(x) of the commutator term, split as a(0) plus a
/// perturbation that is either absent, a polynomial with known Taylor data,
/// or flat (all derivatives vanish at the origin).
class CoefficientSpec {
 public:
  /// a(x) = a0.
  static CoefficientSpec constant(double a0);

  /// a(x) = a0 + sum_{m>=1} taylor[m] x^m. taylor[0] must be zero and at
  /// least one higher entry must be nonzero.
  static CoefficientSpec polynomial(double a0, std::vector<double> taylor);

  /// a(x) = a0 + amplitude * exp(-1/(scale x)^2), extended by 0 at x = 0.
  static CoefficientSpec flat(double a0, double scale, double amplitude = 1.0);

  CoefficientKind kind() const { return kind_; }
  double a0() const { return a0_; }
  const std::vector<double>& taylor() const { return taylor_; }
  double flat_scale() const { return flat_scale_; }
  double flat_amplitude() const { return flat_amplitude_; }

  /// Order of the first nonvanishing derivative of a - a(0) at 0;
  /// nullopt stands for infinite order.
  std::optional<int> vanishing_order() const;

  /// a(x) - a(0), without any cutoff.
  double perturbation(double x) const;

  /// a^{(m)}(0). m = 0 gives a(0).
  double derivative_at_zero(int m) const;

  /// -a.
  CoefficientSpec negated() const;

  /// x -> a(-x).
  CoefficientSpec reflected() const;

 private:
  CoefficientSpec() = default;

  CoefficientKind kind_ = CoefficientKind::Constant;
  double a0_ = 0.0;
  std::vector<double> taylor_;
  double flat_scale_ = 1.0;
  double flat_amplitude_ = 1.0;
};

/// Smooth even cutoff: 1 on |x| <= delta0, 0 on |x| >= 2 delta0, with an
/// exp(-1/t) smooth-step profile in between.
struct CutoffSpec {
  double delta0 = 0.5;

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
};

/// Smooth step S(t): 1 for t <= 0, 0 for t >= 1, C-infinity, built from
/// exp(-1/t). Returned as (S, S', S'').
struct SmoothStep {
  double value;
  double d1;
  double d2;
};
SmoothStep smooth_step(double t);

struct RegionConstants {
  double tau0 = 100.0;
  double gamma0 = 2.0;
  double gamma1 = 0.25;

  /// gamma1 < 1 and gamma0 tau0^{1/(k+1)} < gamma1 tau0, so that the
  /// middle region is nonempty from tau0 on.
  bool nested(int k) const;
};

enum class Region { B, C, D };
std::string to_string(Region region);

enum class Family { A, B, D };
std::string to_string(Family family);

/// Coordinates for the B family. Original is x with wells at +-1/eps;
/// WellCentered is y = x - 1/eps, which extends continuously to eps = 0.
enum class BChart { Original, WellCentered };

struct FamilyA {
  double eta;
  double tau;
};

struct FamilyB {
  double z;
  double eps;
  BChart chart = BChart::Original;
};

struct FamilyD {
  double w;
  double eps;
  int sign_tau = 1;
};

/// One ordinary differential operator -d^2/dx^2 + V(x) from the A, B or D
/// family, with its coefficient and cutoff. Immutable.
class OperatorInstance {
 public:
  using Params = std::variant<FamilyA, FamilyB, FamilyD>;

  static OperatorInstance family_a(double eta, double tau, int k,
                                   CoefficientSpec coeff,
                                   CutoffSpec cutoff = {});
  static OperatorInstance family_b(double z, double eps, int k,
                                   CoefficientSpec coeff,
                                   CutoffSpec cutoff = {},
                                   BChart chart = BChart::Original);
  static OperatorInstance family_d(double w, double eps, int sign_tau, int k,
                                   CoefficientSpec coeff,
                                   CutoffSpec cutoff = {});

  Family family() const;
  const Params& params() const { return params_; }
  int k() const { return k_; }
  const CoefficientSpec& coeff() const { return coeff_; }
  const CutoffSpec& cutoff() const { return cutoff_; }

  /// b(s) = (a(s) - a(0)) zeta(s).
  double b(double s) const;

  double potential(double x) const;
  std::function<double(double)> potential_fn() const;

 private:
  OperatorInstance(Params params, int k, CoefficientSpec coeff,
                   CutoffSpec cutoff);

  Params params_;
  int k_;
  CoefficientSpec coeff_;
  CutoffSpec cutoff_;
};

double evaluate_potential(const OperatorInstance& op, double x);

/// x^n for integer n >= 0; 0^0 = 1.
double ipow(double x, int n);

/// Perturbative chart of the middle region. When flipped is set the chart
/// describes A_{-eta,-tau} with coefficient -a, which is the same operator.
struct ChartC {
  double z;
  double eps;
  bool flipped = false;
};

ChartC chart_c(double eta, double tau, int k);
std::pair<double, double> chart_c_inverse(const ChartC& chart, int k);

/// |d(eta,tau)/d(z,eps)| = (2/k) |eps^-5 z^-(k+3)|.
double jacobian_c(double z, double eps, int k);

/// |eps z|^-2: eigenvalues of A are this factor times eigenvalues of B.
double scale_c(const ChartC& chart);

struct ChartD {
  double w;
  double eps;
  int sign_tau;
};

ChartD chart_d(double eta, double tau, int k);
std::pair<double, double> chart_d_inverse(const ChartD& chart, int k);

/// |tau|^{2/(k+1)} = eps^-2: eigenvalues of A are this factor times those of D.
double scale_d(const ChartD& chart);

/// B_{z,eps} unitarily equivalent (up to scale_c) to A_{eta,tau}.
OperatorInstance operator_from_chart(const ChartC& chart, int k,
                                     const CoefficientSpec& coeff,
                                     const CutoffSpec& cutoff,
                                     BChart b_chart = BChart::Original);

/// D_{w,eps} unitarily equivalent (up to scale_d) to A_{eta,tau}.
OperatorInstance operator_from_chart(const ChartD& chart, int k,
                                     const CoefficientSpec& coeff,
                                     const CutoffSpec& cutoff);

/// Boundary ties go to B, then C.
Region classify_region(double eta, double tau, int k,
                       const RegionConstants& rc);

}  // namespace dochar
