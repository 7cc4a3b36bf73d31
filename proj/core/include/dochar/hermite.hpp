#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace dochar {

inline constexpr int kDefaultDegreeCap = 64;

/// f(y) = p(y) e^{-y^2/2} with p a polynomial over the rationals, stored
/// densely in ascending degree. Trailing zeros are always trimmed, so the
/// zero function has an empty coefficient list.
class HermiteFunction {
 public:
  HermiteFunction() = default;
  explicit HermiteFunction(std::vector<mpq_class> poly);

  /// Unnormalized physicists' mode H_q(y) e^{-y^2/2}.
  static HermiteFunction mode(int q);

  const std::vector<mpq_class>& poly() const { return poly_; }
  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  bool is_zero() const { return poly_.empty(); }

  HermiteFunction operator+(const HermiteFunction& o) const;
  HermiteFunction operator-(const HermiteFunction& o) const;
  HermiteFunction operator*(const mpq_class& s) const;
  bool operator==(const HermiteFunction& o) const { return poly_ == o.poly_; }
  bool operator!=(const HermiteFunction& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> poly_;
};

/// Expansion sum_q c_q H_q(y) e^{-y^2/2}; zero entries are dropped.
using HermiteCoefficients = std::map<int, mpq_class>;

/// (-d/dy + y) f: p -> 2 y p - p'.
HermiteFunction raise(const HermiteFunction& f,
                      int degree_cap = kDefaultDegreeCap);

/// (d/dy + y) f: p -> p'.
HermiteFunction lower(const HermiteFunction& f);

/// (-d^2/dy^2 + y^2) f: p -> -p'' + 2 y p' + p.
HermiteFunction apply_h(const HermiteFunction& f);

/// y^power f, power in 1..4.
HermiteFunction mul_y(const HermiteFunction& f, int power,
                      int degree_cap = kDefaultDegreeCap);

/// Multiply by a polynomial in y with rational coefficients.
HermiteFunction mul_poly(const HermiteFunction& f,
                         const std::vector<mpq_class>& poly,
                         int degree_cap = kDefaultDegreeCap);

/// r with integral of f g over the line equal to r sqrt(pi).
mpq_class inner_product(const HermiteFunction& f, const HermiteFunction& g);

HermiteCoefficients to_coefficients(const HermiteFunction& f);
HermiteFunction from_coefficients(const HermiteCoefficients& c);

/// Inverse of H - (2n+1) on the complement of mode n: c_p -> c_p / (2(p-n)).
/// Throws KernelComponentError when the mode-n coefficient is nonzero.
HermiteCoefficients resolvent(int n, const HermiteCoefficients& f);

/// 48 <v, H_q^{-1} v> / <H_q, H_q> with v = (y^3 - (2q+1) y) H_q, which is
/// the bracket expression of the normalized mode h_q. Equals -6q^2-6q+9.
mpq_class lemma41_bracket(int q);

}  // namespace dochar
