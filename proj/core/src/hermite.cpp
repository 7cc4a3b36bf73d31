#include "dochar/hermite.hpp"

#include <sstream>
#include <stdexcept>

#include "dochar/errors.hpp"

namespace dochar {

namespace {

void check_cap(int degree, int cap) {
  if (degree > cap) {
    throw DegreeCapExceeded("Hermite polynomial degree " +
                            std::to_string(degree) + " exceeds cap " +
                            std::to_string(cap));
  }
}

// (2m-1)!! / 2^m, the Gaussian moment of y^{2m} divided by sqrt(pi).
const mpq_class& even_moment(int m) {
  static thread_local std::vector<mpq_class> cache{mpq_class(1)};
  while (static_cast<int>(cache.size()) <= m) {
    const int j = static_cast<int>(cache.size());
    cache.push_back(cache.back() * mpq_class(2 * j - 1, 2));
  }
  return cache[m];
}

}  // namespace

HermiteFunction::HermiteFunction(std::vector<mpq_class> poly)
    : poly_(std::move(poly)) {
  for (auto& c : poly_) c.canonicalize();
  trim();
}

void HermiteFunction::trim() {
  while (!poly_.empty() && poly_.back() == 0) poly_.pop_back();
}

HermiteFunction HermiteFunction::mode(int q) {
  if (q < 0) throw std::invalid_argument("mode index must be >= 0");
  // H_{j+1} = 2y H_j - 2j H_{j-1}
  std::vector<mpq_class> prev;
  std::vector<mpq_class> cur{mpq_class(1)};
  for (int j = 0; j < q; ++j) {
    std::vector<mpq_class> next(cur.size() + 1);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * j * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return HermiteFunction(std::move(cur));
}

HermiteFunction HermiteFunction::operator+(const HermiteFunction& o) const {
  std::vector<mpq_class> r(std::max(poly_.size(), o.poly_.size()));
  for (std::size_t i = 0; i < poly_.size(); ++i) r[i] += poly_[i];
  for (std::size_t i = 0; i < o.poly_.size(); ++i) r[i] += o.poly_[i];
  return HermiteFunction(std::move(r));
}

HermiteFunction HermiteFunction::operator-(const HermiteFunction& o) const {
  return *this + o * mpq_class(-1);
}

HermiteFunction HermiteFunction::operator*(const mpq_class& s) const {
  std::vector<mpq_class> r(poly_);
  for (auto& c : r) c *= s;
  return HermiteFunction(std::move(r));
}

std::string HermiteFunction::to_string() const {
  if (poly_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    if (poly_[i] == 0) continue;
    if (!first) os << " + ";
    os << "(" << poly_[i].get_str() << ")";
    if (i > 0) os << "*y^" << i;
    first = false;
  }
  return os.str();
}

HermiteFunction raise(const HermiteFunction& f, int degree_cap) {
  if (f.is_zero()) return f;
  const auto& p = f.poly();
  check_cap(f.degree() + 1, degree_cap);
  std::vector<mpq_class> r(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] += 2 * p[i];
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] -= static_cast<long>(i) * p[i];
  return HermiteFunction(std::move(r));
}

HermiteFunction lower(const HermiteFunction& f) {
  const auto& p = f.poly();
  if (p.size() <= 1) return HermiteFunction();
  std::vector<mpq_class> r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = static_cast<long>(i) * p[i];
  return HermiteFunction(std::move(r));
}

HermiteFunction apply_h(const HermiteFunction& f) {
  const auto& p = f.poly();
  std::vector<mpq_class> r(p);
  for (std::size_t i = 1; i < p.size(); ++i) r[i] += 2 * static_cast<long>(i) * p[i];
  for (std::size_t i = 2; i < p.size(); ++i) {
    r[i - 2] -= static_cast<long>(i * (i - 1)) * p[i];
  }
  return HermiteFunction(std::move(r));
}

HermiteFunction mul_y(const HermiteFunction& f, int power, int degree_cap) {
  if (power < 1 || power > 4) {
    throw std::invalid_argument("mul_y power must be in 1..4");
  }
  if (f.is_zero()) return f;
  check_cap(f.degree() + power, degree_cap);
  std::vector<mpq_class> r(f.poly().size() + power);
  for (std::size_t i = 0; i < f.poly().size(); ++i) r[i + power] = f.poly()[i];
  return HermiteFunction(std::move(r));
}

HermiteFunction mul_poly(const HermiteFunction& f,
                         const std::vector<mpq_class>& poly, int degree_cap) {
  const HermiteFunction g(poly);
  if (f.is_zero() || g.is_zero()) return HermiteFunction();
  check_cap(f.degree() + g.degree(), degree_cap);
  std::vector<mpq_class> r(f.poly().size() + g.poly().size() - 1);
  for (std::size_t i = 0; i < f.poly().size(); ++i) {
    for (std::size_t j = 0; j < g.poly().size(); ++j) {
      r[i + j] += f.poly()[i] * g.poly()[j];
    }
  }
  return HermiteFunction(std::move(r));
}

mpq_class inner_product(const HermiteFunction& f, const HermiteFunction& g) {
  const auto& p = f.poly();
  const auto& q = g.poly();
  mpq_class sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (std::size_t j = (i % 2 == 0 ? 0 : 1); j < q.size(); j += 2) {
      if (q[j] == 0) continue;
      sum += p[i] * q[j] * even_moment(static_cast<int>((i + j) / 2));
    }
  }
  return sum;
}

HermiteCoefficients to_coefficients(const HermiteFunction& f) {
  HermiteCoefficients out;
  HermiteFunction rest = f;
  while (!rest.is_zero()) {
    const int d = rest.degree();
    // H_d has leading coefficient 2^d.
    mpq_class lead = rest.poly().back();
    mpz_class two_d;
    mpz_ui_pow_ui(two_d.get_mpz_t(), 2, static_cast<unsigned long>(d));
    mpq_class c = lead / mpq_class(two_d);
    c.canonicalize();
    out[d] = c;
    rest = rest - HermiteFunction::mode(d) * c;
    if (!rest.is_zero() && rest.degree() >= d) {
      throw std::logic_error("Hermite basis change did not reduce degree");
    }
  }
  return out;
}

HermiteFunction from_coefficients(const HermiteCoefficients& c) {
  HermiteFunction r;
  for (const auto& [q, v] : c) {
    if (v != 0) r = r + HermiteFunction::mode(q) * v;
  }
  return r;
}

HermiteCoefficients resolvent(int n, const HermiteCoefficients& f) {
  HermiteCoefficients out;
  for (const auto& [p, v] : f) {
    if (v == 0) continue;
    if (p == n) {
      throw KernelComponentError("resolvent: input has a component along mode " +
                                 std::to_string(n));
    }
    mpq_class r = v / mpq_class(2 * (p - n));
    r.canonicalize();
    out[p] = r;
  }
  return out;
}

mpq_class lemma41_bracket(int q) {
  if (q < 0) throw std::invalid_argument("q must be >= 0");
  const HermiteFunction hq = HermiteFunction::mode(q);
  const std::vector<mpq_class> factor{0, -(2 * q + 1), 0, 1};
  const HermiteFunction v = mul_poly(hq, factor);
  const HermiteFunction rv = from_coefficients(resolvent(q, to_coefficients(v)));
  mpq_class r = 48 * inner_product(v, rv) / inner_product(hq, hq);
  r.canonicalize();
  return r;
}

}  // namespace dochar
