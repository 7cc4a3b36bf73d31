#include "dochar/sublevel.hpp"

#include <cmath>
#include <stdexcept>

namespace dochar {

namespace {

double center(int i, int res) { return -1.0 + (2.0 * i + 1.0) / res; }

}  // namespace

GridFunction sample_grid(const std::function<double(double)>& f, int res) {
  GridFunction g;
  g.dim = 1;
  g.res = res;
  g.values.resize(res);
  for (int i = 0; i < res; ++i) g.values[i] = f(center(i, res));
  return g;
}

GridFunction sample_grid(const std::function<double(double, double)>& f,
                         int res) {
  GridFunction g;
  g.dim = 2;
  g.res = res;
  g.values.resize(static_cast<std::size_t>(res) * res);
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      g.values[static_cast<std::size_t>(i) * res + j] =
          f(center(i, res), center(j, res));
    }
  }
  return g;
}

double sublevel_measure(const GridFunction& f, double delta) {
  if (f.dim != 1 && f.dim != 2) {
    throw std::invalid_argument("sublevel_measure: dim must be 1 or 2");
  }
  if (f.res < 256) {
    throw std::invalid_argument("sublevel_measure: resolution must be >= 256");
  }
  const std::size_t expected =
      f.dim == 1 ? static_cast<std::size_t>(f.res)
                 : static_cast<std::size_t>(f.res) * f.res;
  if (f.values.size() != expected) {
    throw std::invalid_argument("sublevel_measure: sample count mismatch");
  }
  std::size_t count = 0;
  for (double v : f.values) {
    if (std::fabs(v) <= delta) ++count;
  }
  const double cell = std::pow(2.0 / f.res, f.dim);
  return static_cast<double>(count) * cell;
}

double sublevel_exponent(const GridFunction& f,
                         const std::vector<double>& deltas) {
  if (deltas.size() < 2) {
    throw std::invalid_argument("sublevel_exponent: need two or more deltas");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(deltas.size());
  for (double d : deltas) {
    const double m = sublevel_measure(f, d);
    if (!(m > 0.0)) {
      throw std::domain_error("sublevel_exponent: empty sublevel set");
    }
    const double x = std::log(d);
    const double y = std::log(m);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dochar
