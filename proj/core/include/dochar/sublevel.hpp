#pragma once

#include <functional>
#include <vector>

namespace dochar {

/// Samples of a function at the cell centers of a uniform res^dim grid on
/// [-1, 1]^dim, row-major with the last axis fastest.
struct GridFunction {
  int dim = 1;
  int res = 256;
  std::vector<double> values;
};

GridFunction sample_grid(const std::function<double(double)>& f, int res);
GridFunction sample_grid(const std::function<double(double, double)>& f,
                         int res);

/// Measure of {|f| <= delta} by counting cells. Requires dim in {1, 2} and
/// res >= 256.
double sublevel_measure(const GridFunction& f, double delta);

/// Least-squares slope of log(measure) against log(delta).
double sublevel_exponent(const GridFunction& f,
                         const std::vector<double>& deltas);

}  // namespace dochar
