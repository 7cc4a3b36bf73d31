#include "dochar/uncertainty.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace dochar {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<std::complex<double>> unitary_dft(
    const std::vector<std::complex<double>>& f) {
  const int n = static_cast<int>(f.size());
  if (n == 0) return {};
  fftw_complex* in = fftw_alloc_complex(n);
  fftw_complex* out = fftw_alloc_complex(n);
  for (int i = 0; i < n; ++i) {
    in[i][0] = f[i].real();
    in[i][1] = f[i].imag();
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::complex<double>> r(n);
  for (int i = 0; i < n; ++i) r[i] = {out[i][0] * s, out[i][1] * s};
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return r;
}

bool uncertainty_check(const std::vector<std::complex<double>>& f,
                       int support_size, const std::vector<int>& E,
                       double C) {
  const int n = static_cast<int>(f.size());
  if (n == 0) throw std::invalid_argument("uncertainty_check: empty signal");
  if (support_size < 1) {
    throw std::invalid_argument("uncertainty_check: support_size must be >= 1");
  }
  int nonzero = 0;
  for (const auto& v : f) {
    if (v != std::complex<double>(0.0, 0.0)) ++nonzero;
  }
  if (nonzero > support_size) {
    throw std::invalid_argument("uncertainty_check: f exceeds support_size");
  }
  std::vector<char> in_e(n, 0);
  for (int j : E) {
    if (j < 0 || j >= n || in_e[j]) {
      throw std::invalid_argument("uncertainty_check: bad index set E");
    }
    in_e[j] = 1;
  }
  if (static_cast<double>(E.size()) * support_size > n / C) {
    throw std::invalid_argument("uncertainty_check: |E| * support exceeds n/C");
  }
  double norm_f = 0.0;
  for (const auto& v : f) norm_f += std::norm(v);
  const auto fhat = unitary_dft(f);
  double outside = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!in_e[j]) outside += std::norm(fhat[j]);
  }
  return std::sqrt(norm_f) <= C * std::sqrt(outside);
}

}  // namespace dochar
