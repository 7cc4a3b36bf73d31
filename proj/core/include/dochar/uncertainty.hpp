#pragma once

#include <complex>
#include <vector>

namespace dochar {

/// Unitary DFT: fhat_j = n^{-1/2} sum_m f_m e^{-2 pi i j m / n}.
std::vector<std::complex<double>> unitary_dft(
    const std::vector<std::complex<double>>& f);

/// Checks ||f|| <= C ||fhat||_{l2(complement of E)}.
///
/// Preconditions (std::invalid_argument otherwise): f has at most
/// support_size nonzero entries, every index of E lies in [0, n) without
/// repeats, and |E| support_size <= n / C.
bool uncertainty_check(const std::vector<std::complex<double>>& f,
                       int support_size, const std::vector<int>& E,
                       double C = 16.0);

}  // namespace dochar
