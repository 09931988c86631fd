#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pnls::fft {

// out_j = sum_k in_k e^{+2 pi i jk/M}; no normalisation.
void backward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out);
// out_k = sum_j in_j e^{-2 pi i jk/M}; no normalisation.
void forward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out);

}  // namespace pnls::fft
