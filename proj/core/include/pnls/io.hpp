#pragma once

#include "pnls/spectral.hpp"

#include <filesystem>

namespace pnls {

// Binary coefficient dump, little-endian:
//   int32 K, int32 p, float64 t, then 2K+1 pairs (float32 re, float32 im) for k = -K..K.
struct CoefficientDump {
    int K = 0;
    int p = 0;
    double t = 0.0;
    std::vector<std::complex<float>> coeffs;
};

void write_dump(const std::filesystem::path& path, const SpectralField& field, int p, double t);
CoefficientDump read_dump(const std::filesystem::path& path);

}  // namespace pnls
