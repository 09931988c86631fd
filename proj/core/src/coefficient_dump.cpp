#include "pnls/errors.hpp"
#include "pnls/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace pnls {
namespace {

template <class T>
void put(std::string& buf, T value) {
    auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
    buf.append(reinterpret_cast<const char*>(bits.data()), bits.size());
}

template <class T>
T get(const std::string& buf, std::size_t& pos) {
    if (pos + sizeof(T) > buf.size()) throw DimensionError("truncated coefficient dump");
    std::array<unsigned char, sizeof(T)> bits;
    std::memcpy(bits.data(), buf.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
    pos += sizeof(T);
    return std::bit_cast<T>(bits);
}

}  // namespace

void write_dump(const std::filesystem::path& path, const SpectralField& field, int p, double t) {
    std::string buf;
    put<std::int32_t>(buf, field.max_mode());
    put<std::int32_t>(buf, p);
    put<double>(buf, t);
    for (const auto& z : field.coeffs()) {
        put<float>(buf, static_cast<float>(z.real()));
        put<float>(buf, static_cast<float>(z.imag()));
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + path.string());
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

CoefficientDump read_dump(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    CoefficientDump d;
    d.K = get<std::int32_t>(buf, pos);
    d.p = get<std::int32_t>(buf, pos);
    d.t = get<double>(buf, pos);
    if (d.K < 1) throw DimensionError("dump header has K < 1");
    const std::size_t n = static_cast<std::size_t>(2 * d.K + 1);
    d.coeffs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const float re = get<float>(buf, pos);
        const float im = get<float>(buf, pos);
        d.coeffs.emplace_back(re, im);
    }
    if (pos != buf.size()) throw DimensionError("trailing bytes in coefficient dump");
    return d;
}

}  // namespace pnls
