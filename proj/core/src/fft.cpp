#include "pnls/fft.hpp"

#include "pnls/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace pnls::fft {
namespace {

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int direction) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, direction);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<std::complex<double>> a(n), b(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                                          reinterpret_cast<fftw_complex*>(b.data()), direction,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw InvariantError("fftw planner failed for n=" + std::to_string(n));
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out, int direction) {
    const std::size_t n = in.size();
    if (n == 0) throw DimensionError("empty transform");
    out.resize(n);
    fftw_plan plan = cache().get(n, direction);
    // New-array execution is thread-safe; the input is not modified for out-of-place c2c.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void backward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) {
    run(in, out, FFTW_BACKWARD);
}

void forward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) {
    run(in, out, FFTW_FORWARD);
}

}  // namespace pnls::fft
