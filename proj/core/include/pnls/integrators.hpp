#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace pnls {

using State = std::vector<std::complex<double>>;
// out = N(t, u); out has the size of u on entry.
using NonlinearRhs = std::function<void(double t, const State& u, State& out)>;

// phi_1, phi_2, phi_3 of z; Taylor series for |z| < 1.
void phi_functions(std::complex<double> z, std::complex<double>& p1, std::complex<double>& p2,
                   std::complex<double>& p3);

// Fourth-order exponential time differencing (Cox-Matthews) for u' = L u + N(t, u), diagonal L.
class Etdrk4 {
public:
    Etdrk4(std::vector<std::complex<double>> L, double h);

    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return E_.size(); }
    void step(State& u, double t, const NonlinearRhs& N);

private:
    double h_;
    std::vector<std::complex<double>> E_, E2_, Q_, f1_, f2_, f3_;
    State Nu_, Na_, Nb_, Nc_, a_, b_, c_;
};

}  // namespace pnls
