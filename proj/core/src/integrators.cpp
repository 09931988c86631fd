#include "pnls/integrators.hpp"

#include "pnls/errors.hpp"

#include <cmath>

namespace pnls {

void phi_functions(std::complex<double> z, std::complex<double>& p1, std::complex<double>& p2,
                   std::complex<double>& p3) {
    using C = std::complex<double>;
    if (std::abs(z) < 1.0) {
        // phi_j(z) = sum_n z^n / (n+j)!
        C term1(1.0, 0.0), term2(0.5, 0.0), term3(1.0 / 6.0, 0.0);
        p1 = p2 = p3 = C(0.0, 0.0);
        for (int n = 0; n < 30; ++n) {
            p1 += term1;
            p2 += term2;
            p3 += term3;
            term1 *= z / double(n + 2);
            term2 *= z / double(n + 3);
            term3 *= z / double(n + 4);
        }
        return;
    }
    const C ez = std::exp(z);
    p1 = (ez - 1.0) / z;
    p2 = (ez - 1.0 - z) / (z * z);
    p3 = (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

Etdrk4::Etdrk4(std::vector<std::complex<double>> L, double h) : h_(h) {
    if (!(h > 0)) throw DomainError("step size must be positive");
    const std::size_t n = L.size();
    E_.resize(n);
    E2_.resize(n);
    Q_.resize(n);
    f1_.resize(n);
    f2_.resize(n);
    f3_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto z = L[i] * h;
        std::complex<double> p1, p2, p3, q1, q2, q3;
        phi_functions(z, p1, p2, p3);
        phi_functions(0.5 * z, q1, q2, q3);
        E_[i] = std::exp(z);
        E2_[i] = std::exp(0.5 * z);
        Q_[i] = 0.5 * h * q1;
        f1_[i] = h * (p1 - 3.0 * p2 + 4.0 * p3);
        f2_[i] = h * (p2 - 2.0 * p3);
        f3_[i] = h * (4.0 * p3 - p2);
    }
}

void Etdrk4::step(State& u, double t, const NonlinearRhs& N) {
    const std::size_t n = E_.size();
    if (u.size() != n) throw DimensionError("state size does not match the linear operator");
    for (State* s : {&Nu_, &Na_, &Nb_, &Nc_, &a_, &b_, &c_}) s->assign(n, {});
    const double th = t + 0.5 * h_;

    N(t, u, Nu_);
    for (std::size_t i = 0; i < n; ++i) a_[i] = E2_[i] * u[i] + Q_[i] * Nu_[i];
    N(th, a_, Na_);
    for (std::size_t i = 0; i < n; ++i) b_[i] = E2_[i] * u[i] + Q_[i] * Na_[i];
    N(th, b_, Nb_);
    for (std::size_t i = 0; i < n; ++i) c_[i] = E2_[i] * a_[i] + Q_[i] * (2.0 * Nb_[i] - Nu_[i]);
    N(t + h_, c_, Nc_);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = E_[i] * u[i] + f1_[i] * Nu_[i] + 2.0 * f2_[i] * (Na_[i] + Nb_[i]) + f3_[i] * Nc_[i];
}

}  // namespace pnls
