#include "pnls/resonance.hpp"

#include "parallel.hpp"
#include "pnls/errors.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>

namespace pnls {
namespace {

constexpr int kMaxP = 9;
using i64 = std::int64_t;

i64 iabs(i64 x) { return x < 0 ? -x : x; }

CaseLabel classify_raw(const i64* ks, int p, i64 k, i64 ph, const CaseConstants& c) {
    int odd_matches = 0;
    for (int l = 0; l < p; l += 2)
        if (ks[l] == k) ++odd_matches;
    i64 m1 = 0, m2 = 0, m3 = 0;
    for (int l = 0; l < p; ++l) {
        const i64 a = iabs(ks[l]);
        if (a > m1) {
            m3 = m2;
            m2 = m1;
            m1 = a;
        } else if (a > m2) {
            m3 = m2;
            m2 = a;
        } else if (a > m3) {
            m3 = a;
        }
    }
    CaseLabel label;
    label.A = odd_matches == 1;
    label.B = at_least(iabs(ph), c.c_B, m1 > 1 ? m1 : 1);
    label.C = at_least(m3 * m3, c.c_C, m1) || at_least(m2, c.r_comp, m1);
    return label;
}

i64 top_abs(const i64* ks, int p) {
    i64 m = 0;
    for (int l = 0; l < p; ++l) m = std::max(m, iabs(ks[l]));
    return m;
}

void require_direct(const EquationParams& params, const SpectralField& a, const SpectralField& b) {
    if (params.p != 3 && params.p != 5)
        throw ConfigError("direct tensor sums support p = 3 and p = 5 only, got p=" + std::to_string(params.p));
    if (a.max_mode() != b.max_mode()) throw DimensionError("tensor arguments live on different windows");
}

void require_cost(double cost, const DirectSumLimits& limits, const char* what) {
    if (cost > limits.max_terms)
        throw CostError(std::string(what) + ": direct sum needs about " + std::to_string(cost) +
                            " terms, limit is " + std::to_string(limits.max_terms),
                        cost);
}

// Walks slots 2..p over [-B, B] and fixes slot 1 from the hyperplane. The leaf sees
// (k_1..k_p, Phi, max_{j>=2}|k_j|, product with conjugates on even slots).
template <class Leaf>
void walk_mode(int p, int k, int K, int B, const std::vector<cplx>& first, const std::vector<cplx>& rest,
               Leaf&& leaf) {
    i64 ks[kMaxP] = {};
    auto rec = [&](auto& self, int j, i64 s, i64 phi_part, i64 m2, cplx prod) -> void {
        if (j == p) {
            const i64 k1 = k - s;
            if (k1 < -K || k1 > K) return;
            const cplx a = first[static_cast<std::size_t>(k1 + K)];
            if (a == cplx(0.0, 0.0)) return;
            ks[0] = k1;
            const i64 ph = i64(k) * k - k1 * k1 + phi_part;
            leaf(static_cast<const i64*>(ks), ph, m2, prod * a);
            return;
        }
        const bool even = (j + 1) % 2 == 0;
        for (int q = -B; q <= B; ++q) {
            cplx v = rest[static_cast<std::size_t>(q + K)];
            if (v == cplx(0.0, 0.0)) continue;
            if (even) v = std::conj(v);
            ks[j] = q;
            const i64 qq = i64(q) * q;
            self(self, j + 1, even ? s - q : s + q, even ? phi_part + qq : phi_part - qq, std::max<i64>(m2, std::abs(q)),
                 prod * v);
        }
    };
    rec(rec, 1, 0, 0, 0, cplx(1.0, 0.0));
}

bool resonant(const i64* ks, int p, i64 k) {
    for (int l = 0; l < p; l += 2)
        if (ks[l] == k) return true;
    return false;
}

// Accumulates the resonant and non-resonant direct sums in one pass.
void resonant_split(const SpectralField& field, const EquationParams& params, const DirectSumLimits& limits,
                    SpectralField& R, SpectralField& NR) {
    require_direct(params, field, field);
    const int K = field.max_mode();
    const double n = 2.0 * K + 1;
    require_cost(std::pow(n, params.p), limits, "split_nonlinearity");
    const auto& a = field.coeffs();
    R = SpectralField(field.grid());
    NR = SpectralField(field.grid());
    detail::parallel_for(-K, K + 1, limits.threads, [&](int k) {
        cplx r(0.0, 0.0), nr(0.0, 0.0);
        walk_mode(params.p, k, K, K, a, a, [&](const i64* ks, i64, i64, cplx term) {
            if (resonant(ks, params.p, k))
                r += term;
            else
                nr += term;
        });
        R[k] = r;
        NR[k] = nr;
    });
}

}  // namespace

FrequencyTuple FrequencyTuple::from_internal(std::vector<std::int64_t> ks) {
    FrequencyTuple t;
    for (std::size_t j = 0; j < ks.size(); ++j) t.k += (j % 2 == 0) ? ks[j] : -ks[j];
    t.internal = std::move(ks);
    return t;
}

bool FrequencyTuple::on_hyperplane() const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < internal.size(); ++j) s += (j % 2 == 0) ? internal[j] : -internal[j];
    return s == k && internal.size() % 2 == 1;
}

std::int64_t phi(const FrequencyTuple& tuple) {
    if (!tuple.on_hyperplane())
        throw DomainError("frequency tuple violates k = k1 - k2 + ... + kp");
    std::int64_t ph = tuple.k * tuple.k;
    for (std::size_t j = 0; j < tuple.internal.size(); ++j) {
        const auto q = tuple.internal[j] * tuple.internal[j];
        ph += (j % 2 == 0) ? -q : q;
    }
    return ph;
}

void CaseConstants::validate() const {
    if (c_B.num <= 0 || c_C.num <= 0) throw ConfigError("c_B and c_C must be positive");
    if (r_comp.num <= 0 || r_comp > Rational(1)) throw ConfigError("r_comp must lie in (0, 1]");
    if (gap <= Rational(1)) throw ConfigError("gap must exceed 1");
}

CaseLabel classify(const FrequencyTuple& tuple, const CaseConstants& constants) {
    const auto ph = phi(tuple);
    const int p = static_cast<int>(tuple.internal.size());
    if (p < 3 || p > kMaxP) throw DomainError("classifier supports 3 <= p <= 9");
    return classify_raw(tuple.internal.data(), p, tuple.k, ph, constants);
}

double enumeration_cost(int box, int p) { return std::pow(2.0 * box + 1.0, p); }

DecompositionReport verify_decomposition(int box, int p, const CaseConstants& constants,
                                         const EnumerationLimits& limits) {
    if (box < 1) throw DomainError("box must be positive");
    if (p < 3 || p % 2 == 0 || p > kMaxP) throw DomainError("p must be odd with 3 <= p <= 9");
    constants.validate();
    const double cost = enumeration_cost(box, p);
    if (cost > limits.max_tuples)
        throw CostError("enumeration of box " + std::to_string(box) + " at p=" + std::to_string(p) + " needs " +
                            std::to_string(cost) + " tuples, limit is " + std::to_string(limits.max_tuples),
                        cost);

    const auto start = std::chrono::steady_clock::now();
    struct Partial {
        i64 tuples = 0;
        i64 violations = 0;
        bool has_min = false;
        i64 min_num = 0, min_den = 1;
        bool has_violation = false;
        std::vector<i64> violation;
    };
    std::vector<Partial> parts(static_cast<std::size_t>(2 * box + 1));

    detail::parallel_for(-box, box + 1, limits.threads, [&](int k1) {
        Partial& part = parts[static_cast<std::size_t>(k1 + box)];
        i64 ks[kMaxP] = {};
        ks[0] = k1;
        auto rec = [&](auto& self, int j, i64 s, i64 phi_part) -> void {
            if (j == p) {
                const i64 k = k1 + s;
                const i64 ph = k * k - i64(k1) * k1 + phi_part;
                const CaseLabel c = classify_raw(ks, p, k, ph, constants);
                ++part.tuples;
                if (!c.A && !c.C) {
                    const i64 num = iabs(ph);
                    const i64 den = std::max<i64>(top_abs(ks, p), 1);
                    if (!part.has_min || num * part.min_den < part.min_num * den) {
                        part.has_min = true;
                        part.min_num = num;
                        part.min_den = den;
                    }
                    if (!c.B) {
                        ++part.violations;
                        if (!part.has_violation) {
                            part.has_violation = true;
                            part.violation.assign(ks, ks + p);
                        }
                    }
                }
                return;
            }
            const bool even = (j + 1) % 2 == 0;
            for (i64 q = -box; q <= box; ++q) {
                ks[j] = q;
                self(self, j + 1, even ? s - q : s + q, even ? phi_part + q * q : phi_part - q * q);
            }
        };
        rec(rec, 1, 0, 0);
    });

    DecompositionReport rep;
    rep.box = box;
    rep.p = p;
    rep.constants = constants;
    for (const auto& part : parts) {
        rep.tuples += part.tuples;
        rep.violations += part.violations;
        if (part.has_min) {
            Rational r(part.min_num, part.min_den);
            if (!rep.min_ratio || r < *rep.min_ratio) rep.min_ratio = r;
        }
        if (part.has_violation && !rep.first_violation)
            rep.first_violation = FrequencyTuple::from_internal(part.violation);
    }
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

SpectralField r1_closed_form(const SpectralField& field, const EquationParams& params) {
    field.grid().require_degree(params.p);
    const double c = (params.p + 1) / (2.0 * GridSpec::length()) * lp_integral(field, params.p - 1);
    return cplx(c, 0.0) * field;
}

SpectralField resonant_part(const SpectralField& field, const EquationParams& params, const DirectSumLimits& limits) {
    SpectralField R(field.grid()), NR(field.grid());
    resonant_split(field, params, limits, R, NR);
    return R;
}

SpectralField direct_nonlinearity(const SpectralField& field, const EquationParams& params,
                                  const DirectSumLimits& limits) {
    SpectralField R(field.grid()), NR(field.grid());
    resonant_split(field, params, limits, R, NR);
    return R + NR;
}

NonlinearSplit split_nonlinearity(const SpectralField& field, const EquationParams& params,
                                  const DirectSumLimits& limits) {
    SpectralField R(field.grid()), NR(field.grid());
    resonant_split(field, params, limits, R, NR);
    SpectralField R1 = r1_closed_form(field, params);
    SpectralField R2 = R - R1;
    return {std::move(R1), std::move(R2), std::move(NR)};
}

SpectralField high_low_sum(const SpectralField& first, const SpectralField& rest, const EquationParams& params,
                           const CaseConstants& constants, Weighting weighting, const DirectSumLimits& limits) {
    require_direct(params, first, rest);
    constants.validate();
    const int K = first.max_mode();
    // |k_1| <= K and |k_1| >= gap |k_j| bound the low slots.
    const int B = static_cast<int>((i64(K) * constants.gap.den) / constants.gap.num);
    SpectralField out(first.grid());
    if (K < constants.gap.value()) return out;
    require_cost((2.0 * K + 1) * std::pow(2.0 * B + 1, params.p - 1), limits, "high-low sum");
    const double pref = (params.p + 1) / 2.0;
    const auto& a = first.coeffs();
    const auto& b = rest.coeffs();
    detail::parallel_for(-K, K + 1, limits.threads, [&](int k) {
        cplx acc(0.0, 0.0);
        walk_mode(params.p, k, K, B, a, b, [&](const i64* ks, i64 ph, i64 m2, cplx term) {
            const i64 a1 = iabs(ks[0]);
            if (!at_least(a1, constants.gap, std::max<i64>(m2, 1))) return;
            if (!at_least(iabs(ph), constants.c_B, std::max<i64>(std::max(a1, m2), 1))) return;
            if (weighting == Weighting::inverse_phi) {
                if (ph == 0) throw InvariantError("normal-form domain contains a tuple with Phi = 0");
                acc += term / static_cast<double>(ph);
            } else {
                acc += term;
            }
        });
        out[k] = pref * acc;
    });
    return out;
}

SpectralField apply_HLB(const SpectralField& first, const SpectralField& rest, const EquationParams& params,
                        const CaseConstants& constants, const DirectSumLimits& limits) {
    return high_low_sum(first, rest, params, constants, Weighting::unit, limits);
}

SpectralField apply_T(const SpectralField& first, const SpectralField& rest, const EquationParams& params,
                      const CaseConstants& constants, const DirectSumLimits& limits) {
    return high_low_sum(first, rest, params, constants, Weighting::inverse_phi, limits);
}

}  // namespace pnls
