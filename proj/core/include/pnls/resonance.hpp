#pragma once

#include "pnls/dynamics.hpp"
#include "pnls/rational.hpp"
#include "pnls/spectral.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pnls {

// (k; k_1..k_p) with k = k_1 - k_2 + k_3 - ... + k_p.
struct FrequencyTuple {
    std::int64_t k = 0;
    std::vector<std::int64_t> internal;

    static FrequencyTuple from_internal(std::vector<std::int64_t> ks);
    bool on_hyperplane() const;
};

// k^2 - k_1^2 + k_2^2 - ... - k_p^2; throws DomainError off the hyperplane.
std::int64_t phi(const FrequencyTuple& tuple);

struct CaseConstants {
    Rational c_B{1, 2};
    Rational c_C{1, 16};
    Rational r_comp{1, 2};
    Rational gap{2, 1};

    // c_C = 1 variant; exhaustive enumeration finds violations for it at moderate boxes.
    static CaseConstants unit_c_C() { return {Rational(1, 2), Rational(1), Rational(1, 2), Rational(2)}; }
    void validate() const;
};

struct CaseLabel {
    bool A = false;
    bool B = false;
    bool C = false;
    bool covered() const { return A || B || C; }
};

CaseLabel classify(const FrequencyTuple& tuple, const CaseConstants& constants);

struct DecompositionReport {
    int box = 0;
    int p = 0;
    CaseConstants constants;
    std::int64_t tuples = 0;
    std::int64_t violations = 0;
    // min |Phi| / max(k1*, 1) over tuples with neither A nor C.
    std::optional<Rational> min_ratio;
    std::optional<FrequencyTuple> first_violation;
    double wall_time_ms = 0.0;
};

struct EnumerationLimits {
    double max_tuples = 1.0e9;
    int threads = 1;
};

// (2 box + 1)^p tuples: every k_i in [-box, box], k determined by the hyperplane.
double enumeration_cost(int box, int p);
DecompositionReport verify_decomposition(int box, int p, const CaseConstants& constants,
                                         const EnumerationLimits& limits = {});

struct DirectSumLimits {
    // Default admits the full split at p = 5, K = 16.
    double max_terms = 33.0 * 33 * 33 * 33 * 33;
    int threads = 1;
};

struct NonlinearSplit {
    SpectralField R1;
    SpectralField R2;
    SpectralField NR;
};

// ((p+1)/(4 pi)) u_k integral |u|^{p-1}; any odd p.
SpectralField r1_closed_form(const SpectralField& field, const EquationParams& params);

// Direct convolution sums. R counts each tuple with some odd slot equal to k once.
SpectralField resonant_part(const SpectralField& field, const EquationParams& params,
                            const DirectSumLimits& limits = {});
SpectralField direct_nonlinearity(const SpectralField& field, const EquationParams& params,
                                  const DirectSumLimits& limits = {});
NonlinearSplit split_nonlinearity(const SpectralField& field, const EquationParams& params,
                                  const DirectSumLimits& limits = {});

enum class Weighting { unit, inverse_phi };

// ((p+1)/2) sum over tuples with |k_1| >= gap max(max_{j>=2}|k_j|, 1) and |Phi| >= c_B max(k1*, 1)
// of first_{k1} * rest_{k2}^* * rest_{k3} * ..., each term optionally divided by Phi.
SpectralField high_low_sum(const SpectralField& first, const SpectralField& rest, const EquationParams& params,
                           const CaseConstants& constants, Weighting weighting,
                           const DirectSumLimits& limits = {});

SpectralField apply_HLB(const SpectralField& first, const SpectralField& rest, const EquationParams& params,
                        const CaseConstants& constants, const DirectSumLimits& limits = {});
SpectralField apply_T(const SpectralField& first, const SpectralField& rest, const EquationParams& params,
                      const CaseConstants& constants, const DirectSumLimits& limits = {});

}  // namespace pnls
