#pragma once

#include <cstdint>
#include <string>

namespace pnls {

__extension__ typedef __int128 wide_int;

// Small exact rational with positive denominator, always reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    // Accepts "3", "-2", "1/16" or a finite decimal such as "0.125".
    static Rational parse(const std::string& text);

    friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator*(const Rational& a, const Rational& b);
bool operator<(const Rational& a, const Rational& b);
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

// lhs >= r * rhs in exact integer arithmetic.
inline bool at_least(std::int64_t lhs, const Rational& r, std::int64_t rhs) {
    return static_cast<wide_int>(lhs) * r.den >= static_cast<wide_int>(r.num) * rhs;
}

}  // namespace pnls
