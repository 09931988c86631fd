#include "pnls/rational.hpp"

#include "pnls/errors.hpp"

#include <cctype>
#include <numeric>

namespace pnls {

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    num = g ? n / g : n;
    den = g ? d / g : d;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& text) {
    auto bad = [&] { return DomainError("not a rational number: '" + text + "'"); };
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw bad();

    auto parse_int = [&](const std::string& s) -> std::int64_t {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used != s.size()) throw bad();
        return v;
    };

    if (auto slash = t.find('/'); slash != std::string::npos)
        return Rational(parse_int(t.substr(0, slash)), parse_int(t.substr(slash + 1)));

    if (auto dot = t.find('.'); dot != std::string::npos) {
        std::string frac = t.substr(dot + 1);
        if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
        std::string whole = t.substr(0, dot);
        bool negative = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        std::int64_t w = parse_int(whole);
        std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        std::int64_t n = (w < 0 ? -w : w) * scale + f;
        return Rational(negative ? -n : n, scale);
    }
    return Rational(parse_int(t), 1);
}

Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num * b.num, a.den * b.den); }

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<wide_int>(a.num) * b.den < static_cast<wide_int>(b.num) * a.den;
}

}  // namespace pnls
