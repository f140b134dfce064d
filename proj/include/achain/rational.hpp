#pragma once

// Exact rational helpers shared by every module. Ratios and densities are
// never carried in floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace achain {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
}

/// Canonical "p/q" form; integers are written without a denominator.
inline std::string to_string(const Rational& q) {
    return q.str();
}

/// Parses "p", "p/q", or a decimal such as "-1.25" or "3e-2" exactly.
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto parse_int = [&](std::string_view digits) -> BigInt {
        std::string_view d = digits;
        bool negative = false;
        if (!d.empty() && (d.front() == '+' || d.front() == '-')) {
            negative = d.front() == '-';
            d.remove_prefix(1);
        }
        if (d.empty()) throw std::invalid_argument("malformed rational literal: " + std::string(text));
        BigInt v = 0;
        for (char c : d) {
            if (c < '0' || c > '9') throw std::invalid_argument("malformed rational literal: " + std::string(text));
            v = v * 10 + (c - '0');
        }
        return negative ? BigInt(-v) : v;
    };

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_int(trim(s.substr(0, slash)));
        std::string_view den_text = trim(s.substr(slash + 1));
        if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        return make_rational(num, parse_int(den_text));
    }

    std::int64_t exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        BigInt ev = parse_int(s.substr(e + 1));
        if (ev > 4096 || ev < -4096) throw std::invalid_argument("exponent out of range: " + std::string(text));
        exponent = ev.convert_to<std::int64_t>();
        s = s.substr(0, e);
    }

    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    bool seen_point = false;
    for (char c : s) {
        if (c == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("malformed rational literal: " + std::string(text));
        digits.push_back(c);
        if (seen_point) --exponent;
    }
    if (digits.empty()) throw std::invalid_argument("malformed rational literal: " + std::string(text));

    BigInt mantissa = parse_int(digits);
    if (negative) mantissa = -mantissa;
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
}

/// Binomial coefficient as an exact integer; zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

/// Renders q * sqrt(m) with `digits` decimals, rounded half-up, computed from
/// an exact integer square root so the text is reproducible bit-for-bit.
inline std::string render_times_sqrt(const Rational& q, std::uint64_t m, int digits = 6) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    bool negative = q < 0;
    BigInt p = numerator(q);
    if (negative) p = -p;
    BigInt s = denominator(q);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits + 1));
    // floor(10^(d+1) * p * sqrt(m) / s)
    BigInt radicand = scale * scale * p * p * m;
    BigInt root = boost::multiprecision::sqrt(radicand);
    BigInt scaled = root / s;
    BigInt rounded = (scaled + 5) / 10;
    BigInt unit = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
    BigInt whole = rounded / unit;
    BigInt frac = rounded % unit;
    std::string frac_text = frac.str();
    if (frac_text.size() < static_cast<std::size_t>(digits))
        frac_text.insert(0, static_cast<std::size_t>(digits) - frac_text.size(), '0');
    std::string out = (negative && rounded != 0 ? "-" : "") + whole.str();
    if (digits > 0) out += "." + frac_text;
    return out;
}

/// Six-decimal rendering of a plain rational.
inline std::string render_decimal(const Rational& q, int digits = 6) {
    return render_times_sqrt(q, 1, digits);
}

}  // namespace achain
