#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "qsr/error.hpp"

namespace qsr {

/// Exact rational number over int64 with __int128 intermediates.
///
/// Always stored normalized: den > 0, gcd(|num|, den) == 1. Arithmetic that
/// would leave the int64 range after reduction throws std::overflow_error.
/// The magnitudes in this library (stability parameters, degrees, slopes)
/// stay far below that bound in practice.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(long long n) : num_(n) {} // NOLINT: implicit by design
    Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

    [[nodiscard]] long long num() const { return num_; }
    [[nodiscard]] long long den() const { return den_; }

    [[nodiscard]] bool is_zero() const { return num_ == 0; }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }
    [[nodiscard]] double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// Renders "p" when integral, "p/q" otherwise.
    [[nodiscard]] std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    /// Parses "p" or "p/q" with optional sign. Anything else (floats,
    /// whitespace, empty) yields nullopt.
    static std::optional<Rational> parse(std::string_view text);

    friend Rational operator-(const Rational& a) {
        Rational r;
        r.num_ = -a.num_; // int64 min never occurs: normalized values come from user-scale input
        r.den_ = a.den_;
        return r;
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }

private:
    using i128 = __int128;

    long long num_ = 0;
    long long den_ = 1;

    void normalize() {
        if (den_ == 0) throw DomainError("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        const long long g = std::gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    static Rational from_i128(i128 num, i128 den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const i128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (num < lo || num > hi || den > hi) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<long long>(num);
        r.den_ = static_cast<long long>(den);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { const i128 t = a % b; a = b; b = t; }
        return a;
    }
};

inline std::optional<Rational> Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s, bool allow_sign, long long& out) -> bool {
        if (s.empty()) return false;
        bool neg = false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '+' || s[0] == '-')) { neg = s[0] == '-'; i = 1; }
        if (i == s.size()) return false;
        i128 acc = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
            acc = acc * 10 + (s[i] - '0');
            if (acc > i128(INT64_MAX)) return false;
        }
        out = neg ? -static_cast<long long>(acc) : static_cast<long long>(acc);
        return true;
    };
    const std::size_t slash = text.find('/');
    long long num = 0, den = 1;
    if (slash == std::string_view::npos) {
        if (!parse_int(text, true, num)) return std::nullopt;
    } else {
        if (!parse_int(text.substr(0, slash), true, num)) return std::nullopt;
        if (!parse_int(text.substr(slash + 1), false, den)) return std::nullopt;
        if (den == 0) return std::nullopt;
    }
    return Rational(num, den);
}

} // namespace qsr
