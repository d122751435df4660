#pragma once

// Checked 128-bit integers and reduced rationals for the exact inequality paths.

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "fparadox/errors.hpp"

namespace fparadox {

using Int128 = __int128;

inline Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("walk count overflow");
    return r;
}

inline Int128 checked_sub(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("walk count overflow");
    return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("walk count overflow");
    return r;
}

inline std::string to_string(Int128 v) {
    if (v == 0) return "0";
    const bool negative = v < 0;
    // Work in the negative range so INT128_MIN has no special case.
    std::string digits;
    Int128 x = negative ? v : -v;
    while (x != 0) {
        digits.insert(digits.begin(), static_cast<char>('0' - static_cast<int>(x % 10)));
        x /= 10;
    }
    if (negative) digits.insert(digits.begin(), '-');
    return digits;
}

inline Int128 parse_int128(const std::string& text) {
    if (text.empty()) throw InputError("empty integer literal");
    std::size_t pos = 0;
    const bool negative = text[0] == '-';
    if (negative || text[0] == '+') pos = 1;
    if (pos == text.size()) throw InputError("malformed integer literal: " + text);
    Int128 value = 0;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c < '0' || c > '9') throw InputError("malformed integer literal: " + text);
        value = checked_sub(checked_mul(value, 10), c - '0');
    }
    return negative ? value : checked_mul(value, -1);
}

inline double to_double(Int128 v) { return static_cast<double>(v); }

/// True when v is an integer that a double represents exactly.
inline bool is_exact_integer(double v) {
    return std::isfinite(v) && std::floor(v) == v && std::fabs(v) <= 9007199254740992.0;
}

inline Int128 gcd128(Int128 a, Int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const Int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Reduced fraction with positive denominator; all arithmetic overflow-checked.
class Rational {
public:
    Rational() = default;
    Rational(Int128 numerator) : num_(numerator) {} // NOLINT(google-explicit-constructor)
    Rational(Int128 numerator, Int128 denominator) : num_(numerator), den_(denominator) {
        if (den_ == 0) throw InputError("rational with zero denominator");
        normalize();
    }

    Int128 numerator() const noexcept { return num_; }
    Int128 denominator() const noexcept { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    int sign() const noexcept { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const Int128 g = gcd128(a.den_, b.den_);
        const Int128 left = checked_mul(a.num_, b.den_ / g);
        const Int128 right = checked_mul(b.num_, a.den_ / g);
        return {checked_add(left, right), checked_mul(a.den_ / g, b.den_)};
    }
    friend Rational operator-(const Rational& a) { return {checked_mul(a.num_, -1), a.den_}; }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        const Int128 g1 = gcd128(a.num_, b.den_);
        const Int128 g2 = gcd128(b.num_, a.den_);
        const Int128 n1 = g1 == 0 ? a.num_ : a.num_ / g1;
        const Int128 d2 = g1 == 0 ? b.den_ : b.den_ / g1;
        const Int128 n2 = g2 == 0 ? b.num_ : b.num_ / g2;
        const Int128 d1 = g2 == 0 ? a.den_ : a.den_ / g2;
        return {checked_mul(n1, n2), checked_mul(d1, d2)};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw InputError("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const Int128 l = checked_mul(a.num_, b.den_);
        const Int128 r = checked_mul(b.num_, a.den_);
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        return den_ == 1 ? fparadox::to_string(num_)
                         : fparadox::to_string(num_) + "/" + fparadox::to_string(den_);
    }

    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return {parse_int128(text)};
        return {parse_int128(text.substr(0, slash)), parse_int128(text.substr(slash + 1))};
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = checked_mul(num_, -1);
            den_ = checked_mul(den_, -1);
        }
        const Int128 g = gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int128 num_ = 0;
    Int128 den_ = 1;
};

} // namespace fparadox
