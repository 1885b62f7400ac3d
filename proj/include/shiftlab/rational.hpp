#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace shiftlab {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (den > 0, gcd(num, den) == 1). Arithmetic throws std::overflow_error
/// instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational& a) { return from_wide(-static_cast<__int128>(a.num_), a.den_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string num_str() const { return std::to_string(num_); }
    std::string den_str() const { return std::to_string(den_); }
    std::string str() const { return den_ == 1 ? num_str() : num_str() + "/" + den_str(); }

    /// Parses "a" or "a/b" (decimal integers). Throws std::invalid_argument.
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        std::size_t used = 0;
        try {
            if (slash == std::string::npos) {
                std::int64_t n = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                return Rational(n);
            }
            std::string a = text.substr(0, slash), b = text.substr(slash + 1);
            std::size_t ua = 0, ub = 0;
            std::int64_t n = std::stoll(a, &ua), d = std::stoll(b, &ub);
            if (ua != a.size() || ub != b.size()) throw std::invalid_argument(text);
            return Rational(n, d);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("not a rational: '" + text + "'");
        }
    }

private:
    static Rational from_wide(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi) throw std::overflow_error("rational: 64-bit overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    void normalize() { *this = from_wide(num_, den_); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace shiftlab
