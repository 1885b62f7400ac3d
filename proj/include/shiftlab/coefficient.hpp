#pragma once

// Nonzero scalar used by the shift engine. Exact values are q * 2^e with q a
// rational whose numerator and denominator are both odd, so equal values have
// equal representations. Inexact values carry sign, log2|value| and an error
// bound on that logarithm.

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace shiftlab {

class Coefficient {
public:
    /// Throws std::invalid_argument for q == 0.
    static Coefficient exact(const mpq_class& q, std::int64_t exponent = 0);
    static Coefficient approximate(int sign, double log2_abs, double log2_error);
    /// "a", "a/b", decimals such as "0.5" or "-1.25e-3" (decimals are exact).
    static Coefficient parse(const std::string& text);

    bool is_exact() const { return exact_; }
    int sign() const { return sign_; }
    /// Odd-part rational (exact mode).
    const mpq_class& odd_part() const { return q_; }
    std::int64_t exponent() const { return e_; }
    /// The exact value as one rational (exact mode).
    mpq_class value() const;

    double log2_abs() const;
    double log2_error() const { return exact_ ? 0.0 : err_; }

    /// Multiplies by 2^k.
    Coefficient times_pow2(std::int64_t k) const;
    /// Multiplies by 2^l where l carries an error bound; the result is inexact.
    Coefficient times_pow2(double l, double l_error) const;
    Coefficient times(const mpq_class& q) const;
    Coefficient negated() const;
    /// Forces the inexact representation (same value, rounding folded into the error).
    Coefficient as_approximate() const;

    /// Exact sum for exact operands; empty when the sum is exactly zero.
    /// Throws std::logic_error when either operand is inexact.
    std::optional<Coefficient> exact_plus(const Coefficient& other) const;

    /// |value|^p as an exact rational (exact mode, p >= 1).
    mpq_class abs_pow(unsigned long p) const;

    /// Exact: "num/den" or "num" for the full value when |e| is small, else
    /// "q*2^e". Inexact: "±2^(x)".
    std::string str() const;

    /// Exact equality of representations (inexact values compare bitwise).
    friend bool operator==(const Coefficient& a, const Coefficient& b);

private:
    Coefficient() = default;
    void canonicalize();

    bool exact_ = true;
    int sign_ = 1;
    mpq_class q_;
    std::int64_t e_ = 0;
    double log2_ = 0.0;
    double err_ = 0.0;
};

/// log2|q| for a nonzero rational.
double log2_abs(const mpq_class& q);

/// Exact decimal or fraction parse ("0.5", "1/3", "2e-3"); throws std::invalid_argument.
mpq_class parse_rational(const std::string& text);

} // namespace shiftlab
