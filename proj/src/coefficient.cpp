#include "shiftlab/coefficient.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace shiftlab {
namespace {

double log2_abs_mpz(const mpz_class& z) {
    long exp = 0;
    const double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return static_cast<double>(exp) + std::log2(std::fabs(d));
}

mpq_class pow2(std::int64_t k) {
    mpq_class r(1);
    if (k > 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    else if (k < 0) mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    return r;
}

} // namespace

double log2_abs(const mpq_class& q) {
    if (q == 0) throw std::invalid_argument("log2 of zero");
    return log2_abs_mpz(q.get_num()) - log2_abs_mpz(q.get_den());
}

mpq_class parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    if (text.empty()) throw std::invalid_argument("empty number");
    auto bad = [&] { return std::invalid_argument("not a rational number: '" + raw + "'"); };

    if (auto slash = text.find('/'); slash != std::string::npos) {
        mpq_class a = parse_rational(text.substr(0, slash)), b = parse_rational(text.substr(slash + 1));
        if (b == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
        return a / b;
    }
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
    std::string digits;
    std::int64_t scale = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        if (text[i] == '.') {
            if (seen_point) throw bad();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i];
            seen_digit = true;
            if (seen_point) --scale;
        } else {
            throw bad();
        }
    }
    if (!seen_digit) throw bad();
    if (i < text.size()) {
        std::size_t used = 0;
        const std::string tail = text.substr(i + 1);
        long long ex = 0;
        try {
            ex = std::stoll(tail, &used);
        } catch (const std::logic_error&) {
            throw bad();
        }
        if (used != tail.size() || ex > 100000 || ex < -100000) throw bad();
        scale += ex;
    }
    mpq_class v(mpz_class(digits, 10));
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    if (scale >= 0) v *= ten;
    else v /= ten;
    v.canonicalize();
    return negative ? mpq_class(-v) : v;
}

Coefficient Coefficient::exact(const mpq_class& q, std::int64_t exponent) {
    if (q == 0) throw std::invalid_argument("coefficients are nonzero");
    Coefficient c;
    c.q_ = q;
    c.q_.canonicalize();
    c.e_ = exponent;
    c.canonicalize();
    return c;
}

Coefficient Coefficient::approximate(int sign, double log2_abs, double log2_error) {
    if (std::isnan(log2_abs) || std::isinf(log2_abs)) throw std::invalid_argument("non-finite coefficient magnitude");
    Coefficient c;
    c.exact_ = false;
    c.sign_ = sign < 0 ? -1 : 1;
    c.log2_ = log2_abs;
    c.err_ = log2_error;
    return c;
}

Coefficient Coefficient::parse(const std::string& text) { return exact(parse_rational(text)); }

void Coefficient::canonicalize() {
    sign_ = sgn(q_) < 0 ? -1 : 1;
    mpz_class& num = q_.get_num();
    mpz_class& den = q_.get_den();
    const auto tn = mpz_scan1(num.get_mpz_t(), 0);
    const auto td = mpz_scan1(den.get_mpz_t(), 0);
    if (tn > 0) mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), tn);
    if (td > 0) mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), td);
    e_ += static_cast<std::int64_t>(tn) - static_cast<std::int64_t>(td);
}

mpq_class Coefficient::value() const {
    if (!exact_) throw std::logic_error("inexact coefficient has no rational value");
    return q_ * pow2(e_);
}

double Coefficient::log2_abs() const { return exact_ ? shiftlab::log2_abs(q_) + static_cast<double>(e_) : log2_; }

Coefficient Coefficient::times_pow2(std::int64_t k) const {
    Coefficient c = *this;
    if (exact_) c.e_ += k;
    else c.log2_ += static_cast<double>(k);
    return c;
}

Coefficient Coefficient::times_pow2(double l, double l_error) const {
    Coefficient c = as_approximate();
    c.log2_ += l;
    c.err_ += l_error + std::ldexp(std::fabs(c.log2_), -52);
    return c;
}

Coefficient Coefficient::times(const mpq_class& q) const {
    if (q == 0) throw std::invalid_argument("scaling by zero");
    if (exact_) return exact(q_ * q, e_);
    Coefficient c = *this;
    if (sgn(q) < 0) c.sign_ = -c.sign_;
    c.log2_ += shiftlab::log2_abs(q);
    c.err_ += std::ldexp(std::fabs(c.log2_) + 1.0, -52);
    return c;
}

Coefficient Coefficient::negated() const {
    Coefficient c = *this;
    c.sign_ = -c.sign_;
    if (exact_) c.q_ = -c.q_;
    return c;
}

Coefficient Coefficient::as_approximate() const {
    if (!exact_) return *this;
    const double l = log2_abs();
    return approximate(sign_, l, std::ldexp(std::fabs(l) + 1.0, -52));
}

std::optional<Coefficient> Coefficient::exact_plus(const Coefficient& o) const {
    if (!exact_ || !o.exact_) throw std::logic_error("exact_plus on an inexact coefficient");
    const std::int64_t base = std::min(e_, o.e_);
    mpq_class s = q_ * pow2(e_ - base) + o.q_ * pow2(o.e_ - base);
    if (s == 0) return std::nullopt;
    return exact(s, base);
}

mpq_class Coefficient::abs_pow(unsigned long p) const {
    if (!exact_) throw std::logic_error("abs_pow on an inexact coefficient");
    mpq_class r;
    mpz_pow_ui(r.get_num().get_mpz_t(), q_.get_num().get_mpz_t(), p);
    mpz_pow_ui(r.get_den().get_mpz_t(), q_.get_den().get_mpz_t(), p);
    mpz_abs(r.get_num().get_mpz_t(), r.get_num().get_mpz_t());
    return r * pow2(e_ * static_cast<std::int64_t>(p));
}

std::string Coefficient::str() const {
    if (!exact_) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s2^(%.17g)", sign_ < 0 ? "-" : "", log2_);
        return buf;
    }
    if (e_ >= -64 && e_ <= 64) return value().get_str();
    return q_.get_str() + "*2^" + std::to_string(e_);
}

bool operator==(const Coefficient& a, const Coefficient& b) {
    if (a.exact_ != b.exact_) return false;
    if (a.exact_) return a.e_ == b.e_ && a.q_ == b.q_;
    return a.sign_ == b.sign_ && a.log2_ == b.log2_ && a.err_ == b.err_;
}

} // namespace shiftlab
