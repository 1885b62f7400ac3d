#include "shiftlab/weights.hpp"

#include <cmath>
#include <limits>

namespace shiftlab {

const char* to_string(Side s) { return s == Side::unilateral ? "unilateral" : "bilateral"; }

bool exact_power_of_two(double x, std::int64_t* exponent) {
    if (!(x > 0.0) || !std::isfinite(x)) return false;
    int e = 0;
    double m = std::frexp(x, &e);
    if (m != 0.5) return false;
    if (exponent != nullptr) *exponent = e - 1;
    return true;
}

WeightSequence WeightSequence::exact(std::string kind, Params params, Side side, ExactFn fn,
                                     std::optional<std::int64_t> max_index) {
    WeightSequence w;
    w.kind_ = std::move(kind);
    w.params_ = std::move(params);
    w.side_ = side;
    w.exact_ = std::move(fn);
    w.max_index_ = max_index;
    return w;
}

WeightSequence WeightSequence::floating(std::string kind, Params params, Side side, FloatFn fn,
                                        std::optional<std::int64_t> max_index) {
    WeightSequence w;
    w.kind_ = std::move(kind);
    w.params_ = std::move(params);
    w.side_ = side;
    w.float_ = std::move(fn);
    w.max_index_ = max_index;
    return w;
}

std::string WeightSequence::spec() const {
    std::string s = kind_ + "(";
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) s += ",";
        s += params_[i].second;
    }
    return s + ")";
}

double WeightSequence::log2_weight(std::int64_t i) const {
    return exact_ ? exact_(i).to_double() : float_(i);
}

Rational WeightSequence::exact_log2_weight(std::int64_t i) const {
    if (!exact_) throw std::logic_error("weight sequence '" + spec() + "' is not exact");
    return exact_(i);
}

LogProductTable::LogProductTable(const WeightSequence& w, std::int64_t horizon)
    : spec_(w.spec()), side_(w.side()), horizon_(horizon) {
    if (horizon < 1) throw std::invalid_argument("weight table horizon must be positive");
    if (horizon > kMaxHorizon)
        throw ResourceError("horizon " + std::to_string(horizon) + " exceeds the guard " + std::to_string(kMaxHorizon));
    if (w.max_index() && horizon > *w.max_index())
        throw std::invalid_argument("horizon " + std::to_string(horizon) + " beyond the range of '" + spec_ +
                                    "' (last index " + std::to_string(*w.max_index()) + ")");
    first_ = side_ == Side::unilateral ? 1 : -horizon;
    last_ = horizon;

    const auto count = static_cast<std::size_t>(last_ - first_ + 2);
    sums_.resize(count);
    sums_[0] = 0.0;
    bool any_zero = false;
    std::vector<std::int32_t> zeros(count, 0);

    if (w.is_exact()) {
        exact_.resize(count);
        exact_[0] = Rational(0);
        dyadic_ = true;
        for (std::int64_t i = first_; i <= last_; ++i) {
            const auto idx = static_cast<std::size_t>(i - first_ + 1);
            Rational t = w.exact_log2_weight(i);
            if (!t.is_integer()) dyadic_ = false;
            exact_[idx] = exact_[idx - 1] + t;
            sup_abs_ = std::max(sup_abs_, std::fabs(t.to_double()));
        }
        for (std::size_t i = 0; i < count; ++i) sums_[i] = exact_[i].to_double();
        // Integer sums beyond 2^53 would round in double.
        if (dyadic_)
            for (const auto& r : exact_)
                if (std::fabs(r.to_double()) >= 9007199254740992.0) dyadic_ = false;
    } else {
        // Neumaier-compensated running sum.
        double s = 0.0, c = 0.0;
        for (std::int64_t i = first_; i <= last_; ++i) {
            const auto idx = static_cast<std::size_t>(i - first_ + 1);
            double t = w.log2_weight(i);
            if (std::isnan(t) || t == std::numeric_limits<double>::infinity())
                throw std::invalid_argument("weight " + std::to_string(i) + " of '" + spec_ + "' is unbounded");
            zeros[idx] = zeros[idx - 1];
            if (t == -std::numeric_limits<double>::infinity()) {
                ++zeros[idx];
                any_zero = true;
                sums_[idx] = s + c;
                continue;
            }
            sup_abs_ = std::max(sup_abs_, std::fabs(t));
            double u = s + t;
            if (std::fabs(s) >= std::fabs(t)) c += (s - u) + t;
            else c += (t - u) + s;
            s = u;
            sums_[idx] = s + c;
        }
    }
    if (any_zero) zeros_ = std::move(zeros);
}

Rational LogProductTable::exact_at(std::int64_t k) const {
    if (exact_.empty()) throw std::logic_error("table for '" + spec_ + "' is not exact");
    return exact_[offset(k)];
}

bool LogProductTable::has_zero(std::int64_t a, std::int64_t b) const {
    if (zeros_.empty()) return false;
    return zeros_[offset(b)] != zeros_[offset(a)];
}

double LogProductTable::sum(std::int64_t a, std::int64_t b) const {
    if (has_zero(a, b)) return -std::numeric_limits<double>::infinity();
    return at(b) - at(a);
}

Rational LogProductTable::exact_sum(std::int64_t a, std::int64_t b) const { return exact_at(b) - exact_at(a); }

double LogProductTable::error_at(std::int64_t k) const {
    if (dyadic_) return 0.0;
    if (is_exact()) return std::ldexp(std::fabs(at(k)), -53);
    return std::ldexp(sup_abs_ * static_cast<double>(k - first_ + 1), -50);
}

double LogProductTable::sum_error(std::int64_t a, std::int64_t b) const {
    if (dyadic_) return 0.0;
    return error_at(a) + error_at(b) + std::ldexp(std::fabs(at(a)) + std::fabs(at(b)), -53);
}

} // namespace shiftlab
