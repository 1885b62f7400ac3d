#include "shiftlab/counterexamples.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

namespace shiftlab {

std::vector<std::int64_t> Prop2Weights::starred_positions() const {
    std::vector<std::int64_t> out;
    for (const auto& st : stages) out.insert(out.end(), st.starred.begin(), st.starred.end());
    return out;
}

std::int64_t prop2_stage_n(std::int64_t stage, const StageRecord& previous) {
    if (stage < 2) throw std::invalid_argument("stage 1 is the fixed seed");
    if (stage == 2) return previous.stage_end + 1;
    if (stage == 4) return 97;   // the construction's literal choice; the bound evaluates to 96
    const std::int64_t prev_block = previous.block_end - previous.block_start + 1;
    return previous.stage_end + 1 + prev_block;
}

Prop2Weights gen_prop2_weights(int stages) {
    if (stages < 1) throw std::invalid_argument("prop2 needs at least one stage");
    if (stages > 8) throw ResourceError("prop2 beyond 8 stages exceeds the horizon guard");

    auto logs = std::make_shared<std::vector<std::int64_t>>(1, 0);
    std::vector<StageRecord> records;

    auto emit_stage = [&](std::int64_t m, std::int64_t start, std::int64_t n) {
        StageRecord st;
        st.stage = m;
        st.block_start = start;
        st.n = n;
        for (std::int64_t l = 1; l <= m; ++l) st.starred.push_back(l * n);
        st.block_end = m * n;
        st.compensator_pos = st.block_end + 1;
        st.compensator_exponent = (st.block_end - start + 1) + m;
        st.trailing_twos = m;
        st.stage_end = st.compensator_pos + m;
        if (static_cast<std::int64_t>(logs->size()) != start) throw std::logic_error("prop2: non-contiguous stage");
        logs->resize(static_cast<std::size_t>(st.stage_end) + 1);
        for (std::int64_t i = start; i <= st.block_end; ++i) (*logs)[static_cast<std::size_t>(i)] = 1;
        (*logs)[static_cast<std::size_t>(st.compensator_pos)] = -st.compensator_exponent;
        for (std::int64_t i = st.compensator_pos + 1; i <= st.stage_end; ++i) (*logs)[static_cast<std::size_t>(i)] = 1;
        records.push_back(std::move(st));
    };

    emit_stage(1, 1, 1);
    for (std::int64_t m = 2; m <= stages; ++m) {
        const auto& prev = records.back();
        emit_stage(m, prev.stage_end + 1, prop2_stage_n(m, prev));
    }

    const std::int64_t end = records.back().stage_end;
    auto fn = [logs](std::int64_t i) -> Rational {
        if (i < 1 || i >= static_cast<std::int64_t>(logs->size()))
            throw std::out_of_range("prop2 weight index " + std::to_string(i) + " outside [1, " +
                                    std::to_string(logs->size() - 1) + "]");
        return Rational((*logs)[static_cast<std::size_t>(i)]);
    };
    Prop2Weights out{WeightSequence::exact("prop2", {{"stages", std::to_string(stages)}}, Side::unilateral, fn, end),
                     std::move(records), *logs};
    return out;
}

WeightSequence gen_menet_weights(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("menet exponent p must be >= 1");
    const double scale = 1.0 / (2.0 * p * std::numbers::ln2);
    auto fn = [scale](std::int64_t v) -> double {
        if (v < 1) throw std::out_of_range("menet weights start at index 1");
        return std::log1p(1.0 / static_cast<double>(v)) * scale;
    };
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return WeightSequence::floating("menet", {{"p", buf}}, Side::unilateral, fn);
}

double menet_log_product(double p, std::int64_t n) { return std::log2(static_cast<double>(n) + 1.0) / (2.0 * p); }

std::int64_t example313_log2_lambda(std::int64_t n) {
    if (n < 1) throw std::out_of_range("lambda starts at index 1");
    const int r = std::bit_width(static_cast<std::uint64_t>(n));
    if (r > 62) throw std::overflow_error("lambda exponent 2^r overflows");
    return std::int64_t{1} << r;
}

std::int64_t Example313::burn_in(std::int64_t window) const {
    for (std::int64_t r = max_a + 1; r <= exponent; ++r) {
        const std::int64_t len = (std::int64_t{1} << (r - 1)) - 2 * max_a + 1;
        if (len >= window) return (std::int64_t{1} << (r - 1)) - 1;
    }
    throw std::invalid_argument("no block of S is as long as window " + std::to_string(window));
}

Example313 gen_example313(const std::vector<std::int64_t>& a, int exponent) {
    if (a.empty()) throw std::invalid_argument("example313 needs a non-empty set A");
    if (std::any_of(a.begin(), a.end(), [](std::int64_t v) { return v < 1; }))
        throw std::invalid_argument("example313 set A must hold positive integers");
    const std::int64_t m = *std::max_element(a.begin(), a.end());
    if (exponent > 26) throw ResourceError("example313 exponent above 26 exceeds the horizon guard");
    if (m > 24 || exponent <= m + 1)
        throw std::invalid_argument("example313: R = " + std::to_string(exponent) + " must exceed M + 1 = " +
                                    std::to_string(m + 1) + " to contain a block");

    const std::int64_t horizon = std::int64_t{1} << exponent;
    std::vector<std::int64_t> lam(static_cast<std::size_t>(horizon) + 1, 0);
    for (std::int64_t n = 1; n <= horizon; ++n) lam[static_cast<std::size_t>(n)] = example313_log2_lambda(n);

    std::vector<std::int64_t> s;
    for (std::int64_t r = m + 1; r <= exponent; ++r) {
        const std::int64_t lo = std::int64_t{1} << (r - 1), hi = (std::int64_t{1} << r) - 2 * m;
        for (std::int64_t n = lo; n <= hi; ++n) s.push_back(n);
    }

    auto fn = [horizon](std::int64_t i) -> Rational {
        if (i < 1 || i > horizon) throw std::out_of_range("example313 index outside [1, 2^R]");
        return Rational(example313_log2_lambda(i));
    };
    return Example313{m,
                      exponent,
                      std::move(lam),
                      FiniteSubset(std::move(s), horizon, Origin::one),
                      WeightSequence::exact("example313", {{"M", std::to_string(m)}, {"R", std::to_string(exponent)}},
                                            Side::unilateral, fn, horizon)};
}

} // namespace shiftlab
