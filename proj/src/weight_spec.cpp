#include "shiftlab/weight_spec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "shiftlab/counterexamples.hpp"

namespace shiftlab {
namespace {

struct Arg {
    std::string text;
    std::size_t pos;
};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    WeightSequence parse() {
        skip_ws();
        const std::size_t name_pos = i_;
        std::string name;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) name += s_[i_++];
        if (name.empty()) throw SpecParseError("expected generator name", name_pos);
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != '(') throw SpecParseError("expected '('", i_);
        ++i_;
        std::vector<Arg> args = name == "file" ? raw_arg() : list_args();
        skip_ws();
        if (i_ != s_.size()) throw SpecParseError("trailing characters", i_);
        return build(name, name_pos, args);
    }

private:
    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    std::vector<Arg> list_args() {
        std::vector<Arg> args;
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ')') {
            ++i_;
            return args;
        }
        while (true) {
            skip_ws();
            Arg a{"", i_};
            while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != ')' && !std::isspace(static_cast<unsigned char>(s_[i_])))
                a.text += s_[i_++];
            if (a.text.empty()) throw SpecParseError("expected argument", i_);
            args.push_back(a);
            skip_ws();
            if (i_ >= s_.size()) throw SpecParseError("expected ')'", i_);
            if (s_[i_] == ')') {
                ++i_;
                return args;
            }
            if (s_[i_] != ',') throw SpecParseError("expected ',' or ')'", i_);
            ++i_;
        }
    }

    std::vector<Arg> raw_arg() {
        skip_ws();
        Arg a{"", i_};
        if (i_ < s_.size() && (s_[i_] == '"' || s_[i_] == '\'')) {
            const char q = s_[i_++];
            while (i_ < s_.size() && s_[i_] != q) a.text += s_[i_++];
            if (i_ >= s_.size()) throw SpecParseError("unterminated quoted path", a.pos);
            ++i_;
            skip_ws();
        } else {
            while (i_ < s_.size() && s_[i_] != ')') a.text += s_[i_++];
            while (!a.text.empty() && std::isspace(static_cast<unsigned char>(a.text.back()))) a.text.pop_back();
        }
        if (i_ >= s_.size() || s_[i_] != ')') throw SpecParseError("expected ')'", i_);
        ++i_;
        if (a.text.empty()) throw SpecParseError("file() needs a path", a.pos);
        return {a};
    }

    static double number(const Arg& a) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(a.text, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used != a.text.size() || !std::isfinite(v)) throw SpecParseError("expected a number, got '" + a.text + "'", a.pos);
        return v;
    }

    static std::int64_t integer(const Arg& a) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(a.text, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used != a.text.size()) throw SpecParseError("expected an integer, got '" + a.text + "'", a.pos);
        return v;
    }

    static void arity(const std::string& name, std::size_t pos, const std::vector<Arg>& args, std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw SpecParseError(name + "() takes " + std::to_string(lo) + (hi != lo ? "-" + std::to_string(hi) : "") +
                                     " argument(s)",
                                 pos);
    }

    static std::string fmt(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    static WeightSequence constant_pair(const std::string& kind, WeightSequence::Params params, Side side, double neg,
                                        double pos) {
        std::int64_t en = 0, ep = 0;
        if (exact_power_of_two(neg, &en) && exact_power_of_two(pos, &ep))
            return WeightSequence::exact(kind, std::move(params), side,
                                         [en, ep](std::int64_t i) { return Rational(i <= 0 ? en : ep); });
        const double ln = std::log2(neg), lp = std::log2(pos);
        return WeightSequence::floating(kind, std::move(params), side, [ln, lp](std::int64_t i) { return i <= 0 ? ln : lp; });
    }

    WeightSequence build(const std::string& name, std::size_t pos, const std::vector<Arg>& args) {
        try {
            if (name == "rolewicz") {
                arity(name, pos, args, 1, 1);
                const double lambda = number(args[0]);
                if (!(lambda > 0)) throw SpecParseError("rolewicz lambda must be positive", args[0].pos);
                return constant_pair("rolewicz", {{"lambda", fmt(lambda)}}, Side::unilateral, lambda, lambda);
            }
            if (name == "bilateral") {
                arity(name, pos, args, 2, 2);
                const double a = number(args[0]), b = number(args[1]);
                if (!(a > 0)) throw SpecParseError("bilateral weights must be positive", args[0].pos);
                if (!(b > 0)) throw SpecParseError("bilateral weights must be positive", args[1].pos);
                return constant_pair("bilateral", {{"negative", fmt(a)}, {"positive", fmt(b)}}, Side::bilateral, a, b);
            }
            if (name == "menet") {
                arity(name, pos, args, 1, 1);
                const double p = number(args[0]);
                if (!(p >= 1)) throw SpecParseError("menet exponent must be >= 1", args[0].pos);
                return gen_menet_weights(p);
            }
            if (name == "prop2") {
                arity(name, pos, args, 1, 1);
                const auto stages = integer(args[0]);
                if (stages < 1 || stages > 8) throw SpecParseError("prop2 stages must lie in [1, 8]", args[0].pos);
                return gen_prop2_weights(static_cast<int>(stages)).weights;
            }
            if (name == "example313") {
                arity(name, pos, args, 1, 2);
                const auto m = integer(args[0]);
                if (m < 1) throw SpecParseError("example313 M must be positive", args[0].pos);
                const auto r = args.size() == 2 ? integer(args[1]) : m + 12;
                if (r <= m + 1 || r > 26)
                    throw SpecParseError("example313 R must satisfy M + 1 < R <= 26", args.size() == 2 ? args[1].pos : pos);
                std::vector<std::int64_t> a;
                for (std::int64_t k = 1; k <= m; ++k) a.push_back(k);
                return gen_example313(a, static_cast<int>(r)).lambda;
            }
            if (name == "file") {
                std::ifstream in(args[0].text);
                if (!in) throw SpecParseError("cannot open weight file '" + args[0].text + "'", args[0].pos);
                return read_weight_file(in, args[0].text);
            }
        } catch (const SpecParseError&) {
            throw;
        } catch (const ResourceError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw SpecParseError(e.what(), pos);
        }
        throw SpecParseError("unknown generator '" + name + "'", pos);
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

} // namespace

WeightSequence parse_weight_spec(const std::string& text) { return Parser(text).parse(); }

WeightSequence read_weight_file(std::istream& in, const std::string& label) {
    std::vector<std::optional<Rational>> exact;
    std::vector<double> values;
    bool bilateral = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        line = line.substr(b);
        if (line[0] == '#') {
            if (line == "#side=bilateral") bilateral = true;
            continue;
        }
        if (line == "-inf") {
            exact.emplace_back(std::nullopt);
            values.push_back(-std::numeric_limits<double>::infinity());
            continue;
        }
        try {
            Rational r = Rational::parse(line);
            exact.emplace_back(r);
            values.push_back(r.to_double());
            continue;
        } catch (const std::invalid_argument&) {
        } catch (const std::overflow_error&) {
        }
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(line, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used != line.size() || !std::isfinite(v))
            throw std::invalid_argument("weight file '" + label + "' line " + std::to_string(lineno) + ": bad value '" + line + "'");
        exact.emplace_back(std::nullopt);
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument("weight file '" + label + "' has no weights");

    const auto count = static_cast<std::int64_t>(values.size());
    std::int64_t first = 1, last = count;
    if (bilateral) {
        if (count % 2 == 0) throw std::invalid_argument("bilateral weight file needs 2K+1 lines");
        first = -(count / 2);
        last = count / 2;
    }
    const Side side = bilateral ? Side::bilateral : Side::unilateral;
    const bool all_exact = std::all_of(exact.begin(), exact.end(), [](const auto& r) { return r.has_value(); });
    WeightSequence::Params params{{"path", label}};
    auto check = [first, last, label](std::int64_t i) {
        if (i < first || i > last) throw std::out_of_range("index " + std::to_string(i) + " outside weight file '" + label + "'");
        return static_cast<std::size_t>(i - first);
    };
    if (all_exact) {
        auto data = std::make_shared<std::vector<Rational>>();
        for (auto& r : exact) data->push_back(*r);
        return WeightSequence::exact("file", std::move(params), side, [data, check](std::int64_t i) { return (*data)[check(i)]; },
                                     last);
    }
    auto data = std::make_shared<std::vector<double>>(std::move(values));
    return WeightSequence::floating("file", std::move(params), side, [data, check](std::int64_t i) { return (*data)[check(i)]; },
                                    last);
}

} // namespace shiftlab
