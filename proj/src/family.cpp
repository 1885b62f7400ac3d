#include "shiftlab/family.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace shiftlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

} // namespace

std::string describe(const FamilyProxy& proxy) {
    return std::visit(overloaded{
                          [](const CofiniteProxy& p) { return "cofinite:" + std::to_string(p.from); },
                          [](const SyndeticGapProxy& p) { return "syndetic:" + std::to_string(p.bound); },
                          [](const BanachLowerProxy& p) {
                              std::ostringstream os;
                              os.precision(17);
                              os << "banach:" << p.delta << ":" << p.window;
                              if (p.start != 0) os << ":" << p.start;
                              return os.str();
                          },
                      },
                      proxy);
}

FamilyProxy parse_proxy(const std::string& text) {
    auto parts = split(text, ':');
    try {
        if (parts.size() == 2 && parts[0] == "cofinite") return CofiniteProxy{std::stoll(parts[1])};
        if (parts.size() == 2 && parts[0] == "syndetic") return SyndeticGapProxy{std::stoll(parts[1])};
        if ((parts.size() == 3 || parts.size() == 4) && parts[0] == "banach") {
            BanachLowerProxy p{std::stod(parts[1]), std::stoll(parts[2]), 0};
            if (parts.size() == 4) p.start = std::stoll(parts[3]);
            return p;
        }
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument("bad family proxy '" + text + "' (expected cofinite:T, syndetic:G or banach:DELTA:S[:START])");
}

Membership family_membership(const FiniteSubset& a, const FamilyProxy& proxy) {
    return std::visit(
        overloaded{
            [&](const CofiniteProxy& p) -> Membership {
                if (p.from < 0 || p.from > a.horizon())
                    throw std::invalid_argument("cofinite proxy start " + std::to_string(p.from) + " outside horizon " +
                                                std::to_string(a.horizon()));
                auto runs = complement_runs(a, p.from);
                if (runs.empty()) return {true, std::nullopt};
                return {false, MissingPoint{runs.front().start}};
            },
            [&](const SyndeticGapProxy& p) -> Membership {
                if (p.bound < 1) throw std::invalid_argument("syndetic proxy bound must be positive");
                if (a.empty()) return {false, EmptySet{}};
                for (const auto& g : gaps(a))
                    if (g.length() > p.bound) return {false, OversizedGap{g}};
                return {true, std::nullopt};
            },
            [&](const BanachLowerProxy& p) -> Membership {
                if (!(p.delta >= 0.0) || !std::isfinite(p.delta))
                    throw std::invalid_argument("banach proxy delta must be a finite non-negative number");
                auto ex = window_counts(a, p.window, p.start);
                if (static_cast<double>(ex.min_count) / static_cast<double>(p.window) >= p.delta) return {true, std::nullopt};
                auto k = find_window(a, p.window, ex.min_count, p.start);
                return {false, DeficientWindow{k, ex.min_count}};
            },
        },
        proxy);
}

} // namespace shiftlab
