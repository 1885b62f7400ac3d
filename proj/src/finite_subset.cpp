#include "shiftlab/finite_subset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace shiftlab {

FiniteSubset::FiniteSubset(std::vector<std::int64_t> members, std::int64_t horizon, Origin origin)
    : members_(std::move(members)), horizon_(horizon), origin_(origin) {
    if (horizon_ < 1) throw std::invalid_argument("subset horizon must be positive");
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] < 0 || members_[i] > horizon_)
            throw std::invalid_argument("subset member " + std::to_string(members_[i]) + " outside [0, " +
                                        std::to_string(horizon_) + "]");
        if (i > 0 && members_[i] <= members_[i - 1])
            throw std::invalid_argument("subset members must be strictly increasing");
    }
}

FiniteSubset FiniteSubset::from_predicate(std::int64_t first, std::int64_t horizon,
                                          const std::function<bool(std::int64_t)>& pred, Origin origin) {
    std::vector<std::int64_t> m;
    for (std::int64_t n = first; n <= horizon; ++n)
        if (pred(n)) m.push_back(n);
    return FiniteSubset(std::move(m), horizon, origin);
}

FiniteSubset FiniteSubset::interval(std::int64_t first, std::int64_t last, std::int64_t horizon, Origin origin) {
    std::vector<std::int64_t> m;
    for (std::int64_t n = first; n <= last; ++n) m.push_back(n);
    return FiniteSubset(std::move(m), horizon, origin);
}

bool FiniteSubset::contains(std::int64_t n) const {
    return std::binary_search(members_.begin(), members_.end(), n);
}

std::vector<std::int32_t> FiniteSubset::prefix_counts() const {
    std::vector<std::int32_t> prefix(static_cast<std::size_t>(horizon_) + 1, 0);
    auto it = members_.begin();
    if (it != members_.end() && *it == 0) ++it;
    std::int32_t count = 0;
    for (std::int64_t i = 1; i <= horizon_; ++i) {
        if (it != members_.end() && *it == i) {
            ++count;
            ++it;
        }
        prefix[static_cast<std::size_t>(i)] = count;
    }
    return prefix;
}

std::vector<bool> FiniteSubset::indicator() const {
    std::vector<bool> bits(static_cast<std::size_t>(horizon_) + 1, false);
    for (auto m : members_) bits[static_cast<std::size_t>(m)] = true;
    return bits;
}

const char* to_string(Origin o) { return o == Origin::zero ? "zero" : "one"; }

FiniteSubset read_set(std::istream& in) {
    std::vector<std::int64_t> members;
    std::int64_t horizon = -1;
    int origin = -1;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            try {
                if (line.rfind("#horizon=", 0) == 0) horizon = std::stoll(line.substr(9));
                else if (line.rfind("#origin=", 0) == 0) origin = std::stoi(line.substr(8));
            } catch (const std::logic_error&) {
                throw std::invalid_argument("set file line " + std::to_string(lineno) + ": bad header");
            }
            continue;
        }
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(line, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || line.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument("set file line " + std::to_string(lineno) + ": not an integer");
        members.push_back(v);
    }
    if (horizon < 0) {
        if (members.empty()) throw std::invalid_argument("empty set file needs a #horizon header");
        horizon = std::max<std::int64_t>(1, members.back());
    }
    Origin o = Origin::one;
    if (origin == 0 || (origin < 0 && !members.empty() && members.front() == 0)) o = Origin::zero;
    return FiniteSubset(std::move(members), horizon, o);
}

FiniteSubset read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open set file '" + path + "'");
    return read_set(in);
}

void write_set(std::ostream& out, const FiniteSubset& set) {
    out << "#horizon=" << set.horizon() << "\n#origin=" << static_cast<int>(set.origin()) << "\n";
    for (auto m : set.members()) out << m << "\n";
}

} // namespace shiftlab
