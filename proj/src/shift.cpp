#include "shiftlab/shift.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace shiftlab {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double relative_error(const Coefficient& c) {
    return c.is_exact() ? std::ldexp(1.0, -52) : std::expm1(c.log2_error() * M_LN2) + std::ldexp(1.0, -52);
}

Coefficient weight_factor(const LogProductTable& w, const Coefficient& c, std::int64_t a, std::int64_t b, int direction) {
    if (w.is_dyadic()) {
        const Rational l = w.exact_sum(a, b);
        return c.times_pow2(direction * l.num());
    }
    return c.times_pow2(direction * w.sum(a, b), w.sum_error(a, b));
}

/// |point_j - center_j| = d * 2^scale with an absolute error err * 2^scale.
struct Term {
    std::int64_t index;
    double scale;
    double d;
    double err;
};

std::vector<Term> difference_terms(const FiniteVector& point, const FiniteVector& center) {
    std::vector<Term> terms;
    auto add_single = [&](std::int64_t j, const Coefficient& c) {
        terms.push_back({j, c.log2_abs(), 1.0, relative_error(c)});
    };
    auto pi = point.entries().begin();
    auto ci = center.entries().begin();
    while (pi != point.entries().end() || ci != center.entries().end()) {
        if (ci == center.entries().end() || (pi != point.entries().end() && pi->first < ci->first)) {
            add_single(pi->first, pi->second);
            ++pi;
        } else if (pi == point.entries().end() || ci->first < pi->first) {
            add_single(ci->first, ci->second);
            ++ci;
        } else {
            const Coefficient& a = pi->second;
            const Coefficient& c = ci->second;
            const double la = a.log2_abs(), lc = c.log2_abs();
            const double m = std::max(la, lc);
            const double da = a.sign() * std::exp2(la - m), dc = c.sign() * std::exp2(lc - m);
            const double d = da - dc;
            const double err = std::fabs(da) * relative_error(a) + std::fabs(dc) * relative_error(c) +
                               std::ldexp(std::fabs(da) + std::fabs(dc), -52);
            terms.push_back({pi->first, m, std::fabs(d), err});
            ++pi;
            ++ci;
        }
    }
    return terms;
}

struct Accumulated {
    double lo = 0.0;
    double mid = 0.0;
    double hi = 0.0;
};

void accumulate(Accumulated& acc, const Space& space, double u, double r) {
    const double lo = std::max(0.0, u - r), hi = u + r;
    if (space.kind == Space::Kind::c0) {
        acc.lo = std::max(acc.lo, lo);
        acc.mid = std::max(acc.mid, u);
        acc.hi = std::max(acc.hi, hi);
    } else {
        acc.lo += std::pow(lo, space.p);
        acc.mid += std::pow(u, space.p);
        acc.hi += std::pow(hi, space.p);
    }
}

double root(const Space& space, double v) { return space.kind == Space::Kind::c0 ? v : std::pow(v, 1.0 / space.p); }

NormValue part_norm(const Space& space, const Accumulated& acc, double scale) {
    NormValue nv;
    if (acc.mid <= 0.0) return nv;
    nv.log2 = scale + std::log2(root(space, acc.mid));
    nv.log2_error = acc.hi > 0 && acc.lo > 0 ? std::log2(root(space, acc.hi)) - std::log2(root(space, acc.lo))
                                             : std::numeric_limits<double>::infinity();
    return nv;
}

mpq_class exact_power(const FiniteVector& x) {
    mpq_class total(0);
    const Space space = x.space();
    for (const auto& [k, c] : x.entries()) {
        if (space.kind == Space::Kind::c0) {
            mpq_class a = abs(c.value());
            if (a > total) total = a;
        } else {
            total += c.abs_pow(static_cast<unsigned long>(space.p));
        }
    }
    return total;
}

} // namespace

Space Space::lp(double p) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("lp exponent must be a finite p >= 1");
    return {Kind::lp, p};
}

Space Space::parse(const std::string& text) {
    if (text == "c0") return c0();
    if (text.rfind("lp:", 0) == 0) {
        std::size_t used = 0;
        double p = 0;
        try {
            p = std::stod(text.substr(3), &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != text.size() - 3) throw std::invalid_argument("bad space '" + text + "'");
        return lp(p);
    }
    throw std::invalid_argument("space must be 'lp:P' or 'c0', got '" + text + "'");
}

std::string Space::str() const {
    if (kind == Kind::c0) return "c0";
    std::ostringstream os;
    os << "lp:" << p;
    return os.str();
}

bool Space::exact_powers() const { return kind == Kind::c0 || (p == std::floor(p) && p <= 64); }

FiniteVector FiniteVector::basis(Space space, Side side, std::int64_t index, const Coefficient& c) {
    FiniteVector v(space, side);
    v.set(index, c);
    return v;
}

void FiniteVector::check_index(std::int64_t index) const {
    if (side_ == Side::unilateral && index < 0)
        throw std::invalid_argument("unilateral vectors have indices >= 0, got " + std::to_string(index));
}

bool FiniteVector::is_exact() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second.is_exact(); });
}

const Coefficient* FiniteVector::find(std::int64_t index) const {
    auto it = entries_.find(index);
    return it == entries_.end() ? nullptr : &it->second;
}

void FiniteVector::set(std::int64_t index, const Coefficient& c) {
    check_index(index);
    entries_.insert_or_assign(index, c);
}

void FiniteVector::add(std::int64_t index, const Coefficient& c) {
    check_index(index);
    auto it = entries_.find(index);
    if (it == entries_.end()) {
        entries_.emplace(index, c);
        return;
    }
    auto sum = it->second.exact_plus(c);
    if (sum) it->second = *sum;
    else entries_.erase(it);
}

FiniteVector FiniteVector::scaled(const mpq_class& q) const {
    FiniteVector out(space_, side_);
    if (q == 0) return out;
    for (const auto& [k, c] : entries_) out.entries_.emplace(k, c.times(q));
    return out;
}

FiniteVector operator+(const FiniteVector& a, const FiniteVector& b) {
    if (!(a.space_ == b.space_) || a.side_ != b.side_) throw std::invalid_argument("vectors live in different spaces");
    FiniteVector out = a;
    for (const auto& [k, c] : b.entries_) out.add(k, c);
    return out;
}

FiniteVector operator-(const FiniteVector& a, const FiniteVector& b) { return a + b.scaled(-1); }

bool operator==(const FiniteVector& a, const FiniteVector& b) {
    return a.space_ == b.space_ && a.side_ == b.side_ && a.entries_ == b.entries_;
}

std::string FiniteVector::str() const {
    if (entries_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : entries_) {
        if (!s.empty()) s += " + ";
        s += c.str() + "*e" + std::to_string(k);
    }
    return s;
}

NormValue norm(const FiniteVector& x) {
    NormValue nv;
    if (x.empty()) {
        nv.power = mpq_class(0);
        return nv;
    }
    const Space space = x.space();
    if (x.is_exact() && space.exact_powers()) {
        nv.power = exact_power(x);
        nv.log2 = log2_abs(*nv.power) / (space.kind == Space::Kind::c0 ? 1.0 : space.p);
        nv.log2_error = std::ldexp(std::fabs(nv.log2) + 1.0, -50);
        return nv;
    }
    double m = kNegInf, err = 0.0;
    for (const auto& [k, c] : x.entries()) {
        m = std::max(m, c.log2_abs());
        err = std::max(err, c.log2_error());
    }
    if (space.kind == Space::Kind::c0) {
        nv.log2 = m;
    } else {
        double s = 0.0;
        for (const auto& [k, c] : x.entries()) s += std::exp2(space.p * (c.log2_abs() - m));
        nv.log2 = m + std::log2(s) / space.p;
    }
    nv.log2_error = err + std::ldexp(std::fabs(nv.log2) + static_cast<double>(x.size()), -50);
    return nv;
}

NormValue tail_norm(const FiniteVector& x, std::int64_t k) {
    FiniteVector t(x.space(), x.side());
    for (auto it = x.entries().upper_bound(k); it != x.entries().end(); ++it) t.set(it->first, it->second);
    return norm(t);
}

FiniteVector apply_power(const LogProductTable& w, const FiniteVector& x, std::int64_t n, std::optional<IndexWindow> window) {
    if (n < 0) throw std::invalid_argument("power n must be >= 0");
    if (x.side() != w.side()) throw std::invalid_argument("vector and weight sides differ");
    if (window) {
        if (window->lo > window->hi) throw std::invalid_argument("empty window");
        if (window->lo < w.first_position() || window->hi + n > w.last_index())
            throw std::out_of_range("window [" + std::to_string(window->lo) + ", " + std::to_string(window->hi) +
                                    "] shifted by n = " + std::to_string(n) + " leaves the weight range [" +
                                    std::to_string(w.first_position()) + ", " + std::to_string(w.last_index()) + "]");
    }
    FiniteVector out(x.space(), x.side());
    for (const auto& [k, c] : x.entries()) {
        const std::int64_t j = k - n;
        if (x.side() == Side::unilateral && j < 0) continue;
        if (window && (j < window->lo || j > window->hi)) continue;
        if (n == 0) {
            out.set(j, c);
            continue;
        }
        if (k > w.last_index() || j < w.first_position())
            throw std::out_of_range("B^" + std::to_string(n) + " on e_" + std::to_string(k) + " needs weights outside the table");
        if (w.has_zero(j, k)) continue;
        out.set(j, weight_factor(w, c, j, k, +1));
    }
    return out;
}

FiniteVector pullback(const LogProductTable& w, const FiniteVector& y, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("pullback time must be >= 0");
    if (y.side() != w.side()) throw std::invalid_argument("vector and weight sides differ");
    FiniteVector out(y.space(), y.side());
    for (const auto& [j, c] : y.entries()) {
        const std::int64_t k = j + n;
        if (n == 0) {
            out.set(k, c);
            continue;
        }
        if (k > w.last_index() || j < w.first_position())
            throw std::out_of_range("pullback of e_" + std::to_string(j) + " by " + std::to_string(n) +
                                    " needs weights outside the table");
        if (w.has_zero(j, k))
            throw std::invalid_argument("zero weight in (" + std::to_string(j) + ", " + std::to_string(k) + "]: no pullback");
        out.set(k, weight_factor(w, c, j, k, -1));
    }
    return out;
}

std::vector<std::int64_t> ScheduledVector::block_support(std::size_t s) const {
    std::vector<std::int64_t> out;
    for (const auto& [j, c] : blocks_.at(s).target.entries()) out.push_back(j + blocks_[s].t);
    return out;
}

ScheduledVector build_schedule(const LogProductTable& w, std::vector<ScheduleBlock> blocks, Space space) {
    FiniteVector x(space, w.side());
    for (std::size_t s = 0; s < blocks.size(); ++s) {
        const auto& b = blocks[s];
        if (s > 0 && b.t <= blocks[s - 1].t) throw std::invalid_argument("schedule times must be strictly increasing");
        if (b.t < 0) throw std::invalid_argument("schedule times must be >= 0");
        if (!(b.target.space() == space)) throw std::invalid_argument("schedule target in a different space");
        FiniteVector pb = pullback(w, b.target, b.t);
        std::vector<std::int64_t> clash;
        for (const auto& [k, c] : pb.entries())
            if (x.find(k)) clash.push_back(k);
        if (!clash.empty()) {
            std::string list;
            for (auto k : clash) list += (list.empty() ? "" : ",") + std::to_string(k);
            throw ScheduleCollision("schedule block " + std::to_string(s) + " (t = " + std::to_string(b.t) +
                                        ") collides at indices " + list,
                                    clash);
        }
        for (const auto& [k, c] : pb.entries()) x.set(k, c);
    }
    const NormValue nv = norm(x);
    if (std::isnan(nv.log2) || nv.log2 == std::numeric_limits<double>::infinity())
        throw std::invalid_argument("schedule has a non-finite norm");
    return ScheduledVector(std::move(blocks), std::move(x));
}

BallQuery::BallQuery(FiniteVector c, mpq_class r) : center(std::move(c)), radius(std::move(r)) {
    if (sgn(radius) <= 0) throw std::invalid_argument("ball radius must be > 0");
}

BallQuery BallQuery::parse(const std::string& text, Space space, Side side) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("ball must look like CENTER:RADIUS, got '" + text + "'");
    std::string expr;
    for (char ch : text.substr(0, colon))
        if (!std::isspace(static_cast<unsigned char>(ch))) expr += ch;
    FiniteVector center(space, side);
    if (expr != "0") {
        std::size_t i = 0;
        if (expr.empty()) throw std::invalid_argument("empty ball center");
        while (i < expr.size()) {
            int sign = 1;
            if (expr[i] == '+' || expr[i] == '-') sign = expr[i++] == '-' ? -1 : 1;
            const auto e = expr.find('e', i);
            if (e == std::string::npos) throw std::invalid_argument("ball center term without e<index> in '" + expr + "'");
            std::string coef = expr.substr(i, e - i);
            if (!coef.empty() && coef.back() == '*') coef.pop_back();
            std::size_t j = e + 1;
            if (j < expr.size() && expr[j] == '-') ++j;
            while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j]))) ++j;
            const std::string idx = expr.substr(e + 1, j - e - 1);
            if (idx.empty() || idx == "-") throw std::invalid_argument("missing basis index in '" + expr + "'");
            mpq_class q = coef.empty() ? mpq_class(1) : parse_rational(coef);
            if (sign < 0) q = -q;
            if (q != 0) center.add(std::stoll(idx), Coefficient::exact(q));
            i = j;
        }
    }
    return BallQuery(std::move(center), parse_rational(text.substr(colon + 1)));
}

std::string BallQuery::str() const { return "B(" + center.str() + "; " + radius.get_str() + ")"; }

const char* to_string(BallVerdict v) {
    switch (v) {
    case BallVerdict::in: return "in";
    case BallVerdict::out: return "out";
    case BallVerdict::borderline: return "borderline";
    }
    return "?";
}

BallResult ball_test(const FiniteVector& point, const BallQuery& q, std::optional<std::int64_t> window_end) {
    const Space space = q.center.space();
    if (!(point.space() == space)) throw std::invalid_argument("ball and vector live in different spaces");
    const double exponent = space.kind == Space::Kind::c0 ? 1.0 : space.p;
    const auto terms = difference_terms(point, q.center);
    const double log2_eps = log2_abs(q.radius);

    double scale = log2_eps;
    for (const auto& t : terms) scale = std::max(scale, t.scale + 1.0);

    Accumulated window, tail, total;
    for (const auto& t : terms) {
        const double u = t.d * std::exp2(t.scale - scale);
        const double r = t.err * std::exp2(t.scale - scale);
        accumulate(total, space, u, r);
        accumulate(window_end && t.index > *window_end ? tail : window, space, u, r);
    }
    const double slack = std::ldexp(static_cast<double>(terms.size()) + 4.0, -48);
    const double d_lo = total.lo * (1.0 - slack);
    const double d_hi = total.hi * (1.0 + slack) + std::ldexp(1.0, -1000);
    const double e = std::pow(std::exp2(log2_eps - scale), exponent);
    const double e_slack = exponent * std::ldexp(std::fabs(log2_eps) + 1.0, -50) + std::ldexp(1.0, -48);
    const double e_lo = e * (1.0 - e_slack), e_hi = e * (1.0 + e_slack);

    BallResult res{BallVerdict::borderline, 0.0, kNegInf, false, part_norm(space, window, scale), part_norm(space, tail, scale)};
    const double dist_scaled = root(space, total.mid);
    res.log2_distance = dist_scaled > 0 ? scale + std::log2(dist_scaled) : kNegInf;
    const double gap = std::exp2(log2_eps - scale) - dist_scaled;
    res.margin = gap == 0.0 ? 0.0 : gap * std::exp2(scale);

    if (d_hi < e_lo) res.verdict = BallVerdict::in;
    else if (d_lo > e_hi) res.verdict = BallVerdict::out;
    else if (point.is_exact() && q.center.is_exact() && space.exact_powers()) {
        const FiniteVector diff = point - q.center;
        const mpq_class d = exact_power(diff);
        mpq_class eps_power = q.radius;
        if (space.kind == Space::Kind::lp)
            for (int i = 1; i < static_cast<int>(space.p); ++i) eps_power *= q.radius;
        res.exact = true;
        res.verdict = d < eps_power ? BallVerdict::in : BallVerdict::out;
        if (d == 0) res.log2_distance = kNegInf;
        else res.log2_distance = log2_abs(d) / exponent;
        res.margin = q.radius.get_d() - std::exp2(res.log2_distance);
    }
    return res;
}

BallResult ball_membership(const LogProductTable& w, const FiniteVector& x, std::int64_t n, const BallQuery& q,
                           std::optional<std::int64_t> window_end, const Twist& twist) {
    FiniteVector point = apply_power(w, x, n);
    if (twist) {
        const std::int64_t k = twist(n);
        FiniteVector twisted(point.space(), point.side());
        for (const auto& [j, c] : point.entries()) twisted.set(j, c.times_pow2(k));
        point = std::move(twisted);
    }
    return ball_test(point, q, window_end);
}

ReturnSet return_set(const LogProductTable& w, const FiniteVector& x, const BallQuery& q, std::int64_t horizon,
                     const Twist& twist) {
    if (horizon < 1) throw std::invalid_argument("return-set horizon must be >= 1");
    const std::int64_t top = x.empty() ? 0 : x.entries().rbegin()->first;
    if (top > w.last_index()) throw std::out_of_range("vector support exceeds the weight table");
    std::vector<std::int64_t> members, borderline;
    std::optional<BallResult> dead;
    for (std::int64_t n = 0; n <= horizon; ++n) {
        BallResult r = [&] {
            if (x.side() == Side::unilateral && n > top) {
                if (!dead) dead = ball_test(FiniteVector(x.space(), x.side()), q);
                return *dead;
            }
            return ball_membership(w, x, n, q, std::nullopt, twist);
        }();
        if (r.verdict == BallVerdict::in) members.push_back(n);
        else if (r.verdict == BallVerdict::borderline) borderline.push_back(n);
    }
    return {FiniteSubset(std::move(members), horizon, Origin::zero), std::move(borderline)};
}

} // namespace shiftlab
