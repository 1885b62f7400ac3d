#include "shiftlab/report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shiftlab {
namespace {

Json optional_int(const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json intervals(const FiniteSubset& a) {
    Json out = Json::array();
    const auto m = a.members();
    for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j + 1 < m.size() && m[j + 1] == m[j] + 1) ++j;
        out.push_back(Json::array({m[i], m[j]}));
        i = j + 1;
    }
    return out;
}

std::string csv_cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    return v.dump();
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<Json>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
        out += "\n";
    }
    return out;
}

const Json& section(const Json& report, const std::string& kind, const char* key) {
    const auto& results = report.at("results");
    if (!results.contains(key))
        throw std::invalid_argument("report of kind '" + report.value("kind", std::string("?")) + "' has no " + kind + " data");
    return results.at(key);
}

} // namespace

Json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

Json report_header(const std::string& kind, const Json& config, const std::vector<std::string>& notes) {
    Json j;
    j["tool"] = "shiftlab";
    j["version"] = SHIFTLAB_VERSION;
    j["kind"] = kind;
    j["config"] = config;
    j["notes"] = notes;
    return j;
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const FiniteSubset& a) {
    Json j;
    j["horizon"] = a.horizon();
    j["origin"] = to_string(a.origin());
    j["size"] = a.size();
    j["intervals"] = intervals(a);
    return j;
}

Json to_json(const DensityReport& d) {
    Json j;
    j["horizon"] = d.horizon;
    j["origin"] = to_string(d.origin);
    j["cardinality"] = d.cardinality;
    j["window_start"] = d.window_start;
    Json windows = Json::array();
    for (std::size_t i = 0; i < d.window_sizes.size(); ++i) {
        Json w;
        w["s"] = d.window_sizes[i];
        w["alpha_hat"] = d.window_max_counts[i];
        w["ratio"] = number(d.upper_estimate(i));
        w["alpha_min"] = d.window_min_counts[i];
        w["lower_ratio"] = number(d.lower_estimate(i));
        windows.push_back(w);
    }
    j["windows"] = windows;
    j["prefix_ratio_min"] = number(d.prefix_ratio_min);
    j["prefix_ratio_max"] = number(d.prefix_ratio_max);
    Json samples = Json::array();
    for (const auto& s : d.prefix_ratios) samples.push_back(Json::array({s.n, number(s.ratio)}));
    j["prefix_ratio_samples"] = samples;
    j["max_gap"] = optional_int(d.max_gap);
    return j;
}

Json to_json(const Membership& m) {
    Json j;
    j["member"] = m.member;
    if (m.witness) {
        Json w;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, MissingPoint>) {
                    w["type"] = "missing_point";
                    w["n"] = x.n;
                } else if constexpr (std::is_same_v<T, OversizedGap>) {
                    w["type"] = "oversized_gap";
                    w["from"] = x.gap.from;
                    w["to"] = x.gap.to;
                } else if constexpr (std::is_same_v<T, DeficientWindow>) {
                    w["type"] = "deficient_window";
                    w["k"] = x.k;
                    w["count"] = x.count;
                } else {
                    w["type"] = "empty_set";
                }
            },
            *m.witness);
        j["witness"] = w;
    }
    return j;
}

Json to_json(const CriterionSet& c) {
    Json j;
    j["M"] = number(c.threshold);
    j["j"] = c.offset;
    j["mirrored"] = c.mirrored;
    j["set"] = to_json(c.members);
    j["borderline"] = c.borderline;
    return j;
}

Json to_json(const SyndeticReport& r) {
    Json j;
    j["horizon"] = r.horizon;
    j["gap_bound"] = r.gap_bound;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["M"] = number(row.threshold);
        x["max_gap"] = optional_int(row.max_gap);
        x["verdict"] = to_string(row.verdict);
        Json gaps = Json::array();
        for (const auto& g : row.oversized) gaps.push_back(Json::array({g.from, g.to}));
        x["oversized_gaps"] = gaps;
        x["borderline"] = row.borderline;
        rows.push_back(x);
    }
    j["rows"] = rows;
    return j;
}

Json to_json(const MultipleRecurrenceReport& r) {
    Json j;
    j["horizon"] = r.horizon;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["m"] = row.m;
        x["M"] = number(row.threshold);
        x["verdict"] = to_string(row.verdict);
        x["witness_n"] = optional_int(row.witness_n);
        x["witness_min_log_product"] = row.witness_min ? number(*row.witness_min) : Json(nullptr);
        x["best_n"] = row.best_n;
        x["best_min_log_product"] = number(row.best_min);
        x["searched"] = row.searched;
        rows.push_back(x);
    }
    j["rows"] = rows;
    return j;
}

Json to_json(const MixingReport& r) {
    Json j;
    j["horizon"] = r.horizon;
    j["tail_start"] = r.tail_start;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["M"] = number(row.threshold);
        x["cofinite_from"] = optional_int(row.cofinite_from);
        x["verdict"] = to_string(row.verdict);
        x["last_missing"] = optional_int(row.last_missing);
        rows.push_back(x);
    }
    j["rows"] = rows;
    return j;
}

Json to_json(const ScaledFamilyReport& r) {
    Json j;
    j["horizon"] = r.horizon;
    j["r"] = r.r;
    j["proxy"] = r.proxy;
    j["all_hold"] = r.all_hold;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["l"] = row.l;
        x["M"] = number(row.threshold);
        x["j"] = row.offset;
        x["mirrored"] = row.mirrored;
        x["membership"] = to_json(row.membership);
        rows.push_back(x);
    }
    j["rows"] = rows;
    return j;
}

Json to_json(const Prop2Weights& p) {
    Json j;
    j["horizon"] = p.horizon();
    j["b_list"] = p.starred_positions();
    Json exps = Json::array(), stages = Json::array();
    for (const auto& s : p.stages) {
        exps.push_back(s.compensator_exponent);
        Json x;
        x["stage"] = s.stage;
        x["block_start"] = s.block_start;
        x["n"] = s.n;
        x["starred"] = s.starred;
        x["block_end"] = s.block_end;
        x["compensator_pos"] = s.compensator_pos;
        x["compensator_exponent"] = s.compensator_exponent;
        x["trailing_twos"] = s.trailing_twos;
        x["stage_end"] = s.stage_end;
        stages.push_back(x);
    }
    j["compensator_exponents"] = exps;
    j["stages"] = stages;
    return j;
}

Json to_json(const Example313& e) {
    Json j;
    j["M"] = e.max_a;
    j["R"] = e.exponent;
    j["horizon"] = e.horizon();
    j["S"] = to_json(e.s_set);
    return j;
}

Json to_json(const NormValue& n) {
    Json j;
    j["power"] = n.power ? Json(n.power->get_str()) : Json(nullptr);
    j["log2"] = number(n.log2);
    j["log2_error"] = number(n.log2_error);
    return j;
}

Json to_json(const BallResult& b) {
    Json j;
    j["verdict"] = to_string(b.verdict);
    j["margin"] = number(b.margin);
    j["log2_distance"] = number(b.log2_distance);
    j["exact"] = b.exact;
    j["window_part"] = to_json(b.window_part);
    j["tail_part"] = to_json(b.tail_part);
    return j;
}

Json to_json(const RecurrenceResult& r) {
    Json j;
    j["label"] = "empirical";
    j["horizon"] = r.horizon;
    j["r"] = r.params.r;
    j["K"] = r.params.k_max;
    j["s"] = r.params.window;
    j["delta"] = number(r.delta);
    j["returns"] = to_json(r.returns);
    j["borderline"] = r.borderline;
    Json counts = Json::array(), firsts = Json::array(), est = Json::array();
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        counts.push_back(r.witnesses[i].size());
        firsts.push_back(r.witnesses[i].empty() ? Json(nullptr) : Json(r.witnesses[i].members().front()));
        est.push_back(number(r.estimates[i]));
    }
    j["witness_count"] = counts;
    j["first_witness"] = firsts;
    j["window_max"] = r.window_max;
    j["banach_estimate"] = est;
    j["W_r"] = r.w_r;
    return j;
}

Json to_json(const InclusionReport& r) {
    Json j;
    j["status"] = r.status;
    j["n"] = optional_int(r.n);
    j["n_discovered"] = r.n_discovered;
    if (!r.witness_vector.empty()) j["witness_vector"] = r.witness_vector;
    j["visits"] = to_json(r.visits);
    j["pairs_checked"] = r.pairs_checked;
    j["borderline_pairs"] = r.borderline_pairs;
    Json v = Json::array();
    for (const auto& p : r.violations) v.push_back(Json{{"s1", p.s1}, {"s2", p.s2}, {"problem", p.problem}});
    j["violations"] = v;
    return j;
}

Json to_json(const AuditReport& r) {
    Json j;
    j["label"] = "empirical";
    j["horizon"] = r.horizon;
    j["windows"] = r.windows;
    j["m"] = r.m;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["schedule"] = row.label;
        x["returns"] = row.returns;
        x["borderline"] = row.borderline;
        x["alpha_hat"] = row.window_max;
        Json est = Json::array();
        for (double e : row.estimates) est.push_back(number(e));
        x["estimates"] = est;
        x["flagged"] = row.flagged;
        rows.push_back(x);
    }
    j["rows"] = rows;
    return j;
}

Json weights_summary(const LogProductTable& t, std::int64_t sample) {
    Json j;
    j["spec"] = t.spec();
    j["side"] = to_string(t.side());
    j["horizon"] = t.horizon();
    j["first_index"] = t.first_index();
    j["last_index"] = t.last_index();
    j["exact"] = t.is_exact();
    j["dyadic"] = t.is_dyadic();
    j["sup_abs_log2_weight"] = number(t.sup_abs_log());
    j["max_error"] = number(t.max_error());
    Json rows = Json::array();
    const std::int64_t last = std::min(t.last_index(), t.first_index() + sample - 1);
    for (std::int64_t n = t.first_index(); n <= last; ++n) {
        Json r;
        r["n"] = n;
        if (t.is_exact()) {
            r["log2_weight"] = to_json(t.exact_sum(n - 1, n));
            r["log_product"] = to_json(t.exact_at(n));
        } else {
            r["log2_weight"] = number(t.sum(n - 1, n));
            r["log_product"] = number(t.at(n));
        }
        rows.push_back(r);
    }
    j["table"] = rows;
    return j;
}

std::string dump(const Json& report) { return report.dump(2) + "\n"; }

std::vector<std::string> plot_kinds(const Json& report) {
    std::vector<std::string> kinds;
    const auto& results = report.at("results");
    for (const char* k : {"density", "syndetic", "multrec", "mixing", "scaled", "weights", "recurrence", "audit"})
        if (results.contains(k)) kinds.emplace_back(k);
    return kinds;
}

std::string emit_plotdata(const Json& report, const std::string& kind) {
    std::vector<std::vector<Json>> rows;
    if (kind == "density") {
        for (const auto& w : section(report, kind, "density").at("windows"))
            rows.push_back({w["s"], w["alpha_hat"], w["ratio"], w["alpha_min"], w["lower_ratio"]});
        return csv({"s", "alpha_hat", "ratio", "alpha_min", "lower_ratio"}, rows);
    }
    if (kind == "syndetic") {
        for (const auto& r : section(report, kind, "syndetic").at("rows")) rows.push_back({r["M"], r["max_gap"], r["verdict"]});
        return csv({"M", "max_gap", "verdict"}, rows);
    }
    if (kind == "multrec") {
        for (const auto& r : section(report, kind, "multrec").at("rows"))
            rows.push_back({r["m"], r["M"], r["witness_n"], r["witness_min_log_product"], r["best_n"], r["best_min_log_product"]});
        return csv({"m", "M", "witness_n", "min_log_product", "best_n", "best_min"}, rows);
    }
    if (kind == "mixing") {
        for (const auto& r : section(report, kind, "mixing").at("rows")) rows.push_back({r["M"], r["cofinite_from"], r["verdict"]});
        return csv({"M", "cofinite_from", "verdict"}, rows);
    }
    if (kind == "scaled") {
        for (const auto& r : section(report, kind, "scaled").at("rows"))
            rows.push_back({r["l"], r["M"], r["j"], r["mirrored"], r["membership"]["member"]});
        return csv({"l", "M", "j", "mirrored", "member"}, rows);
    }
    if (kind == "weights") {
        for (const auto& r : section(report, kind, "weights").at("table")) rows.push_back({r["n"], r["log2_weight"], r["log_product"]});
        return csv({"n", "log2_weight", "log_product"}, rows);
    }
    if (kind == "recurrence") {
        const auto& r = section(report, kind, "recurrence");
        const auto& counts = r.at("witness_count");
        for (std::size_t i = 0; i < counts.size(); ++i)
            rows.push_back({static_cast<std::int64_t>(i + 1), counts[i], r.at("banach_estimate")[i]});
        return csv({"k", "witness_count", "banach_estimate"}, rows);
    }
    if (kind == "audit") {
        const auto& a = section(report, kind, "audit");
        for (const auto& row : a.at("rows"))
            for (std::size_t i = 0; i < a.at("windows").size(); ++i)
                rows.push_back({row["schedule"], a["windows"][i], row["alpha_hat"][i], row["estimates"][i]});
        return csv({"label", "s", "alpha_hat", "estimate"}, rows);
    }
    throw std::invalid_argument("unknown plot kind '" + kind + "'");
}

} // namespace shiftlab
