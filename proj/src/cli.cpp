#include "shiftlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "shiftlab/counterexamples.hpp"
#include "shiftlab/weight_spec.hpp"

namespace shiftlab {
namespace {

const std::vector<std::string> kDensityNotes = {
    "alpha_hat(s) = max over k >= window_start of |A ∩ [k+1, k+s]|; alpha_min uses the same full windows",
    "prefix ratios |A ∩ [1, n]| / n are taken over the back half n in [N/2, N]",
    "max_gap is the largest gap of 0, a_1, ..., a_k, N",
};

const std::vector<std::string> kCriteriaNotes = {
    "A_{M;j} = {n in [1, N-j] : L(j+n) - L(j) > log2 M} with L the prefix sum of log2|w_i|",
    "points within the floating error band are borderline and never counted as members",
    "multiple recurrence: witness_n is the smallest n with min_{l<=m} L(l n) > log2 M; best_n maximizes that minimum",
    "mixing: cofinite proxy, holds iff A_{M;0} contains [tail_start, N]",
};

const std::vector<std::string> kOrbitNotes = {
    "vectors are finite schedules x = sum_s pullback(y_s, t_s); every result is an empirical finite-horizon fact",
    "borderline orbit points (within the error band of the radius) are excluded from return sets",
    "banach estimate of M_{k,r} = {a : a, a+k, ..., a+rk in F} is alpha_hat(s)/s; k enters W_r when it is >= delta",
};

struct Realized {
    WeightSequence seq;
    std::int64_t horizon;
};

Realized realize(const std::string& spec, std::int64_t requested, std::vector<std::string>& notes) {
    if (spec.empty()) throw std::invalid_argument("--spec is required");
    WeightSequence seq = parse_weight_spec(spec);
    std::int64_t n = requested;
    if (n <= 0) {
        if (!seq.max_index()) throw std::invalid_argument("--N is required for '" + seq.spec() + "'");
        n = *seq.max_index();
    }
    if (seq.max_index() && n > *seq.max_index()) {
        notes.push_back("horizon clamped from " + std::to_string(n) + " to the generator range " +
                        std::to_string(*seq.max_index()));
        n = *seq.max_index();
    }
    if (n > kMaxHorizon) throw ResourceError("horizon " + std::to_string(n) + " exceeds the guard " + std::to_string(kMaxHorizon));
    return {std::move(seq), n};
}

std::string param(const WeightSequence& w, const std::string& key) {
    for (const auto& [k, v] : w.params())
        if (k == key) return v;
    return {};
}

Json construction(const WeightSequence& w, const LogProductTable& table) {
    if (w.kind() == "prop2") return to_json(gen_prop2_weights(std::stoi(param(w, "stages"))));
    if (w.kind() == "example313") {
        std::vector<std::int64_t> a;
        for (std::int64_t k = 1; k <= std::stoll(param(w, "M")); ++k) a.push_back(k);
        return to_json(gen_example313(a, std::stoi(param(w, "R"))));
    }
    if (w.kind() == "menet") {
        const double p = std::stod(param(w, "p"));
        double worst = 0.0;
        for (std::int64_t n = 1; n <= table.last_index(); ++n)
            worst = std::max(worst, std::fabs(table.at(n) - menet_log_product(p, n)));
        Json j;
        j["closed_form"] = "log2(n+1)/(2p)";
        j["max_abs_deviation"] = number(worst);
        return j;
    }
    return nullptr;
}

std::int64_t schedule_top(const std::vector<ScheduleBlock>& blocks) {
    std::int64_t top = 0;
    for (const auto& b : blocks)
        if (!b.target.empty()) top = std::max(top, b.t + b.target.entries().rbegin()->first);
    return top;
}

Json schedule_json(const std::vector<ScheduleBlock>& blocks) {
    Json out = Json::array();
    for (const auto& b : blocks) out.push_back(Json{{"t", b.t}, {"target", b.target.str()}});
    return out;
}

LogProductTable orbit_table(const WeightSequence& seq, std::int64_t horizon, std::int64_t top) {
    std::int64_t need = std::max(horizon, top);
    if (seq.max_index()) need = std::min(need, *seq.max_index());
    if (need > kMaxHorizon) throw ResourceError("weight table of size " + std::to_string(need) + " exceeds the guard");
    return LogProductTable(seq, need);
}

Json run_density(const RunConfig& cfg) {
    if (cfg.set_path.empty()) throw std::invalid_argument("--set is required");
    if (cfg.windows.empty()) throw std::invalid_argument("--windows is required");
    const FiniteSubset a = read_set_file(cfg.set_path);
    Json report = report_header("density", config_json(cfg), kDensityNotes);
    Json results;
    results["density"] = to_json(density_report(a, cfg.windows, cfg.window_start));
    if (cfg.ap_cap > 0) {
        const Progression p = longest_ap(a, cfg.ap_cap);
        results["longest_ap"] = Json{{"start", p.start}, {"step", p.step}, {"length", p.length}};
    }
    if (!cfg.proxy.empty()) {
        const FamilyProxy proxy = parse_proxy(cfg.proxy);
        results["family"] = Json{{"proxy", describe(proxy)}, {"membership", to_json(family_membership(a, proxy))}};
    }
    report["results"] = results;
    return report;
}

Json run_weights(const RunConfig& cfg, bool full_table) {
    std::vector<std::string> notes = kCriteriaNotes;
    const Realized rz = realize(cfg.spec, cfg.horizon, notes);
    const LogProductTable table(rz.seq, rz.horizon);
    Json results;
    results["weights"] = weights_summary(table, full_table ? rz.horizon : 0);
    results["construction"] = construction(rz.seq, table);

    std::vector<std::string> criteria = cfg.criteria;
    if (criteria.empty() && !full_table)
        criteria = table.side() == Side::unilateral ? std::vector<std::string>{"syndetic", "multrec", "mixing"}
                                                    : std::vector<std::string>{"scaled"};
    for (const auto& c : criteria) {
        if (c == "syndetic") {
            results["syndetic"] = to_json(syndetic_operator_check(table, cfg.thresholds, cfg.gap));
        } else if (c == "multrec") {
            results["multrec"] = to_json(multiple_recurrence_check(table, cfg.m_max, cfg.thresholds));
        } else if (c == "mixing") {
            results["mixing"] = to_json(mixing_check(table, cfg.thresholds, cfg.tail_start));
        } else if (c == "scaled") {
            std::string proxy_text = cfg.proxy;
            if (proxy_text.empty()) {
                const std::int64_t jmax = *std::max_element(cfg.offsets.begin(), cfg.offsets.end());
                const std::int64_t t = std::max<std::int64_t>(1, (table.last_index() - jmax) / (2 * cfg.r));
                proxy_text = "cofinite:" + std::to_string(t);
                notes.push_back("scaled proxy defaults to cofinite from (N - max j) / (2r) = " + std::to_string(t));
            }
            results["scaled"] = to_json(direct_sum_check(table, cfg.r, cfg.thresholds, cfg.offsets, parse_proxy(proxy_text)));
        } else if (c == "set") {
            Json sets = Json::array();
            for (double m : cfg.thresholds)
                for (auto j : cfg.offsets) {
                    const CriterionSet cs = criterion_set(table, m, j);
                    Json row;
                    row["M"] = number(m);
                    row["j"] = j;
                    row["size"] = cs.members.size();
                    row["borderline"] = cs.borderline;
                    row["max_gap"] = cs.members.empty() ? Json(nullptr) : Json(*syndetic_gap(cs.members));
                    Json runs = Json::array();
                    for (const auto& r : complement_runs(cs.members, 1)) runs.push_back(Json::array({r.start, r.length}));
                    row["complement_runs"] = runs;
                    sets.push_back(row);
                }
            results["sets"] = sets;
        } else {
            throw std::invalid_argument("unknown criterion '" + c + "' (syndetic, multrec, mixing, scaled, set)");
        }
    }
    Json report = report_header(full_table ? "weights_table" : "criteria", config_json(cfg), notes);
    report["results"] = results;
    return report;
}

Json run_recur(const RunConfig& base) {
    RunConfig cfg = base;
    Json schedule_source;
    if (!cfg.experiment_path.empty()) {
        std::ifstream in(cfg.experiment_path);
        if (!in) throw std::invalid_argument("cannot open experiment file '" + cfg.experiment_path + "'");
        Json e;
        try {
            e = Json::parse(in);
        } catch (const Json::parse_error& err) {
            throw std::invalid_argument(std::string("experiment file: ") + err.what());
        }
        cfg.spec = e.value("spec", cfg.spec);
        cfg.ball = e.value("ball", cfg.ball);
        cfg.space = e.value("space", cfg.space);
        cfg.r = e.value("r", cfg.r);
        cfg.k_max = e.value("K", cfg.k_max);
        cfg.horizon = e.value("N", cfg.horizon);
        cfg.s = e.value("s", cfg.s);
        if (e.contains("delta")) cfg.delta = e["delta"].get<double>();
        if (e.contains("schedule")) {
            if (e["schedule"].is_string()) cfg.schedules = {e["schedule"].get<std::string>()};
            else schedule_source = e["schedule"];
        }
    }
    if (cfg.schedules.empty() && schedule_source.is_null()) throw std::invalid_argument("--schedule is required");
    if (cfg.horizon <= 0) throw std::invalid_argument("--N is required");

    std::vector<std::string> notes = kOrbitNotes;
    const Space space = Space::parse(cfg.space);
    const WeightSequence seq = parse_weight_spec(cfg.spec.empty() ? throw std::invalid_argument("--spec is required") : cfg.spec);
    if (cfg.horizon > kMaxHorizon) throw ResourceError("horizon exceeds the guard");

    RecurrenceExperiment exp;
    exp.weight_spec = seq.spec();
    exp.schedule = schedule_source.is_null() ? read_schedule(cfg.schedules.front(), space, seq.side())
                                             : schedule_from_json(schedule_source, space, seq.side());
    exp.schedule_label = schedule_source.is_null() ? cfg.schedules.front() : "inline";
    exp.ball = cfg.ball;
    exp.space = space;
    exp.horizon = cfg.horizon;
    const std::int64_t room = cfg.horizon - cfg.r * cfg.k_max;
    exp.params = {cfg.r, cfg.k_max, std::min(cfg.s, std::max<std::int64_t>(room, 1)), cfg.delta};
    if (exp.params.window != cfg.s) notes.push_back("window s capped at N - rK = " + std::to_string(exp.params.window));
    exp = run_experiment(std::move(exp));

    Json results;
    results["schedule"] = schedule_json(exp.schedule);
    results["ball"] = exp.ball;
    results["recurrence"] = to_json(*exp.result);
    Json report = report_header("recurrence", config_json(cfg), notes);
    report["results"] = results;
    return report;
}

Json run_audit(const RunConfig& cfg) {
    if (cfg.schedules.empty()) throw std::invalid_argument("--schedule is required");
    if (cfg.windows.empty()) throw std::invalid_argument("--windows is required");
    if (cfg.horizon <= 0) throw std::invalid_argument("--N is required");
    std::vector<std::string> notes = kOrbitNotes;
    const Space space = Space::parse(cfg.space);
    const WeightSequence seq = parse_weight_spec(cfg.spec);
    std::vector<std::vector<ScheduleBlock>> blocks;
    std::int64_t top = 0;
    for (const auto& s : cfg.schedules) {
        blocks.push_back(read_schedule(s, space, seq.side()));
        top = std::max(top, schedule_top(blocks.back()));
    }
    const LogProductTable table = orbit_table(seq, cfg.horizon, top);
    std::vector<std::pair<std::string, FiniteVector>> vectors;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        vectors.emplace_back(cfg.schedules[i], build_schedule(table, blocks[i], space).vector());
    const BallQuery q = BallQuery::parse(cfg.ball, space, seq.side());
    Json results;
    results["ball"] = cfg.ball;
    results["audit"] = to_json(banach_return_audit(table, vectors, q, cfg.horizon, cfg.windows, cfg.m));
    Json report = report_header("audit", config_json(cfg), notes);
    report["results"] = results;
    return report;
}

Json run_inclusion(const RunConfig& cfg) {
    if (cfg.schedules.empty()) throw std::invalid_argument("--schedule is required");
    if (cfg.horizon <= 0) throw std::invalid_argument("--N is required");
    const Space space = Space::parse(cfg.space);
    const WeightSequence seq = parse_weight_spec(cfg.spec);
    const auto blocks = read_schedule(cfg.schedules.front(), space, seq.side());
    const LogProductTable table = orbit_table(seq, cfg.horizon + cfg.shift_n.value_or(0), schedule_top(blocks));
    const ScheduledVector x = build_schedule(table, blocks, space);
    const BallQuery u = BallQuery::parse(cfg.ball, space, seq.side());
    const BallQuery v = BallQuery::parse(cfg.ball_v.empty() ? cfg.ball : cfg.ball_v, space, seq.side());
    Json results;
    results["schedule"] = schedule_json(blocks);
    results["inclusion"] = to_json(inclusion_check(table, x.vector(), u, v, cfg.shift_n, cfg.horizon));
    Json report = report_header("inclusion", config_json(cfg), kOrbitNotes);
    report["results"] = results;
    return report;
}

std::filesystem::path output_path(const RunConfig& cfg) {
    const char* dir = std::getenv(kOutputDirEnv);
    const std::string ext = cfg.format == "csv" ? ".csv" : ".json";
    std::filesystem::path p = cfg.output.empty() ? std::filesystem::path(cfg.command + ext) : std::filesystem::path(cfg.output);
    if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
    return p;
}

} // namespace

Json config_json(const RunConfig& cfg) {
    Json j;
    j["command"] = cfg.command;
    if (!cfg.spec.empty()) j["spec"] = cfg.spec;
    if (!cfg.set_path.empty()) j["set"] = cfg.set_path;
    if (!cfg.experiment_path.empty()) j["experiment"] = cfg.experiment_path;
    if (!cfg.schedules.empty()) j["schedules"] = cfg.schedules;
    j["ball"] = cfg.ball;
    if (!cfg.ball_v.empty()) j["ball_v"] = cfg.ball_v;
    j["space"] = cfg.space;
    j["N"] = cfg.horizon;
    j["windows"] = cfg.windows;
    j["window_start"] = cfg.window_start;
    Json ms = Json::array();
    for (double m : cfg.thresholds) ms.push_back(number(m));
    j["M"] = ms;
    j["j"] = cfg.offsets;
    j["criteria"] = cfg.criteria;
    j["r"] = cfg.r;
    j["K"] = cfg.k_max;
    j["m_max"] = cfg.m_max;
    j["m"] = cfg.m;
    j["gap"] = cfg.gap;
    j["tail_start"] = cfg.tail_start ? Json(*cfg.tail_start) : Json(nullptr);
    j["n"] = cfg.shift_n ? Json(*cfg.shift_n) : Json(nullptr);
    j["proxy"] = cfg.proxy;
    j["delta"] = cfg.delta ? number(*cfg.delta) : Json(nullptr);
    j["s"] = cfg.s;
    j["ap_cap"] = cfg.ap_cap;
    j["seed"] = cfg.seed;
    return j;
}

Json execute(const RunConfig& cfg) {
    if (cfg.command == "density") return run_density(cfg);
    if (cfg.command == "weights") return run_weights(cfg, false);
    if (cfg.command == "gen") return run_weights(cfg, true);
    if (cfg.command == "recur") return run_recur(cfg);
    if (cfg.command == "audit") return run_audit(cfg);
    if (cfg.command == "inclusion") return run_inclusion(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

std::vector<ScheduleBlock> schedule_from_json(const Json& blocks, Space space, Side side) {
    if (!blocks.is_array()) throw std::invalid_argument("schedule must be a JSON list of blocks");
    auto integer = [](const Json& v) -> mpz_class {
        if (v.is_number_integer()) return mpz_class(std::to_string(v.get<std::int64_t>()));
        if (v.is_string()) return mpz_class(v.get<std::string>());
        throw std::invalid_argument("schedule coefficients must be integers or integer strings");
    };
    std::vector<ScheduleBlock> out;
    try {
        for (const auto& b : blocks) {
            FiniteVector y(space, side);
            for (const auto& e : b.at("target")) {
                if (!e.is_array() || e.size() != 3) throw std::invalid_argument("schedule target entries are [index, num, den]");
                mpq_class q(integer(e[1]), integer(e[2]));
                if (q.get_den() == 0) throw std::invalid_argument("zero denominator in schedule");
                q.canonicalize();
                if (q != 0) y.add(e[0].get<std::int64_t>(), Coefficient::exact(q));
            }
            out.push_back({b.at("t").get<std::int64_t>(), std::move(y)});
        }
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("malformed schedule: ") + e.what());
    }
    return out;
}

std::vector<ScheduleBlock> read_schedule(const std::string& source, Space space, Side side) {
    if (source.rfind("geometric(", 0) == 0 && source.back() == ')') {
        std::vector<std::int64_t> args;
        std::stringstream ss(source.substr(10, source.size() - 11));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                args.push_back(std::stoll(item));
            } catch (const std::logic_error&) {
                throw std::invalid_argument("geometric() takes integers, got '" + item + "'");
            }
        }
        if (args.size() < 2 || args.size() > 3 || args[0] < 2 || args[1] < 1)
            throw std::invalid_argument("geometric(base >= 2, count >= 1[, index])");
        std::vector<ScheduleBlock> out;
        std::int64_t t = 1;
        for (std::int64_t s = 1; s <= args[1]; ++s) {
            if (t > kMaxHorizon / args[0]) throw ResourceError("geometric schedule exceeds the horizon guard");
            t *= args[0];
            out.push_back({t, FiniteVector::basis(space, side, args.size() == 3 ? args[2] : 0)});
        }
        return out;
    }
    std::ifstream in(source);
    if (!in) throw std::invalid_argument("cannot open schedule file '" + source + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("schedule file '" + source + "': " + e.what());
    }
    return schedule_from_json(j, space, side);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"shiftlab: finite-horizon experiments on weighted backward shifts"};
    app.set_version_flag("--version", SHIFTLAB_VERSION);
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--output,-o", cfg.output, "Report path (relative paths resolve under $" + std::string(kOutputDirEnv) + ")");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--plot", cfg.plot, "Plot-data kind for --format csv");
        sub->add_option("--seed", cfg.seed, "Seed (echoed; runs are deterministic)");
    };
    auto orbit = [&](CLI::App* sub) {
        sub->add_option("--spec", cfg.spec, "Weight spec")->required();
        sub->add_option("--ball", cfg.ball, "Ball CENTER:RADIUS, e.g. e0:0.5");
        sub->add_option("--space", cfg.space, "lp:P or c0");
        sub->add_option("--N", cfg.horizon, "Orbit horizon");
    };

    auto* density = app.add_subcommand("density", "Density estimators of a set file");
    density->add_option("--set", cfg.set_path, "Set file")->required();
    density->add_option("--windows", cfg.windows, "Window sizes")->delimiter(',')->required();
    density->add_option("--window-start", cfg.window_start, "First window offset k");
    density->add_option("--ap", cfg.ap_cap, "Search arithmetic progressions up to this length");
    density->add_option("--proxy", cfg.proxy, "Family proxy cofinite:T | syndetic:G | banach:D:S[:START]");
    common(density);

    auto criteria_options = [&](CLI::App* sub) {
        sub->add_option("--spec", cfg.spec, "Weight spec")->required();
        sub->add_option("--N", cfg.horizon, "Horizon (defaults to the generator range)");
        sub->add_option("--M", cfg.thresholds, "Thresholds M")->delimiter(',');
        sub->add_option("--j", cfg.offsets, "Offsets j")->delimiter(',');
    };
    auto* weights = app.add_subcommand("weights", "Product criteria for a weight sequence");
    criteria_options(weights);
    weights->add_option("--criteria", cfg.criteria, "syndetic, multrec, mixing, scaled, set")->delimiter(',');
    weights->add_option("--m-max", cfg.m_max, "Largest recurrence order m");
    weights->add_option("--gap", cfg.gap, "Syndetic gap bound");
    weights->add_option("--tail-start", cfg.tail_start, "Cofinite tail start for mixing (default N/2)");
    weights->add_option("--r", cfg.r, "Direct-sum order r");
    weights->add_option("--proxy", cfg.proxy, "Family proxy for the scaled check");
    common(weights);

    auto* gen = app.add_subcommand("gen", "Generate a weight table");
    gen->add_option("--spec", cfg.spec, "Weight spec")->required();
    gen->add_option("--N", cfg.horizon, "Horizon (defaults to the generator range)");
    common(gen);

    auto* recur = app.add_subcommand("recur", "Recurrence scan of a scheduled orbit");
    recur->add_option("--spec", cfg.spec, "Weight spec");
    recur->add_option("--experiment", cfg.experiment_path, "Experiment JSON");
    recur->add_option("--schedule", cfg.schedules, "Schedule JSON or geometric(base,count[,index])");
    recur->add_option("--ball", cfg.ball, "Ball CENTER:RADIUS");
    recur->add_option("--space", cfg.space, "lp:P or c0");
    recur->add_option("--N", cfg.horizon, "Orbit horizon");
    recur->add_option("--r", cfg.r, "Recurrence order r");
    recur->add_option("--K", cfg.k_max, "Largest k");
    recur->add_option("--s", cfg.s, "Window size s");
    recur->add_option("--delta", cfg.delta, "Density threshold (default 2/s)");
    common(recur);

    auto* audit = app.add_subcommand("audit", "Upper Banach density audit of return sets");
    orbit(audit);
    audit->add_option("--schedule", cfg.schedules, "Schedules (repeatable)")->required();
    audit->add_option("--windows", cfg.windows, "Window sizes")->delimiter(',')->required();
    audit->add_option("--m", cfg.m, "Flag estimates above 1/m");
    common(audit);

    auto* inclusion = app.add_subcommand("inclusion", "Difference-set inclusion self-test");
    orbit(inclusion);
    inclusion->add_option("--schedule", cfg.schedules, "Schedule")->required();
    inclusion->add_option("--V", cfg.ball_v, "Second ball (defaults to --ball)");
    inclusion->add_option("--n", cfg.shift_n, "Element of N(U, V); discovered when omitted");
    common(inclusion);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        const Json report = execute(cfg);
        std::string text;
        if (cfg.format == "csv") {
            auto kinds = plot_kinds(report);
            if (cfg.plot.empty() && kinds.empty()) throw std::invalid_argument("report has no plot data");
            text = emit_plotdata(report, cfg.plot.empty() ? kinds.front() : cfg.plot);
        } else {
            text = dump(report);
        }
        const char* dir = std::getenv(kOutputDirEnv);
        if (cfg.output.empty() && !(dir && *dir)) {
            out << text;
        } else {
            const auto path = output_path(cfg);
            if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
            std::ofstream f(path, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
            f << text;
        }
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const SpecParseError& e) {
        err << "spec error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace shiftlab
