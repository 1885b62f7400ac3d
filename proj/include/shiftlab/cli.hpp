#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/report.hpp"
#include "shiftlab/shift.hpp"

namespace shiftlab {

/// Exit codes of the batch front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResource = 3;

/// Environment variable naming the default directory for report files.
inline constexpr const char* kOutputDirEnv = "SHIFTLAB_OUTPUT_DIR";

struct RunConfig {
    std::string command;   ///< density | weights | gen | recur | audit | inclusion

    std::string spec;
    std::string set_path;
    std::string experiment_path;
    std::vector<std::string> schedules;
    std::string ball = "e0:0.5";
    std::string ball_v;
    std::string space = "lp:2";

    std::int64_t horizon = 0;
    std::vector<std::int64_t> windows;
    std::int64_t window_start = 0;
    std::vector<double> thresholds{1.0};
    std::vector<std::int64_t> offsets{0};
    std::vector<std::string> criteria;
    std::int64_t r = 1;
    std::int64_t k_max = 1;
    std::int64_t m_max = 3;
    std::int64_t m = 2;
    std::int64_t gap = 64;
    std::optional<std::int64_t> tail_start;
    std::optional<std::int64_t> shift_n;
    std::string proxy;
    std::optional<double> delta;
    std::int64_t s = 64;
    std::int64_t ap_cap = 0;

    std::uint64_t seed = 0;
    std::string output;
    std::string format = "json";
    std::string plot;
};

/// Config echo embedded in every report header (destination fields excluded).
Json config_json(const RunConfig& cfg);

/// Runs one command and returns the report. Throws std::invalid_argument for
/// configuration errors and ResourceError for guard violations.
Json execute(const RunConfig& cfg);

/// Schedule source: a JSON file [{"t": T, "target": [[i, num, den], ...]}, ...]
/// or "geometric(base, count[, index])" for t_s = base^s targeting e_index.
std::vector<ScheduleBlock> read_schedule(const std::string& source, Space space, Side side);
std::vector<ScheduleBlock> schedule_from_json(const Json& blocks, Space space, Side side);

/// Parses argv and runs; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace shiftlab
