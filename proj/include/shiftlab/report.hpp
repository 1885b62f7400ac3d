#pragma once

// JSON is the canonical report format; CSV plot data is derived from it.
// Keys keep insertion order, so equal inputs give byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "shiftlab/counterexamples.hpp"
#include "shiftlab/criteria.hpp"
#include "shiftlab/density.hpp"
#include "shiftlab/family.hpp"
#include "shiftlab/finite_subset.hpp"
#include "shiftlab/rational.hpp"
#include "shiftlab/recurrence.hpp"
#include "shiftlab/shift.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

using Json = nlohmann::ordered_json;

/// Report skeleton: tool, version, kind, config echo, notes.
Json report_header(const std::string& kind, const Json& config, const std::vector<std::string>& notes);

/// Finite doubles as numbers; infinities as the strings "inf" / "-inf".
Json number(double v);
Json to_json(const Rational& r);
Json to_json(const FiniteSubset& a);
Json to_json(const DensityReport& d);
Json to_json(const Membership& m);
Json to_json(const CriterionSet& c);
Json to_json(const SyndeticReport& r);
Json to_json(const MultipleRecurrenceReport& r);
Json to_json(const MixingReport& r);
Json to_json(const ScaledFamilyReport& r);
Json to_json(const Prop2Weights& p);
Json to_json(const Example313& e);
Json to_json(const NormValue& n);
Json to_json(const BallResult& b);
Json to_json(const RecurrenceResult& r);
Json to_json(const InclusionReport& r);
Json to_json(const AuditReport& r);

/// Weight table summary: spec, side, exactness, error bound, and the
/// first `sample` log-weights and prefix sums.
Json weights_summary(const LogProductTable& t, std::int64_t sample);

/// Pretty JSON with a trailing newline.
std::string dump(const Json& report);

/// Plot data kinds and their columns:
///   density     s,alpha_hat,ratio,alpha_min,lower_ratio
///   syndetic    M,max_gap,verdict
///   multrec     m,M,witness_n,min_log_product,best_n,best_min
///   mixing      M,cofinite_from,verdict
///   scaled      l,M,j,mirrored,member
///   weights     n,log2_weight,log_product
///   recurrence  k,witness_count,banach_estimate
///   audit       label,s,alpha_hat,estimate
/// Throws std::invalid_argument when the report does not carry that kind.
std::string emit_plotdata(const Json& report, const std::string& kind);

/// Plot kinds a report supports, in their documented order.
std::vector<std::string> plot_kinds(const Json& report);

} // namespace shiftlab
