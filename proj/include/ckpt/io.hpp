#pragma once

#include <iosfwd>
#include <string>

#include "ckpt/bounds.hpp"
#include "ckpt/pattern_search.hpp"

namespace ckpt {

/// JSON object {k, n, pattern, times, gamma}; times carry the t_k = 1
/// normalization and the field order is fixed for reproducible diffs.
std::string to_json(const cyclic_algorithm& c, int indent = 2);
cyclic_algorithm cyclic_from_json(const std::string& text);

/// Result JSON: pattern, gamma, lambda*, positions, constraint counts and
/// deterministic solve statistics (wall time is intentionally left out so
/// identical runs produce identical bytes).
std::string to_json(const optimization_result& r, int indent = 2);

std::string to_json(const search_report& rep, int indent = 2);

std::string to_json(const improvement_report& rep, int indent = 2);

std::string to_json(const bound_set& b, int indent = 2);

/// Trace CSV: header `step,time,q,interval_lo,interval_hi`, one row per
/// evaluated step, full binary64 round-trip formatting.
void write_trace_csv(std::ostream& os, const discrepancy_report& rep,
                     const schedule& s);

/// Summary JSON {k, n, gamma, perf} for a simulation run.
std::string simulation_summary_json(int k, int n, double gamma, double perf,
                                    int indent = 2);

/// Shortest round-trip decimal form of a double (matches the JSON encoder).
std::string format_double(double v);

}  // namespace ckpt
