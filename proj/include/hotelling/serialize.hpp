#pragma once

#include <string>

#include <json.hpp>

#include "hotelling/elimination.hpp"
#include "hotelling/market.hpp"
#include "hotelling/reaction.hpp"

namespace hotelling {

/// Shortest decimal form that parses back to the same double. At most 17
/// significant digits, typically fewer; guarantees bit-exact round-trips.
std::string format_double(double x);

enum class OutputFormat { kJson, kCsv };

OutputFormat parse_format(const std::string& name);  // "json" | "csv"

/// Trace object: config echo, then `rounds` (array of per-firm interval
/// arrays [lo, hi]), `limit`, `converged_at`, `converged`, `hausdorff_gaps`.
/// Field order is fixed; numbers keep their shortest round-trip form, so
/// parse(serialize(trace)) reproduces the trace bit-exactly.
nlohmann::ordered_json trace_to_json(const EliminationTrace& trace,
                                     const nlohmann::ordered_json& config);

std::string serialize_trace(const EliminationTrace& trace, OutputFormat format,
                            const nlohmann::ordered_json& config = nlohmann::ordered_json::object());

/// Inverse of the JSON form; ignores the config echo.
EliminationTrace parse_trace(const std::string& text);

std::string serialize_outcome(const MarketOutcome& outcome, OutputFormat format,
                              const nlohmann::ordered_json& config = nlohmann::ordered_json::object());

std::string serialize_response(const ResponseSet& response, OutputFormat format,
                               const nlohmann::ordered_json& config = nlohmann::ordered_json::object());

}  // namespace hotelling
