#include "hotelling/serialize.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace hotelling {

std::string format_double(double x) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw std::logic_error("double formatting failed");
  return std::string(buf.data(), end);
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  throw std::invalid_argument("output format must be json or csv");
}

namespace {

nlohmann::ordered_json set_to_json(const ChoiceSet& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& iv : s.intervals()) arr.push_back({iv.lo, iv.hi});
  return arr;
}

ChoiceSet set_from_json(const nlohmann::json& arr) {
  std::vector<Interval> ivs;
  for (const auto& pair : arr) ivs.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
  return ChoiceSet::from_intervals(std::move(ivs));
}

}  // namespace

nlohmann::ordered_json trace_to_json(const EliminationTrace& trace,
                                     const nlohmann::ordered_json& config) {
  nlohmann::ordered_json out;
  out["config"] = config;
  out["n_firms"] = trace.n_firms;
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const auto& row : trace.rounds) {
    nlohmann::ordered_json per_firm = nlohmann::ordered_json::array();
    for (const auto& s : row) per_firm.push_back(set_to_json(s));
    rounds.push_back(per_firm);
  }
  out["rounds"] = rounds;
  nlohmann::ordered_json limit = nlohmann::ordered_json::array();
  for (const auto& s : trace.limit) limit.push_back(set_to_json(s));
  out["limit"] = limit;
  out["converged_at"] = trace.converged_at;
  out["converged"] = trace.converged;
  out["hausdorff_gaps"] = trace.hausdorff_gaps;
  return out;
}

EliminationTrace parse_trace(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  EliminationTrace trace;
  trace.n_firms = doc.at("n_firms").get<int>();
  for (const auto& row : doc.at("rounds")) {
    std::vector<ChoiceSet> sets;
    for (const auto& s : row) sets.push_back(set_from_json(s));
    trace.rounds.push_back(std::move(sets));
  }
  for (const auto& s : doc.at("limit")) trace.limit.push_back(set_from_json(s));
  trace.converged_at = doc.at("converged_at").get<int>();
  trace.converged = doc.at("converged").get<bool>();
  trace.hausdorff_gaps = doc.at("hausdorff_gaps").get<std::vector<double>>();
  return trace;
}

namespace {

std::string trace_to_csv(const EliminationTrace& trace) {
  std::ostringstream out;
  out << "round,firm,interval,lo,hi\n";
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    for (std::size_t f = 0; f < trace.rounds[k].size(); ++f) {
      const auto& ivs = trace.rounds[k][f].intervals();
      for (std::size_t i = 0; i < ivs.size(); ++i) {
        out << k << ',' << (f + 1) << ',' << i << ',' << format_double(ivs[i].lo) << ','
            << format_double(ivs[i].hi) << '\n';
      }
    }
  }
  for (std::size_t f = 0; f < trace.limit.size(); ++f) {
    const auto& ivs = trace.limit[f].intervals();
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      out << "limit," << (f + 1) << ',' << i << ',' << format_double(ivs[i].lo) << ','
          << format_double(ivs[i].hi) << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string serialize_trace(const EliminationTrace& trace, OutputFormat format,
                            const nlohmann::ordered_json& config) {
  if (format == OutputFormat::kJson) return trace_to_json(trace, config).dump(2) + "\n";
  return trace_to_csv(trace);
}

std::string serialize_outcome(const MarketOutcome& outcome, OutputFormat format,
                              const nlohmann::ordered_json& config) {
  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json out;
    out["config"] = config;
    out["cuts"] = outcome.cuts;
    out["shares"] = outcome.shares;
    out["residual"] = outcome.residual;
    return out.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "kind,index,value\n";
  for (std::size_t i = 0; i < outcome.cuts.size(); ++i)
    out << "cut," << i << ',' << format_double(outcome.cuts[i]) << '\n';
  for (std::size_t i = 0; i < outcome.shares.size(); ++i)
    out << "share," << (i + 1) << ',' << format_double(outcome.shares[i]) << '\n';
  out << "residual,," << format_double(outcome.residual) << '\n';
  return out.str();
}

std::string serialize_response(const ResponseSet& response, OutputFormat format,
                               const nlohmann::ordered_json& config) {
  const bool interval = response.kind == ResponseSet::Kind::kInterval;
  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json out;
    out["config"] = config;
    out["kind"] = interval ? "interval" : "points";
    if (interval) {
      out["interval"] = {response.interval.lo, response.interval.hi};
    } else {
      out["points"] = response.points;
    }
    return out.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "kind,index,lo,hi\n";
  if (interval) {
    out << "interval,0," << format_double(response.interval.lo) << ','
        << format_double(response.interval.hi) << '\n';
  } else {
    for (std::size_t i = 0; i < response.points.size(); ++i) {
      out << "point," << i << ',' << format_double(response.points[i]) << ','
          << format_double(response.points[i]) << '\n';
    }
  }
  return out.str();
}

}  // namespace hotelling
