#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hotelling/elimination.hpp"
#include "hotelling/market.hpp"
#include "hotelling/oracle.hpp"
#include "hotelling/reaction.hpp"
#include "hotelling/serialize.hpp"

namespace {

using namespace hotelling;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitVerification = 4;

// Accepts plain decimals and simple fractions like 1/3. Fractions are parsed
// as one correctly rounded division so rational constants stay exact.
double parse_number(const std::string& text) {
  auto slash = text.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad number: " + text);
    return v;
  }
  double num = std::stod(text.substr(0, slash), &used);
  if (used != slash) throw std::invalid_argument("bad number: " + text);
  std::string den_text = text.substr(slash + 1);
  double den = std::stod(den_text, &used);
  if (used != den_text.size() || den == 0.0) throw std::invalid_argument("bad number: " + text);
  return num / den;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw std::invalid_argument("empty numeric list");
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

struct CommonOpts {
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts.out, "Output path (default: stdout)");
}

// ---------------------------------------------------------------------------
// shares

struct SharesArgs {
  int n = 2;
  std::string a;
  std::string c;
  std::string tol = "1e-12";
  CommonOpts common;
};

int run_shares(const SharesArgs& args) {
  std::vector<double> a = parse_list(args.a);
  std::vector<double> c = parse_list(args.c);
  double tol = parse_number(args.tol);
  if (static_cast<int>(a.size()) != args.n || static_cast<int>(c.size()) != args.n)
    throw std::invalid_argument("--a and --c must each list n values");
  ModelParams params(a);
  LocationProfile profile(c);
  MarketOutcome outcome = solve_cuts(profile, params, tol);

  ordered_json config;
  config["command"] = "shares";
  config["n"] = args.n;
  config["a"] = a;
  config["c"] = c;
  config["tol"] = tol;
  emit(serialize_outcome(outcome, parse_format(args.common.format), config), args.common.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// best-response

struct BestResponseArgs {
  int n = 2;
  std::string a;
  int firm = 1;
  std::string opponents;
  bool oracle = false;
  int grid_m = 10'000;
  double eps = kDefaultEpsOpt;
  CommonOpts common;
};

ResponseSet analytic_best_response(int n, const std::vector<double>& a, int firm,
                                   const std::vector<double>& opp, ordered_json& config) {
  if (n == 2) {
    if (a.size() != 2) throw std::invalid_argument("--a must list two values for n=2");
    if (firm != 1 && firm != 2) throw std::invalid_argument("--firm must be 1 or 2");
    double c_other = opp.at(0);
    if (a[0] == a[1]) return reaction_symmetric_two(c_other, a[0]);
    ModelParams oriented = ModelParams::two_firm(std::min(a[0], a[1]), std::max(a[0], a[1]));
    bool queried_is_efficient = a[static_cast<std::size_t>(firm - 1)] < a[static_cast<std::size_t>(2 - firm)];
    return queried_is_efficient ? reaction_firm1_two(c_other, oriented)
                                : reaction_firm2_two(c_other, oriented);
  }
  if (n == 3) {
    if (a.size() != 1) throw std::invalid_argument("--a must list one value for symmetric n=3");
    NormalizedBelief nb = normalize_belief(opp.at(0), opp.at(1));
    config["normalized_belief"] = {nb.region.c_l, nb.region.c_r};
    config["mirrored"] = nb.mirrored;
    ResponseSet r = reaction_three_symmetric(nb.region, a[0]);
    return nb.mirrored ? mirror(r) : r;
  }
  throw std::invalid_argument("best-response supports n=2 or n=3");
}

int run_best_response(const BestResponseArgs& args) {
  std::vector<double> a = parse_list(args.a);
  std::vector<double> opp = parse_list(args.opponents);
  if (static_cast<int>(opp.size()) != args.n - 1)
    throw std::invalid_argument("--opponents must list n-1 locations");

  ordered_json config;
  config["command"] = "best-response";
  config["n"] = args.n;
  config["a"] = a;
  config["firm"] = args.firm;
  config["opponents"] = opp;

  ResponseSet response = analytic_best_response(args.n, a, args.firm, opp, config);
  std::string text = serialize_response(response, parse_format(args.common.format), config);

  if (args.oracle) {
    std::vector<double> full_a = a;
    if (args.n == 3) full_a = {a[0], a[0], a[0]};
    ModelParams params(full_a);
    Grid grid(args.grid_m, args.eps);
    int own_index = args.n == 2 ? args.firm - 1 : 0;
    std::vector<double> pts = grid_best_response(own_index, opp, params, grid);
    std::vector<Interval> ivs;
    for (double p : pts) ivs.push_back({p, p});
    double gap = hausdorff(ChoiceSet::from_intervals(ivs), response.as_choice_set());
    if (parse_format(args.common.format) == OutputFormat::kJson) {
      ordered_json doc = nlohmann::ordered_json::parse(text);
      doc["oracle"] = {{"m", args.grid_m},
                       {"eps_opt", args.eps},
                       {"argmax_lo", pts.front()},
                       {"argmax_hi", pts.back()},
                       {"argmax_count", pts.size()},
                       {"hausdorff_to_analytic", gap}};
      text = doc.dump(2) + "\n";
    } else {
      std::ostringstream extra;
      extra << text;
      extra << "oracle_argmax,0," << format_double(pts.front()) << ',' << format_double(pts.back())
            << '\n';
      extra << "oracle_hausdorff,0," << format_double(gap) << ',' << format_double(gap) << '\n';
      text = extra.str();
    }
  }
  emit(text, args.common.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reaction-table

struct TableArgs {
  int n = 2;
  std::string a;
  int firm = 1;
  int samples = 201;
  CommonOpts common;
};

int run_reaction_table(const TableArgs& args) {
  std::vector<double> a = parse_list(args.a);
  if (args.samples < 2) throw std::invalid_argument("--samples must be at least 2");

  ordered_json config;
  config["command"] = "reaction-table";
  config["n"] = args.n;
  config["a"] = a;
  config["samples"] = args.samples;

  OutputFormat fmt = parse_format(args.common.format);
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;

  if (args.n == 2) {
    config["firm"] = args.firm;
    csv << "c_opponent,kind,lo,hi\n";
    for (int i = 0; i < args.samples; ++i) {
      double cj = static_cast<double>(i) / (args.samples - 1);
      ordered_json cfg_unused;
      ResponseSet r = analytic_best_response(2, a, args.firm, {cj}, cfg_unused);
      if (fmt == OutputFormat::kJson) {
        ordered_json row;
        row["c_opponent"] = cj;
        row["kind"] = r.kind == ResponseSet::Kind::kInterval ? "interval" : "points";
        if (r.kind == ResponseSet::Kind::kInterval) {
          row["interval"] = {r.interval.lo, r.interval.hi};
        } else {
          row["points"] = r.points;
        }
        rows.push_back(row);
      } else {
        if (r.kind == ResponseSet::Kind::kInterval) {
          csv << format_double(cj) << ",interval," << format_double(r.interval.lo) << ','
              << format_double(r.interval.hi) << '\n';
        } else {
          for (double p : r.points)
            csv << format_double(cj) << ",point," << format_double(p) << ',' << format_double(p)
                << '\n';
        }
      }
    }
  } else if (args.n == 3) {
    if (a.size() != 1) throw std::invalid_argument("--a must list one value for symmetric n=3");
    csv << "c_l,c_r,kind,lo,hi\n";
    for (int i = 0; i < args.samples; ++i) {
      double cr = 0.5 + 0.5 * static_cast<double>(i) / (args.samples - 1);
      for (int j = 0; j < args.samples; ++j) {
        double cl = (1.0 - cr) + (2.0 * cr - 1.0) * static_cast<double>(j) / (args.samples - 1);
        ResponseSet r = reaction_three_symmetric(BeliefRegion(cl, cr), a[0]);
        if (fmt == OutputFormat::kJson) {
          ordered_json row;
          row["c_l"] = cl;
          row["c_r"] = cr;
          row["kind"] = r.kind == ResponseSet::Kind::kInterval ? "interval" : "points";
          if (r.kind == ResponseSet::Kind::kInterval) {
            row["interval"] = {r.interval.lo, r.interval.hi};
          } else {
            row["points"] = r.points;
          }
          rows.push_back(row);
        } else {
          double lo = r.min();
          double hi = r.max();
          csv << format_double(cl) << ',' << format_double(cr) << ','
              << (r.kind == ResponseSet::Kind::kInterval ? "interval" : "point") << ','
              << format_double(lo) << ',' << format_double(hi) << '\n';
        }
      }
    }
  } else {
    throw std::invalid_argument("reaction-table supports n=2 or n=3");
  }

  if (fmt == OutputFormat::kJson) {
    ordered_json doc;
    doc["config"] = config;
    doc["rows"] = rows;
    emit(doc.dump(2) + "\n", args.common.out);
  } else {
    emit(csv.str(), args.common.out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// rationalize

struct RationalizeArgs {
  int n = 2;
  std::string a;
  std::string tol = "1e-9";
  int max_rounds = kDefaultMaxRounds;
  CommonOpts common;
};

int run_rationalize(const RationalizeArgs& args) {
  std::vector<double> a = parse_list(args.a);
  double tol = parse_number(args.tol);

  EliminationTrace trace;
  if (args.n == 2) {
    if (a.size() != 2) throw std::invalid_argument("--a must list two values for n=2");
    trace = a[0] == a[1] ? iterate_symmetric_two(a[0], tol, args.max_rounds)
                         : iterate_two_firm(ModelParams(a), tol, args.max_rounds);
  } else if (args.n == 3) {
    if (a.size() != 1) throw std::invalid_argument("--a must list one value for symmetric n=3");
    trace = iterate_three_symmetric(a[0], tol, args.max_rounds);
  } else {
    throw std::invalid_argument("rationalize supports n=2 or n=3");
  }

  ordered_json config;
  config["command"] = "rationalize";
  config["n"] = args.n;
  config["a"] = a;
  config["tol"] = tol;
  config["max_rounds"] = args.max_rounds;
  emit(serialize_trace(trace, parse_format(args.common.format), config), args.common.out);
  return trace.converged ? kExitOk : kExitNonConvergence;
}

// ---------------------------------------------------------------------------
// nash

struct NashArgs {
  std::string a;
  int scan_n = 1001;
  CommonOpts common;
};

int run_nash(const NashArgs& args) {
  std::vector<double> a = parse_list(args.a);
  if (a.size() != 2) throw std::invalid_argument("--a must list two values");
  NashScan scan = pure_nash_two(ModelParams(a), args.scan_n);

  ordered_json config;
  config["command"] = "nash";
  config["n"] = 2;
  config["a"] = a;
  config["scan_n"] = args.scan_n;

  if (parse_format(args.common.format) == OutputFormat::kJson) {
    ordered_json doc;
    doc["config"] = config;
    if (scan.equilibrium) {
      doc["equilibrium"] = {scan.equilibrium->first, scan.equilibrium->second};
    } else {
      doc["equilibrium"] = nullptr;
    }
    doc["min_gap"] = scan.min_gap;
    doc["c1_at_min"] = scan.c1_at_min;
    emit(doc.dump(2) + "\n", args.common.out);
  } else {
    std::ostringstream csv;
    csv << "field,value\n";
    csv << "has_equilibrium," << (scan.equilibrium ? "true" : "false") << '\n';
    if (scan.equilibrium) {
      csv << "c1," << format_double(scan.equilibrium->first) << '\n';
      csv << "c2," << format_double(scan.equilibrium->second) << '\n';
    }
    csv << "min_gap," << format_double(scan.min_gap) << '\n';
    csv << "c1_at_min," << format_double(scan.c1_at_min) << '\n';
    emit(csv.str(), args.common.out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  int m = 1000;
  double eps = kDefaultEpsOpt;
  bool quick = false;
};

struct CheckLog {
  int failures = 0;

  void report(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << " (" << detail << ")\n" << std::flush;
    if (!ok) ++failures;
  }
};

void verify_elimination_pair(CheckLog& log, const std::string& name,
                             const EliminationTrace& analytic, const ModelParams& params,
                             int n_firms, const Grid& grid) {
  GridEliminationResult grid_result = grid_eliminate(params, n_firms, grid);
  TraceComparison cmp = compare_traces(analytic, grid_result.trace, grid);
  std::ostringstream detail;
  detail << "limit gap " << format_double(cmp.limit_gap) << ", threshold "
         << format_double(cmp.flag_threshold) << ", flagged rounds " << cmp.flagged_rounds.size();
  log.report(cmp.ok(), name, detail.str());
}

void verify_solver_invariants(CheckLog& log, int instances) {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_a(std::log(0.1), std::log(10.0));
  double worst_sum = 0.0;
  double worst_res = 0.0;
  double worst_stable = 0.0;
  double worst_mirror = 0.0;
  double worst_perm = 0.0;
  for (int t = 0; t < instances; ++t) {
    int n = 2 + t % 4;
    std::vector<double> a(static_cast<std::size_t>(n));
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& v : a) v = std::exp(log_a(rng));
    for (auto& v : c) v = unit(rng);
    ModelParams params(a);
    LocationProfile profile(c);
    MarketOutcome out = solve_cuts(profile, params, 1e-10);

    double sum = 0.0;
    for (double s : out.shares) sum += s;
    worst_sum = std::max(worst_sum, std::fabs(sum - 1.0));
    worst_res = std::max(worst_res, out.residual);
    worst_stable = std::max(worst_stable, check_assignment_stability(profile, out, params, 64));

    std::vector<double> cm(c.rbegin(), c.rend());
    for (auto& v : cm) v = 1.0 - v;
    std::vector<double> am(a.rbegin(), a.rend());
    MarketOutcome mirrored = solve_cuts(LocationProfile(cm), ModelParams(am), 1e-10);
    for (int f = 0; f < n; ++f) {
      worst_mirror = std::max(worst_mirror,
                              std::fabs(out.shares[static_cast<std::size_t>(f)] -
                                        mirrored.shares[static_cast<std::size_t>(n - 1 - f)]));
    }

    std::vector<int> shuffled(static_cast<std::size_t>(n));
    for (int f = 0; f < n; ++f) shuffled[static_cast<std::size_t>(f)] = f;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<double> c2(static_cast<std::size_t>(n));
    std::vector<double> a2(static_cast<std::size_t>(n));
    for (int f = 0; f < n; ++f) {
      c2[static_cast<std::size_t>(f)] = c[static_cast<std::size_t>(shuffled[static_cast<std::size_t>(f)])];
      a2[static_cast<std::size_t>(f)] = a[static_cast<std::size_t>(shuffled[static_cast<std::size_t>(f)])];
    }
    MarketOutcome permuted = solve_cuts(LocationProfile(c2), ModelParams(a2), 1e-10);
    for (int f = 0; f < n; ++f) {
      worst_perm = std::max(
          worst_perm,
          std::fabs(permuted.shares[static_cast<std::size_t>(f)] -
                    out.shares[static_cast<std::size_t>(shuffled[static_cast<std::size_t>(f)])]));
    }
  }
  std::ostringstream detail;
  detail << instances << " instances, worst: sum " << format_double(worst_sum) << ", residual "
         << format_double(worst_res) << ", stability " << format_double(worst_stable)
         << ", mirror " << format_double(worst_mirror) << ", permutation "
         << format_double(worst_perm);
  bool ok = worst_sum <= 1e-10 && worst_res <= 1e-10 && worst_stable <= 1e-9 &&
            worst_mirror <= 1e-9 && worst_perm <= 1e-12;
  log.report(ok, "solver invariants", detail.str());
}

void verify_reaction_oracle(CheckLog& log, int per_family, int grid_m) {
  std::mt19937_64 rng(20240812);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_a(std::log(0.1), std::log(10.0));
  Grid grid(grid_m);
  double worst_deficit = 0.0;
  double worst_lemma1 = 0.0;
  const double tol_share = 2.0 * grid.step();

  for (int t = 0; t < per_family; ++t) {
    double a1 = std::exp(log_a(rng));
    double a2 = std::exp(log_a(rng));
    if (a1 == a2) continue;
    ModelParams oriented = ModelParams::two_firm(std::min(a1, a2), std::max(a1, a2));
    for (int role = 0; role < 2; ++role) {
      double cj = unit(rng);
      ResponseSet r =
          role == 0 ? reaction_firm1_two(cj, oriented) : reaction_firm2_two(cj, oriented);
      std::vector<double> pts = grid_best_response(role, {cj}, oriented, grid);
      auto share_of = [&](double own) {
        std::vector<double> locs = role == 0 ? std::vector<double>{own, cj}
                                             : std::vector<double>{cj, own};
        MarketOutcome o = solve_cuts(LocationProfile(locs), oriented, 1e-12);
        return o.shares[static_cast<std::size_t>(role)];
      };
      worst_deficit = std::max(worst_deficit, share_of(pts.front()) - share_of(r.points.front()));
      for (double p : r.points) {
        if (std::fabs(p - cj) <= 1e-9) continue;
        std::vector<double> locs = role == 0 ? std::vector<double>{p, cj}
                                             : std::vector<double>{cj, p};
        MarketOutcome o = solve_cuts(LocationProfile(locs), oriented, 1e-12);
        worst_lemma1 = std::max(worst_lemma1, std::fabs(o.cuts[1] - p));
      }
    }
  }
  std::ostringstream detail;
  detail << per_family << " beliefs/family at m=" << grid_m << ", worst share deficit "
         << format_double(worst_deficit) << ", worst cut mismatch "
         << format_double(worst_lemma1);
  log.report(worst_deficit <= tol_share && worst_lemma1 <= 1e-9, "two-firm reactions vs oracle",
             detail.str());
}

void verify_unrestricted(CheckLog& log) {
  GridEliminationResult two = grid_eliminate(ModelParams::two_firm(1.0, 3.0), 2, Grid(200), 200, true);
  GridEliminationResult three = grid_eliminate(ModelParams::symmetric(3, 1.0), 3, Grid(150), 200, true);
  std::ostringstream detail;
  detail << "escapes: two-firm " << two.unrestricted_escapes << ", three-firm "
         << three.unrestricted_escapes;
  log.report(two.unrestricted_escapes == 0 && three.unrestricted_escapes == 0,
             "unrestricted best responses stay inside surviving sets", detail.str());
}

int run_verify(const VerifyArgs& args) {
  int m = args.quick ? std::min(args.m, 200) : args.m;
  CheckLog log;

  verify_elimination_pair(log, "two-firm (1,3) analytic vs grid",
                          iterate_two_firm(ModelParams::two_firm(1.0, 3.0)),
                          ModelParams::two_firm(1.0, 3.0), 2, Grid(m, args.eps));
  verify_elimination_pair(log, "two-firm (1,1.4) analytic vs grid",
                          iterate_two_firm(ModelParams::two_firm(1.0, 1.4)),
                          ModelParams::two_firm(1.0, 1.4), 2, Grid(m, args.eps));
  verify_elimination_pair(log, "two-firm (1,1) analytic vs grid", iterate_symmetric_two(1.0),
                          ModelParams::two_firm(1.0, 1.0), 2, Grid(m, args.eps));
  for (double a : {0.5, 1.0, 2.0}) {
    std::ostringstream name;
    name << "three-firm a=" << a << " analytic vs grid";
    verify_elimination_pair(log, name.str(), iterate_three_symmetric(a),
                            ModelParams::symmetric(3, a), 3, Grid(m, args.eps));
  }
  verify_solver_invariants(log, args.quick ? 60 : 200);
  verify_reaction_oracle(log, args.quick ? 10 : 40, args.quick ? 2000 : 10'000);
  verify_unrestricted(log);

  std::cout << (log.failures == 0 ? "verification passed" : "verification FAILED") << " ("
            << log.failures << " failing checks)\n";
  return log.failures == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hotelling location model with waiting costs: share solver, reaction "
               "correspondences, point-rationalizability elimination, and a brute-force "
               "verification oracle"};
  app.require_subcommand(1);

  SharesArgs shares_args;
  auto* shares_cmd = app.add_subcommand("shares", "Solve the indifference system for one profile");
  shares_cmd->add_option("--n", shares_args.n, "Firm count")->required();
  shares_cmd->add_option("--a", shares_args.a, "Inefficiency list a_1,...,a_n")->required();
  shares_cmd->add_option("--c", shares_args.c, "Location list c_1,...,c_n")->required();
  shares_cmd->add_option("--tol", shares_args.tol, "Solver tolerance");
  add_common(shares_cmd, shares_args.common);

  BestResponseArgs br_args;
  auto* br_cmd = app.add_subcommand("best-response", "Closed-form best response, optionally "
                                                     "cross-checked against the grid oracle");
  br_cmd->add_option("--n", br_args.n, "Firm count (2 or 3)")->required();
  br_cmd->add_option("--a", br_args.a, "Inefficiencies (two values for n=2, one for n=3)")
      ->required();
  br_cmd->add_option("--firm", br_args.firm, "Responding firm (n=2 only, 1-based)");
  br_cmd->add_option("--opponents", br_args.opponents, "Opponent locations (n-1 values)")
      ->required();
  br_cmd->add_flag("--oracle", br_args.oracle, "Also run the grid oracle");
  br_cmd->add_option("--grid-m", br_args.grid_m, "Oracle grid resolution");
  br_cmd->add_option("--eps", br_args.eps, "Oracle optimality slack (share units)");
  add_common(br_cmd, br_args.common);

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("reaction-table", "Sample a reaction function or "
                                                         "correspondence into a table");
  table_cmd->add_option("--n", table_args.n, "Firm count (2 or 3)")->required();
  table_cmd->add_option("--a", table_args.a, "Inefficiencies")->required();
  table_cmd->add_option("--firm", table_args.firm, "Responding firm (n=2 only, 1-based)");
  table_cmd->add_option("--samples", table_args.samples, "Samples per axis");
  add_common(table_cmd, table_args.common);

  RationalizeArgs rat_args;
  auto* rat_cmd = app.add_subcommand("rationalize", "Run the iterative elimination to its limit");
  rat_cmd->add_option("--n", rat_args.n, "Firm count (2 or 3)")->required();
  rat_cmd->add_option("--a", rat_args.a, "Inefficiencies")->required();
  rat_cmd->add_option("--tol", rat_args.tol, "Convergence tolerance (Hausdorff)");
  rat_cmd->add_option("--max-rounds", rat_args.max_rounds, "Round budget");
  add_common(rat_cmd, rat_args.common);

  NashArgs nash_args;
  auto* nash_cmd = app.add_subcommand("nash", "Scan for a two-firm pure Nash equilibrium");
  nash_cmd->add_option("--a", nash_args.a, "Inefficiencies a_1,a_2")->required();
  nash_cmd->add_option("--scan-n", nash_args.scan_n, "Scan resolution");
  add_common(nash_cmd, nash_args.common);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-validate analytic results against the "
                                                  "brute-force oracle and invariant suite");
  verify_cmd->add_option("--m", verify_args.m, "Elimination grid resolution");
  verify_cmd->add_option("--eps", verify_args.eps, "Oracle optimality slack");
  verify_cmd->add_flag("--quick", verify_args.quick, "Small grids and sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (shares_cmd->parsed()) return run_shares(shares_args);
    if (br_cmd->parsed()) return run_best_response(br_args);
    if (table_cmd->parsed()) return run_reaction_table(table_args);
    if (rat_cmd->parsed()) return run_rationalize(rat_args);
    if (nash_cmd->parsed()) return run_nash(nash_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
