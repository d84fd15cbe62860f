// prioq: command-line driver for the simulator, solver and record tools.
//
//   prioq simulate --protocol barabasi --p 0.5 --L 2 --steps 1000000
//   prioq solve    --p 0.9 --c 0.2
//   prioq scan     --c-range 0.05:0.5:0.05 --p-range 0.1:0.99:0.01
//   prioq pmf      --protocol barabasi --p 0.999 --kmax 100
//   prioq records  --k 25 --runs 2000
//
// Exit codes: 0 success, 2 usage, 3 numerical divergence, 4 I/O.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prioq/analytic.hpp"
#include "prioq/csv.hpp"
#include "prioq/distribution.hpp"
#include "prioq/error.hpp"
#include "prioq/operator_solver.hpp"
#include "prioq/protocol.hpp"
#include "prioq/records.hpp"
#include "prioq/rng.hpp"
#include "prioq/simd/kernels.hpp"
#include "prioq/simulator.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kDivergence = 3, kIo = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad range '" + text + "': expected start:stop:step");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw UsageError("bad range '" + text + "': expected start:stop:step with step > 0");
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i)
    values[i] = parts[0] + static_cast<double>(i) * parts[2];
  return values;
}

// --config FILE: a JSON object whose keys are flag names. Its entries are
// placed before the command-line flags, and every option keeps the last
// value, so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;

  std::ifstream in(*path);
  if (!in) throw prioq::IoError("cannot read config file " + *path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw UsageError("config file " + *path + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");

  std::vector<std::string> out;
  auto it = rest.begin();
  if (it != rest.end() && it->rfind("-", 0) != 0) out.push_back(*it++);  // subcommand
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_string()) {
      out.push_back(flag);
      out.push_back(value.get<std::string>());
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      out.push_back(flag);
      out.push_back(value.dump());
    } else if (value.is_number()) {
      out.push_back(flag);
      out.push_back(prioq::format_number(value.get<double>()));
    } else {
      throw UsageError("config key '" + key + "' must be a scalar");
    }
  }
  out.insert(out.end(), it, rest.end());
  return out;
}

struct Common {
  std::string out = ".";
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string isa;
};

struct SimulateArgs {
  std::string protocol = "barabasi";
  double p = 0.5, c = 0.0;
  std::size_t L = 2;
  std::uint64_t steps = 1'000'000, burnin = 10'000;
  std::size_t replicas = 1;
  bool samples = false;
  std::string arrivals;
};

struct SolveArgs {
  double p = 0.9, c = 0.2, tol = 1e-10;
  std::size_t nodes = 256, max_terms = 200;
  bool normalize = false, direct = false;
};

struct ScanArgs {
  std::string c_range = "0.05:0.5:0.05", p_range = "0.1:0.99:0.01";
  std::size_t nodes = 256;
};

struct PmfArgs {
  std::string protocol = "barabasi";
  double p = 0.5, c = 0.2;
  std::uint64_t kmax = 100;
  std::size_t nodes = 256;
};

struct RecordsArgs {
  std::size_t k = 25, runs = 2000, lil_records = 10'000;
  std::size_t trace_records = 12;
  std::uint64_t max_steps = 10'000'000;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw prioq::IoError("cannot create output directory " + dir.string());
}

std::string config_line(const json& cfg) { return cfg.dump(); }

void write_json(const fs::path& path, const json& doc) {
  prioq::write_text_file(path, doc.dump(2) + "\n");
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return prioq::format_number(v);
}

int cmd_simulate(const Common& common, const SimulateArgs& a) {
  if (a.protocol != "barabasi" && a.protocol != "proportional")
    throw UsageError("--protocol must be barabasi or proportional");
  if (a.L > 2 && a.protocol != "barabasi")
    throw UsageError("--L > 2 is only defined for the barabasi protocol");
  if (a.L < 2) throw UsageError("--L must be >= 2");
  if (a.steps <= a.burnin) throw UsageError("--steps must exceed --burnin");
  if (!(a.c >= 0.0 && a.c < 1.0)) throw UsageError("--c must lie in [0, 1)");
  if (!(a.p >= 0.0 && a.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");

  prioq::SimulationConfig cfg;
  cfg.buffer_length = a.L;
  cfg.dist = a.arrivals.empty() ? prioq::PriorityDistribution::uniform(a.c, 1.0)
                                : prioq::PriorityDistribution::from_csv(a.arrivals);
  cfg.protocol = a.protocol == "barabasi"
                     ? prioq::SelectionProtocol::barabasi(a.p)
                     : prioq::SelectionProtocol::proportional(a.p, cfg.dist.lo(), cfg.dist.hi());
  cfg.steps = a.steps;
  cfg.burnin = a.burnin;
  cfg.seed = common.seed;
  cfg.keep_samples = a.samples;
  cfg.keep_event_trace = false;

  json config{{"command", "simulate"}, {"protocol", a.protocol}, {"p", a.p},
              {"c", a.c},           {"L", a.L},               {"steps", a.steps},
              {"burnin", a.burnin}, {"seed", common.seed},    {"replicas", a.replicas},
              {"arrivals", cfg.dist.describe()}};

  const auto results = prioq::run_replicas(cfg, a.replicas, common.threads);

  prioq::WaitingTimeHistogram merged;
  json replicas = json::array();
  bool accounting = true;
  for (const auto& r : results) {
    merged.merge(r.histogram);
    accounting = accounting && r.accounting_holds();
    replicas.push_back({{"mean_tau", r.histogram.mean()},
                        {"residual_fraction", prioq::residual_fraction(r)},
                        {"renewal_count", r.renewals},
                        {"accounting_holds", r.accounting_holds()}});
  }

  const fs::path dir = common.out;
  ensure_dir(dir);
  prioq::CsvWriter hist(dir / "histogram.csv", config_line(config), {"k", "count", "probability"});
  for (const auto& [k, n] : merged.counts)
    hist.cell(static_cast<unsigned long long>(k))
        .cell(static_cast<unsigned long long>(n))
        .cell(merged.probability(k))
        .end_row();
  hist.close();

  if (a.samples) {
    prioq::CsvWriter s(dir / "samples.csv", config_line(config), {"x"});
    for (double x : results.front().old_priority_samples) s.cell(x).end_row();
    s.close();
  }

  const auto& first = results.front();
  json summary{{"config", config},
               {"mean_tau", merged.mean()},
               {"total_executed", merged.total_executed},
               {"residual_fraction", prioq::residual_fraction(first)},
               {"renewal_count", first.renewals},
               {"accounting_holds", accounting},
               {"event_counts",
                {{"r_new", first.event_counts.r_new},
                 {"r_old", first.event_counts.r_old},
                 {"r_comp", first.event_counts.r_comp},
                 {"r_other", first.event_counts.r_other}}},
               {"replicas", replicas}};
  write_json(dir / "summary.json", summary);
  std::cout << "mean_tau " << prioq::format_number(merged.mean()) << "\n";
  return kOk;
}

void check_pc(double p, double c) {
  if (!(p >= 0.0 && p < 1.0)) throw UsageError("--p must lie in [0, 1)");
  if (!(c > 0.0 && c < 1.0)) throw UsageError("--c must lie in (0, 1)");
}

int cmd_solve(const Common& common, const SolveArgs& a) {
  check_pc(a.p, a.c);
  if (a.nodes % 16 != 0 || a.nodes == 0) throw UsageError("--nodes must be a positive multiple of 16");
  json config{{"command", "solve"}, {"protocol", "proportional"}, {"p", a.p},
              {"c", a.c},          {"nodes", a.nodes},            {"tol", a.tol},
              {"max_terms", a.max_terms}, {"normalize", a.normalize}, {"direct", a.direct}};

  const auto grid = prioq::QuadratureGrid::standard(a.c, 1.0, a.nodes);
  const auto dist = prioq::PriorityDistribution::uniform(a.c, 1.0);
  const auto protocol = prioq::SelectionProtocol::proportional(a.p, a.c, 1.0);
  const auto assembly = prioq::assemble(protocol, dist, grid, std::nullopt, common.threads);
  const double hs = prioq::hs_norm(assembly);

  std::vector<double> raw;
  json summary{{"config", config}, {"hs_norm", hs}};
  if (hs < 1.0) {
    const auto sol = prioq::solve(assembly, {a.tol, a.max_terms, false});
    raw = sol.r1_raw;
    summary["method"] = "neumann";
    summary["converges"] = "certified";
    summary["n_terms"] = sol.n_terms;
    summary["converged"] = sol.converged;
    summary["tail_bound"] = sol.tail_bound;
    summary["residual"] = sol.residual;
    if (!sol.converged)
      std::cerr << "warning: max_terms reached, tail bound "
                << prioq::format_number(sol.tail_bound) << "\n";
  } else if (a.direct) {
    raw = prioq::solve_direct(assembly);
    summary["method"] = "direct";
    summary["converges"] = "unknown";
    summary["residual"] = prioq::fixed_point_residual(assembly, raw);
  } else {
    throw prioq::DivergenceError("hs_norm " + prioq::format_number(hs) +
                                     " >= 1: Neumann series convergence not certified "
                                     "(use --direct for the linear-solve route)",
                                 hs);
  }

  const double mass = grid.integrate(raw);
  summary["raw_mass"] = mass;

  const fs::path dir = common.out;
  ensure_dir(dir);
  prioq::CsvWriter csv(dir / "density.csv", config_line(config), {"x", "r1_raw", "r1_normalized"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv.cell(grid.node(i)).cell(raw[i]).cell(raw[i] / mass).end_row();
  csv.close();
  write_json(dir / "solve.json", summary);
  std::cout << "hs_norm " << prioq::format_number(hs) << "\n";
  return kOk;
}

int cmd_scan(const Common& common, const ScanArgs& a) {
  const auto cs = parse_range(a.c_range);
  const auto ps = parse_range(a.p_range);
  for (double c : cs)
    if (!(c > 0.0 && c < 1.0)) throw UsageError("--c-range values must lie in (0, 1)");
  for (double p : ps)
    if (!(p >= 0.0 && p < 1.0)) throw UsageError("--p-range values must lie in [0, 1)");
  json config{{"command", "scan"}, {"c_range", a.c_range}, {"p_range", a.p_range}, {"nodes", a.nodes}};

  const auto table = prioq::scan_region(cs, ps, a.nodes);
  const fs::path dir = common.out;
  ensure_dir(dir);
  prioq::CsvWriter csv(dir / "region.csv", config_line(config), {"p", "c", "hs_norm", "converges"});
  for (const auto& pt : table)
    csv.cell(pt.p).cell(pt.c).cell(pt.hs_norm).cell(pt.converges ? 1 : 0).end_row();
  csv.close();

  json thresholds = json::array();
  for (double c : cs) {
    std::optional<double> p_star;
    bool monotone = true;
    double prev = -1.0;
    for (const auto& pt : table) {
      if (pt.c != c) continue;
      monotone = monotone && pt.hs_norm > prev;
      prev = pt.hs_norm;
      if (pt.converges) p_star = pt.p;
    }
    thresholds.push_back({{"c", c},
                          {"p_star", p_star ? json(*p_star) : json(nullptr)},
                          {"strictly_increasing", monotone}});
  }
  write_json(dir / "region.json", {{"config", config}, {"thresholds", thresholds}});
  return kOk;
}

int cmd_pmf(const Common& common, const PmfArgs& a) {
  if (a.kmax < 2) throw UsageError("--kmax must be >= 2");
  const fs::path dir = common.out;
  if (a.protocol == "barabasi") {
    if (!(a.p >= 0.0 && a.p < 1.0)) throw UsageError("--p must lie in [0, 1)");
    json config{{"command", "pmf"}, {"protocol", "barabasi"}, {"p", a.p}, {"kmax", a.kmax}};
    ensure_dir(dir);
    prioq::CsvWriter csv(dir / "pmf.csv", config_line(config),
                         {"k", "probability", "ln_k", "ln_probability", "km1_probability"});
    for (std::uint64_t k = 1; k <= a.kmax; ++k) {
      const double pk = prioq::barabasi_tau_pmf(a.p, k);
      const double kd = static_cast<double>(k);
      csv.cell(static_cast<unsigned long long>(k)).cell(pk).cell(std::log(kd)).cell(std::log(pk));
      csv.cell((kd - 1.0) * pk).end_row();
    }
    csv.close();
    const auto mass = prioq::barabasi_tau_mass(a.p, a.kmax);
    const auto mean = prioq::barabasi_expected_tau(a.p, a.kmax);
    write_json(dir / "pmf.json", {{"config", config},
                                  {"mass", mass.value},
                                  {"mass_tail_bound", mass.tail_bound},
                                  {"expected_tau", json_number(mean.value)}});
    return kOk;
  }
  if (a.protocol != "proportional") throw UsageError("--protocol must be barabasi or proportional");
  check_pc(a.p, a.c);
  json config{{"command", "pmf"}, {"protocol", "proportional"}, {"p", a.p},
              {"c", a.c},        {"kmax", a.kmax},               {"nodes", a.nodes}};

  const auto grid = prioq::QuadratureGrid::standard(a.c, 1.0, a.nodes);
  const auto stat = prioq::proportional_stationary(a.p, a.c, grid, {});
  std::vector<double> unit(stat.r1);
  const double mass0 = grid.integrate(unit);
  for (double& v : unit) v /= mass0;
  const auto r1 = prioq::OldTaskDensity::from_grid(grid, unit);
  const auto dist = prioq::PriorityDistribution::uniform(a.c, 1.0);
  const auto protocol = prioq::SelectionProtocol::proportional(a.p, a.c, 1.0);
  const prioq::GeneralTauLaw law(protocol, dist, r1, grid);
  const prioq::ProportionalBounds bounds(a.p, a.c, r1);

  ensure_dir(dir);
  prioq::CsvWriter csv(dir / "pmf.csv", config_line(config),
                       {"k", "probability", "lower", "upper", "ln_k", "ln_probability"});
  const auto table = law.table(a.kmax);
  for (std::uint64_t k = 1; k <= a.kmax; ++k) {
    const double pk = table[k - 1];
    csv.cell(static_cast<unsigned long long>(k)).cell(pk);
    if (k == 1) {
      csv.empty().empty();
    } else {
      const auto b = bounds.at(k);
      csv.cell(b.lower).cell(b.upper);
    }
    csv.cell(std::log(static_cast<double>(k))).cell(std::log(pk)).end_row();
  }
  csv.close();
  const auto mean = law.expected();
  write_json(dir / "pmf.json", {{"config", config},
                                {"hs_norm", stat.hs_norm},
                                {"method", stat.used_series ? "neumann" : "direct"},
                                {"k0", bounds.k0()},
                                {"m", bounds.m()},
                                {"M", bounds.M()},
                                {"mass", law.mass(a.kmax).value},
                                {"expected_tau", json_number(mean.value)}});
  return kOk;
}

int cmd_records(const Common& common, const RecordsArgs& a) {
  if (a.k < 10 || a.runs < 100) throw UsageError("records needs --k >= 10 and --runs >= 100");
  json config{{"command", "records"}, {"k", a.k},
              {"runs", a.runs},       {"lil_records", a.lil_records},
              {"trace_records", a.trace_records}, {"max_steps", a.max_steps},
              {"seed", common.seed}};

  prioq::Rng trace_rng(common.seed, 0);
  const auto trace = prioq::stream_records(a.trace_records, a.max_steps, trace_rng);

  prioq::Rng battery_rng(common.seed, 1);
  prioq::AsymptoticOptions opts;
  opts.lil_records = a.lil_records;
  const auto rep = prioq::asymptotic_tests(a.runs, a.k, battery_rng, opts);

  const fs::path dir = common.out;
  ensure_dir(dir);
  prioq::CsvWriter csv(dir / "trace.csv", config_line(config), {"k", "T_k", "delta_k", "value"});
  for (std::size_t i = 0; i < trace.record_times.size(); ++i) {
    csv.cell(static_cast<unsigned long long>(i + 1))
        .cell(static_cast<unsigned long long>(trace.record_times[i]));
    if (i == 0)
      csv.empty();
    else
      csv.cell(static_cast<unsigned long long>(trace.inter_record[i - 1]));
    csv.cell(trace.record_values[i]).end_row();
  }
  csv.close();

  json battery{{"config", config},
               {"runs_completed", rep.runs_completed},
               {"partial", rep.partial},
               {"slln_stat", rep.slln_stat},
               {"slln_times", rep.slln_times},
               {"slln_gaps", rep.slln_gaps},
               {"clt_ks_times", rep.clt_ks_times},
               {"clt_ks_gaps", rep.clt_ks_gaps},
               {"lil_band_times", rep.lil_band_times},
               {"lil_band_gaps", rep.lil_band_gaps},
               {"ratio_ks", rep.ratio_ks},
               {"trace_records_reached", trace.record_times.size()}};
  write_json(dir / "records.json", battery);
  if (trace.record_times.size() < a.trace_records)
    std::cerr << "warning: trace stopped at " << trace.record_times.size()
              << " records after --max-steps draws\n";
  return kOk;
}

template <class T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& value, const std::string& help) {
  return app->add_option(name, value, help)
      ->capture_default_str()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

CLI::Option* flag(CLI::App* app, const std::string& name, bool& value, const std::string& help) {
  return app->add_flag(name, value, help)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const prioq::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  }

  CLI::App app{"prioq: priority-queue waiting times, stationary densities and records"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    opt(sub, "--out", common.out, "Output directory");
    opt(sub, "--seed", common.seed, "Master seed");
    opt(sub, "--threads", common.threads, "Worker threads (0 = all cores)");
    opt(sub, "--isa", common.isa, "Kernel variant: scalar or avx2")
        ->check(CLI::IsMember({"", "scalar", "avx2"}));
  };

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo run of the queue");
  opt(s, "--protocol", sim.protocol, "barabasi or proportional")
      ->check(CLI::IsMember({"barabasi", "proportional"}));
  opt(s, "--p", sim.p, "Mixing parameter p");
  opt(s, "--c", sim.c, "Arrivals Uniform(c, 1)");
  opt(s, "--L", sim.L, "Buffer length");
  opt(s, "--steps", sim.steps, "Total steps");
  opt(s, "--burnin", sim.burnin, "Steps discarded before collecting");
  opt(s, "--replicas", sim.replicas, "Independent replicas")->check(CLI::PositiveNumber);
  opt(s, "--arrivals", sim.arrivals, "Tabulated arrival density CSV (x,pdf)");
  flag(s, "--samples", sim.samples, "Write old-task priority samples");
  add_common(s);

  SolveArgs sol;
  auto* v = app.add_subcommand("solve", "Stationary old-task density, proportional protocol");
  opt(v, "--p", sol.p, "Mixing parameter p");
  opt(v, "--c", sol.c, "Arrivals Uniform(c, 1)");
  opt(v, "--nodes", sol.nodes, "Quadrature nodes (multiple of 16)");
  opt(v, "--tol", sol.tol, "Series truncation tolerance");
  opt(v, "--max-terms", sol.max_terms, "Series term limit");
  flag(v, "--normalize", sol.normalize, "Renormalize to unit mass");
  flag(v, "--direct", sol.direct, "Fall back to the direct linear solve when hs_norm >= 1");
  add_common(v);

  ScanArgs sc;
  auto* r = app.add_subcommand("scan", "HS-norm convergence region over (p, c)");
  opt(r, "--c-range", sc.c_range, "start:stop:step");
  opt(r, "--p-range", sc.p_range, "start:stop:step");
  opt(r, "--nodes", sc.nodes, "Quadrature nodes");
  add_common(r);

  PmfArgs pm;
  auto* m = app.add_subcommand("pmf", "Waiting-time pmf table");
  opt(m, "--protocol", pm.protocol, "barabasi or proportional")
      ->check(CLI::IsMember({"barabasi", "proportional"}));
  opt(m, "--p", pm.p, "Mixing parameter p");
  opt(m, "--c", pm.c, "Arrivals Uniform(c, 1) (proportional)");
  opt(m, "--kmax", pm.kmax, "Largest k");
  opt(m, "--nodes", pm.nodes, "Quadrature nodes (proportional)");
  add_common(m);

  RecordsArgs rec;
  auto* d = app.add_subcommand("records", "Record-process trace and asymptotic tests");
  opt(d, "--k", rec.k, "Record index for the test battery");
  opt(d, "--runs", rec.runs, "Independent runs");
  opt(d, "--lil-records", rec.lil_records, "Records in the long iterated-logarithm run");
  opt(d, "--trace-records", rec.trace_records, "Records in the streamed trace");
  opt(d, "--max-steps", rec.max_steps, "Stream draws allowed for the trace");
  add_common(d);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!common.isa.empty())
      prioq::simd::set_isa(common.isa == "avx2" ? prioq::simd::Isa::avx2 : prioq::simd::Isa::scalar);
    if (s->parsed()) return cmd_simulate(common, sim);
    if (v->parsed()) return cmd_solve(common, sol);
    if (r->parsed()) return cmd_scan(common, sc);
    if (m->parsed()) return cmd_pmf(common, pm);
    if (d->parsed()) return cmd_records(common, rec);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const prioq::UnsupportedConfiguration& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const prioq::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const prioq::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kDivergence;
  } catch (const prioq::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
