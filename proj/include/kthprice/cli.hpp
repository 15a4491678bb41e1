#pragma once

// Command-line front end. Lives in a header so tests can drive it in-process
// with string streams; tools/kthprice_cli.cpp is a thin main().

#include "kthprice/combinatorics.hpp"
#include "kthprice/distributions.hpp"
#include "kthprice/equilibrium.hpp"
#include "kthprice/report_io.hpp"
#include "kthprice/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace kthprice::cli {

enum ExitCode : int
{
  kSuccess = 0,
  kCheckFailure = 1,
  kConfigError = 2,
  kNonConvergence = 3,
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

class ConfigError : public std::runtime_error
{
public:
  ConfigError(const std::string &field, const std::string &message)
    : std::runtime_error(field + ": " + message)
  {}
};

struct RunConfig
{
  std::string command;
  int n = 5;
  int k = 4;
  std::string dist = "triangle";
  double a = 1.0;
  double omega = 1.0;
  int grid_size = 20;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-8;
  /// Empty picks the command default: JSON lines for verify, CSV otherwise.
  std::string format;
  std::string output;

  std::string bid = "equilibrium";
  std::string suite = "all";
  bool expect_fail = false;
  int z_points = 101;

  std::string mode = "payment";
  double x = 0.8;
  std::string estimator = "direct";
  unsigned workers = 1;

  unsigned lmax = 40;
  unsigned random_trials = 500;
  int nmax = 30;
  double identity_tolerance = 1e-9;
  double integral_tolerance = 1e-6;
  bool sweep = false;
};

inline void validate(const RunConfig &cfg)
{
  if (cfg.k < 2) {
    throw ConfigError("k", "k >= 2 violated (k = " + std::to_string(cfg.k) + ")");
  }
  if (cfg.n < cfg.k) {
    throw ConfigError("n", "n >= k violated (n = " + std::to_string(cfg.n) + ", k = " + std::to_string(cfg.k) + ")");
  }
  if (cfg.grid_size < 2) {
    throw ConfigError("grid", "grid_size >= 2 violated");
  }
  if (cfg.samples < 1) {
    throw ConfigError("samples", "samples >= 1 violated");
  }
  if (!(cfg.tolerance > 0.0)) {
    throw ConfigError("tol", "tolerance > 0 violated");
  }
  if (!(cfg.omega > 0.0)) {
    throw ConfigError("omega", "omega > 0 violated");
  }
  if (cfg.dist != "uniform" && cfg.dist != "triangle" && cfg.dist != "linear") {
    throw ConfigError("dist", "expected uniform, triangle or linear, got '" + cfg.dist + "'");
  }
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("format", "expected csv or json, got '" + cfg.format + "'");
  }
}

inline LinearDensityDistribution make_distribution(const RunConfig &cfg)
{
  try {
    if (cfg.dist == "uniform") {
      return make_uniform(cfg.omega);
    }
    if (cfg.dist == "triangle") {
      return make_triangle(cfg.omega);
    }
    return make_linear(cfg.a, cfg.omega);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(cfg.dist == "linear" ? "a" : "omega", e.what());
  }
}

inline BidFunction make_bid(const RunConfig &cfg, const LinearDensityDistribution &dist)
{
  const AuctionConfig config{cfg.n, cfg.k};
  try {
    if (cfg.bid == "equilibrium") {
      return BidFunction::equilibrium(config, dist);
    }
    if (cfg.bid == "truthful") {
      return BidFunction::second_price(config, dist);
    }
    if (cfg.bid == "series") {
      return BidFunction::linear_series(config, dist);
    }
    if (cfg.bid == "third-price") {
      return BidFunction::third_price(cfg.n, dist);
    }
    if (cfg.bid == "uniform") {
      return BidFunction::uniform_closed_form(config, dist);
    }
    if (cfg.bid == "triangle") {
      return BidFunction::triangle_closed_form(config, dist);
    }
  } catch (const std::invalid_argument &e) {
    throw ConfigError("bid", e.what());
  }
  throw ConfigError("bid", "unknown bid kind '" + cfg.bid + "'");
}

namespace detail {

inline void require_k3(const RunConfig &cfg, const std::string &what)
{
  if (cfg.k < 3) {
    throw ConfigError("k", "k >= 3 required for " + what);
  }
}

inline std::string csv_row(const std::vector<std::string> &fields)
{
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      row += ',';
    }
    row += csv_field(fields[i]);
  }
  return row + "\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// bid-table
// ---------------------------------------------------------------------------

inline int cmd_bid_table(const RunConfig &cfg, std::ostream &out)
{
  const LinearDensityDistribution dist = make_distribution(cfg);
  const BidFunction bid = make_bid(cfg, dist);
  const std::optional<BigRational> &slope = bid.exact_slope();

  std::optional<std::pair<BigRational, BigRational>> bounds;
  if (dist.is_triangle() && cfg.k >= 3 && cfg.n + 4 > 2 * cfg.k) {
    bounds = bid_bound_slopes(cfg.n, cfg.k);
  }

  if (cfg.format == "csv") {
    out << detail::csv_row({"x", "beta", "slope", "slope_decimal", "lower_bound", "upper_bound"});
  }
  for (double x : closed_grid(0.0, dist.omega(), cfg.grid_size)) {
    const double beta = bid(x);
    if (cfg.format == "csv") {
      out << detail::csv_row({format_decimal(x), format_decimal(beta), slope ? to_string(*slope) : "",
                              slope ? format_decimal(to_double(*slope)) : "",
                              bounds ? format_decimal(to_double(bounds->first) * x) : "",
                              bounds ? format_decimal(to_double(bounds->second) * x) : ""});
    } else {
      nlohmann::ordered_json row;
      row["x"] = round_decimal(x);
      row["beta"] = round_decimal(beta);
      row["slope"] = slope ? nlohmann::ordered_json(to_string(*slope)) : nlohmann::ordered_json(nullptr);
      row["slope_decimal"] =
          slope ? nlohmann::ordered_json(round_decimal(to_double(*slope))) : nlohmann::ordered_json(nullptr);
      row["lower_bound"] =
          bounds ? nlohmann::ordered_json(round_decimal(to_double(bounds->first) * x)) : nlohmann::ordered_json(nullptr);
      row["upper_bound"] =
          bounds ? nlohmann::ordered_json(round_decimal(to_double(bounds->second) * x)) : nlohmann::ordered_json(nullptr);
      out << row.dump() << "\n";
    }
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

inline int cmd_verify(const RunConfig &cfg, std::ostream &out)
{
  const LinearDensityDistribution dist = make_distribution(cfg);
  const bool all = cfg.suite == "all";
  if (!all && cfg.suite != "re" && cfg.suite != "best-response" && cfg.suite != "oracle" && cfg.suite != "ladder") {
    throw ConfigError("suite", "expected re, best-response, oracle, ladder or all, got '" + cfg.suite + "'");
  }

  std::vector<VerificationReport> reports;
  if (all || cfg.suite == "re") {
    const BidFunction bid = make_bid(cfg, dist);
    reports.push_back(revenue_equivalence_check(bid, dist, cfg.n, cfg.k, std::max(3, cfg.grid_size), cfg.tolerance));
  }
  if (all || cfg.suite == "best-response") {
    const BidFunction bid = make_bid(cfg, dist);
    reports.push_back(best_response_check(bid, dist, cfg.n, cfg.k, {0.2, 0.5, 0.8}, cfg.z_points));
  }
  if (cfg.suite == "oracle" || (all && cfg.k >= 3)) {
    detail::require_k3(cfg, "suite oracle");
    reports.push_back(psi_oracle_check(dist, cfg.n, cfg.k, cfg.grid_size, cfg.tolerance));
  }
  const bool ladder_applies = dist.is_uniform() || dist.is_triangle();
  if (cfg.suite == "ladder" || (all && cfg.k >= 3 && ladder_applies)) {
    detail::require_k3(cfg, "suite ladder");
    if (!ladder_applies) {
      throw ConfigError("dist", "suite ladder needs uniform or triangle values");
    }
    reports.push_back(phi_ladder_verification(dist, cfg.n, cfg.k, cfg.grid_size));
  }

  bool all_pass = true;
  bool all_fail = true;
  if (cfg.format == "csv") {
    out << detail::csv_row({"check", "n", "k", "bid", "max_error", "tolerance", "pass"});
  }
  for (const auto &report : reports) {
    all_pass = all_pass && report.pass;
    all_fail = all_fail && !report.pass;
    if (cfg.format == "csv") {
      out << detail::csv_row({report.check, std::to_string(report.config.n), std::to_string(report.config.k),
                              report.bid, format_decimal(report.max_error), format_decimal(report.tolerance),
                              report.pass ? "true" : "false"});
    } else {
      out << to_json(report).dump() << "\n";
    }
  }
  const bool ok = cfg.expect_fail ? all_fail : all_pass;
  return ok ? kSuccess : kCheckFailure;
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

inline int cmd_identities(const RunConfig &cfg, std::ostream &out)
{
  if (cfg.lmax < 1) {
    throw ConfigError("lmax", "lmax >= 1 violated");
  }
  if (cfg.nmax < 3) {
    throw ConfigError("nmax", "nmax >= 3 violated");
  }
  bool all_pass = true;
  const auto emit = [&](nlohmann::ordered_json line) {
    all_pass = all_pass && line["pass"].get<bool>();
    out << line.dump() << "\n";
  };

  emit({{"check", "catalan-recurrence"}, {"lmax", cfg.lmax}, {"pass", catalan_recurrence_holds(cfg.lmax)}});

  {
    QuadratureConfig quad;
    quad.tolerance = 1e-13;
    double worst = 0.0;
    std::optional<unsigned> witness;
    for (unsigned ell = 0; ell <= cfg.lmax; ++ell) {
      const double exact = to_double(BigRational(catalan(ell)));
      const double rel = std::abs(catalan_integral(ell, quad) - exact) / exact;
      if (rel > worst) {
        worst = rel;
      }
      if (rel > cfg.integral_tolerance && !witness) {
        witness = ell;
      }
    }
    nlohmann::ordered_json line{{"check", "catalan-integral"}, {"lmax", cfg.lmax},
                                {"max_rel_error", round_decimal(worst)}, {"tolerance", cfg.integral_tolerance},
                                {"pass", !witness}};
    if (witness) {
      line["witness"] = {{"l", *witness}};
    }
    emit(line);
  }

  {
    Engine gen = make_stream(cfg.seed, 0);
    const auto uniform = [&gen](double lo, double hi) { return lo + (hi - lo) * uniform01(gen); };
    struct Tally
    {
      const char *name;
      unsigned checked = 0;
      unsigned skipped = 0;
      std::optional<nlohmann::ordered_json> witness;
    };
    Tally jensen{"jensen"}, hagen{"hagen-rothe"}, shifted{"shifted-jensen"};
    for (unsigned trial = 0; trial < cfg.random_trials; ++trial) {
      const double m = uniform(0.0, 12.0);
      const double r = uniform(-12.0, 12.0);
      const double z = uniform(-3.0, 3.0);
      const auto s = static_cast<unsigned>(gen() % 13);
      if (m <= 0.0) {
        continue;
      }
      const nlohmann::ordered_json tuple{{"m", m}, {"r", r}, {"z", z}, {"s", s}};
      ++jensen.checked;
      if (!sides_agree(jensen_sides<IdentityReal>(m, r, z, s), cfg.identity_tolerance) && !jensen.witness) {
        jensen.witness = tuple;
      }
      ++shifted.checked;
      if (!sides_agree(shifted_jensen_sides<IdentityReal>(r, z, s), cfg.identity_tolerance) && !shifted.witness) {
        shifted.witness = tuple;
      }
      try {
        const auto sides = hagen_rothe_sides<IdentityReal>(m, r, z, s);
        ++hagen.checked;
        if (!sides_agree(sides, cfg.identity_tolerance) && !hagen.witness) {
          hagen.witness = tuple;
        }
      } catch (const std::invalid_argument &) {
        ++hagen.skipped;
      }
    }
    for (const Tally *t : {&jensen, &hagen, &shifted}) {
      nlohmann::ordered_json line{{"check", t->name},   {"trials", t->checked},
                                  {"skipped", t->skipped}, {"seed", cfg.seed},
                                  {"tolerance", cfg.identity_tolerance}, {"pass", !t->witness}};
      if (t->witness) {
        line["witness"] = *t->witness;
      }
      emit(line);
    }
  }

  {
    std::optional<std::pair<int, int>> theta_witness, positive_witness, bound_witness, integral_witness;
    bool lower_tight_at_3 = true;
    for (int n = 3; n <= cfg.nmax; ++n) {
      for (int k = 3; k <= n; ++k) {
        if (!theta_recurrences_hold(n, k) && !theta_witness) {
          theta_witness = {n, k};
        }
        const BigRational om = omega(n, k);
        if (om <= 0 && !positive_witness) {
          positive_witness = {n, k};
        }
        if (n + 4 > 2 * k && !omega_bounds_hold(n, k) && !bound_witness) {
          bound_witness = {n, k};
        }
        if (k == 3 && om != make_rational(1, 2) * BigRational(binomial(n - 3, 0))) {
          lower_tight_at_3 = false;
        }
        const double numeric = omega_integral(n, k);
        if (std::abs(numeric - to_double(om)) > 1e-9 * std::max(1.0, to_double(om)) && !integral_witness) {
          integral_witness = {n, k};
        }
      }
    }
    const auto line = [&](const char *name, const std::optional<std::pair<int, int>> &w) {
      nlohmann::ordered_json j{{"check", name}, {"nmax", cfg.nmax}, {"pass", !w}};
      if (w) {
        j["witness"] = {{"n", w->first}, {"k", w->second}};
      }
      return j;
    };
    emit(line("theta-recurrences", theta_witness));
    emit(line("omega-positive", positive_witness));
    emit(line("omega-bounds", bound_witness));
    emit({{"check", "omega-lower-bound-tight-k3"}, {"nmax", cfg.nmax}, {"pass", lower_tight_at_3}});
    emit(line("omega-integral", integral_witness));
  }
  return all_pass ? kSuccess : kCheckFailure;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

inline int cmd_simulate(const RunConfig &cfg, std::ostream &out)
{
  const LinearDensityDistribution dist = make_distribution(cfg);
  const BidFunction bid = make_bid(cfg, dist);
  MonteCarloOptions options;
  options.workers = std::max(1U, cfg.workers);

  nlohmann::ordered_json row;
  row["mode"] = cfg.mode;
  row["n"] = cfg.n;
  row["k"] = cfg.k;
  row["dist"] = dist.describe();
  row["bid"] = bid.name();
  if (cfg.mode == "payment") {
    if (!(cfg.x > 0.0) || cfg.x > dist.omega()) {
      throw ConfigError("x", "0 < x <= omega violated");
    }
    PaymentEstimator estimator = PaymentEstimator::Direct;
    if (cfg.estimator == "conditional") {
      estimator = PaymentEstimator::Conditional;
    } else if (cfg.estimator != "direct") {
      throw ConfigError("estimator", "expected direct or conditional, got '" + cfg.estimator + "'");
    }
    const MonteCarloResult mc =
        monte_carlo_expected_payment(bid, dist, cfg.n, cfg.k, cfg.x, cfg.samples, cfg.seed, options, estimator);
    const double benchmark = expected_payment_benchmark(dist, cfg.n, cfg.x);
    row["x"] = round_decimal(cfg.x);
    row["estimator"] = cfg.estimator;
    row.update(to_json(mc));
    row["benchmark"] = round_decimal(benchmark);
    row["z_score"] = mc.standard_error > 0 ? round_decimal((mc.estimate - benchmark) / mc.standard_error) : 0.0;
  } else if (cfg.mode == "revenue") {
    const MonteCarloResult mc = expected_revenue(bid, dist, cfg.n, cfg.k, cfg.samples, cfg.seed, options);
    row.update(to_json(mc));
  } else {
    throw ConfigError("mode", "expected payment or revenue, got '" + cfg.mode + "'");
  }

  if (cfg.format == "json") {
    out << row.dump() << "\n";
    return kSuccess;
  }
  std::vector<std::string> header, values;
  for (const auto &[key, value] : row.items()) {
    header.push_back(key);
    values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  out << detail::csv_row(header) << detail::csv_row(values);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

inline int cmd_bounds(const RunConfig &cfg, std::ostream &out)
{
  std::vector<std::pair<int, int>> cases;
  if (cfg.sweep) {
    if (cfg.nmax < 3) {
      throw ConfigError("nmax", "nmax >= 3 violated");
    }
    for (int n = 3; n <= cfg.nmax; ++n) {
      for (int k = 3; k <= n; ++k) {
        if (n + 4 > 2 * k) {
          cases.emplace_back(n, k);
        }
      }
    }
  } else {
    detail::require_k3(cfg, "bounds");
    if (cfg.n + 4 <= 2 * cfg.k) {
      throw ConfigError("n", "n + 4 > 2k violated (bounds are not claimed there)");
    }
    cases.emplace_back(cfg.n, cfg.k);
  }

  bool all_pass = true;
  if (cfg.format == "csv") {
    out << detail::csv_row({"n", "k", "omega", "omega_lower", "omega_upper", "slope", "slope_lower", "slope_upper",
                            "holds"});
  }
  for (const auto &[n, k] : cases) {
    const BigRational om = omega(n, k);
    const BigRational scale(binomial(n - 3, k - 3));
    const BigRational lo = make_rational(1, 2) * scale;
    const BigRational hi = make_rational(7, 8) * scale;
    const auto [slope_lo, slope_hi] = bid_bound_slopes(n, k);
    const bool holds = bid_bounds_check(n, k) && omega_bounds_hold(n, k);
    all_pass = all_pass && holds;
    if (cfg.format == "csv") {
      out << detail::csv_row({std::to_string(n), std::to_string(k), to_string(om), to_string(lo), to_string(hi),
                              to_string(triangle_slope(n, k)), to_string(slope_lo), to_string(slope_hi),
                              holds ? "true" : "false"});
    } else {
      nlohmann::ordered_json row{{"n", n},
                                 {"k", k},
                                 {"omega", to_string(om)},
                                 {"omega_lower", to_string(lo)},
                                 {"omega_upper", to_string(hi)},
                                 {"slope", to_string(triangle_slope(n, k))},
                                 {"slope_lower", to_string(slope_lo)},
                                 {"slope_upper", to_string(slope_hi)},
                                 {"holds", holds}};
      out << row.dump() << "\n";
    }
  }
  return all_pass ? kSuccess : kCheckFailure;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

namespace detail {

/// Flag bindings shared by argv parsing and the --config JSON file, so the
/// file's keys mirror the long flag names.
class Bindings
{
public:
  template <typename T>
  void add(CLI::App &app, const std::string &name, T &target, const std::string &help)
  {
    CLI::Option *opt = app.add_option("--" + name, target, help);
    entries_[name] = {opt, [&target](const nlohmann::json &value) { target = value.get<T>(); }};
  }

  void add_flag(CLI::App &app, const std::string &name, bool &target, const std::string &help)
  {
    CLI::Option *opt = app.add_flag("--" + name, target, help);
    entries_[name] = {opt, [&target](const nlohmann::json &value) { target = value.get<bool>(); }};
  }

  /// Applies file values for flags absent from the command line.
  void apply(const nlohmann::json &config) const
  {
    if (!config.is_object()) {
      throw ConfigError("config", "top level must be a JSON object");
    }
    for (const auto &[key, value] : config.items()) {
      const auto it = entries_.find(key);
      if (it == entries_.end()) {
        throw ConfigError("config", "unknown field '" + key + "'");
      }
      if (it->second.option->count() > 0) {
        continue;
      }
      try {
        it->second.set(value);
      } catch (const nlohmann::json::exception &e) {
        throw ConfigError(key, std::string("bad value in config file: ") + e.what());
      }
    }
  }

private:
  struct Entry
  {
    CLI::Option *option = nullptr;
    std::function<void(const nlohmann::json &)> set;
  };
  std::map<std::string, Entry> entries_;
};

}  // namespace detail

/// Runs the CLI. Returns the process exit code.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  RunConfig cfg;
  std::string config_path;
  detail::Bindings bind;

  CLI::App app{"Equilibrium bids for k-th price auctions with linear-density values"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", config_path, "JSON file whose fields mirror the flags; flags win");
  bind.add(app, "n", cfg.n, "number of bidders");
  bind.add(app, "k", cfg.k, "price index (winner pays the k-th highest bid)");
  bind.add(app, "dist", cfg.dist, "uniform | triangle | linear");
  bind.add(app, "a", cfg.a, "density slope for --dist linear");
  bind.add(app, "omega", cfg.omega, "upper end of the value support");
  bind.add(app, "grid", cfg.grid_size, "grid size");
  bind.add(app, "samples", cfg.samples, "Monte Carlo samples");
  bind.add(app, "seed", cfg.seed, "random seed");
  bind.add(app, "tol", cfg.tolerance, "check tolerance");
  bind.add(app, "format", cfg.format, "csv | json (verify defaults to json, the rest to csv)");
  bind.add(app, "output", cfg.output, "write output to this path instead of stdout");
  bind.add(app, "bid", cfg.bid, "equilibrium | truthful | series | third-price | uniform | triangle");

  CLI::App *bid_table = app.add_subcommand("bid-table", "tabulate the bid function");

  CLI::App *verify = app.add_subcommand("verify", "run verification suites, JSON lines");
  bind.add(*verify, "suite", cfg.suite, "re | best-response | oracle | ladder | all");
  bind.add_flag(*verify, "expect-fail", cfg.expect_fail, "succeed only if every check fails (negative control)");
  bind.add(*verify, "z-points", cfg.z_points, "best-response z grid size");

  CLI::App *identities = app.add_subcommand("identities", "check Catalan and binomial identities");
  bind.add(*identities, "lmax", cfg.lmax, "largest Catalan index");
  bind.add(*identities, "random-trials", cfg.random_trials, "random tuples per identity");
  bind.add(*identities, "nmax", cfg.nmax, "largest n for coefficient sweeps");
  bind.add(*identities, "identity-tol", cfg.identity_tolerance, "relative tolerance for identity sides");
  bind.add(*identities, "integral-tol", cfg.integral_tolerance, "relative tolerance for the Catalan integral");

  CLI::App *simulate = app.add_subcommand("simulate", "Monte Carlo payments or revenue");
  simulate->add_option("mode", cfg.mode, "payment | revenue")->required();
  bind.add(*simulate, "x", cfg.x, "bidder value for payment mode");
  bind.add(*simulate, "estimator", cfg.estimator, "direct | conditional");
  bind.add(*simulate, "workers", cfg.workers, "worker threads (output does not depend on it)");

  CLI::App *bounds = app.add_subcommand("bounds", "exact Omega and bid-slope bounds");
  bind.add(*bounds, "nmax", cfg.nmax, "sweep all 3 <= k <= n <= nmax with n + 4 > 2k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        throw ConfigError("config", "cannot open '" + config_path + "'");
      }
      nlohmann::json parsed;
      try {
        in >> parsed;
      } catch (const nlohmann::json::exception &e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
      }
      bind.apply(parsed);
    }
    cfg.sweep = bounds->count("--nmax") > 0;
    validate(cfg);
    const bool default_format = cfg.format.empty();
    if (default_format) {
      cfg.format = *verify ? "json" : "csv";
    }

    std::ofstream file;
    std::ostream *sink = &out;
    if (!cfg.output.empty()) {
      file.open(cfg.output, std::ios::binary);
      if (!file) {
        throw ConfigError("output", "cannot open '" + cfg.output + "' for writing");
      }
      sink = &file;
    }

    if (*bid_table) {
      cfg.command = "bid-table";
      return cmd_bid_table(cfg, *sink);
    }
    if (*verify) {
      cfg.command = "verify";
      return cmd_verify(cfg, *sink);
    }
    if (*identities) {
      cfg.command = "identities";
      return cmd_identities(cfg, *sink);
    }
    if (*simulate) {
      cfg.command = "simulate";
      return cmd_simulate(cfg, *sink);
    }
    cfg.command = "bounds";
    return cmd_bounds(cfg, *sink);
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const QuadratureError &e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error &e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace kthprice::cli
