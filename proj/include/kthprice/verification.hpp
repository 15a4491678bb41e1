#pragma once

#include "kthprice/distributions.hpp"
#include "kthprice/equilibrium.hpp"
#include "kthprice/quadrature.hpp"
#include "kthprice/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace kthprice {

struct VerificationReport
{
  std::string check;
  std::string bid;
  AuctionConfig config;
  double a = 0.0;
  double b = 0.0;
  double omega = 1.0;
  std::vector<double> grid;
  std::vector<double> errors;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<std::uint64_t> seed;
  /// Free-form settings (quadrature nodes, sample counts, ...).
  std::vector<std::pair<std::string, std::string>> settings;

  /// Sets max_error and pass from errors and tolerance.
  void finalize()
  {
    max_error = 0.0;
    for (double e : errors) {
      max_error = std::max(max_error, e);
    }
    pass = max_error <= tolerance;
  }
};

struct MonteCarloResult
{
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Sample-stream layout: shards of fixed size each get the generator
/// make_stream(seed, shard_index) and are merged in shard order, so the
/// result does not depend on the number of workers.
struct MonteCarloOptions
{
  std::uint64_t shard_size = 1U << 16;
  unsigned workers = 1;
};

/// Uniform grid of `count` points omega*i/count, i = 1..count, on (0, omega].
inline std::vector<double> open_grid(double omega, int count)
{
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) {
    grid.push_back(omega * i / count);
  }
  return grid;
}

/// `count` points lo + (hi-lo)*i/(count-1), i = 0..count-1.
inline std::vector<double> closed_grid(double lo, double hi, int count)
{
  if (count < 2) {
    throw std::invalid_argument("closed_grid: count >= 2 violated");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid.push_back(lo + (hi - lo) * i / (count - 1));
  }
  return grid;
}

// ---------------------------------------------------------------------------
// Expected payments
// ---------------------------------------------------------------------------

/// Second-price expected payment int_0^x y g(y) dy, from the exact
/// antiderivative (n-1) psi_0.
inline double expected_payment_benchmark(const LinearDensityDistribution &dist, int n, double x)
{
  if (n < 2) {
    throw std::invalid_argument("expected_payment_benchmark: n >= 2 violated");
  }
  if (x < 0.0 || x > dist.omega()) {
    throw std::invalid_argument("expected_payment_benchmark: x outside [0, omega]");
  }
  const Polynomial antiderivative = BigRational(n - 1) * psi_zero(dist, n);
  return to_double(antiderivative(rational_from_double(x)));
}

inline QuadratureConfig default_payment_quadrature()
{
  QuadratureConfig q;
  q.tolerance = 1e-14;
  q.initial_nodes = 8;
  q.max_nodes = 1024;
  return q;
}

/// (n-1) binom(n-2,k-2) int_0^x beta(y) [F(x)-F(y)]^(k-2) F(y)^(n-k) f(y) dy
/// for the supplied bid, equilibrium or not.
inline double expected_payment_quadrature(const BidFunction &bid, const LinearDensityDistribution &dist,
                                          int n, int k, double x,
                                          const QuadratureConfig &quad = default_payment_quadrature())
{
  AuctionConfig::make(n, k);
  if (x < 0.0 || x > dist.omega()) {
    throw std::invalid_argument("expected_payment_quadrature: x outside [0, omega]");
  }
  if (x == 0.0) {
    return 0.0;
  }
  const double Fx = dist.cdf(x);
  const auto integrand = [&](double y) {
    const double Fy = dist.cdf(y);
    return bid(y) * std::pow(Fx - Fy, k - 2) * std::pow(Fy, n - k) * dist.pdf(y);
  };
  const double scale = (n - 1) * to_double(BigRational(binomial(n - 2, k - 2)));
  return scale * integrate(integrand, 0.0, x, quad).value;
}

/// Compares quadrature payments against the benchmark on open_grid(omega, grid_size).
inline VerificationReport revenue_equivalence_check(const BidFunction &bid, const LinearDensityDistribution &dist,
                                                    int n, int k, int grid_size, double tol)
{
  if (grid_size < 3) {
    throw std::invalid_argument("revenue_equivalence_check: grid_size >= 3 violated");
  }
  VerificationReport report;
  report.check = "revenue-equivalence";
  report.bid = bid.name();
  report.config = AuctionConfig::make(n, k);
  report.a = dist.a();
  report.b = dist.b();
  report.omega = dist.omega();
  report.tolerance = tol;
  const QuadratureConfig quad = default_payment_quadrature();
  report.settings.emplace_back("quadrature", "gauss-legendre doubling");
  char tol_text[32];
  std::snprintf(tol_text, sizeof tol_text, "%g", quad.tolerance);
  report.settings.emplace_back("quadrature_tolerance", tol_text);
  report.grid = open_grid(dist.omega(), grid_size);
  for (double x : report.grid) {
    const double lhs = expected_payment_quadrature(bid, dist, n, k, x, quad);
    const double rhs = expected_payment_benchmark(dist, n, x);
    report.errors.push_back(std::abs(lhs - rhs));
  }
  report.finalize();
  return report;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

namespace detail {

/// Welford accumulator; merge() is Chan's parallel update.
struct RunningStats
{
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double v)
  {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }

  void merge(const RunningStats &other)
  {
    if (other.count == 0) {
      return;
    }
    if (count == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) / total;
    count += other.count;
  }

  double standard_error() const
  {
    if (count < 2) {
      return 0.0;
    }
    const double variance = m2 / static_cast<double>(count - 1);
    return std::sqrt(variance / static_cast<double>(count));
  }
};

/// Runs shard(stream_gen, n_samples) -> RunningStats over all shards and
/// merges in shard order.
template <typename ShardFn>
RunningStats run_sharded(std::uint64_t samples, std::uint64_t seed, const MonteCarloOptions &options,
                         ShardFn &&shard)
{
  if (samples < 1) {
    throw std::invalid_argument("Monte Carlo: samples >= 1 violated");
  }
  const std::uint64_t shard_size = std::max<std::uint64_t>(1, options.shard_size);
  const std::uint64_t shards = (samples + shard_size - 1) / shard_size;
  std::vector<RunningStats> results(shards);

  std::atomic<std::uint64_t> next{0};
  const auto work = [&] {
    for (std::uint64_t s = next++; s < shards; s = next++) {
      const std::uint64_t count = std::min(shard_size, samples - s * shard_size);
      Engine gen = make_stream(seed, s);
      results[s] = shard(gen, count);
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(options.workers, static_cast<unsigned>(shards)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
  }

  RunningStats total;
  for (const auto &r : results) {
    total.merge(r);
  }
  return total;
}

}  // namespace detail

enum class PaymentEstimator
{
  /// Draw n-1 opponents from F; pay beta(Y_{k-1}) when they all fall below x.
  Direct,
  /// Draw opponents from F conditioned on [0, x) and scale by G(x). Same
  /// expectation; usable when the win probability is too small for Direct.
  Conditional,
};

/// Expected payment of a bidder with value x facing n-1 opponents who bid
/// with `bid`, by simulation.
inline MonteCarloResult monte_carlo_expected_payment(const BidFunction &bid, const LinearDensityDistribution &dist,
                                                     int n, int k, double x, std::uint64_t samples,
                                                     std::uint64_t seed, const MonteCarloOptions &options = {},
                                                     PaymentEstimator estimator = PaymentEstimator::Direct)
{
  AuctionConfig::make(n, k);
  if (!(x > 0.0) || x > dist.omega()) {
    throw std::invalid_argument("monte_carlo_expected_payment: 0 < x <= omega violated");
  }
  const auto opponents = static_cast<std::size_t>(n - 1);
  const auto rank = static_cast<std::ptrdiff_t>(k - 2);  // index of Y_{k-1} in descending order
  const double Fx = dist.cdf(x);
  const double win_probability = std::pow(Fx, n - 1);

  const auto shard = [&](Engine &gen, std::uint64_t count) {
    detail::RunningStats stats;
    std::vector<double> values(opponents);
    for (std::uint64_t i = 0; i < count; ++i) {
      if (estimator == PaymentEstimator::Direct) {
        for (auto &v : values) {
          v = sample_value(dist, gen);
        }
        if (*std::max_element(values.begin(), values.end()) >= x) {
          stats.push(0.0);
          continue;
        }
      } else {
        for (auto &v : values) {
          v = std::min(dist.inverse_cdf(uniform01(gen) * Fx), x);
        }
      }
      std::nth_element(values.begin(), values.begin() + rank, values.end(), std::greater<>());
      stats.push(bid(values[static_cast<std::size_t>(rank)]));
    }
    return stats;
  };

  const detail::RunningStats total = detail::run_sharded(samples, seed, options, shard);
  MonteCarloResult result{total.mean, total.standard_error(), samples, seed};
  if (estimator == PaymentEstimator::Conditional) {
    result.estimate *= win_probability;
    result.standard_error *= win_probability;
  }
  return result;
}

/// Seller revenue: n values, common bid function, price = k-th highest bid.
inline MonteCarloResult expected_revenue(const BidFunction &bid, const LinearDensityDistribution &dist, int n, int k,
                                         std::uint64_t samples, std::uint64_t seed,
                                         const MonteCarloOptions &options = {})
{
  AuctionConfig::make(n, k);
  const auto rank = static_cast<std::ptrdiff_t>(k - 1);
  const auto shard = [&](Engine &gen, std::uint64_t count) {
    detail::RunningStats stats;
    std::vector<double> bids(static_cast<std::size_t>(n));
    for (std::uint64_t i = 0; i < count; ++i) {
      for (auto &b : bids) {
        b = bid(sample_value(dist, gen));
      }
      // The winner (highest bid, lowest index on ties) does not affect the price.
      std::nth_element(bids.begin(), bids.begin() + rank, bids.end(), std::greater<>());
      stats.push(bids[static_cast<std::size_t>(rank)]);
    }
    return stats;
  };
  const detail::RunningStats total = detail::run_sharded(samples, seed, options, shard);
  return {total.mean, total.standard_error(), samples, seed};
}

// ---------------------------------------------------------------------------
// Best response
// ---------------------------------------------------------------------------

struct BestResponseProfile
{
  double value = 0.0;  // x
  double argmax = 0.0;  // z*
  std::vector<double> z;
  std::vector<double> payoff;
};

/// pi(z, x) = G(z) x - m(z) over z_grid; argmax is the first grid maximum.
inline BestResponseProfile best_response_profile(const BidFunction &bid, const LinearDensityDistribution &dist,
                                                 int n, int k, double x, const std::vector<double> &z_grid)
{
  AuctionConfig::make(n, k);
  if (!(x > 0.0) || x > dist.omega()) {
    throw std::invalid_argument("best_response_profile: 0 < x <= omega violated");
  }
  if (z_grid.empty()) {
    throw std::invalid_argument("best_response_profile: empty z grid");
  }
  BestResponseProfile profile;
  profile.value = x;
  profile.z = z_grid;
  profile.payoff.reserve(z_grid.size());
  double best = -std::numeric_limits<double>::infinity();
  for (double z : z_grid) {
    if (z < 0.0 || z > dist.omega()) {
      throw std::invalid_argument("best_response_profile: z grid outside [0, omega]");
    }
    const double payoff = highest_order_stat(dist, n, z).cdf * x - expected_payment_quadrature(bid, dist, n, k, z);
    profile.payoff.push_back(payoff);
    if (payoff > best) {
      best = payoff;
      profile.argmax = z;
    }
  }
  return profile;
}

/// |z* - x| for x in fractions*omega against one spacing of a z_points grid.
inline VerificationReport best_response_check(const BidFunction &bid, const LinearDensityDistribution &dist, int n,
                                              int k, const std::vector<double> &fractions, int z_points)
{
  VerificationReport report;
  report.check = "best-response";
  report.bid = bid.name();
  report.config = AuctionConfig::make(n, k);
  report.a = dist.a();
  report.b = dist.b();
  report.omega = dist.omega();
  const std::vector<double> z_grid = closed_grid(0.0, dist.omega(), z_points);
  const double spacing = dist.omega() / (z_points - 1);
  // Grid values carry rounding, allow it on top of one spacing.
  report.tolerance = spacing * (1.0 + 1e-9);
  report.settings.emplace_back("z_points", std::to_string(z_points));
  for (double fraction : fractions) {
    const double x = fraction * dist.omega();
    const BestResponseProfile profile = best_response_profile(bid, dist, n, k, x, z_grid);
    report.grid.push_back(x);
    report.errors.push_back(std::abs(profile.argmax - x));
  }
  report.finalize();
  return report;
}

// ---------------------------------------------------------------------------
// Symbolic checks as reports
// ---------------------------------------------------------------------------

/// Oracle check: the symbolic psi ladder matches the Catalan closed form, and
/// the bid recovered from it agrees numerically with the equilibrium bid on a grid.
inline VerificationReport psi_oracle_check(const LinearDensityDistribution &dist, int n, int k, int grid_size,
                                           double tol)
{
  VerificationReport report;
  report.check = "psi-oracle";
  report.config = AuctionConfig::make(n, k);
  const BidFunction bid = BidFunction::equilibrium(report.config, dist);
  report.bid = bid.name();
  report.a = dist.a();
  report.b = dist.b();
  report.omega = dist.omega();
  report.tolerance = tol;
  const bool symbolic = psi_oracle_matches_closed_form(dist, n, k);
  report.settings.emplace_back("symbolic_identity", symbolic ? "true" : "false");
  const RationalFunction oracle_bid = bid_from_psi_oracle(dist, n, k);
  report.grid = open_grid(dist.omega(), grid_size);
  for (double x : report.grid) {
    report.errors.push_back(std::abs(to_double(oracle_bid(rational_from_double(x))) - bid(x)));
  }
  report.finalize();
  report.pass = report.pass && symbolic;
  return report;
}

/// Ladder check for uniform or triangle values. errors[i] is the exact
/// residual of binom(n-2,k-2) Phi_2 = psi_0 at grid[i].
inline VerificationReport phi_ladder_verification(const LinearDensityDistribution &dist, int n, int k, int grid_size)
{
  VerificationReport report;
  report.check = "phi-ladder";
  report.config = AuctionConfig::make(n, k);
  report.bid = BidFunction::equilibrium(report.config, dist).name();
  report.a = dist.a();
  report.b = dist.b();
  report.omega = dist.omega();
  report.tolerance = 0.0;
  const Polynomial bid = linear_equilibrium_bid(dist, n, k);
  const PhiLadderReport ladder = phi_ladder_report(dist, n, k, bid);
  report.settings.emplace_back("ladder_identities", ladder.ladder_identities ? "true" : "false");
  report.settings.emplace_back("reduction", ladder.reduction ? "true" : "false");
  report.settings.emplace_back("equilibrium_condition", ladder.equilibrium_condition ? "true" : "false");
  // Residual binom(n-2,k-2) Phi_2 - psi_0 at grid points, exact.
  report.grid = open_grid(dist.omega(), grid_size);
  const Polynomial F = dist.cdf_polynomial();
  const Polynomial f = dist.pdf_polynomial();
  Polynomial phi2;
  for (int ell = 0; ell <= k - 2; ++ell) {
    Polynomial gamma = (bid * F.pow(static_cast<unsigned>(n - k + ell)) * f).antiderivative();
    Polynomial term = BigRational(binomial(k - 2, ell)) * F.pow(static_cast<unsigned>(k - 2 - ell)) * gamma;
    phi2 = ell % 2 == 0 ? phi2 + term : phi2 - term;
  }
  const Polynomial residual = BigRational(binomial(n - 2, k - 2)) * phi2 - psi_zero(dist, n);
  for (double x : report.grid) {
    report.errors.push_back(std::abs(to_double(residual(rational_from_double(x)))));
  }
  report.finalize();
  report.pass = report.pass && static_cast<bool>(ladder) && ladder.equilibrium_condition;
  return report;
}

}  // namespace kthprice
