#pragma once

#include "kthprice/combinatorics.hpp"
#include "kthprice/distributions.hpp"
#include "kthprice/polynomial.hpp"
#include "kthprice/rational.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kthprice {

namespace detail {

inline void require_value_in_support(const LinearDensityDistribution &dist, double x, const char *who)
{
  if (!(x >= 0.0) || x > dist.omega()) {
    throw std::invalid_argument(std::string(who) + ": x outside [0, omega] (x = " + std::to_string(x) + ")");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed forms and exact slopes
// ---------------------------------------------------------------------------

inline double bid_second_price(double x)
{
  return x;
}

/// x + F(x) / ((n-2) f(x)). At x = 0 returns 0 when f(0) > 0 and throws
/// std::domain_error when f(0) = 0 (0/0 form).
inline double bid_third_price(const LinearDensityDistribution &dist, int n, double x)
{
  if (n < 3) {
    throw std::invalid_argument("bid_third_price: n >= 3 violated");
  }
  detail::require_value_in_support(dist, x, "bid_third_price");
  const double f = dist.pdf(x);
  if (f <= 0.0) {
    throw std::domain_error("bid_third_price: f(x) = 0, F/f is 0/0 at x = " + std::to_string(x));
  }
  return x + dist.cdf(x) / ((n - 2) * f);
}

/// Exact coefficients (-1)^l theta^k_l / binom(n-2, k-2) of the Catalan series.
inline std::vector<BigRational> series_coefficients(int n, int k)
{
  const ThetaTable theta = theta_table(n, k);
  const BigRational scale(binomial(n - 2, k - 2));
  std::vector<BigRational> out;
  out.reserve(theta.entries.size());
  for (std::size_t ell = 0; ell < theta.entries.size(); ++ell) {
    BigRational c = theta.entries[ell] / scale;
    out.push_back(ell % 2 == 0 ? c : BigRational(-c));
  }
  return out;
}

namespace detail {

inline double evaluate_series(const std::vector<double> &coeffs, const LinearDensityDistribution &dist,
                              double x)
{
  if (x == 0.0) {
    return 0.0;  // continuous extension; every term is O(x)
  }
  const double F = dist.cdf(x);
  const double f = dist.pdf(x);
  if (f <= 0.0) {
    throw std::domain_error("bid_kth_series: f(x) = 0 at interior x = " + std::to_string(x));
  }
  // term_l = a^l F^(l+1) / f^(2l+1)
  const double ratio = dist.pdf_slope() * F / (f * f);
  double term = F / f;
  double sum = 0.0;
  for (double c : coeffs) {
    sum += c * term;
    term *= ratio;
  }
  return x + sum;
}

inline std::vector<double> to_doubles(const std::vector<BigRational> &v)
{
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto &q : v) {
    out.push_back(to_double(q));
  }
  return out;
}

}  // namespace detail

/// x + (1/binom(n-2,k-2)) sum_l (-1)^l theta^k_l a^l F^(l+1) / f^(2l+1).
inline double bid_kth_series(const LinearDensityDistribution &dist, int n, int k, double x)
{
  detail::require_value_in_support(dist, x, "bid_kth_series");
  return detail::evaluate_series(detail::to_doubles(series_coefficients(n, k)), dist, x);
}

/// 1 + (k-2)/(n-k+1)
inline BigRational uniform_slope(int n, int k)
{
  AuctionConfig::make(n, k);
  return 1 + make_rational(k - 2, n - k + 1);
}

/// 1 + Omega_k / binom(n-2, k-2)
inline BigRational triangle_slope(int n, int k)
{
  return 1 + omega(n, k) / BigRational(binomial(n - 2, k - 2));
}

inline double bid_kth_uniform(int n, int k, double x)
{
  if (x < 0.0) {
    throw std::invalid_argument("bid_kth_uniform: x >= 0 violated");
  }
  return to_double(uniform_slope(n, k)) * x;
}

inline double bid_kth_triangle(int n, int k, double omega_, double x)
{
  if (x < 0.0 || x > omega_) {
    throw std::invalid_argument("bid_kth_triangle: x outside [0, omega]");
  }
  return to_double(triangle_slope(n, k)) * x;
}

// ---------------------------------------------------------------------------
// Bid function object
// ---------------------------------------------------------------------------

enum class BidKind
{
  SecondPrice,
  ThirdPriceGeneral,
  UniformClosedForm,
  TriangleClosedForm,
  LinearDensitySeries,
};

inline std::string to_string(BidKind kind)
{
  switch (kind) {
  case BidKind::SecondPrice:
    return "second-price";
  case BidKind::ThirdPriceGeneral:
    return "third-price";
  case BidKind::UniformClosedForm:
    return "uniform-closed-form";
  case BidKind::TriangleClosedForm:
    return "triangle-closed-form";
  case BidKind::LinearDensitySeries:
    return "linear-density-series";
  }
  return "unknown";
}

/// A symmetric bid strategy for a k-th price auction. Linear kinds carry
/// their exact slope.
class BidFunction
{
public:
  /// Truthful bidding. It is the equilibrium only for k = 2; with k >= 3 it
  /// serves as a negative control.
  static BidFunction second_price(AuctionConfig config, const LinearDensityDistribution &dist)
  {
    config.validate();
    return BidFunction(BidKind::SecondPrice, config, dist, BigRational(1), {});
  }

  static BidFunction third_price(int n, const LinearDensityDistribution &dist)
  {
    const auto config = AuctionConfig::make(n, 3);
    return BidFunction(BidKind::ThirdPriceGeneral, config, dist, std::nullopt, {});
  }

  static BidFunction uniform_closed_form(AuctionConfig config, const LinearDensityDistribution &dist)
  {
    config.validate();
    if (!dist.is_uniform()) {
      throw std::invalid_argument("uniform closed form needs a uniform distribution (a = 0)");
    }
    return BidFunction(BidKind::UniformClosedForm, config, dist, uniform_slope(config.n, config.k), {});
  }

  static BidFunction triangle_closed_form(AuctionConfig config, const LinearDensityDistribution &dist)
  {
    config.validate();
    if (!dist.is_triangle()) {
      throw std::invalid_argument("triangle closed form needs b = 0");
    }
    if (config.k < 3) {
      throw std::invalid_argument("triangle closed form: k >= 3 violated");
    }
    return BidFunction(BidKind::TriangleClosedForm, config, dist, triangle_slope(config.n, config.k), {});
  }

  static BidFunction linear_series(AuctionConfig config, const LinearDensityDistribution &dist)
  {
    config.validate();
    if (config.k < 3) {
      throw std::invalid_argument("Catalan series: k >= 3 violated");
    }
    return BidFunction(BidKind::LinearDensitySeries, config, dist, std::nullopt,
                       detail::to_doubles(series_coefficients(config.n, config.k)));
  }

  /// The symmetric increasing equilibrium: truthful for k = 2, the closed
  /// forms for uniform and triangle, the Catalan series otherwise.
  static BidFunction equilibrium(AuctionConfig config, const LinearDensityDistribution &dist)
  {
    config.validate();
    if (config.k == 2) {
      return second_price(config, dist);
    }
    if (dist.is_uniform()) {
      return uniform_closed_form(config, dist);
    }
    if (dist.is_triangle()) {
      return triangle_closed_form(config, dist);
    }
    return linear_series(config, dist);
  }

  double operator()(double x) const
  {
    detail::require_value_in_support(dist_, x, "BidFunction");
    switch (kind_) {
    case BidKind::SecondPrice:
      return x;
    case BidKind::ThirdPriceGeneral:
      return x == 0.0 ? 0.0 : bid_third_price(dist_, config_.n, x);
    case BidKind::UniformClosedForm:
    case BidKind::TriangleClosedForm:
      return slope_d_ * x;
    case BidKind::LinearDensitySeries:
      return detail::evaluate_series(series_, dist_, x);
    }
    return x;
  }

  BidKind kind() const noexcept { return kind_; }
  const AuctionConfig &config() const noexcept { return config_; }
  const LinearDensityDistribution &distribution() const noexcept { return dist_; }

  /// Exact slope for linear kinds.
  const std::optional<BigRational> &exact_slope() const noexcept { return slope_; }

  std::string name() const { return kthprice::to_string(kind_); }

private:
  BidFunction(BidKind kind, AuctionConfig config, LinearDensityDistribution dist,
              std::optional<BigRational> slope, std::vector<double> series)
    : kind_(kind)
    , config_(config)
    , dist_(std::move(dist))
    , slope_(std::move(slope))
    , slope_d_(slope_ ? to_double(*slope_) : 0.0)
    , series_(std::move(series))
  {}

  BidKind kind_;
  AuctionConfig config_;
  LinearDensityDistribution dist_;
  std::optional<BigRational> slope_;
  double slope_d_;
  std::vector<double> series_;
};

// ---------------------------------------------------------------------------
// Symbolic ladders
// ---------------------------------------------------------------------------

/// psi_0(x) = int_0^x y F(y)^(n-2) f(y) dy as an exact polynomial.
inline Polynomial psi_zero(const LinearDensityDistribution &dist, int n)
{
  const Polynomial integrand =
      Polynomial{0, 1} * dist.cdf_polynomial().pow(static_cast<unsigned>(n - 2)) * dist.pdf_polynomial();
  return integrand.antiderivative();
}

/// psi_0 .. psi_steps with psi_{t+1} = psi_t' / f.
inline std::vector<RationalFunction> psi_ladder(const LinearDensityDistribution &dist, int n, int steps)
{
  if (n < 2 || steps < 0) {
    throw std::invalid_argument("psi_ladder: n >= 2 and steps >= 0 required");
  }
  const RationalFunction f(dist.pdf_polynomial());
  std::vector<RationalFunction> rungs;
  rungs.reserve(static_cast<std::size_t>(steps) + 1);
  rungs.emplace_back(psi_zero(dist, n));
  for (int t = 0; t < steps; ++t) {
    rungs.push_back(rungs.back().derivative() / f);
  }
  return rungs;
}

/// psi_{k-1} by iterating the ladder symbolically.
inline RationalFunction psi_ladder_oracle(const LinearDensityDistribution &dist, int n, int k)
{
  detail::require_price_index(n, k, "psi_ladder_oracle");
  return psi_ladder(dist, n, k - 1).back();
}

/// (k-2)! [ binom(n-2,k-2) x F^(n-k) + sum_l (-1)^l theta^k_l a^l F^(n-k+l+1) / f^(2l+1) ].
inline RationalFunction psi_closed_form(const LinearDensityDistribution &dist, int n, int k)
{
  const ThetaTable theta = theta_table(n, k);
  const Polynomial F = dist.cdf_polynomial();
  const Polynomial f = dist.pdf_polynomial();
  const BigRational &a = dist.exact_a();

  RationalFunction sum(BigRational(binomial(n - 2, k - 2)) * Polynomial{0, 1} *
                       F.pow(static_cast<unsigned>(n - k)));
  for (int ell = 0; ell <= k - 3; ++ell) {
    BigRational c = theta.entries[static_cast<std::size_t>(ell)] * pow(a, static_cast<unsigned>(ell));
    if (ell % 2 == 1) {
      c = -c;
    }
    if (c == 0) {
      continue;
    }
    sum = sum + RationalFunction(c * F.pow(static_cast<unsigned>(n - k + ell + 1)),
                                 f.pow(static_cast<unsigned>(2 * ell + 1)));
  }
  return BigRational(factorial(k - 2)) * sum;
}

/// True iff the symbolic ladder and the Catalan closed form agree as
/// rational functions (cross-multiplied, coefficient by coefficient).
inline bool psi_oracle_matches_closed_form(const LinearDensityDistribution &dist, int n, int k)
{
  return cross_equal(psi_ladder_oracle(dist, n, k), psi_closed_form(dist, n, k));
}

/// beta_k = psi_{k-1} / (binom(n-2,k-2) (k-2)! F^(n-k)) from the oracle.
inline RationalFunction bid_from_psi_oracle(const LinearDensityDistribution &dist, int n, int k)
{
  const RationalFunction psi = psi_ladder_oracle(dist, n, k);
  const Polynomial scale = BigRational(binomial(n - 2, k - 2) * factorial(k - 2)) *
                           dist.cdf_polynomial().pow(static_cast<unsigned>(n - k));
  return psi / RationalFunction(scale);
}

struct PhiLadderReport
{
  /// Phi_t' / f = (k - t) Phi_{t+1} for t = 2..k-1.
  bool ladder_identities = false;
  /// k-1 ladder steps from phi_0 = Phi_2 give (k-2)! beta F^(n-k).
  bool reduction = false;
  /// binom(n-2,k-2) Phi_2 = psi_0, i.e. beta meets the payment condition.
  bool equilibrium_condition = false;
  /// First t where the ladder identity fails, if any.
  std::optional<int> failing_rung;

  explicit operator bool() const noexcept { return ladder_identities && reduction; }
};

/// Runs the Phi ladder for a polynomial bid. The ladder identities and the
/// (k-2)! beta F^(n-k) reduction hold for any bid; the equilibrium flag does not.
inline PhiLadderReport phi_ladder_report(const LinearDensityDistribution &dist, int n, int k,
                                         const Polynomial &bid)
{
  detail::require_price_index(n, k, "phi_ladder_check");
  const Polynomial F = dist.cdf_polynomial();
  const Polynomial f = dist.pdf_polynomial();

  // gamma_l = int_0^x beta F^(n-k+l) f, l = 0..k-2
  std::vector<Polynomial> gamma;
  for (int ell = 0; ell <= k - 2; ++ell) {
    gamma.push_back((bid * F.pow(static_cast<unsigned>(n - k + ell)) * f).antiderivative());
  }
  // Phi_t for t = 2..k, stored at index t
  std::vector<Polynomial> phi(static_cast<std::size_t>(k) + 1);
  for (int t = 2; t <= k; ++t) {
    Polynomial sum;
    for (int ell = 0; ell <= k - t; ++ell) {
      Polynomial term = BigRational(binomial(k - t, ell)) * F.pow(static_cast<unsigned>(k - t - ell)) *
                        gamma[static_cast<std::size_t>(ell)];
      if (ell % 2 == 1) {
        sum -= term;
      } else {
        sum += term;
      }
    }
    phi[static_cast<std::size_t>(t)] = sum;
  }

  PhiLadderReport report;
  report.ladder_identities = true;
  for (int t = 2; t <= k - 1; ++t) {
    const Polynomial lhs = phi[static_cast<std::size_t>(t)].derivative();
    const Polynomial rhs = BigRational(k - t) * f * phi[static_cast<std::size_t>(t) + 1];
    if (lhs != rhs) {
      report.ladder_identities = false;
      report.failing_rung = t;
      break;
    }
  }

  const RationalFunction f_rf(f);
  RationalFunction rung(phi[2]);
  for (int t = 0; t < k - 1; ++t) {
    rung = rung.derivative() / f_rf;
  }
  const RationalFunction expected(BigRational(factorial(k - 2)) * bid * F.pow(static_cast<unsigned>(n - k)));
  report.reduction = cross_equal(rung, expected);

  report.equilibrium_condition = BigRational(binomial(n - 2, k - 2)) * phi[2] == psi_zero(dist, n);
  return report;
}

/// Exact linear equilibrium bid slope * x for uniform or triangle values.
inline Polynomial linear_equilibrium_bid(const LinearDensityDistribution &dist, int n, int k)
{
  if (dist.is_uniform()) {
    return Polynomial{0, uniform_slope(n, k)};
  }
  if (dist.is_triangle()) {
    return Polynomial{0, triangle_slope(n, k)};
  }
  throw std::invalid_argument("linear equilibrium bid needs a uniform or triangle distribution");
}

/// Ladder identities and the reduction for the equilibrium bid; uniform or triangle only.
inline bool phi_ladder_check(const LinearDensityDistribution &dist, int n, int k)
{
  detail::require_price_index(n, k, "phi_ladder_check");
  return static_cast<bool>(phi_ladder_report(dist, n, k, linear_equilibrium_bid(dist, n, k)));
}

// ---------------------------------------------------------------------------
// Monotonicity and bounds
// ---------------------------------------------------------------------------

struct MonotonicityCertificate
{
  bool increasing = false;
  /// Set when decided by an exact slope.
  std::optional<BigRational> slope;
  /// Grid point at which strict increase failed.
  std::optional<double> witness;

  explicit operator bool() const noexcept { return increasing; }
};

inline MonotonicityCertificate monotonicity_certificate(const BidFunction &bid, int grid_size)
{
  if (grid_size < 2) {
    throw std::invalid_argument("monotonicity_certificate: grid_size >= 2 violated");
  }
  MonotonicityCertificate cert;
  if (bid.exact_slope()) {
    cert.slope = bid.exact_slope();
    cert.increasing = *cert.slope > 0;
    return cert;
  }
  const double omega_ = bid.distribution().omega();
  double previous = bid(omega_ / grid_size);
  for (int i = 2; i <= grid_size; ++i) {
    const double x = omega_ * i / grid_size;
    const double current = bid(x);
    if (!(current > previous)) {
      cert.witness = x;
      return cert;
    }
    previous = current;
  }
  cert.increasing = true;
  return cert;
}

/// Slope bounds (k-2)/(2(n-2)) <= Omega_k / binom(n-2,k-2) <= 7(k-2)/(8(n-2)),
/// exact. Only claimed for n + 4 > 2k.
inline bool bid_bounds_check(int n, int k)
{
  detail::require_price_index(n, k, "bid_bounds_check");
  if (n + 4 <= 2 * k) {
    throw std::invalid_argument("bid_bounds_check: n + 4 > 2k violated (n = " + std::to_string(n) +
                                ", k = " + std::to_string(k) + ")");
  }
  const BigRational excess = omega(n, k) / BigRational(binomial(n - 2, k - 2));
  const BigRational lower = make_rational(k - 2, 2LL * (n - 2));
  const BigRational upper = make_rational(7LL * (k - 2), 8LL * (n - 2));
  return lower <= excess && excess <= upper;
}

/// x (1 + (k-2)/(2(n-2))) and x (1 + 7(k-2)/(8(n-2))) as exact slopes.
inline std::pair<BigRational, BigRational> bid_bound_slopes(int n, int k)
{
  detail::require_price_index(n, k, "bid_bound_slopes");
  return {1 + make_rational(k - 2, 2LL * (n - 2)), 1 + make_rational(7LL * (k - 2), 8LL * (n - 2))};
}

}  // namespace kthprice
