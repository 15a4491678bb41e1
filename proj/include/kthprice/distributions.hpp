#pragma once

#include "kthprice/polynomial.hpp"
#include "kthprice/random.hpp"
#include "kthprice/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kthprice {

/// Number of bidders and the price index of a k-th price auction.
struct AuctionConfig
{
  int n = 2;
  int k = 2;

  /// Throws std::invalid_argument naming the violated condition.
  void validate() const
  {
    if (k < 2) {
      throw std::invalid_argument("k >= 2 violated (k = " + std::to_string(k) + ")");
    }
    if (n < k) {
      throw std::invalid_argument("n >= k violated (n = " + std::to_string(n) +
                                  ", k = " + std::to_string(k) + ")");
    }
  }

  static AuctionConfig make(int n, int k)
  {
    AuctionConfig config{n, k};
    config.validate();
    return config;
  }

  friend bool operator==(const AuctionConfig &, const AuctionConfig &) = default;
};

/// Value distribution on [0, omega] with linear density f(x) = a x + b and
/// F(x) = a x^2 / 2 + b x. Parameters are held exactly; double copies are
/// cached for evaluation. Immutable after construction.
class LinearDensityDistribution
{
public:
  /// Validates normalization (|F(omega) - 1| <= 1e-12) and f > 0 on (0, omega].
  static LinearDensityDistribution create(double a, double b, double omega)
  {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
      throw std::invalid_argument("omega > 0 violated");
    }
    const double total = a * omega * omega / 2.0 + b * omega;
    if (std::abs(total - 1.0) > 1e-12) {
      throw std::invalid_argument("distribution not normalized: F(omega) = " + std::to_string(total));
    }
    return LinearDensityDistribution(rational_from_double(a), rational_from_double(b),
                                     rational_from_double(omega));
  }

  /// Exact parameters; requires exact normalization.
  static LinearDensityDistribution create_exact(const BigRational &a, const BigRational &b,
                                                const BigRational &omega)
  {
    if (omega <= 0) {
      throw std::invalid_argument("omega > 0 violated");
    }
    if (a * omega * omega / 2 + b * omega != 1) {
      throw std::invalid_argument("distribution not normalized");
    }
    return LinearDensityDistribution(a, b, omega);
  }

  double a() const noexcept { return a_d_; }
  double b() const noexcept { return b_d_; }
  double omega() const noexcept { return omega_d_; }

  const BigRational &exact_a() const noexcept { return a_; }
  const BigRational &exact_b() const noexcept { return b_; }
  const BigRational &exact_omega() const noexcept { return omega_; }

  bool is_uniform() const { return a_ == 0; }
  bool is_triangle() const { return b_ == 0; }

  double cdf(double x) const { return (a_d_ * x / 2.0 + b_d_) * x; }
  double pdf(double x) const { return a_d_ * x + b_d_; }
  double pdf_slope() const noexcept { return a_d_; }

  /// Root of a x^2/2 + b x = u in [0, omega], written as 2u / (b + sqrt(b^2 + 2au))
  /// so that a = 0 and b = 0 need no separate branches.
  double inverse_cdf(double u) const
  {
    if (u <= 0.0) {
      return 0.0;
    }
    if (u >= 1.0) {
      return omega_d_;
    }
    const double disc = std::max(0.0, b_d_ * b_d_ + 2.0 * a_d_ * u);
    const double x = 2.0 * u / (b_d_ + std::sqrt(disc));
    return std::min(x, omega_d_);
  }

  Polynomial cdf_polynomial() const { return Polynomial{BigRational(0), b_, a_ / 2}; }
  Polynomial pdf_polynomial() const { return Polynomial{b_, a_}; }

  std::string describe() const
  {
    if (is_uniform()) {
      return "uniform";
    }
    if (is_triangle()) {
      return "triangle";
    }
    return "linear";
  }

private:
  LinearDensityDistribution(BigRational a, BigRational b, BigRational omega)
    : a_(std::move(a))
    , b_(std::move(b))
    , omega_(std::move(omega))
  {
    if (b_ < 0 || a_ * omega_ + b_ <= 0) {
      throw std::invalid_argument("density must be positive on (0, omega] (f(0) = " +
                                  kthprice::to_string(b_) +
                                  ", f(omega) = " + kthprice::to_string(a_ * omega_ + b_) + ")");
    }
    a_d_ = to_double(a_);
    b_d_ = to_double(b_);
    omega_d_ = to_double(omega_);
  }

  BigRational a_;
  BigRational b_;
  BigRational omega_;
  double a_d_ = 0.0;
  double b_d_ = 0.0;
  double omega_d_ = 0.0;
};

namespace detail {

inline BigRational checked_omega(double omega)
{
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("omega > 0 violated");
  }
  return rational_from_double(omega);
}

}  // namespace detail

/// a = 0, b = 1/omega.
inline LinearDensityDistribution make_uniform(const BigRational &omega)
{
  if (omega <= 0) {
    throw std::invalid_argument("omega > 0 violated");
  }
  return LinearDensityDistribution::create_exact(0, 1 / omega, omega);
}

inline LinearDensityDistribution make_uniform(double omega)
{
  return make_uniform(detail::checked_omega(omega));
}

/// b = 0, a = 2/omega^2.
inline LinearDensityDistribution make_triangle(const BigRational &omega)
{
  if (omega <= 0) {
    throw std::invalid_argument("omega > 0 violated");
  }
  return LinearDensityDistribution::create_exact(2 / (omega * omega), 0, omega);
}

inline LinearDensityDistribution make_triangle(double omega)
{
  return make_triangle(detail::checked_omega(omega));
}

/// Slope a with b = (1 - a omega^2/2)/omega fixed by normalization.
inline LinearDensityDistribution make_linear(const BigRational &a, const BigRational &omega)
{
  if (omega <= 0) {
    throw std::invalid_argument("omega > 0 violated");
  }
  return LinearDensityDistribution::create_exact(a, (1 - a * omega * omega / 2) / omega, omega);
}

/// A slope of 2/omega^2 computed in double can land a few ulps past the
/// triangle and leave b slightly negative; that case is read as the triangle.
inline LinearDensityDistribution make_linear(double a, double omega)
{
  const BigRational w = detail::checked_omega(omega);
  const BigRational exact_a = rational_from_double(a);
  const BigRational b = (1 - exact_a * w * w / 2) / w;
  if (b < 0 && to_double(b * w) > -1e-12) {
    return make_triangle(w);
  }
  return make_linear(exact_a, w);
}

// ---------------------------------------------------------------------------
// Order statistics
// ---------------------------------------------------------------------------

struct OrderStatValue
{
  double cdf;      // G(y)
  double density;  // g(y)
};

/// Distribution of the maximum of n-1 opponents: G = F^(n-1), g = (n-1) F^(n-2) f.
inline OrderStatValue highest_order_stat(const LinearDensityDistribution &dist, int n, double y)
{
  if (n < 2) {
    throw std::invalid_argument("highest_order_stat: n >= 2 violated");
  }
  if (y < 0.0 || y > dist.omega()) {
    throw std::invalid_argument("highest_order_stat: y outside [0, omega]");
  }
  const double F = dist.cdf(y);
  return {std::pow(F, n - 1), (n - 1) * std::pow(F, n - 2) * dist.pdf(y)};
}

/// Density at y of the r-th highest of m iid draws, conditional on the
/// highest being below x.
inline double conditional_order_stat_density(const LinearDensityDistribution &dist, int m, int r,
                                             double x, double y)
{
  if (r < 1 || r > m) {
    throw std::invalid_argument("conditional_order_stat_density: 1 <= r <= m violated");
  }
  if (!(x > 0.0) || x > dist.omega()) {
    throw std::invalid_argument("conditional_order_stat_density: 0 < x <= omega violated");
  }
  if (y < 0.0 || y > x) {
    throw std::invalid_argument("conditional_order_stat_density: 0 <= y <= x violated");
  }
  const double Fx = dist.cdf(x);
  const double Fy = dist.cdf(y);
  const double G = std::pow(Fx, m);
  const double choose = to_double(BigRational(binomial(m - 1, r - 1)));
  return m / G * choose * std::pow(Fx - Fy, r - 1) * std::pow(Fy, m - r) * dist.pdf(y);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

inline double sample_value(const LinearDensityDistribution &dist, Engine &gen)
{
  return dist.inverse_cdf(uniform01(gen));
}

/// count iid draws by inverse CDF; deterministic in seed.
inline std::vector<double> sample_values(const LinearDensityDistribution &dist, std::size_t count,
                                         std::uint64_t seed)
{
  if (count < 1) {
    throw std::invalid_argument("sample_values: count >= 1 violated");
  }
  Engine gen = make_stream(seed);
  std::vector<double> out(count);
  for (auto &v : out) {
    v = sample_value(dist, gen);
  }
  return out;
}

}  // namespace kthprice
