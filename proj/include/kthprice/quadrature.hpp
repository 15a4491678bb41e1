#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace kthprice {

struct QuadratureConfig
{
  /// Relative tolerance on the difference between successive rules.
  double tolerance = 1e-12;
  std::size_t initial_nodes = 8;
  std::size_t max_nodes = 1024;
};

struct QuadratureResult
{
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t nodes = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error
{
public:
  QuadratureError(const std::string &what, QuadratureResult partial)
    : std::runtime_error(what)
    , partial_(partial)
  {}

  const QuadratureResult &partial() const noexcept
  {
    return partial_;
  }

private:
  QuadratureResult partial_;
};

struct GaussLegendreRule
{
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule compute_gauss_legendre(std::size_t n)
{
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t j = 2; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

inline constexpr std::size_t kCachedRules = 11;  // 2^0 .. 2^10

inline const std::array<GaussLegendreRule, kCachedRules> &cached_rules()
{
  static const std::array<GaussLegendreRule, kCachedRules> rules = [] {
    std::array<GaussLegendreRule, kCachedRules> r;
    for (std::size_t i = 0; i < kCachedRules; ++i) {
      r[i] = compute_gauss_legendre(std::size_t{1} << i);
    }
    return r;
  }();
  return rules;
}

}  // namespace detail

/// Gauss-Legendre rule with n nodes. Powers of two up to 1024 are cached.
inline GaussLegendreRule gauss_legendre(std::size_t n)
{
  if (n == 0) {
    throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  }
  if ((n & (n - 1)) == 0 && n < (std::size_t{1} << detail::kCachedRules)) {
    return detail::cached_rules()[static_cast<std::size_t>(std::countr_zero(n))];
  }
  return detail::compute_gauss_legendre(n);
}

template <typename Fn>
double apply_rule(const GaussLegendreRule &rule, Fn &&fn, double lo, double hi)
{
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

/// Integrates fn over [lo, hi] with Gauss-Legendre node doubling. The error
/// estimate is the difference between the last two rules.
template <typename Fn>
QuadratureResult integrate_report(Fn &&fn, double lo, double hi, const QuadratureConfig &config = {})
{
  QuadratureResult result;
  if (lo == hi) {
    result.converged = true;
    return result;
  }
  std::size_t n = std::max<std::size_t>(1, config.initial_nodes);
  double previous = apply_rule(gauss_legendre(n), fn, lo, hi);
  while (n < config.max_nodes) {
    n *= 2;
    const double current = apply_rule(gauss_legendre(n), fn, lo, hi);
    result.value = current;
    result.error_estimate = std::abs(current - previous);
    result.nodes = n;
    if (result.error_estimate <= config.tolerance * std::max(1.0, std::abs(current))) {
      result.converged = true;
      return result;
    }
    previous = current;
  }
  return result;
}

/// Like integrate_report but throws QuadratureError on non-convergence.
template <typename Fn>
QuadratureResult integrate(Fn &&fn, double lo, double hi, const QuadratureConfig &config = {})
{
  QuadratureResult result = integrate_report(std::forward<Fn>(fn), lo, hi, config);
  if (!result.converged) {
    throw QuadratureError("quadrature did not converge: error estimate " +
                              std::to_string(result.error_estimate) + " with " +
                              std::to_string(result.nodes) + " nodes",
                          result);
  }
  return result;
}

}  // namespace kthprice
