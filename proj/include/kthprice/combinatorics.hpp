#pragma once

#include "kthprice/quadrature.hpp"
#include "kthprice/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kthprice {

// ---------------------------------------------------------------------------
// Catalan numbers
// ---------------------------------------------------------------------------

inline BigInt catalan(unsigned ell)
{
  return binomial(2LL * ell, ell) / (ell + 1);
}

/// Checks C_l = 2(2l-1)/(l+1) * C_{l-1} exactly for l = 1..ell_max.
inline bool catalan_recurrence_holds(unsigned ell_max)
{
  if (ell_max < 1) {
    throw std::invalid_argument("catalan_recurrence_holds: ell_max must be >= 1");
  }
  BigRational previous = BigRational(catalan(0));
  for (unsigned ell = 1; ell <= ell_max; ++ell) {
    const BigRational stepped = make_rational(2LL * (2LL * ell - 1), ell + 1LL) * previous;
    const BigRational direct = BigRational(catalan(ell));
    if (stepped != direct) {
      return false;
    }
    previous = direct;
  }
  return true;
}

/// Integral representation (2^(2l+1)/pi) * int_0^1 t^l sqrt((1-t)/t) dt.
///
/// With t = sin^2(u) the integrand becomes 2 sin^(2l)(u) cos^2(u) on
/// [0, pi/2], which is smooth, so both endpoint singularities disappear.
/// Throws QuadratureError if the node-doubling estimate misses the tolerance.
inline double catalan_integral(unsigned ell, const QuadratureConfig &quad = {})
{
  const auto integrand = [ell](double u) {
    const double s = std::sin(u);
    const double c = std::cos(u);
    return 2.0 * std::pow(s, 2.0 * ell) * c * c;
  };
  const QuadratureResult r = integrate(integrand, 0.0, std::numbers::pi / 2.0, quad);
  return std::ldexp(1.0, static_cast<int>(2 * ell + 1)) / std::numbers::pi * r.value;
}

// ---------------------------------------------------------------------------
// Real-argument binomials and the three convolution identities
//
// The alternating sums cancel badly: with s = 12 and |r|, m near 12 a result
// of 1e-5 comes out of terms near 1e10, past what long double resolves.
// IdentityReal carries 50 decimal digits.
// ---------------------------------------------------------------------------

using IdentityReal = boost::multiprecision::cpp_bin_float_50;

/// Falling-factorial binomial r(r-1)...(r-s+1)/s!, total on the reals.
template <typename Real = IdentityReal>
Real binom_real(Real r, unsigned s)
{
  Real result = 1;
  for (unsigned i = 0; i < s; ++i) {
    result *= (r - static_cast<Real>(i)) / static_cast<Real>(i + 1);
  }
  return result;
}

template <typename Real = IdentityReal>
struct IdentitySides
{
  Real lhs;
  Real rhs;
};

/// Jensen: sum binom(m+zl, l) binom(r-zl, s-l) = sum binom(m+r-l, s-l) z^l.
template <typename Real = IdentityReal>
IdentitySides<Real> jensen_sides(Real m, Real r, Real z, unsigned s)
{
  Real lhs = 0;
  Real rhs = 0;
  Real zpow = 1;
  for (unsigned ell = 0; ell <= s; ++ell) {
    const Real l = static_cast<Real>(ell);
    lhs += binom_real<Real>(m + z * l, ell) * binom_real<Real>(r - z * l, s - ell);
    rhs += binom_real<Real>(m + r - l, s - ell) * zpow;
    zpow *= z;
  }
  return {lhs, rhs};
}

/// Hagen-Rothe: sum m/(m+zl) binom(m+zl, l) binom(r-zl, s-l) = binom(m+r, s).
/// Rejects inputs where some m + zl vanishes.
template <typename Real = IdentityReal>
IdentitySides<Real> hagen_rothe_sides(Real m, Real r, Real z, unsigned s)
{
  for (unsigned ell = 0; ell <= s; ++ell) {
    if (m + z * static_cast<Real>(ell) == Real(0)) {
      throw std::invalid_argument("hagen_rothe_sides: m + z*l vanishes at l = " +
                                  std::to_string(ell));
    }
  }
  Real lhs = 0;
  for (unsigned ell = 0; ell <= s; ++ell) {
    const Real y = m + z * static_cast<Real>(ell);
    // m/y * binom(y, l) with the leading factor y of binom(y, l) cancelled.
    Real weight = 1;
    if (ell > 0) {
      weight = m / static_cast<Real>(ell) * binom_real<Real>(y - 1, ell - 1);
    }
    lhs += weight * binom_real<Real>(r - z * static_cast<Real>(ell), s - ell);
  }
  return {lhs, binom_real<Real>(m + r, s)};
}

/// sum binom(r-l, s-l) z^l = sum binom(r+1, s-l) (z-1)^l.
template <typename Real = IdentityReal>
IdentitySides<Real> shifted_jensen_sides(Real r, Real z, unsigned s)
{
  Real lhs = 0;
  Real rhs = 0;
  Real zpow = 1;
  Real zm1pow = 1;
  for (unsigned ell = 0; ell <= s; ++ell) {
    lhs += binom_real<Real>(r - static_cast<Real>(ell), s - ell) * zpow;
    rhs += binom_real<Real>(r + 1, s - ell) * zm1pow;
    zpow *= z;
    zm1pow *= (z - 1);
  }
  return {lhs, rhs};
}

/// |lhs - rhs| <= rel_tol * max(1, |rhs|).
template <typename Real>
bool sides_agree(const IdentitySides<Real> &sides, double rel_tol)
{
  using std::abs;
  const double diff = static_cast<double>(abs(sides.lhs - sides.rhs));
  const double scale = std::max(1.0, static_cast<double>(abs(sides.rhs)));
  return diff <= rel_tol * scale;
}

// ---------------------------------------------------------------------------
// Catalan-weighted coefficients
// ---------------------------------------------------------------------------

struct ThetaTable
{
  int n = 0;
  int k = 0;
  /// entries[l] for l = 0..k-3
  std::vector<BigRational> entries;
};

namespace detail {

inline void require_price_index(int n, int k, const char *who)
{
  if (k < 3) {
    throw std::invalid_argument(std::string(who) + ": k >= 3 violated (k = " + std::to_string(k) + ")");
  }
  if (k > n) {
    throw std::invalid_argument(std::string(who) + ": n >= k violated (n = " + std::to_string(n) +
                                ", k = " + std::to_string(k) + ")");
  }
}

}  // namespace detail

/// binom(n-2, k-3-l) * C_l / 2^l, defined for any k >= 3 and 0 <= l <= k-3.
inline BigRational theta_coefficient(int n, int k, int ell)
{
  if (ell < 0 || ell > k - 3) {
    return BigRational(0);
  }
  BigRational value(binomial(n - 2, k - 3 - ell) * catalan(static_cast<unsigned>(ell)));
  value /= BigRational(BigInt(1) << ell);
  return value;
}

inline ThetaTable theta_table(int n, int k)
{
  detail::require_price_index(n, k, "theta_table");
  ThetaTable table{n, k, {}};
  table.entries.reserve(static_cast<std::size_t>(k - 2));
  for (int ell = 0; ell <= k - 3; ++ell) {
    table.entries.push_back(theta_coefficient(n, k, ell));
  }
  return table;
}

/// Both coefficient recurrences, checked exactly against the k+1 table:
///   theta^{k+1}_l = (2l-1)/(l+1) theta^k_{l-1}       for l = 1..k-3
///   (n-k+l+1) theta^k_l = (k-2-l) theta^{k+1}_l      for l = 0..k-3
inline bool theta_recurrences_hold(int n, int k)
{
  detail::require_price_index(n, k, "theta_recurrences_hold");
  for (int ell = 1; ell <= k - 3; ++ell) {
    if (theta_coefficient(n, k + 1, ell) !=
        make_rational(2 * ell - 1, ell + 1) * theta_coefficient(n, k, ell - 1)) {
      return false;
    }
  }
  for (int ell = 0; ell <= k - 3; ++ell) {
    if (BigRational(n - k + ell + 1) * theta_coefficient(n, k, ell) !=
        BigRational(k - 2 - ell) * theta_coefficient(n, k + 1, ell)) {
      return false;
    }
  }
  return true;
}

/// Omega_k = sum_{l=0}^{k-3} (-1)^l theta^k_l / 2^(l+1), exact.
inline BigRational omega(int n, int k)
{
  detail::require_price_index(n, k, "omega");
  BigRational sum = 0;
  for (int ell = 0; ell <= k - 3; ++ell) {
    BigRational term = theta_coefficient(n, k, ell) / BigRational(BigInt(1) << (ell + 1));
    if (ell % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

/// Omega_k as (1/pi) int_0^1 sqrt(z/(1-z)) sum_l binom(n-3-l, k-3-l) z^l dz,
/// integrated numerically with z = sin^2(u). Independent of the Catalan
/// coefficients, so it cross-checks omega().
inline double omega_integral(int n, int k, const QuadratureConfig &quad = {})
{
  detail::require_price_index(n, k, "omega_integral");
  std::vector<double> coeffs;
  for (int ell = 0; ell <= k - 3; ++ell) {
    coeffs.push_back(to_double(BigRational(binomial(n - 3 - ell, k - 3 - ell))));
  }
  const auto integrand = [&coeffs](double u) {
    const double s = std::sin(u);
    const double z = s * s;
    double poly = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      poly = poly * z + *it;
    }
    return 2.0 * z * poly;
  };
  return integrate(integrand, 0.0, std::numbers::pi / 2.0, quad).value / std::numbers::pi;
}

/// (1/2) binom(n-3, k-3) <= Omega_k <= (7/8) binom(n-3, k-3), exact.
/// Only claimed for n + 4 > 2k; rejects other (n, k).
inline bool omega_bounds_hold(int n, int k)
{
  detail::require_price_index(n, k, "omega_bounds_hold");
  if (n + 4 <= 2 * k) {
    throw std::invalid_argument("omega_bounds_hold: n + 4 > 2k violated (n = " + std::to_string(n) +
                                ", k = " + std::to_string(k) + ")");
  }
  const BigRational scale(binomial(n - 3, k - 3));
  const BigRational value = omega(n, k);
  return make_rational(1, 2) * scale <= value && value <= make_rational(7, 8) * scale;
}

}  // namespace kthprice
