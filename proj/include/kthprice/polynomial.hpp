#pragma once

#include "kthprice/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kthprice {

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first. The zero polynomial has no coefficients.
class Polynomial
{
public:
  Polynomial() = default;

  explicit Polynomial(std::vector<BigRational> coeffs)
    : coeffs_(std::move(coeffs))
  {
    trim();
  }

  Polynomial(std::initializer_list<BigRational> coeffs)
    : coeffs_(coeffs)
  {
    trim();
  }

  static Polynomial constant(const BigRational &c)
  {
    return Polynomial({c});
  }

  static Polynomial monomial(const BigRational &c, std::size_t degree)
  {
    std::vector<BigRational> coeffs(degree + 1);
    coeffs[degree] = c;
    return Polynomial(std::move(coeffs));
  }

  bool is_zero() const noexcept
  {
    return coeffs_.empty();
  }

  /// -1 for the zero polynomial.
  long degree() const noexcept
  {
    return static_cast<long>(coeffs_.size()) - 1;
  }

  const std::vector<BigRational> &coefficients() const noexcept
  {
    return coeffs_;
  }

  BigRational coefficient(std::size_t i) const
  {
    return i < coeffs_.size() ? coeffs_[i] : BigRational(0);
  }

  BigRational leading() const
  {
    return coeffs_.empty() ? BigRational(0) : coeffs_.back();
  }

  BigRational operator()(const BigRational &x) const
  {
    BigRational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  double operator()(double x) const
  {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + to_double(*it);
    }
    return acc;
  }

  Polynomial derivative() const
  {
    if (coeffs_.size() <= 1) {
      return {};
    }
    std::vector<BigRational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      out[i - 1] = coeffs_[i] * BigRational(static_cast<long long>(i));
    }
    return Polynomial(std::move(out));
  }

  /// Antiderivative vanishing at zero.
  Polynomial antiderivative() const
  {
    if (coeffs_.empty()) {
      return {};
    }
    std::vector<BigRational> out(coeffs_.size() + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      out[i + 1] = coeffs_[i] / BigRational(static_cast<long long>(i + 1));
    }
    return Polynomial(std::move(out));
  }

  Polynomial pow(unsigned exponent) const
  {
    Polynomial result = constant(1);
    Polynomial base = *this;
    while (exponent > 0) {
      if (exponent & 1U) {
        result *= base;
      }
      exponent >>= 1U;
      if (exponent > 0) {
        base *= base;
      }
    }
    return result;
  }

  Polynomial &operator+=(const Polynomial &rhs)
  {
    if (rhs.coeffs_.size() > coeffs_.size()) {
      coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
      coeffs_[i] += rhs.coeffs_[i];
    }
    trim();
    return *this;
  }

  Polynomial &operator-=(const Polynomial &rhs)
  {
    if (rhs.coeffs_.size() > coeffs_.size()) {
      coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
      coeffs_[i] -= rhs.coeffs_[i];
    }
    trim();
    return *this;
  }

  Polynomial &operator*=(const Polynomial &rhs)
  {
    *this = *this * rhs;
    return *this;
  }

  Polynomial &operator*=(const BigRational &c)
  {
    for (auto &v : coeffs_) {
      v *= c;
    }
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial lhs, const Polynomial &rhs)
  {
    lhs += rhs;
    return lhs;
  }

  friend Polynomial operator-(Polynomial lhs, const Polynomial &rhs)
  {
    lhs -= rhs;
    return lhs;
  }

  friend Polynomial operator-(Polynomial p)
  {
    for (auto &v : p.coeffs_) {
      v = -v;
    }
    return p;
  }

  friend Polynomial operator*(const Polynomial &lhs, const Polynomial &rhs)
  {
    if (lhs.is_zero() || rhs.is_zero()) {
      return {};
    }
    std::vector<BigRational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
      if (lhs.coeffs_[i] == 0) {
        continue;
      }
      for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
        out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
      }
    }
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(Polynomial p, const BigRational &c)
  {
    p *= c;
    return p;
  }

  friend Polynomial operator*(const BigRational &c, Polynomial p)
  {
    p *= c;
    return p;
  }

  friend bool operator==(const Polynomial &, const Polynomial &) = default;

  /// Euclidean division; throws on a zero divisor.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial &num, const Polynomial &den)
  {
    if (den.is_zero()) {
      throw std::domain_error("polynomial division by zero");
    }
    std::vector<BigRational> rem = num.coeffs_;
    const long dd = den.degree();
    if (num.degree() < dd) {
      return {Polynomial{}, num};
    }
    std::vector<BigRational> quot(static_cast<std::size_t>(num.degree() - dd + 1));
    const BigRational lead = den.leading();
    for (long i = num.degree() - dd; i >= 0; --i) {
      const BigRational c = rem[static_cast<std::size_t>(i + dd)] / lead;
      quot[static_cast<std::size_t>(i)] = c;
      if (c == 0) {
        continue;
      }
      for (long j = 0; j <= dd; ++j) {
        rem[static_cast<std::size_t>(i + j)] -= c * den.coeffs_[static_cast<std::size_t>(j)];
      }
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Monic greatest common divisor (zero if both are zero).
  friend Polynomial gcd(Polynomial a, Polynomial b)
  {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) {
      a *= BigRational(1) / a.leading();
    }
    return a;
  }

  std::string to_string() const
  {
    if (coeffs_.empty()) {
      return "0";
    }
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i] == 0) {
        continue;
      }
      if (!out.empty()) {
        out += " + ";
      }
      out += "(" + kthprice::to_string(coeffs_[i]) + ")";
      if (i >= 1) {
        out += "x";
      }
      if (i >= 2) {
        out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  void trim()
  {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
      coeffs_.pop_back();
    }
  }

  std::vector<BigRational> coeffs_;
};

/// Quotient of two exact polynomials, kept reduced with a monic denominator,
/// so equal functions have equal representations.
class RationalFunction
{
public:
  RationalFunction()
    : num_()
    , den_(Polynomial::constant(1))
  {}

  RationalFunction(Polynomial num)  // NOLINT(google-explicit-constructor)
    : num_(std::move(num))
    , den_(Polynomial::constant(1))
  {}

  RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num))
    , den_(std::move(den))
  {
    if (den_.is_zero()) {
      throw std::domain_error("rational function with zero denominator");
    }
    normalize();
  }

  const Polynomial &numerator() const noexcept
  {
    return num_;
  }

  const Polynomial &denominator() const noexcept
  {
    return den_;
  }

  bool is_zero() const noexcept
  {
    return num_.is_zero();
  }

  BigRational operator()(const BigRational &x) const
  {
    const BigRational d = den_(x);
    if (d == 0) {
      throw std::domain_error("rational function evaluated at a pole");
    }
    return num_(x) / d;
  }

  double operator()(double x) const
  {
    return num_(x) / den_(x);
  }

  RationalFunction derivative() const
  {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
  }

  friend RationalFunction operator+(const RationalFunction &a, const RationalFunction &b)
  {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }

  friend RationalFunction operator-(const RationalFunction &a, const RationalFunction &b)
  {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }

  friend RationalFunction operator*(const RationalFunction &a, const RationalFunction &b)
  {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }

  friend RationalFunction operator/(const RationalFunction &a, const RationalFunction &b)
  {
    if (b.is_zero()) {
      throw std::domain_error("rational function division by zero");
    }
    return {a.num_ * b.den_, a.den_ * b.num_};
  }

  friend RationalFunction operator*(const BigRational &c, const RationalFunction &a)
  {
    return {c * a.num_, a.den_};
  }

  /// Structural equality of reduced forms.
  friend bool operator==(const RationalFunction &, const RationalFunction &) = default;

  /// a/b == c/d checked as a*d == c*b, coefficient by coefficient.
  friend bool cross_equal(const RationalFunction &lhs, const RationalFunction &rhs)
  {
    return lhs.num_ * rhs.den_ == rhs.num_ * lhs.den_;
  }

  std::string to_string() const
  {
    return "[" + num_.to_string() + "] / [" + den_.to_string() + "]";
  }

private:
  void normalize()
  {
    if (num_.is_zero()) {
      den_ = Polynomial::constant(1);
      return;
    }
    const Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    const BigRational lead = den_.leading();
    if (lead != 1) {
      num_ *= BigRational(1) / lead;
      den_ *= BigRational(1) / lead;
    }
  }

  Polynomial num_;
  Polynomial den_;
};

}  // namespace kthprice
