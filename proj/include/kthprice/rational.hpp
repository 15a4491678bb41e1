#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace kthprice {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational in lowest terms with a positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational make_rational(long long num, long long den = 1)
{
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  if (den < 0) {
    return BigRational(-BigInt(num), -BigInt(den));
  }
  return BigRational(BigInt(num), BigInt(den));
}

/// Exact conversion; every finite double is a dyadic rational.
inline BigRational rational_from_double(double v)
{
  if (!std::isfinite(v)) {
    throw std::domain_error("cannot convert non-finite value to rational");
  }
  return BigRational(v);
}

inline double to_double(const BigRational &q)
{
  return q.convert_to<double>();
}

/// "p/q", or just "p" when the denominator is one.
inline std::string to_string(const BigRational &q)
{
  const BigInt &num = boost::multiprecision::numerator(q);
  const BigInt &den = boost::multiprecision::denominator(q);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

inline BigInt binomial(long long n, long long k)
{
  if (k < 0 || n < 0 || k > n) {
    return BigInt(0);
  }
  if (k > n - k) {
    k = n - k;
  }
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline BigInt factorial(long long n)
{
  BigInt result = 1;
  for (long long i = 2; i <= n; ++i) {
    result *= i;
  }
  return result;
}

inline BigRational pow(const BigRational &base, unsigned exponent)
{
  BigRational result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    result *= base;
  }
  return result;
}

}  // namespace kthprice
