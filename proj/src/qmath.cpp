#include "qmath.hpp"

#include <cmath>

namespace qtomo {

namespace detail {
double q_int_corruption = 0.0;
}

DeformationParam::DeformationParam(double q_) : q(q_) {
  if (!(q_ > 0.0 && q_ < 1.0))
    throw Error(ErrorCode::InvalidArgument,
                "deformation parameter q must lie strictly inside (0,1)");
  p = q_ * q_;
  L = std::sqrt((1.0 + p) / (1.0 - p));
  R = 1.0 / std::sqrt(1.0 - p);
}

double q_int(int n, const DeformationParam& d) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "q_int: n must be >= 0");
  double v = (1.0 - std::pow(d.p, n)) / (1.0 - d.p);
  if (n >= 2 && detail::q_int_corruption != 0.0)
    v *= 1.0 + detail::q_int_corruption;
  return v;
}

double q_factorial(int n, const DeformationParam& d) {
  if (n < 0)
    throw Error(ErrorCode::InvalidArgument, "q_factorial: n must be >= 0");
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= q_int(k, d);
  if (!std::isfinite(prod))
    throw Error(ErrorCode::TruncationOverflow,
                "q_factorial: product exceeds floating range");
  return prod;
}

double q_double_factorial_odd(int n, const DeformationParam& d) {
  if (n < 0)
    throw Error(ErrorCode::InvalidArgument,
                "q_double_factorial_odd: n must be >= 0");
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= q_int(2 * k - 1, d);
  return prod;
}

double q_double_factorial_even(int n, const DeformationParam& d) {
  if (n < 0)
    throw Error(ErrorCode::InvalidArgument,
                "q_double_factorial_even: n must be >= 0");
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= q_int(2 * k, d);
  return prod;
}

double q_binomial_delta(int p_exp, const DeformationParam& d) {
  if (p_exp < 0)
    throw Error(ErrorCode::InvalidArgument,
                "q_binomial_delta: p_exp must be >= 0");
  const double fact_p = q_factorial(p_exp, d);
  double sum = 0.0;
  for (int k = 0; k <= p_exp; ++k) {
    double term = fact_p / (q_factorial(k, d) * q_factorial(p_exp - k, d));
    term *= std::pow(d.q, k * (k - 1));
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

std::complex<double> q_pochhammer_inf(std::complex<double> a, double base,
                                      double tol) {
  if (!(base > 0.0 && base < 1.0))
    throw Error(ErrorCode::InvalidArgument,
                "q_pochhammer_inf: base must lie strictly inside (0,1)");
  if (!(tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "q_pochhammer_inf: tol must be > 0");
  std::complex<double> prod = 1.0;
  double bk = 1.0;  // base^k
  for (;;) {
    prod *= 1.0 - a * bk;
    if (bk < tol) break;
    bk *= base;
  }
  return prod;
}

}  // namespace qtomo
