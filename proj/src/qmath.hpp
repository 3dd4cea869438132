#pragma once

#include <complex>

#include "errors.hpp"

namespace qtomo {

// Deformation parameter q with cached derived constants.  The deformed boson
// algebra is A A† − q² A† A = 1 with q strictly inside (0,1); q = 1 is
// rejected, the q→1 limit is covered by tests, not a code path.
struct DeformationParam {
  double q;  // deformation parameter
  double p;  // q²
  double L;  // quadrature support half-width sqrt((1+q²)/(1−q²))
  double R;  // coherent-amplitude convergence radius 1/sqrt(1−q²)

  explicit DeformationParam(double q_);
};

// [n]_q = (1 − q^{2n}) / (1 − q²); strictly increasing in n, bounded by R².
double q_int(int n, const DeformationParam& d);

// [n]_q! = prod_{k=1..n} [k]_q, empty product = 1.
double q_factorial(int n, const DeformationParam& d);

// [2n−1]_q!! = prod_{k=1..n} [2k−1]_q, empty product = 1.
double q_double_factorial_odd(int n, const DeformationParam& d);

// [2n]_q!! = prod_{k=1..n} [2k]_q, empty product = 1.
double q_double_factorial_even(int n, const DeformationParam& d);

// sum_{k=0..p} (−1)^k q^{k(k−1)} [p]_q! / ([k]_q! [p−k]_q!).  Identically
// delta_{p,0}; kept as a built-in self test of the inversion identity behind
// the normal-ordering machinery.
double q_binomial_delta(int p_exp, const DeformationParam& d);

// prod_{k=0..K} (1 − a·base^k) with K the first index where base^K < tol.
std::complex<double> q_pochhammer_inf(std::complex<double> a, double base,
                                      double tol = 1e-16);

namespace detail {
// Test hook: relative perturbation applied to q_int(n) for n >= 2, so [0] and
// [1] stay exact and the corruption surfaces in downstream identities rather
// than trivially in normalization.  Must stay 0 outside verification tests.
extern double q_int_corruption;
}  // namespace detail

}  // namespace qtomo
