#pragma once

#include <vector>

#include "qmath.hpp"

namespace qtomo {

// Gauss rule for the vacuum-density measure on (−L, L): integrates
// polynomial × vacuum_density exactly up to degree 2·order − 1.  The measure
// is a probability measure, so the weights sum to 1.
struct QuadratureRule {
  DeformationParam d;
  std::vector<double> nodes;    // ascending, strictly inside (−L, L)
  std::vector<double> weights;  // positive
  int order;
};

// J_0..J_{n_max} at X via the three-term recurrence
//   J_{n+1} = [ (2X/sqrt(1+q²))·J_n − sqrt([n]_q)·J_{n−1} ] / sqrt([n+1]_q),
// J_0 = 1, J_{−1} = 0.  Orthonormal against vacuum_density.
std::vector<double> eval_J(int n_max, double X, const DeformationParam& d);

// Same recurrence carried together with its X-derivative; dJ feeds the
// barycentric weights at quadrature nodes.
void eval_J_with_derivative(int n_max, double X, const DeformationParam& d,
                            std::vector<double>& J, std::vector<double>& dJ);

// L = sqrt((1+q²)/(1−q²)): spectral bound of the Jacobi operator built from
// the recurrence coefficients.
double support_bound(const DeformationParam& d);

// |Psi_0(X)|², the orthogonality weight of the J_n:
//   (1/L)·((p;p)_inf/2π)·|(e^{2iθ};p)_inf|²/sin θ,  p = q², θ = arccos(X/L),
// and 0 for |X| >= L.  Accumulated in log space: near q = 1 the two infinite
// products land around e^{∓800} even though their combination is O(1).
double vacuum_density(double X, const DeformationParam& d, double tol = 1e-16);

// Golub-Welsch: nodes are eigenvalues, weights squared first eigenvector
// components of the symmetric tridiagonal Jacobi matrix with zero diagonal
// and off-diagonal b_n = (sqrt(1+q²)/2)·sqrt([n]_q).
QuadratureRule gauss_rule(const DeformationParam& d, int order);

}  // namespace qtomo
