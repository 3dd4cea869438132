#include "quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace qtomo {

std::vector<double> eval_J(int n_max, double X, const DeformationParam& d) {
  if (n_max < 0)
    throw Error(ErrorCode::InvalidArgument, "eval_J: n_max must be >= 0");
  std::vector<double> J(n_max + 1);
  J[0] = 1.0;
  if (n_max == 0) return J;
  const double a = 2.0 * X / std::sqrt(1.0 + d.p);
  J[1] = a;
  for (int n = 1; n < n_max; ++n)
    J[n + 1] = (a * J[n] - std::sqrt(q_int(n, d)) * J[n - 1]) /
               std::sqrt(q_int(n + 1, d));
  return J;
}

void eval_J_with_derivative(int n_max, double X, const DeformationParam& d,
                            std::vector<double>& J, std::vector<double>& dJ) {
  if (n_max < 0)
    throw Error(ErrorCode::InvalidArgument,
                "eval_J_with_derivative: n_max must be >= 0");
  J.assign(n_max + 1, 0.0);
  dJ.assign(n_max + 1, 0.0);
  J[0] = 1.0;
  if (n_max == 0) return;
  const double s = 2.0 / std::sqrt(1.0 + d.p);
  J[1] = s * X;
  dJ[1] = s;
  for (int n = 1; n < n_max; ++n) {
    const double bn = std::sqrt(q_int(n, d));
    const double bn1 = std::sqrt(q_int(n + 1, d));
    J[n + 1] = (s * X * J[n] - bn * J[n - 1]) / bn1;
    dJ[n + 1] = (s * J[n] + s * X * dJ[n] - bn * dJ[n - 1]) / bn1;
  }
}

double support_bound(const DeformationParam& d) { return d.L; }

double vacuum_density(double X, const DeformationParam& d, double tol) {
  if (!(tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "vacuum_density: tol must be > 0");
  const double x = X / d.L;
  if (!(std::abs(x) < 1.0)) return 0.0;
  const double th = std::acos(x);
  double logv = -std::log(d.L) - std::log(2.0 * std::numbers::pi) -
                std::log(std::sin(th));
  // log (p;p)_inf: factors (1 − p·p^k), same truncation rule as
  // q_pochhammer_inf(p, p, tol).
  double bk = 1.0;
  for (;;) {
    logv += std::log1p(-d.p * bk);
    if (bk < tol) break;
    bk *= d.p;
  }
  // log |(e^{2iθ};p)_inf|²: factors 1 − 2·p^k·cos2θ + p^{2k}.
  const double c2 = std::cos(2.0 * th);
  bk = 1.0;
  for (;;) {
    logv += std::log(1.0 - 2.0 * bk * c2 + bk * bk);
    if (bk < tol) break;
    bk *= d.p;
  }
  return std::exp(logv);
}

QuadratureRule gauss_rule(const DeformationParam& d, int order) {
  if (order < 1)
    throw Error(ErrorCode::InvalidArgument, "gauss_rule: order must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(order > 1 ? order - 1 : 0);
  const double half = std::sqrt(1.0 + d.p) / 2.0;
  for (int n = 1; n < order; ++n) sub[n - 1] = half * std::sqrt(q_int(n, d));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure,
                "gauss_rule: tridiagonal eigensolver did not converge");
  QuadratureRule rule{d, {}, {}, order};
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int k = 0; k < order; ++k) {
    rule.nodes[k] = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    rule.weights[k] = v0 * v0;
  }
  return rule;
}

}  // namespace qtomo
