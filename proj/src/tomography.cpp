#include "tomography.hpp"

#include <cmath>
#include <numbers>

namespace qtomo {

namespace {

// sum_n c_n e^{−inθ} J_n with J precomputed.
cplx pure_amplitude(const std::vector<cplx>& amps, const std::vector<double>& J,
                    double theta) {
  const cplx step = std::exp(cplx{0.0, -theta});
  cplx phase{1.0, 0.0};
  cplx acc{0.0, 0.0};
  for (size_t n = 0; n < amps.size(); ++n) {
    acc += amps[n] * phase * J[n];
    phase *= step;
  }
  return acc;
}

std::vector<double> theta_axis(int n_theta) {
  if (n_theta < 2)
    throw Error(ErrorCode::InvalidArgument, "make_grid: n_theta must be >= 2");
  std::vector<double> thetas(n_theta);
  for (int i = 0; i < n_theta; ++i)
    thetas[i] = 2.0 * std::numbers::pi * i / n_theta;
  return thetas;
}

void x_axis(const DeformationParam& d, int n_x, XGridKind kind,
            std::vector<double>& xs, std::vector<double>& ws) {
  if (n_x < 2)
    throw Error(ErrorCode::InvalidArgument, "make_grid: n_x must be >= 2");
  if (kind == XGridKind::GaussNodes) {
    QuadratureRule rule = gauss_rule(d, n_x);
    xs = std::move(rule.nodes);
    ws = std::move(rule.weights);
  } else {
    xs.resize(n_x);
    ws.clear();
    for (int j = 0; j < n_x; ++j)
      xs[j] = -d.L + 2.0 * d.L * (j + 1) / (n_x + 1);
  }
}

}  // namespace

double tomogram_pure(const FockState& s, double theta, double X) {
  const double w = vacuum_density(X, s.d);
  if (w == 0.0) return 0.0;
  const std::vector<double> J = eval_J(s.cutoff, X, s.d);
  return w * std::norm(pure_amplitude(s.amps, J, theta));
}

double tomogram_density(const DensityMatrix& rho, double theta, double X,
                        double* imag_residue) {
  const double w = vacuum_density(X, rho.d);
  if (w == 0.0) {
    if (imag_residue) *imag_residue = 0.0;
    return 0.0;
  }
  const std::vector<double> J = eval_J(rho.cutoff, X, rho.d);
  // u†·rho·u with u_n = J_n e^{inθ}.
  const cplx step = std::exp(cplx{0.0, theta});
  Eigen::VectorXcd u(rho.cutoff + 1);
  cplx phase{1.0, 0.0};
  for (int n = 0; n <= rho.cutoff; ++n) {
    u[n] = J[n] * phase;
    phase *= step;
  }
  const cplx val = u.adjoint() * (rho.mat * u);
  if (imag_residue) *imag_residue = std::abs(val.imag()) * w;
  return w * val.real();
}

double tomogram_from_moments(const MomentTable& t, double theta, double X,
                             int gamma_max) {
  if (gamma_max < 0 || gamma_max > t.gamma_max)
    throw Error(ErrorCode::IncompleteTable,
                "tomogram_from_moments: table does not cover gamma_max");
  const double w = vacuum_density(X, t.d);
  if (w == 0.0) return 0.0;
  const std::vector<double> J = eval_J(gamma_max, X, t.d);
  const cplx step = std::exp(cplx{0.0, theta});
  // phases[k] = e^{ikθ}, k up to gamma_max (α−β ranges over ±γ).
  std::vector<cplx> phases(gamma_max + 1);
  phases[0] = 1.0;
  for (int k = 1; k <= gamma_max; ++k) phases[k] = phases[k - 1] * step;
  double acc = 0.0;
  for (int g = 0; g <= gamma_max; ++g) {
    const double fg = std::sqrt(q_factorial(g, t.d));
    cplx sum{0.0, 0.0};
    for (int a = 0; a <= g; ++a) {
      const int b = g - a;
      const cplx phase = a >= b ? phases[a - b] : std::conj(phases[b - a]);
      sum += phase * (fg / (q_factorial(a, t.d) * q_factorial(b, t.d))) *
             t.at(a, b);
    }
    acc += (sum * J[g]).real();
  }
  return w * acc;
}

TomogramGrid make_grid(const FockState& s, int n_theta, int n_x,
                       XGridKind kind) {
  TomogramGrid g{s.d, theta_axis(n_theta), {}, {}, Eigen::MatrixXd(), "pure"};
  x_axis(s.d, n_x, kind, g.xs, g.x_weights);
  g.values.resize(n_theta, n_x);
  for (int j = 0; j < n_x; ++j) {
    const double w = vacuum_density(g.xs[j], s.d);
    const std::vector<double> J = eval_J(s.cutoff, g.xs[j], s.d);
    for (int i = 0; i < n_theta; ++i) {
      const double v = w * std::norm(pure_amplitude(s.amps, J, g.thetas[i]));
      g.values(i, j) = v < 0.0 ? 0.0 : v;
    }
  }
  return g;
}

TomogramGrid make_grid(const MomentTable& t, int gamma_max, int n_theta,
                       int n_x, XGridKind kind) {
  TomogramGrid g{t.d, theta_axis(n_theta), {}, {}, Eigen::MatrixXd(),
                 "from-moments"};
  x_axis(t.d, n_x, kind, g.xs, g.x_weights);
  g.values.resize(n_theta, n_x);
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_x; ++j) {
      // from-moments values can dip below zero by the truncation residue;
      // the stored grid clamps at 0 to keep the distribution contract
      const double v = tomogram_from_moments(t, g.thetas[i], g.xs[j], gamma_max);
      g.values(i, j) = v < 0.0 ? 0.0 : v;
    }
  return g;
}

double per_theta_norm(const TomogramGrid& g, int i) {
  if (g.x_weights.empty())
    throw Error(ErrorCode::InvalidArgument,
                "per_theta_norm: grid carries no quadrature weights");
  if (i < 0 || i >= static_cast<int>(g.thetas.size()))
    throw Error(ErrorCode::InvalidArgument, "per_theta_norm: row out of range");
  double acc = 0.0;
  for (size_t j = 0; j < g.xs.size(); ++j) {
    const double w = vacuum_density(g.xs[j], g.d);
    acc += g.x_weights[j] * g.values(i, j) / w;
  }
  return acc;
}

}  // namespace qtomo
