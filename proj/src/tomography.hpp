#pragma once

#include <string>

#include "fock.hpp"
#include "quadrature.hpp"

namespace qtomo {

enum class XGridKind { GaussNodes, UniformOpen };

// Sampled quadrature distribution omega(theta_i, x_j).  thetas are uniform on
// [0, 2pi); xs lie strictly inside (−L, L).  x_weights is filled when the xs
// are Gauss nodes, making per-theta integrals exact for truncated states.
struct TomogramGrid {
  DeformationParam d;
  std::vector<double> thetas;
  std::vector<double> xs;
  std::vector<double> x_weights;  // empty unless xs are Gauss nodes
  Eigen::MatrixXd values;         // values(i, j) = omega(thetas[i], xs[j])
  std::string provenance;
};

// vacuum_density(X)·|sum_n c_n e^{−inθ} J_n(X)|².
double tomogram_pure(const FockState& s, double theta, double X);

// vacuum_density(X)·sum_{n,m} rho(n,m) J_n(X) J_m(X) e^{i(m−n)θ}, real part;
// the imaginary residue (zero for exactly Hermitian rho) is written to
// imag_residue when given.
double tomogram_density(const DensityMatrix& rho, double theta, double X,
                        double* imag_residue = nullptr);

// vacuum_density(X)·sum_{α+β<=Γ} e^{i(α−β)θ}·sqrt([α+β]!)/([α]![β]!)·
// J_{α+β}(X)·t(α,β), real part.  Converges to the pure tomogram as Γ grows.
double tomogram_from_moments(const MomentTable& t, double theta, double X,
                             int gamma_max);

TomogramGrid make_grid(const FockState& s, int n_theta, int n_x,
                       XGridKind kind = XGridKind::GaussNodes);

TomogramGrid make_grid(const MomentTable& t, int gamma_max, int n_theta,
                       int n_x, XGridKind kind = XGridKind::GaussNodes);

// Integral of omega over X along grid row i; requires x_weights.
double per_theta_norm(const TomogramGrid& g, int i);

}  // namespace qtomo
