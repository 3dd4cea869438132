#pragma once

#include <functional>
#include <optional>

#include "tomography.hpp"

namespace qtomo {

// omega(theta, X), vacuum weight included.
using TomogramFn = std::function<double(double theta, double X)>;

// Projections I_γ(θ_k) = ∫ omega(X, θ_k)·J_γ(X) dX; each value is the phase
// combination sum_{α+β=γ} e^{i(α−β)θ_k}·sqrt([γ]!)/([α]![β]!)·⟨A†^α A^β⟩.
struct ProjectionVector {
  int gamma;
  std::vector<double> angles;  // γ+1 of them, pairwise distinct mod pi
  std::vector<cplx> values;
};

struct ExtractedOrder {
  std::vector<cplx> moments;   // ⟨A†^α A^{γ−α}⟩, α = 0..γ
  double hermitian_deviation;  // max |m_α − conj(m_{γ−α})|
  double condition_number;     // of the phase system after column scaling
};

// Integrates (omega/weight)·J_γ against the vacuum measure on Gauss nodes;
// exact when the rule covers the integrand degree, endpoint-singularity free
// because nodes stay strictly inside (−L, L).
cplx project(const TomogramFn& omega, double theta, int gamma,
             const QuadratureRule& rule);

ProjectionVector project_vector(const TomogramFn& omega, int gamma,
                                const QuadratureRule& rule,
                                const std::vector<double>* angles = nullptr);

// ⟨A⟩ from two tomogram slices:
//   (1/(2i·sin(θ₂−θ₁)))·[e^{iθ₂}·I₁(θ₁) − e^{iθ₁}·I₁(θ₂)].
cplx extract_first_moment(const TomogramFn& omega, double theta1, double theta2,
                          const QuadratureRule& rule);

// All moments of total order γ by solving the (γ+1)×(γ+1) phase system
// M_{k,α} = e^{i(2α−γ)θ_k}·sqrt([γ]!)/([α]![γ−α]!).  Default angles
// θ_k = kπ/(γ+1) make the scaled system a unitary DFT.
ExtractedOrder extract_order(const TomogramFn& omega, int gamma,
                             const QuadratureRule& rule,
                             const std::vector<double>* angles = nullptr);

// extract_order for γ = 0..Γ assembled into a table; entry (0,0) pinned to 1.
MomentTable moment_table_from_tomogram(const TomogramFn& omega, int gamma_max,
                                       const QuadratureRule& rule);

struct GridExtractionReport {
  double interp_error_estimate = 0.0;  // leave-one-out barycentric error
};

// Extraction from a sampled grid: per-θ slices of omega/weight are
// interpolated barycentrically from the grid xs onto the rule nodes, and the
// angle sets are drawn from the grid's own theta axis (nearest to the ideal
// kπ/(γ+1) targets, distinct mod pi).
MomentTable moment_table_from_grid(const TomogramGrid& g, int gamma_max,
                                   const QuadratureRule& rule,
                                   GridExtractionReport* report = nullptr);

// Rule order giving ~2x headroom over the exactness requirement for
// integrands of degree gamma_max + 2·state_cutoff.
int default_rule_order(int gamma_max, int state_cutoff);

TomogramFn tomogram_fn(const FockState& s);

}  // namespace qtomo
