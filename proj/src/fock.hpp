#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qmath.hpp"

namespace qtomo {

using cplx = std::complex<double>;

// Normalized state over the deformed number basis |0⟩..|cutoff⟩.  The tail
// window (slots n > cutoff−5) carries less than eps_trunc of the mass, which
// is what keeps ladder applications up to the safety margin accurate.
struct FockState {
  DeformationParam d;
  int cutoff;              // highest retained occupation number
  std::vector<cplx> amps;  // c_0 .. c_cutoff
  double eps_trunc;

  double norm_sq() const;
  double tail_mass() const;  // mass in slots n > cutoff−5
};

struct DensityMatrix {
  DeformationParam d;
  int cutoff;
  Eigen::MatrixXcd mat;    // (cutoff+1)², Hermitian, unit trace
  double asymmetry = 0.0;  // max |rho − rho†| removed by symmetrization
};

// Moments ⟨A†^a A^b⟩ for a+b <= gamma_max, stored by total order g = a+b at
// offset g(g+1)/2 + a.  Entries start unset (NaN); reading an unset entry is
// an IncompleteTable error.
struct MomentTable {
  DeformationParam d;
  int gamma_max;
  std::vector<cplx> entries;

  MomentTable(const DeformationParam& d_, int gamma_max_);
  void set(int a, int b, cplx v);
  cplx at(int a, int b) const;
  bool has(int a, int b) const;
};

// out_n = sqrt([n+1]_q)·c_{n+1}; top slot drops off; not renormalized.
FockState apply_annihilation(const FockState& s);

// out_{n+1} = sqrt([n+1]_q)·c_n; requires |c_cutoff| < eps_trunc so no mass
// is pushed past the cutoff.
FockState apply_creation(const FockState& s);

// A†⁻¹A: |n⟩ → sqrt([n]_q/[n−1]_q)·|n−2⟩ for n >= 2, zero on |0⟩ and |1⟩.
FockState apply_tao_even(const FockState& s);

// AA†⁻¹: |n⟩ → sqrt([n−1]_q/[n]_q)·|n−2⟩ for n >= 2, zero on |0⟩ and |1⟩.
FockState apply_tao_odd(const FockState& s);

// ⟨A†^alpha A^beta⟩ = ⟨A^alpha s, A^beta s⟩.  OrderTooHigh past the margin.
cplx moment_direct(const FockState& s, int alpha, int beta);

// Tr(rho A†^alpha A^beta) via ⟨m|A†^a A^b|n⟩ =
// delta_{m−a,n−b}·sqrt([m]!/[m−a]!)·sqrt([n]!/[n−b]!).
cplx moment_direct(const DensityMatrix& rho, int alpha, int beta);

// Direct table of all moments with alpha+beta <= gamma_max.
MomentTable moment_table_direct(const FockState& s, int gamma_max);

// Coefficient of A†^alpha A^beta in the normal-ordered expansion of F:
// sum_k (−1)^k q^{k(k−1)} ⟨alpha−k|F|beta−k⟩ / ([k]! sqrt([alpha−k]![beta−k]!)).
cplx normal_order_coeff(const Eigen::MatrixXcd& F, int alpha, int beta,
                        const DeformationParam& d);

// rho_{ij} = sum_k (−1)^k q^{k(k−1)} t(j+k, i+k) / ([k]! sqrt([i]![j]!)),
// summed while i+j+2k <= gamma_max; output dimension gamma_max/2, then
// symmetrized with the removed asymmetry recorded.
DensityMatrix density_from_moments(const MomentTable& t);

// Projector |s⟩⟨s| (comparison helper for round trips).
DensityMatrix density_from_state(const FockState& s);

// Trace distance (1/2)·||a − b||_1 via Hermitian eigenvalues.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qtomo
