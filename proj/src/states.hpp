#pragma once

#include <string>

#include "fock.hpp"

namespace qtomo {

enum class StateKind {
  Coherent,
  CatEven,
  CatOdd,
  TaoEven,
  TaoOdd,
  SqueezedVacuum,
  SqueezedExcited,
  Number,
};

enum class TaoParity { Even, Odd };
enum class SqueezedKind { Vacuum, Excited };

// Parameter bundle for every constructible state; which fields matter depends
// on kind (alpha for coherent/cat, xi for tao, r/phi_s for squeezed, n for
// number).
struct StateSpec {
  StateKind kind = StateKind::Coherent;
  cplx alpha{0.0, 0.0};
  double r = 0.0;
  double phi_s = 0.0;
  cplx xi{0.0, 0.0};
  int n = 0;
};

// c_n ∝ alpha^n / sqrt([n]_q!); requires |alpha| < R.
FockState make_coherent(cplx alpha, const DeformationParam& d,
                        double eps_trunc = 1e-12);

// Normalized |alpha⟩ ± |−alpha⟩; the cancelled parity's amplitudes are zero
// exactly.  parity is +1 or −1; the odd cat needs alpha != 0.
FockState make_cat(cplx alpha, int parity, const DeformationParam& d,
                   double eps_trunc = 1e-12);

// Eigenstates of the two-photon annihilation operators, |xi| < 1:
//   even: c_{2n} ∝ xi^n sqrt([2n−1]_q!!/[2n]_q!!)   (A†⁻¹A eigenstate)
//   odd:  c_{2n+1} ∝ xi^n sqrt([2n+1]_q!!/[2n]_q!!) (AA†⁻¹ eigenstate)
FockState make_tao_eigenstate(cplx xi, TaoParity parity,
                              const DeformationParam& d,
                              double eps_trunc = 1e-12);

// Squeezed vacuum / squeezed first excited state: delegates to the eigenstate
// constructor with xi = −e^{i phi_s}·tanh r.
FockState make_squeezed(double r, double phi_s, SqueezedKind which,
                        const DeformationParam& d, double eps_trunc = 1e-12);

// Basis state |n⟩.
FockState make_number(int n, const DeformationParam& d,
                      double eps_trunc = 1e-12);

FockState make_state(const StateSpec& spec, const DeformationParam& d,
                     double eps_trunc = 1e-12);

const char* state_kind_name(StateKind kind);
StateKind state_kind_from_name(const std::string& name);

}  // namespace qtomo
