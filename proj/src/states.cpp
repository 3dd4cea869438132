#include "states.hpp"

#include <cmath>
#include <functional>

namespace qtomo {

namespace {

constexpr int kMaxCutoff = 512;
constexpr int kMinCutoff = 16;

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw Error(ErrorCode::InvalidArgument,
                "eps_trunc must lie strictly inside (0,1)");
}

// Consumes unnormalized coefficients c_0, c_1, ... until both the trailing
// five-slot mass and the top amplitude are below eps relative to the
// accumulated norm; this makes the tail-window invariant and the
// apply_creation precondition hold simultaneously on the normalized state.
FockState truncate_and_normalize(const DeformationParam& d, double eps,
                                 const std::function<cplx(int)>& coeff) {
  std::vector<cplx> amps;
  amps.reserve(64);
  double norm2 = 0.0;
  int cutoff = -1;
  for (int n = 0; n <= kMaxCutoff; ++n) {
    amps.push_back(coeff(n));
    norm2 += std::norm(amps[n]);
    if (n < kMinCutoff || norm2 == 0.0) continue;
    double window = 0.0;
    for (int j = n - 4; j <= n; ++j) window += std::norm(amps[j]);
    if (window < eps * norm2 && std::norm(amps[n]) < eps * eps * norm2) {
      cutoff = n;
      break;
    }
  }
  if (cutoff < 0) {
    if (norm2 <= 0.0)
      throw Error(ErrorCode::DegenerateState,
                  "state construction produced the zero vector");
    throw Error(ErrorCode::TruncationOverflow,
                "state does not reach the requested truncation tolerance "
                "within " + std::to_string(kMaxCutoff) + " levels");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& c : amps) c *= inv;
  return FockState{d, cutoff, std::move(amps), eps};
}

}  // namespace

FockState make_coherent(cplx alpha, const DeformationParam& d,
                        double eps_trunc) {
  check_eps(eps_trunc);
  if (!(std::abs(alpha) < d.R))
    throw Error(ErrorCode::DivergentAmplitude,
                "make_coherent: |alpha| must be < R = 1/sqrt(1-q^2)");
  cplx cur{1.0, 0.0};  // alpha^n / sqrt([n]!), updated as n advances
  return truncate_and_normalize(d, eps_trunc, [&](int n) {
    if (n > 0) cur *= alpha / std::sqrt(q_int(n, d));
    return cur;
  });
}

FockState make_cat(cplx alpha, int parity, const DeformationParam& d,
                   double eps_trunc) {
  check_eps(eps_trunc);
  if (parity != 1 && parity != -1)
    throw Error(ErrorCode::InvalidArgument, "make_cat: parity must be +1 or -1");
  if (!(std::abs(alpha) < d.R))
    throw Error(ErrorCode::DivergentAmplitude,
                "make_cat: |alpha| must be < R = 1/sqrt(1-q^2)");
  if (parity == -1 && alpha == cplx{0.0, 0.0})
    throw Error(ErrorCode::DegenerateState,
                "make_cat: odd cat with alpha = 0 is the zero vector");
  const int keep = parity == 1 ? 0 : 1;  // parity of the surviving slots
  cplx cur{1.0, 0.0};
  return truncate_and_normalize(d, eps_trunc, [&](int n) {
    if (n > 0) cur *= alpha / std::sqrt(q_int(n, d));
    return n % 2 == keep ? cur : cplx{0.0, 0.0};
  });
}

FockState make_tao_eigenstate(cplx xi, TaoParity parity,
                              const DeformationParam& d, double eps_trunc) {
  check_eps(eps_trunc);
  if (!(std::abs(xi) < 1.0))
    throw Error(ErrorCode::DivergentAmplitude,
                "make_tao_eigenstate: |xi| must be < 1");
  if (parity == TaoParity::Even) {
    // c_{2m} = xi^m sqrt([2m-1]!!/[2m]!!), ratio xi*sqrt([2m-1]/[2m]).
    cplx cur{1.0, 0.0};
    return truncate_and_normalize(d, eps_trunc, [&](int n) {
      if (n % 2 != 0) return cplx{0.0, 0.0};
      const int m = n / 2;
      if (m > 0) cur *= xi * std::sqrt(q_int(2 * m - 1, d) / q_int(2 * m, d));
      return cur;
    });
  }
  // c_{2m+1} = xi^m sqrt([2m+1]!!/[2m]!!), ratio xi*sqrt([2m+1]/[2m]).
  cplx cur{1.0, 0.0};
  return truncate_and_normalize(d, eps_trunc, [&](int n) {
    if (n % 2 != 1) return cplx{0.0, 0.0};
    const int m = (n - 1) / 2;
    if (m > 0) cur *= xi * std::sqrt(q_int(2 * m + 1, d) / q_int(2 * m, d));
    return cur;
  });
}

FockState make_squeezed(double r, double phi_s, SqueezedKind which,
                        const DeformationParam& d, double eps_trunc) {
  if (!(r >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "make_squeezed: r must be >= 0");
  const cplx xi = -std::exp(cplx{0.0, phi_s}) * std::tanh(r);
  return make_tao_eigenstate(
      xi, which == SqueezedKind::Vacuum ? TaoParity::Even : TaoParity::Odd, d,
      eps_trunc);
}

FockState make_number(int n, const DeformationParam& d, double eps_trunc) {
  check_eps(eps_trunc);
  if (n < 0)
    throw Error(ErrorCode::InvalidArgument, "make_number: n must be >= 0");
  const int cutoff = std::max(n + 5, kMinCutoff);
  if (cutoff > kMaxCutoff)
    throw Error(ErrorCode::TruncationOverflow,
                "make_number: n exceeds the hard cutoff cap");
  std::vector<cplx> amps(cutoff + 1, cplx{0.0, 0.0});
  amps[n] = 1.0;
  return FockState{d, cutoff, std::move(amps), eps_trunc};
}

FockState make_state(const StateSpec& spec, const DeformationParam& d,
                     double eps_trunc) {
  switch (spec.kind) {
    case StateKind::Coherent:
      return make_coherent(spec.alpha, d, eps_trunc);
    case StateKind::CatEven:
      return make_cat(spec.alpha, 1, d, eps_trunc);
    case StateKind::CatOdd:
      return make_cat(spec.alpha, -1, d, eps_trunc);
    case StateKind::TaoEven:
      return make_tao_eigenstate(spec.xi, TaoParity::Even, d, eps_trunc);
    case StateKind::TaoOdd:
      return make_tao_eigenstate(spec.xi, TaoParity::Odd, d, eps_trunc);
    case StateKind::SqueezedVacuum:
      return make_squeezed(spec.r, spec.phi_s, SqueezedKind::Vacuum, d,
                           eps_trunc);
    case StateKind::SqueezedExcited:
      return make_squeezed(spec.r, spec.phi_s, SqueezedKind::Excited, d,
                           eps_trunc);
    case StateKind::Number:
      return make_number(spec.n, d, eps_trunc);
  }
  throw Error(ErrorCode::InvalidArgument, "make_state: unknown state kind");
}

const char* state_kind_name(StateKind kind) {
  switch (kind) {
    case StateKind::Coherent: return "coherent";
    case StateKind::CatEven: return "cat-even";
    case StateKind::CatOdd: return "cat-odd";
    case StateKind::TaoEven: return "tao-even";
    case StateKind::TaoOdd: return "tao-odd";
    case StateKind::SqueezedVacuum: return "squeezed-vacuum";
    case StateKind::SqueezedExcited: return "squeezed-excited";
    case StateKind::Number: return "number";
  }
  return "unknown";
}

StateKind state_kind_from_name(const std::string& name) {
  if (name == "coherent") return StateKind::Coherent;
  if (name == "cat-even") return StateKind::CatEven;
  if (name == "cat-odd") return StateKind::CatOdd;
  if (name == "tao-even") return StateKind::TaoEven;
  if (name == "tao-odd") return StateKind::TaoOdd;
  if (name == "squeezed-vacuum") return StateKind::SqueezedVacuum;
  if (name == "squeezed-excited") return StateKind::SqueezedExcited;
  if (name == "number") return StateKind::Number;
  throw Error(ErrorCode::InvalidArgument,
              "unknown state kind '" + name +
                  "' (expected coherent, cat-even, cat-odd, tao-even, "
                  "tao-odd, squeezed-vacuum, squeezed-excited or number)");
}

}  // namespace qtomo
