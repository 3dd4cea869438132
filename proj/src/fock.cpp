#include "fock.hpp"

#include <cmath>
#include <limits>

namespace qtomo {

namespace {
constexpr int kMomentMargin = 5;  // matches the FockState tail window

const cplx kUnset{std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN()};
}  // namespace

double FockState::norm_sq() const {
  double s = 0.0;
  for (const cplx& c : amps) s += std::norm(c);
  return s;
}

double FockState::tail_mass() const {
  double s = 0.0;
  for (int n = std::max(0, cutoff - 4); n <= cutoff; ++n) s += std::norm(amps[n]);
  return s;
}

MomentTable::MomentTable(const DeformationParam& d_, int gamma_max_)
    : d(d_), gamma_max(gamma_max_) {
  if (gamma_max_ < 0)
    throw Error(ErrorCode::InvalidArgument,
                "MomentTable: gamma_max must be >= 0");
  entries.assign((gamma_max + 1) * (gamma_max + 2) / 2, kUnset);
}

static int table_index(int a, int b, int gamma_max) {
  if (a < 0 || b < 0)
    throw Error(ErrorCode::InvalidArgument,
                "MomentTable: negative index (" + std::to_string(a) + "," +
                    std::to_string(b) + ")");
  if (a + b > gamma_max)
    throw Error(ErrorCode::IncompleteTable,
                "MomentTable: index (" + std::to_string(a) + "," +
                    std::to_string(b) + ") outside table order " +
                    std::to_string(gamma_max));
  const int g = a + b;
  return g * (g + 1) / 2 + a;
}

void MomentTable::set(int a, int b, cplx v) {
  entries[table_index(a, b, gamma_max)] = v;
}

cplx MomentTable::at(int a, int b) const {
  const cplx v = entries[table_index(a, b, gamma_max)];
  if (std::isnan(v.real()) || std::isnan(v.imag()))
    throw Error(ErrorCode::IncompleteTable,
                "MomentTable: entry (" + std::to_string(a) + "," +
                    std::to_string(b) + ") missing");
  return v;
}

bool MomentTable::has(int a, int b) const {
  if (a < 0 || b < 0 || a + b > gamma_max) return false;
  const cplx v = entries[a + b > 0 ? (a + b) * (a + b + 1) / 2 + a : 0];
  return !(std::isnan(v.real()) || std::isnan(v.imag()));
}

FockState apply_annihilation(const FockState& s) {
  FockState out = s;
  for (int n = 0; n < s.cutoff; ++n)
    out.amps[n] = std::sqrt(q_int(n + 1, s.d)) * s.amps[n + 1];
  out.amps[s.cutoff] = 0.0;
  return out;
}

FockState apply_creation(const FockState& s) {
  if (std::abs(s.amps[s.cutoff]) >= s.eps_trunc)
    throw Error(ErrorCode::TruncationOverflow,
                "apply_creation: top amplitude not negligible, mass would be "
                "pushed past the cutoff");
  FockState out = s;
  for (int n = s.cutoff; n >= 1; --n)
    out.amps[n] = std::sqrt(q_int(n, s.d)) * s.amps[n - 1];
  out.amps[0] = 0.0;
  return out;
}

FockState apply_tao_even(const FockState& s) {
  FockState out = s;
  std::fill(out.amps.begin(), out.amps.end(), cplx{0.0, 0.0});
  for (int n = 2; n <= s.cutoff; ++n)
    out.amps[n - 2] =
        std::sqrt(q_int(n, s.d) / q_int(n - 1, s.d)) * s.amps[n];
  return out;
}

FockState apply_tao_odd(const FockState& s) {
  FockState out = s;
  std::fill(out.amps.begin(), out.amps.end(), cplx{0.0, 0.0});
  for (int n = 2; n <= s.cutoff; ++n)
    out.amps[n - 2] =
        std::sqrt(q_int(n - 1, s.d) / q_int(n, s.d)) * s.amps[n];
  return out;
}

cplx moment_direct(const FockState& s, int alpha, int beta) {
  if (alpha < 0 || beta < 0)
    throw Error(ErrorCode::InvalidArgument,
                "moment_direct: orders must be >= 0");
  if (alpha + beta > s.cutoff - kMomentMargin)
    throw Error(ErrorCode::OrderTooHigh,
                "moment_direct: alpha+beta = " + std::to_string(alpha + beta) +
                    " exceeds cutoff " + std::to_string(s.cutoff) +
                    " minus safety margin " + std::to_string(kMomentMargin));
  FockState u = s;
  for (int k = 0; k < alpha; ++k) u = apply_annihilation(u);
  FockState v = s;
  for (int k = 0; k < beta; ++k) v = apply_annihilation(v);
  cplx acc{0.0, 0.0};
  for (int n = 0; n <= s.cutoff; ++n) acc += std::conj(u.amps[n]) * v.amps[n];
  return acc;
}

cplx moment_direct(const DensityMatrix& rho, int alpha, int beta) {
  if (alpha < 0 || beta < 0)
    throw Error(ErrorCode::InvalidArgument,
                "moment_direct: orders must be >= 0");
  if (alpha + beta > rho.cutoff - kMomentMargin)
    throw Error(ErrorCode::OrderTooHigh,
                "moment_direct: alpha+beta exceeds cutoff minus safety margin");
  // Tr(rho F) = sum_{m} ⟨m|rho F|m⟩ with F connecting |m⟩ → |m−beta+alpha⟩.
  cplx acc{0.0, 0.0};
  for (int m = beta; m <= rho.cutoff; ++m) {
    const int n = m - beta + alpha;
    if (n > rho.cutoff) continue;
    const double el = std::sqrt(q_factorial(n, rho.d) /
                                q_factorial(n - alpha, rho.d)) *
                      std::sqrt(q_factorial(m, rho.d) /
                                q_factorial(m - beta, rho.d));
    acc += rho.mat(m, n) * el;
  }
  return acc;
}

MomentTable moment_table_direct(const FockState& s, int gamma_max) {
  if (gamma_max > s.cutoff - kMomentMargin)
    throw Error(ErrorCode::OrderTooHigh,
                "moment_table_direct: gamma_max exceeds cutoff minus safety "
                "margin");
  MomentTable t(s.d, gamma_max);
  // Reuse A^k s across entries: powers[k] = A^k s.
  std::vector<FockState> powers;
  powers.push_back(s);
  for (int k = 1; k <= gamma_max; ++k)
    powers.push_back(apply_annihilation(powers.back()));
  for (int g = 0; g <= gamma_max; ++g)
    for (int a = 0; a <= g; ++a) {
      const FockState& u = powers[a];
      const FockState& v = powers[g - a];
      cplx acc{0.0, 0.0};
      for (int n = 0; n <= s.cutoff; ++n)
        acc += std::conj(u.amps[n]) * v.amps[n];
      t.set(a, g - a, acc);
    }
  return t;
}

cplx normal_order_coeff(const Eigen::MatrixXcd& F, int alpha, int beta,
                        const DeformationParam& d) {
  if (alpha < 0 || beta < 0)
    throw Error(ErrorCode::InvalidArgument,
                "normal_order_coeff: orders must be >= 0");
  if (alpha >= F.rows() || beta >= F.cols())
    throw Error(ErrorCode::InvalidArgument,
                "normal_order_coeff: matrix smaller than requested orders");
  cplx acc{0.0, 0.0};
  for (int k = 0; k <= std::min(alpha, beta); ++k) {
    const double coef =
        std::pow(d.q, k * (k - 1)) /
        (q_factorial(k, d) * std::sqrt(q_factorial(alpha - k, d) *
                                       q_factorial(beta - k, d)));
    const cplx term = F(alpha - k, beta - k) * coef;
    acc += (k % 2 == 0) ? term : -term;
  }
  return acc;
}

DensityMatrix density_from_moments(const MomentTable& t) {
  const int n_out = t.gamma_max / 2;
  Eigen::MatrixXcd rho(n_out + 1, n_out + 1);
  for (int i = 0; i <= n_out; ++i)
    for (int j = 0; j <= n_out; ++j) {
      const double denom = std::sqrt(q_factorial(i, t.d) * q_factorial(j, t.d));
      cplx acc{0.0, 0.0};
      for (int k = 0; i + j + 2 * k <= t.gamma_max; ++k) {
        const cplx m = t.at(j + k, i + k);  // throws IncompleteTable if unset
        const double coef =
            std::pow(t.d.q, k * (k - 1)) / (q_factorial(k, t.d) * denom);
        acc += (k % 2 == 0) ? m * coef : -m * coef;
      }
      rho(i, j) = acc;
    }
  DensityMatrix out{t.d, n_out, Eigen::MatrixXcd(), 0.0};
  out.asymmetry = (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
  out.mat = 0.5 * (rho + rho.adjoint().eval());
  return out;
}

DensityMatrix density_from_state(const FockState& s) {
  const int n = s.cutoff + 1;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = s.amps[i] * std::conj(s.amps[j]);
  return DensityMatrix{s.d, s.cutoff, std::move(m), 0.0};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const int n = std::max(a.cutoff, b.cutoff) + 1;
  Eigen::MatrixXcd diff = Eigen::MatrixXcd::Zero(n, n);
  diff.topLeftCorner(a.cutoff + 1, a.cutoff + 1) = a.mat;
  diff.topLeftCorner(b.cutoff + 1, b.cutoff + 1) -= b.mat;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure,
                "trace_distance: eigensolver did not converge");
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qtomo
