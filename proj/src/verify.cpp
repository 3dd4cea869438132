#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <utility>

#include <json.hpp>

#include "fock.hpp"
#include "moments.hpp"
#include "qmath.hpp"
#include "quadrature.hpp"
#include "states.hpp"
#include "tomography.hpp"

namespace qtomo {
namespace {

using std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

CheckResult check(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

double inner_real(const FockState& a, const FockState& b) {
  int n = std::min(a.cutoff, b.cutoff);
  cplx s = 0.0;
  for (int k = 0; k <= n; ++k) s += std::conj(a.amps[k]) * b.amps[k];
  return s.real();
}

CheckResult binomial_delta_check() {
  double worst = 0.0;
  for (double q : {0.3, 0.5, 0.7, 0.9}) {
    DeformationParam d(q);
    for (int p = 0; p <= 12; ++p)
      worst = std::max(worst, std::abs(q_binomial_delta(p, d) - (p == 0 ? 1.0 : 0.0)));
  }
  return check("q-binomial-delta", worst, 1e-10, "p <= 12, q in {0.3,0.5,0.7,0.9}");
}

CheckResult ladder_algebra_check(const std::vector<double>& qs) {
  double worst = 0.0;
  for (double q : qs) {
    DeformationParam d(q);
    for (int n = 0; n <= 60; ++n) {
      FockState s = make_number(n, d);
      double lower = inner_real(s, apply_creation(apply_annihilation(s)));
      double raise = inner_real(s, apply_annihilation(apply_creation(s)));
      worst = std::max(worst, std::abs(raise - q * q * lower - 1.0));
    }
  }
  return check("ladder-algebra", worst, 1e-12, "<n|(AA+ - q^2 A+A)|n> = 1, n <= 60");
}

// Gauss route: the rule of order m integrates J_i J_j exactly for i+j <= 2m-1.
CheckResult orthonormality_gauss_check(const std::vector<double>& qs) {
  constexpr int kMax = 20;
  double worst = 0.0;
  for (double q : qs) {
    DeformationParam d(q);
    QuadratureRule rule = gauss_rule(d, 80);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(kMax + 1, kMax + 1);
    for (int k = 0; k < rule.order; ++k) {
      std::vector<double> J = eval_J(kMax, rule.nodes[k], d);
      for (int i = 0; i <= kMax; ++i)
        for (int j = i; j <= kMax; ++j) gram(i, j) += rule.weights[k] * J[i] * J[j];
    }
    for (int i = 0; i <= kMax; ++i)
      for (int j = i; j <= kMax; ++j)
        worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  }
  return check("orthonormality-gauss", worst, 1e-8, "Gram via 80-node rule, m,n <= 20");
}

// Dense route: trapezoid in the angle substitution X = L cos(phi); the
// integrand vanishes at both endpoints, so convergence is spectral.
CheckResult orthonormality_dense_check(const std::vector<double>& qs) {
  constexpr int kMax = 20;
  constexpr int kPanels = 4096;
  double worst = 0.0;
  for (double q : qs) {
    DeformationParam d(q);
    double L = support_bound(d);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(kMax + 1, kMax + 1);
    for (int k = 1; k < kPanels; ++k) {
      double phi = pi * k / kPanels;
      double x = L * std::cos(phi);
      double w = vacuum_density(x, d) * L * std::sin(phi) * (pi / kPanels);
      std::vector<double> J = eval_J(kMax, x, d);
      for (int i = 0; i <= kMax; ++i)
        for (int j = i; j <= kMax; ++j) gram(i, j) += w * J[i] * J[j];
    }
    for (int i = 0; i <= kMax; ++i)
      for (int j = i; j <= kMax; ++j)
        worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  }
  return check("orthonormality-dense", worst, 1e-8, "Gram via 4096-panel trapezoid");
}

// Product linearization: the k-sum over lowered index pairs collapses to a
// single polynomial of the summed degree.
CheckResult linearization_check(const std::vector<double>& qs) {
  double worst = 0.0;
  for (double q : qs) {
    DeformationParam d(q);
    double L = support_bound(d);
    for (int i = 0; i < 50; ++i) {
      double x = -L + (i + 0.5) * 2.0 * L / 50.0;
      std::vector<double> J = eval_J(10, x, d);
      for (int a = 0; a <= 5; ++a) {
        for (int b = 0; b <= 5; ++b) {
          double lhs = 0.0;
          double sign = 1.0;
          for (int k = 0; k <= std::min(a, b); ++k) {
            lhs += sign * std::pow(q, k * (k - 1)) * J[a - k] * J[b - k] /
                   (q_factorial(k, d) * std::sqrt(q_factorial(a - k, d) * q_factorial(b - k, d)));
            sign = -sign;
          }
          double rhs = std::sqrt(q_factorial(a + b, d)) /
                       (q_factorial(a, d) * q_factorial(b, d)) * J[a + b];
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
  }
  return check("linearization-identity", worst, 1e-10, "alpha,beta <= 5, 50 abscissas");
}

double residual_norm(const FockState& lhs, cplx xi, const FockState& s) {
  double r2 = 0.0;
  for (int n = 0; n <= lhs.cutoff; ++n) {
    cplx want = n <= s.cutoff ? xi * s.amps[n] : cplx(0.0);
    r2 += std::norm(lhs.amps[n] - want);
  }
  return std::sqrt(r2);
}

CheckResult eigenstate_check(const std::vector<double>& qs) {
  double worst = 0.0;
  cplx xi = -std::tanh(0.5);
  for (double q : qs) {
    DeformationParam d(q);
    FockState even = make_tao_eigenstate(xi, TaoParity::Even, d, 1e-18);
    FockState odd = make_tao_eigenstate(xi, TaoParity::Odd, d, 1e-18);
    worst = std::max(worst, residual_norm(apply_tao_even(even), xi, even));
    worst = std::max(worst, residual_norm(apply_tao_odd(odd), xi, odd));
  }
  return check("eigenstate-residuals", worst, 1e-8, "xi = -tanh(1/2), both parities");
}

std::vector<std::pair<std::string, FockState>> figure_states(double eps = 1e-12) {
  cplx alpha = std::sqrt(0.5);
  std::vector<std::pair<std::string, FockState>> out;
  for (double q : {0.9, 0.7}) {
    DeformationParam d(q);
    auto tag = [q](const char* kind) { return fmt("q=%.1f ", q) + kind; };
    out.emplace_back(tag("cat-even"), make_cat(alpha, +1, d, eps));
    out.emplace_back(tag("cat-odd"), make_cat(alpha, -1, d, eps));
    out.emplace_back(tag("squeezed-vacuum"),
                     make_squeezed(0.5, 0.0, SqueezedKind::Vacuum, d, eps));
    out.emplace_back(tag("squeezed-excited"),
                     make_squeezed(0.5, 0.0, SqueezedKind::Excited, d, eps));
  }
  return out;
}

CheckResult moment_round_trip_check() {
  constexpr int kGamma = 6;
  double worst = 0.0;
  std::string at;
  for (const auto& [tag, s] : figure_states()) {
    MomentTable direct = moment_table_direct(s, kGamma);
    QuadratureRule rule = gauss_rule(s.d, default_rule_order(kGamma, s.cutoff));
    MomentTable got = moment_table_from_tomogram(tomogram_fn(s), kGamma, rule);
    for (int g = 0; g <= kGamma; ++g) {
      for (int a = 0; a <= g; ++a) {
        double dev = std::abs(got.at(a, g - a) - direct.at(a, g - a));
        if (dev > worst) {
          worst = dev;
          at = tag;
        }
      }
    }
  }
  return check("moment-round-trip", worst, 1e-6, "gamma <= 6, figure states; worst at " + at);
}

CheckResult density_round_trip_check() {
  DeformationParam d(0.9);
  double worst = 0.0;

  FockState one = make_number(1, d);
  FockState cat = make_cat(std::sqrt(0.5), +1, d, 1e-18);
  for (const auto& [s, gamma] : {std::pair<const FockState&, int>{one, 2}, {cat, 20}}) {
    DensityMatrix rho = density_from_moments(moment_table_direct(s, gamma));
    DensityMatrix ref = density_from_state(s);
    int n = rho.cutoff + 1;
    worst = std::max(worst,
                     (rho.mat - ref.mat.topLeftCorner(n, n)).cwiseAbs().maxCoeff());
    worst = std::max(worst, rho.asymmetry);
  }
  return check("density-round-trip", worst, 1e-6, "|1> (Gamma=2) and even cat (Gamma=20)");
}

CheckResult normalization_check() {
  double worst = 0.0;
  DeformationParam d05(0.5), d07(0.7), d09(0.9);
  std::vector<FockState> states = {
      make_cat(std::sqrt(0.5), +1, d09),
      make_squeezed(0.5, 0.0, SqueezedKind::Excited, d07),
      make_coherent(std::sqrt(0.5), d05),
  };
  for (const FockState& s : states) {
    TomogramGrid g = make_grid(s, 16, 96);
    for (int i = 0; i < 16; ++i)
      worst = std::max(worst, std::abs(per_theta_norm(g, i) - 1.0));
  }
  return check("tomogram-normalization", worst, 1e-6, "16 angles, 96 Gauss nodes");
}

// On a grid with even n_theta over [0, 2pi) and sign-symmetric abscissas,
// omega(-X, theta + pi) lands exactly on stored samples.
CheckResult reflection_check() {
  double worst = 0.0;
  DeformationParam d(0.8);
  std::vector<FockState> states = {
      make_coherent(cplx(0.5, 0.3), d),
      make_squeezed(0.5, 0.7, SqueezedKind::Excited, d),
  };
  for (const FockState& s : states) {
    TomogramGrid g = make_grid(s, 16, 48);
    int nt = 16, nx = 48;
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nx; ++j)
        worst = std::max(worst,
                         std::abs(g.values(i, j) - g.values((i + nt / 2) % nt, nx - 1 - j)));
  }
  return check("reflection-symmetry", worst, 1e-10, "omega(-X, theta+pi) = omega(X, theta)");
}

CheckResult periodicity_check() {
  double worst = 0.0;
  DeformationParam d(0.9);
  std::vector<FockState> states = {
      make_cat(std::sqrt(0.5), +1, d),
      make_squeezed(0.5, 0.0, SqueezedKind::Vacuum, d),
  };
  for (const FockState& s : states) {
    TomogramGrid g = make_grid(s, 16, 48);
    int nt = 16, nx = 48;
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nx; ++j)
        worst = std::max(worst, std::abs(g.values(i, j) - g.values((i + nt / 2) % nt, j)));
  }
  return check("pi-periodicity-even-states", worst, 1e-10, "fixed-parity states");
}

CheckResult peak_trend_check() {
  bool ok = true;
  double min_margin = 1e300;
  std::string detail;
  for (const char* kind : {"cat-even", "cat-odd", "squeezed-vacuum", "squeezed-excited"}) {
    double peak[2];
    int slot = 0;
    for (double q : {0.7, 0.9}) {
      DeformationParam d(q);
      StateSpec spec;
      spec.kind = state_kind_from_name(kind);
      spec.alpha = std::sqrt(0.5);
      spec.r = 0.5;
      TomogramGrid g = make_grid(make_state(spec, d), 64, 64);
      peak[slot++] = g.values.maxCoeff();
    }
    ok = ok && peak[0] > peak[1];
    min_margin = std::min(min_margin, peak[0] - peak[1]);
    detail += fmt("%.3f>%.3f ", peak[0], peak[1]);
  }
  CheckResult r = check("peak-trend", 0.0, 0.0, "max omega, q=0.7 vs 0.9: " + detail);
  r.passed = ok;
  r.measured = min_margin;
  return r;
}

CheckResult quadrature_convergence_check() {
  DeformationParam d(0.9);
  FockState s = make_cat(std::sqrt(0.5), +1, d);
  TomogramFn omega = tomogram_fn(s);
  int base = default_rule_order(4, s.cutoff);
  cplx a = project(omega, 0.7, 4, gauss_rule(d, base));
  cplx b = project(omega, 0.7, 4, gauss_rule(d, 2 * base));
  return check("quadrature-convergence", std::abs(a - b), 1e-10, "projection vs doubled rule");
}

double pearson(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::ArrayXXd x = a.array() - a.mean();
  Eigen::ArrayXXd y = b.array() - b.mean();
  return (x * y).sum() / std::sqrt((x * x).sum() * (y * y).sum());
}

// Report-only: the even cat tomogram tracks the squeezed-vacuum tomogram far
// better after a quarter-period angle shift than without one.
CheckResult pair_correlation_check() {
  DeformationParam d(0.9);
  TomogramGrid cat = make_grid(make_cat(std::sqrt(0.5), +1, d), 64, 64);
  TomogramGrid sq = make_grid(make_squeezed(0.5, 0.0, SqueezedKind::Vacuum, d), 64, 64);
  Eigen::MatrixXd shifted(64, 64);
  for (int i = 0; i < 64; ++i) shifted.row(i) = cat.values.row((i + 16) % 64);
  double with_shift = pearson(shifted, sq.values);
  double without = pearson(cat.values, sq.values);
  CheckResult r = check("pair-correlation", with_shift, 0.0,
                        fmt("corr %.4f shifted vs %.4f unshifted", with_shift, without));
  r.passed = true;
  return r;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  out.push_back(binomial_delta_check());
  out.push_back(ladder_algebra_check(opts.qs));
  out.push_back(orthonormality_gauss_check(opts.qs));
  out.push_back(orthonormality_dense_check(opts.qs));
  out.push_back(linearization_check(opts.qs));
  out.push_back(eigenstate_check(opts.qs));
  out.push_back(moment_round_trip_check());
  out.push_back(density_round_trip_check());
  out.push_back(normalization_check());
  out.push_back(reflection_check());
  out.push_back(periodicity_check());
  out.push_back(peak_trend_check());
  out.push_back(quadrature_convergence_check());
  out.push_back(pair_correlation_check());
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

std::string verification_report_text(const std::vector<CheckResult>& results) {
  std::string out;
  for (const CheckResult& r : results) {
    out += r.passed ? "[PASS] " : "[FAIL] ";
    out += r.name;
    out += fmt(": measured=%.3e", r.measured);
    if (r.tolerance > 0.0) out += fmt(" tol=%.0e", r.tolerance);
    if (!r.detail.empty()) out += " (" + r.detail + ")";
    out += "\n";
  }
  out += all_passed(results) ? "all checks passed\n" : "VERIFICATION FAILED\n";
  return out;
}

std::string verification_report_json(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& r : results)
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"measured", r.measured},
                      {"tolerance", r.tolerance},
                      {"detail", r.detail}});
  nlohmann::json doc{{"all_passed", all_passed(results)}, {"checks", checks}};
  return doc.dump(2) + "\n";
}

}  // namespace qtomo
