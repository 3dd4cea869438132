#include "moments.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace qtomo {

namespace {

constexpr double kConditionLimit = 1e8;
constexpr double kAngleSinFloor = 1e-6;

std::vector<double> default_angles(int gamma) {
  std::vector<double> a(gamma + 1);
  for (int k = 0; k <= gamma; ++k)
    a[k] = k * std::numbers::pi / (gamma + 1);
  return a;
}

void check_angles_distinct(const std::vector<double>& angles) {
  for (size_t i = 0; i < angles.size(); ++i)
    for (size_t j = i + 1; j < angles.size(); ++j)
      if (std::abs(std::sin(angles[j] - angles[i])) < 1e-12)
        throw Error(ErrorCode::DegenerateAngles,
                    "projection angles must be pairwise distinct mod pi");
}

// Scaled coefficients c_α = sqrt([γ]!)/([α]![γ−α]!).
std::vector<double> order_coeffs(int gamma, const DeformationParam& d) {
  std::vector<double> c(gamma + 1);
  const double fg = std::sqrt(q_factorial(gamma, d));
  for (int a = 0; a <= gamma; ++a)
    c[a] = fg / (q_factorial(a, d) * q_factorial(gamma - a, d));
  return c;
}

// Solves the phase system for one order given the projections.
ExtractedOrder solve_order(int gamma, const DeformationParam& d,
                           const std::vector<double>& angles,
                           const std::vector<cplx>& values) {
  const int n = gamma + 1;
  Eigen::MatrixXcd P(n, n);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      P(k, a) = std::exp(cplx{0.0, (2.0 * a - gamma) * angles[k]});
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      P, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues()(n - 1);
  const double cond =
      smin > 0.0 ? svd.singularValues()(0) / smin
                 : std::numeric_limits<double>::infinity();
  if (!(cond <= kConditionLimit))
    throw Error(ErrorCode::IllConditioned,
                "extract_order: phase system condition number " +
                    std::to_string(cond) + " exceeds 1e8");
  Eigen::VectorXcd I(n);
  for (int k = 0; k < n; ++k) I[k] = values[k];
  const Eigen::VectorXcd y = svd.solve(I);
  const std::vector<double> c = order_coeffs(gamma, d);
  ExtractedOrder out{std::vector<cplx>(n), 0.0, cond};
  for (int a = 0; a < n; ++a) out.moments[a] = y[a] / c[a];
  for (int a = 0; a < n; ++a)
    out.hermitian_deviation =
        std::max(out.hermitian_deviation,
                 std::abs(out.moments[a] - std::conj(out.moments[gamma - a])));
  return out;
}

}  // namespace

cplx project(const TomogramFn& omega, double theta, int gamma,
             const QuadratureRule& rule) {
  if (gamma < 0)
    throw Error(ErrorCode::InvalidArgument, "project: gamma must be >= 0");
  if (2 * rule.order - 1 < gamma)
    throw Error(ErrorCode::InsufficientRule,
                "project: rule order " + std::to_string(rule.order) +
                    " cannot integrate degree " + std::to_string(gamma));
  double acc = 0.0;
  for (int k = 0; k < rule.order; ++k) {
    const double x = rule.nodes[k];
    const double w = vacuum_density(x, rule.d);
    const std::vector<double> J = eval_J(gamma, x, rule.d);
    acc += rule.weights[k] * (omega(theta, x) / w) * J[gamma];
  }
  return cplx{acc, 0.0};
}

ProjectionVector project_vector(const TomogramFn& omega, int gamma,
                                const QuadratureRule& rule,
                                const std::vector<double>* angles) {
  ProjectionVector pv{gamma, angles ? *angles : default_angles(gamma), {}};
  if (static_cast<int>(pv.angles.size()) != gamma + 1)
    throw Error(ErrorCode::InvalidArgument,
                "project_vector: need exactly gamma+1 angles");
  check_angles_distinct(pv.angles);
  pv.values.reserve(gamma + 1);
  for (double th : pv.angles) pv.values.push_back(project(omega, th, gamma, rule));
  return pv;
}

cplx extract_first_moment(const TomogramFn& omega, double theta1, double theta2,
                          const QuadratureRule& rule) {
  const double s = std::sin(theta2 - theta1);
  if (std::abs(s) < kAngleSinFloor)
    throw Error(ErrorCode::DegenerateAngles,
                "extract_first_moment: angles coincide mod pi");
  const cplx I1 = project(omega, theta1, 1, rule);
  const cplx I2 = project(omega, theta2, 1, rule);
  return (std::exp(cplx{0.0, theta2}) * I1 - std::exp(cplx{0.0, theta1}) * I2) /
         (cplx{0.0, 2.0} * s);
}

ExtractedOrder extract_order(const TomogramFn& omega, int gamma,
                             const QuadratureRule& rule,
                             const std::vector<double>* angles) {
  const ProjectionVector pv = project_vector(omega, gamma, rule, angles);
  return solve_order(gamma, rule.d, pv.angles, pv.values);
}

MomentTable moment_table_from_tomogram(const TomogramFn& omega, int gamma_max,
                                       const QuadratureRule& rule) {
  if (2 * rule.order - 1 < 2 * gamma_max)
    throw Error(ErrorCode::InsufficientRule,
                "moment_table_from_tomogram: rule exactness does not cover "
                "degree 2*gamma_max");
  MomentTable t(rule.d, gamma_max);
  for (int g = 0; g <= gamma_max; ++g) {
    const ExtractedOrder eo = extract_order(omega, g, rule);
    for (int a = 0; a <= g; ++a) t.set(a, g - a, eo.moments[a]);
  }
  t.set(0, 0, cplx{1.0, 0.0});
  return t;
}

int default_rule_order(int gamma_max, int state_cutoff) {
  const int order = 2 * (gamma_max + 2 * state_cutoff + 1);
  return std::clamp(order, 64, 1024);
}

TomogramFn tomogram_fn(const FockState& s) {
  return [s](double theta, double X) { return tomogram_pure(s, theta, X); };
}

namespace {

// Barycentric interpolation setup from fixed sample nodes xs onto targets:
// row k of the coefficient matrix maps samples to the value at targets[k].
// Weights use the product formula with capacity rescaling to keep the
// running products inside double range.
Eigen::MatrixXd barycentric_matrix(const std::vector<double>& xs,
                                   const std::vector<double>& targets) {
  const int n = static_cast<int>(xs.size());
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  const double cap = 4.0 / (*mx - *mn);
  std::vector<double> lam(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j) lam[j] /= (xs[j] - xs[i]) * cap;
  const double scale = *mx - *mn;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(targets.size(), n);
  for (size_t k = 0; k < targets.size(); ++k) {
    const double X = targets[k];
    int exact = -1;
    for (int j = 0; j < n; ++j)
      if (std::abs(X - xs[j]) < 1e-14 * scale) {
        exact = j;
        break;
      }
    if (exact >= 0) {
      C(k, exact) = 1.0;
      continue;
    }
    double denom = 0.0;
    for (int j = 0; j < n; ++j) {
      const double r = lam[j] / (X - xs[j]);
      C(k, j) = r;
      denom += r;
    }
    C.row(k) /= denom;
  }
  return C;
}

// Residues of the grid angles mod pi, collapsed within 1e−12, keeping the
// first grid row realizing each residue.
std::vector<std::pair<double, int>> distinct_mod_pi(
    const std::vector<double>& thetas) {
  std::vector<std::pair<double, int>> out;  // (residue, grid row)
  for (size_t i = 0; i < thetas.size(); ++i) {
    double r = std::fmod(thetas[i], std::numbers::pi);
    if (r < 0.0) r += std::numbers::pi;
    bool dup = false;
    for (const auto& [res, row] : out) {
      double dist = std::abs(res - r);
      dist = std::min(dist, std::numbers::pi - dist);
      if (dist < 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) out.emplace_back(r, static_cast<int>(i));
  }
  return out;
}

}  // namespace

MomentTable moment_table_from_grid(const TomogramGrid& g, int gamma_max,
                                   const QuadratureRule& rule,
                                   GridExtractionReport* report) {
  if (std::abs(g.d.q - rule.d.q) > 1e-12)
    throw Error(ErrorCode::IncompatibleGrid,
                "moment_table_from_grid: grid q does not match rule q");
  if (2 * rule.order - 1 < 2 * gamma_max)
    throw Error(ErrorCode::InsufficientRule,
                "moment_table_from_grid: rule exactness does not cover "
                "degree 2*gamma_max");
  const auto residues = distinct_mod_pi(g.thetas);
  if (static_cast<int>(residues.size()) < gamma_max + 1)
    throw Error(ErrorCode::IncompatibleGrid,
                "moment_table_from_grid: grid carries " +
                    std::to_string(residues.size()) +
                    " angles distinct mod pi, need " +
                    std::to_string(gamma_max + 1));

  const Eigen::MatrixXd C = barycentric_matrix(g.xs, rule.nodes);

  // ratio(i, j) = omega(theta_i, x_j) / weight(x_j), the polynomial part.
  const int n_x = static_cast<int>(g.xs.size());
  std::vector<double> wv(n_x);
  for (int j = 0; j < n_x; ++j) wv[j] = vacuum_density(g.xs[j], g.d);

  // J table at rule nodes, orders 0..gamma_max.
  Eigen::MatrixXd Jn(rule.order, gamma_max + 1);
  for (int k = 0; k < rule.order; ++k) {
    const std::vector<double> J = eval_J(gamma_max, rule.nodes[k], rule.d);
    for (int gidx = 0; gidx <= gamma_max; ++gidx) Jn(k, gidx) = J[gidx];
  }

  // Interpolated node values per used grid row, filled lazily.
  std::map<int, Eigen::VectorXd> row_cache;
  const auto node_values = [&](int row) -> const Eigen::VectorXd& {
    auto it = row_cache.find(row);
    if (it != row_cache.end()) return it->second;
    Eigen::VectorXd f(n_x);
    for (int j = 0; j < n_x; ++j) f[j] = g.values(row, j) / wv[j];
    return row_cache.emplace(row, C * f).first->second;
  };

  MomentTable t(rule.d, gamma_max);
  for (int gamma = 0; gamma <= gamma_max; ++gamma) {
    // Pick gamma+1 grid angles nearest the ideal equispaced targets.
    std::vector<bool> used(residues.size(), false);
    std::vector<double> angles(gamma + 1);
    std::vector<int> rows(gamma + 1);
    for (int k = 0; k <= gamma; ++k) {
      const double target = k * std::numbers::pi / (gamma + 1);
      int best = -1;
      double best_dist = std::numeric_limits<double>::infinity();
      for (size_t r = 0; r < residues.size(); ++r) {
        if (used[r]) continue;
        double dist = std::abs(residues[r].first - target);
        dist = std::min(dist, std::numbers::pi - dist);
        if (dist < best_dist) {
          best_dist = dist;
          best = static_cast<int>(r);
        }
      }
      used[best] = true;
      rows[k] = residues[best].second;
      angles[k] = g.thetas[rows[k]];
    }
    std::vector<cplx> values(gamma + 1);
    for (int k = 0; k <= gamma; ++k) {
      const Eigen::VectorXd& f = node_values(rows[k]);
      double acc = 0.0;
      for (int node = 0; node < rule.order; ++node)
        acc += rule.weights[node] * f[node] * Jn(node, gamma);
      values[k] = cplx{acc, 0.0};
    }
    const ExtractedOrder eo = solve_order(gamma, rule.d, angles, values);
    for (int a = 0; a <= gamma; ++a) t.set(a, gamma - a, eo.moments[a]);
  }
  t.set(0, 0, cplx{1.0, 0.0});

  if (report) {
    // Leave-one-out check at the central sample node over the cached rows.
    const int mid = n_x / 2;
    std::vector<double> xs_red;
    xs_red.reserve(n_x - 1);
    for (int j = 0; j < n_x; ++j)
      if (j != mid) xs_red.push_back(g.xs[j]);
    const Eigen::MatrixXd Cred =
        barycentric_matrix(xs_red, std::vector<double>{g.xs[mid]});
    double err = 0.0;
    int sampled = 0;
    for (const auto& [row, unused] : row_cache) {
      (void)unused;
      if (sampled++ >= 4) break;
      Eigen::VectorXd f_red(n_x - 1);
      int idx = 0;
      for (int j = 0; j < n_x; ++j)
        if (j != mid) f_red[idx++] = g.values(row, j) / wv[j];
      const double est = (Cred * f_red)(0);
      err = std::max(err, std::abs(est - g.values(row, mid) / wv[mid]));
    }
    report->interp_error_estimate = err;
  }
  return t;
}

}  // namespace qtomo
