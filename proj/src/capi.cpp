#include "qtomo/qtomo_c.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <utility>

#include "errors.hpp"
#include "fock.hpp"
#include "io.hpp"
#include "moments.hpp"
#include "qmath.hpp"
#include "quadrature.hpp"
#include "states.hpp"
#include "tomography.hpp"
#include "verify.hpp"

struct qt_state {
  qtomo::FockState v;
};
struct qt_grid {
  qtomo::TomogramGrid v;
};
struct qt_table {
  qtomo::MomentTable v;
};

namespace {

thread_local std::string g_last_error;

qt_status map_code(qtomo::ErrorCode c) {
  using qtomo::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return QT_ERR_INVALID_ARGUMENT;
    case ErrorCode::DivergentAmplitude: return QT_ERR_DIVERGENT_AMPLITUDE;
    case ErrorCode::DegenerateState: return QT_ERR_DEGENERATE_STATE;
    case ErrorCode::TruncationOverflow: return QT_ERR_TRUNCATION_OVERFLOW;
    case ErrorCode::OrderTooHigh: return QT_ERR_ORDER_TOO_HIGH;
    case ErrorCode::IncompleteTable: return QT_ERR_INCOMPLETE_TABLE;
    case ErrorCode::IllConditioned: return QT_ERR_ILL_CONDITIONED;
    case ErrorCode::DegenerateAngles: return QT_ERR_DEGENERATE_ANGLES;
    case ErrorCode::InsufficientRule: return QT_ERR_INSUFFICIENT_RULE;
    case ErrorCode::EigenFailure: return QT_ERR_EIGEN_FAILURE;
    case ErrorCode::IncompatibleGrid: return QT_ERR_INCOMPATIBLE_GRID;
    case ErrorCode::IoFailure: return QT_ERR_IO;
  }
  return QT_ERR_UNKNOWN;
}

template <typename F>
qt_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QT_OK;
  } catch (const qtomo::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QT_ERR_UNKNOWN;
  }
}

qt_status fail_arg(const char* msg) {
  g_last_error = msg;
  return QT_ERR_INVALID_ARGUMENT;
}

qtomo::StateSpec to_spec(const qt_state_spec& in) {
  using qtomo::StateKind;
  qtomo::StateSpec out;
  switch (in.kind) {
    case QT_STATE_COHERENT: out.kind = StateKind::Coherent; break;
    case QT_STATE_CAT_EVEN: out.kind = StateKind::CatEven; break;
    case QT_STATE_CAT_ODD: out.kind = StateKind::CatOdd; break;
    case QT_STATE_TAO_EVEN: out.kind = StateKind::TaoEven; break;
    case QT_STATE_TAO_ODD: out.kind = StateKind::TaoOdd; break;
    case QT_STATE_SQUEEZED_VACUUM: out.kind = StateKind::SqueezedVacuum; break;
    case QT_STATE_SQUEEZED_EXCITED: out.kind = StateKind::SqueezedExcited; break;
    case QT_STATE_NUMBER: out.kind = StateKind::Number; break;
    default:
      throw qtomo::Error(qtomo::ErrorCode::InvalidArgument,
                         "unknown state kind " + std::to_string(in.kind));
  }
  out.alpha = {in.alpha_re, in.alpha_im};
  out.r = in.r;
  out.phi_s = in.phi_s;
  out.xi = {in.xi_re, in.xi_im};
  out.n = in.n;
  return out;
}

void write_any(const std::string& fmt, const std::string& path,
               const std::string& echo, const auto& obj,
               const qtomo::MomentTable* ref = nullptr) {
  if constexpr (std::is_same_v<std::decay_t<decltype(obj)>, qtomo::MomentTable>) {
    if (fmt == "csv") qtomo::write_moments_csv(obj, ref, path, echo);
    else if (fmt == "json") qtomo::write_moments_json(obj, ref, path, echo);
    else throw qtomo::Error(qtomo::ErrorCode::InvalidArgument, "format must be csv or json");
  } else if constexpr (std::is_same_v<std::decay_t<decltype(obj)>, qtomo::TomogramGrid>) {
    if (fmt == "csv") qtomo::write_grid_csv(obj, path, echo);
    else if (fmt == "json") qtomo::write_grid_json(obj, path, echo);
    else throw qtomo::Error(qtomo::ErrorCode::InvalidArgument, "format must be csv or json");
  } else {
    if (fmt == "csv") qtomo::write_state_csv(obj, path, echo);
    else if (fmt == "json") qtomo::write_state_json(obj, path, echo);
    else throw qtomo::Error(qtomo::ErrorCode::InvalidArgument, "format must be csv or json");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Restores the deformed-integer corruption hook no matter how the
// verification run exits.
struct CorruptionScope {
  double saved;
  explicit CorruptionScope(double v) : saved(qtomo::detail::q_int_corruption) {
    qtomo::detail::q_int_corruption = v;
  }
  ~CorruptionScope() { qtomo::detail::q_int_corruption = saved; }
};

}  // namespace

extern "C" {

const char* qt_status_name(qt_status status) {
  switch (status) {
    case QT_OK: return "ok";
    case QT_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case QT_ERR_DIVERGENT_AMPLITUDE: return "divergent-amplitude";
    case QT_ERR_DEGENERATE_STATE: return "degenerate-state";
    case QT_ERR_TRUNCATION_OVERFLOW: return "truncation-overflow";
    case QT_ERR_ORDER_TOO_HIGH: return "order-too-high";
    case QT_ERR_INCOMPLETE_TABLE: return "incomplete-table";
    case QT_ERR_ILL_CONDITIONED: return "ill-conditioned";
    case QT_ERR_DEGENERATE_ANGLES: return "degenerate-angles";
    case QT_ERR_INSUFFICIENT_RULE: return "insufficient-rule";
    case QT_ERR_EIGEN_FAILURE: return "eigen-failure";
    case QT_ERR_INCOMPATIBLE_GRID: return "incompatible-grid";
    case QT_ERR_IO: return "io-failure";
    case QT_ERR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char* qt_last_error_message(void) { return g_last_error.c_str(); }

void qt_string_free(char* s) { std::free(s); }

qt_status qt_support_bound(double q, double* out) {
  if (!out) return fail_arg("out is null");
  return guard([&] { *out = qtomo::support_bound(qtomo::DeformationParam(q)); });
}

qt_status qt_state_create(double q, const qt_state_spec* spec, double eps_trunc,
                          qt_state** out) {
  if (!spec || !out) return fail_arg("spec/out is null");
  return guard([&] {
    qtomo::DeformationParam d(q);
    auto s = std::make_unique<qt_state>(
        qt_state{qtomo::make_state(to_spec(*spec), d, eps_trunc)});
    *out = s.release();
  });
}

void qt_state_free(qt_state* s) { delete s; }

qt_status qt_state_cutoff(const qt_state* s, int* out) {
  if (!s || !out) return fail_arg("state/out is null");
  *out = s->v.cutoff;
  return QT_OK;
}

qt_status qt_state_amplitude(const qt_state* s, int n, double* re, double* im) {
  if (!s || !re || !im) return fail_arg("state/out is null");
  return guard([&] {
    if (n < 0 || n > s->v.cutoff)
      throw qtomo::Error(qtomo::ErrorCode::InvalidArgument,
                         "occupation index out of range");
    *re = s->v.amps[n].real();
    *im = s->v.amps[n].imag();
  });
}

qt_status qt_state_moment(const qt_state* s, int alpha, int beta, double* re,
                          double* im) {
  if (!s || !re || !im) return fail_arg("state/out is null");
  return guard([&] {
    qtomo::cplx m = qtomo::moment_direct(s->v, alpha, beta);
    *re = m.real();
    *im = m.imag();
  });
}

qt_status qt_state_write(const qt_state* s, const char* path,
                         const char* format, const char* config_echo) {
  if (!s || !path || !format) return fail_arg("state/path/format is null");
  return guard([&] { write_any(format, path, config_echo ? config_echo : "", s->v); });
}

qt_status qt_grid_create(const qt_state* s, int n_theta, int n_x,
                         const char* xgrid, qt_grid** out) {
  if (!s || !xgrid || !out) return fail_arg("state/xgrid/out is null");
  return guard([&] {
    qtomo::XGridKind kind;
    std::string g = xgrid;
    if (g == "gauss") kind = qtomo::XGridKind::GaussNodes;
    else if (g == "uniform") kind = qtomo::XGridKind::UniformOpen;
    else
      throw qtomo::Error(qtomo::ErrorCode::InvalidArgument,
                         "xgrid must be gauss or uniform");
    auto w = std::make_unique<qt_grid>(
        qt_grid{qtomo::make_grid(s->v, n_theta, n_x, kind)});
    *out = w.release();
  });
}

void qt_grid_free(qt_grid* g) { delete g; }

qt_status qt_grid_dims(const qt_grid* g, int* n_theta, int* n_x) {
  if (!g || !n_theta || !n_x) return fail_arg("grid/out is null");
  *n_theta = static_cast<int>(g->v.thetas.size());
  *n_x = static_cast<int>(g->v.xs.size());
  return QT_OK;
}

qt_status qt_grid_theta(const qt_grid* g, int i, double* out) {
  if (!g || !out) return fail_arg("grid/out is null");
  if (i < 0 || i >= static_cast<int>(g->v.thetas.size()))
    return fail_arg("theta index out of range");
  *out = g->v.thetas[i];
  return QT_OK;
}

qt_status qt_grid_x(const qt_grid* g, int j, double* out) {
  if (!g || !out) return fail_arg("grid/out is null");
  if (j < 0 || j >= static_cast<int>(g->v.xs.size()))
    return fail_arg("x index out of range");
  *out = g->v.xs[j];
  return QT_OK;
}

qt_status qt_grid_value(const qt_grid* g, int i, int j, double* out) {
  if (!g || !out) return fail_arg("grid/out is null");
  if (i < 0 || i >= g->v.values.rows() || j < 0 || j >= g->v.values.cols())
    return fail_arg("grid index out of range");
  *out = g->v.values(i, j);
  return QT_OK;
}

qt_status qt_grid_q(const qt_grid* g, double* out) {
  if (!g || !out) return fail_arg("grid/out is null");
  *out = g->v.d.q;
  return QT_OK;
}

qt_status qt_grid_write(const qt_grid* g, const char* path, const char* format,
                        const char* config_echo) {
  if (!g || !path || !format) return fail_arg("grid/path/format is null");
  return guard([&] { write_any(format, path, config_echo ? config_echo : "", g->v); });
}

qt_status qt_grid_read(const char* path, double fallback_q, qt_grid** out) {
  if (!path || !out) return fail_arg("path/out is null");
  return guard([&] {
    auto w = std::make_unique<qt_grid>(qt_grid{qtomo::read_grid(path, fallback_q)});
    *out = w.release();
  });
}

qt_status qt_table_from_state_direct(const qt_state* s, int gamma_max,
                                     qt_table** out) {
  if (!s || !out) return fail_arg("state/out is null");
  return guard([&] {
    auto w = std::make_unique<qt_table>(
        qt_table{qtomo::moment_table_direct(s->v, gamma_max)});
    *out = w.release();
  });
}

qt_status qt_table_extract_from_state(const qt_state* s, int gamma_max,
                                      int rule_order, qt_table** out) {
  if (!s || !out) return fail_arg("state/out is null");
  return guard([&] {
    int order = rule_order > 0 ? rule_order
                               : qtomo::default_rule_order(gamma_max, s->v.cutoff);
    qtomo::QuadratureRule rule = qtomo::gauss_rule(s->v.d, order);
    auto w = std::make_unique<qt_table>(qt_table{
        qtomo::moment_table_from_tomogram(qtomo::tomogram_fn(s->v), gamma_max, rule)});
    *out = w.release();
  });
}

qt_status qt_table_extract_from_grid(const qt_grid* g, int gamma_max,
                                     int rule_order, double* interp_error,
                                     qt_table** out) {
  if (!g || !out) return fail_arg("grid/out is null");
  return guard([&] {
    // Rule of order n_x: for Gauss grids the nodes coincide with the samples,
    // so interpolation is exact there.
    int order = rule_order > 0 ? rule_order : static_cast<int>(g->v.xs.size());
    qtomo::QuadratureRule rule = qtomo::gauss_rule(g->v.d, order);
    qtomo::GridExtractionReport report;
    auto w = std::make_unique<qt_table>(
        qt_table{qtomo::moment_table_from_grid(g->v, gamma_max, rule, &report)});
    if (interp_error) *interp_error = report.interp_error_estimate;
    *out = w.release();
  });
}

void qt_table_free(qt_table* t) { delete t; }

qt_status qt_table_gamma_max(const qt_table* t, int* out) {
  if (!t || !out) return fail_arg("table/out is null");
  *out = t->v.gamma_max;
  return QT_OK;
}

qt_status qt_table_entry(const qt_table* t, int alpha, int beta, double* re,
                         double* im) {
  if (!t || !re || !im) return fail_arg("table/out is null");
  return guard([&] {
    qtomo::cplx m = t->v.at(alpha, beta);
    *re = m.real();
    *im = m.imag();
  });
}

qt_status qt_table_write(const qt_table* t, const qt_table* reference,
                         const char* path, const char* format,
                         const char* config_echo) {
  if (!t || !path || !format) return fail_arg("table/path/format is null");
  return guard([&] {
    write_any(format, path, config_echo ? config_echo : "", t->v,
              reference ? &reference->v : nullptr);
  });
}

qt_status qt_verify_run(double inject_qint_error, const char* json_out_path,
                        char** report_text, int* all_passed) {
  return guard([&] {
    CorruptionScope scope(inject_qint_error);
    std::vector<qtomo::CheckResult> results = qtomo::run_verification();
    if (json_out_path) {
      std::ofstream f(json_out_path);
      f << qtomo::verification_report_json(results);
      if (!f)
        throw qtomo::Error(qtomo::ErrorCode::IoFailure,
                           std::string("cannot write ") + json_out_path);
    }
    if (report_text) *report_text = dup_string(qtomo::verification_report_text(results));
    if (all_passed) *all_passed = qtomo::all_passed(results) ? 1 : 0;
  });
}

}  // extern "C"
