// Command-line front end.  Everything goes through the C API; this file owns
// only flag parsing, the config echo, and process exit codes.
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtomo/qtomo_c.h"

namespace {

constexpr const char* kVersion = "0.1.0";

struct StateDeleter {
  void operator()(qt_state* s) const { qt_state_free(s); }
};
struct GridDeleter {
  void operator()(qt_grid* g) const { qt_grid_free(g); }
};
struct TableDeleter {
  void operator()(qt_table* t) const { qt_table_free(t); }
};
using StatePtr = std::unique_ptr<qt_state, StateDeleter>;
using GridPtr = std::unique_ptr<qt_grid, GridDeleter>;
using TablePtr = std::unique_ptr<qt_table, TableDeleter>;

struct Options {
  double q = 0.9;
  std::string state = "coherent";
  double alpha_re = 0.7071067811865476;  // sqrt(1/2)
  double alpha_im = 0.0;
  double r = 0.5;
  double phi_s = 0.0;
  double xi_re = 0.0;
  double xi_im = 0.0;
  int n = 0;
  int ntheta = 64;
  int nx = 64;
  int gamma_max = 6;
  double trunc_eps = 1e-12;
  int order = 0;  // 0 = pick from the integrand degree
  std::string xgrid = "gauss";
  std::string format = "csv";
  std::string out;
  std::string in;
  double inject_qint_error = 0.0;
};

int state_kind_code(const std::string& name) {
  if (name == "coherent") return QT_STATE_COHERENT;
  if (name == "cat-even") return QT_STATE_CAT_EVEN;
  if (name == "cat-odd") return QT_STATE_CAT_ODD;
  if (name == "tao-even") return QT_STATE_TAO_EVEN;
  if (name == "tao-odd") return QT_STATE_TAO_ODD;
  if (name == "squeezed-vacuum") return QT_STATE_SQUEEZED_VACUUM;
  if (name == "squeezed-excited") return QT_STATE_SQUEEZED_EXCITED;
  if (name == "number") return QT_STATE_NUMBER;
  return -1;
}

// One-line JSON echoed into output files so results stay reproducible from
// the file alone.  Keys are sorted by the json container.
std::string config_echo(const Options& o, const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["q"] = o.q;
  j["state"] = o.state;
  j["alpha_re"] = o.alpha_re;
  j["alpha_im"] = o.alpha_im;
  j["r"] = o.r;
  j["phi_s"] = o.phi_s;
  j["xi_re"] = o.xi_re;
  j["xi_im"] = o.xi_im;
  j["n"] = o.n;
  j["ntheta"] = o.ntheta;
  j["nx"] = o.nx;
  j["gamma_max"] = o.gamma_max;
  j["trunc_eps"] = o.trunc_eps;
  j["order"] = o.order;
  j["xgrid"] = o.xgrid;
  j["format"] = o.format;
  if (!o.in.empty()) j["in"] = o.in;
  return j.dump();
}

int report(qt_status st, const char* what) {
  std::fprintf(stderr, "qtomo: %s failed (%s): %s\n", what, qt_status_name(st),
               qt_last_error_message());
  return static_cast<int>(st);
}

qt_status make_state(const Options& o, StatePtr& out) {
  int kind = state_kind_code(o.state);
  if (kind < 0) {
    std::fprintf(stderr, "qtomo: unknown state kind '%s'\n", o.state.c_str());
    return QT_ERR_INVALID_ARGUMENT;
  }
  qt_state_spec spec{};
  spec.kind = kind;
  spec.alpha_re = o.alpha_re;
  spec.alpha_im = o.alpha_im;
  spec.r = o.r;
  spec.phi_s = o.phi_s;
  spec.xi_re = o.xi_re;
  spec.xi_im = o.xi_im;
  spec.n = o.n;
  qt_state* raw = nullptr;
  qt_status st = qt_state_create(o.q, &spec, o.trunc_eps, &raw);
  if (st == QT_OK) out.reset(raw);
  return st;
}

int cmd_state(const Options& o) {
  StatePtr s;
  if (qt_status st = make_state(o, s); st != QT_OK) return report(st, "state construction");
  std::string echo = config_echo(o, "state");
  if (qt_status st = qt_state_write(s.get(), o.out.c_str(), o.format.c_str(), echo.c_str());
      st != QT_OK)
    return report(st, "state write");
  int cutoff = 0;
  qt_state_cutoff(s.get(), &cutoff);
  std::printf("wrote %s (cutoff %d)\n", o.out.c_str(), cutoff);
  return 0;
}

int cmd_tomogram(const Options& o) {
  StatePtr s;
  if (qt_status st = make_state(o, s); st != QT_OK) return report(st, "state construction");
  qt_grid* raw = nullptr;
  if (qt_status st = qt_grid_create(s.get(), o.ntheta, o.nx, o.xgrid.c_str(), &raw);
      st != QT_OK)
    return report(st, "tomogram evaluation");
  GridPtr g(raw);
  std::string echo = config_echo(o, "tomogram");
  if (qt_status st = qt_grid_write(g.get(), o.out.c_str(), o.format.c_str(), echo.c_str());
      st != QT_OK)
    return report(st, "grid write");
  std::printf("wrote %s (%d angles x %d abscissas)\n", o.out.c_str(), o.ntheta, o.nx);
  return 0;
}

int cmd_moments(const Options& o) {
  std::string echo = config_echo(o, "moments");
  TablePtr table;
  TablePtr reference;

  if (!o.in.empty()) {
    qt_grid* graw = nullptr;
    if (qt_status st = qt_grid_read(o.in.c_str(), o.q, &graw); st != QT_OK)
      return report(st, "grid read");
    GridPtr g(graw);
    double interp_err = 0.0;
    qt_table* traw = nullptr;
    if (qt_status st =
            qt_table_extract_from_grid(g.get(), o.gamma_max, o.order, &interp_err, &traw);
        st != QT_OK)
      return report(st, "moment retrieval");
    table.reset(traw);
    std::fprintf(stderr, "interpolation error estimate: %.3e\n", interp_err);
  } else {
    StatePtr s;
    if (qt_status st = make_state(o, s); st != QT_OK)
      return report(st, "state construction");
    qt_table* traw = nullptr;
    if (qt_status st = qt_table_extract_from_state(s.get(), o.gamma_max, o.order, &traw);
        st != QT_OK)
      return report(st, "moment retrieval");
    table.reset(traw);
    qt_table* rraw = nullptr;
    if (qt_status st = qt_table_from_state_direct(s.get(), o.gamma_max, &rraw);
        st != QT_OK)
      return report(st, "reference moments");
    reference.reset(rraw);
  }

  if (qt_status st = qt_table_write(table.get(), reference.get(), o.out.c_str(),
                                    o.format.c_str(), echo.c_str());
      st != QT_OK)
    return report(st, "table write");
  std::printf("wrote %s (orders 0..%d)\n", o.out.c_str(), o.gamma_max);
  return 0;
}

int cmd_verify(const Options& o) {
  char* text = nullptr;
  int ok = 0;
  qt_status st = qt_verify_run(o.inject_qint_error,
                               o.out.empty() ? nullptr : o.out.c_str(), &text, &ok);
  if (st != QT_OK) return report(st, "verification");
  std::fputs(text, stdout);
  qt_string_free(text);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed-oscillator optical tomography toolkit"};
  app.set_version_flag("--version", std::string("qtomo ") + kVersion);
  app.set_config("--config", "", "Read defaults from a TOML/INI file");
  app.require_subcommand(1);

  Options o;
  app.add_option("--q", o.q, "Deformation parameter, 0 < q < 1");
  app.add_option("--state", o.state,
                 "coherent | cat-even | cat-odd | tao-even | tao-odd | "
                 "squeezed-vacuum | squeezed-excited | number");
  app.add_option("--alpha-re", o.alpha_re, "Re alpha (coherent/cat)");
  app.add_option("--alpha-im", o.alpha_im, "Im alpha (coherent/cat)");
  app.add_option("--r", o.r, "Squeezing magnitude");
  app.add_option("--phi-s", o.phi_s, "Squeezing phase");
  app.add_option("--xi-re", o.xi_re, "Re xi (tao eigenstates)");
  app.add_option("--xi-im", o.xi_im, "Im xi (tao eigenstates)");
  app.add_option("--n", o.n, "Occupation number (number state)");
  app.add_option("--ntheta", o.ntheta, "Grid angles on [0, 2pi)");
  app.add_option("--nx", o.nx, "Grid abscissas");
  app.add_option("--gamma-max", o.gamma_max, "Highest total moment order");
  app.add_option("--trunc-eps", o.trunc_eps, "Truncation tail tolerance");
  app.add_option("--order", o.order, "Quadrature rule order (0 = automatic)");
  app.add_option("--xgrid", o.xgrid, "gauss | uniform")
      ->check(CLI::IsMember({"gauss", "uniform"}));
  app.add_option("--format", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "Output path");
  app.add_option("--in", o.in, "Input grid file (moments)");

  CLI::App* c_state = app.add_subcommand("state", "Write state amplitudes");
  CLI::App* c_tomogram = app.add_subcommand("tomogram", "Sample the tomogram on a grid");
  CLI::App* c_moments =
      app.add_subcommand("moments", "Retrieve normally ordered moments from a tomogram");
  CLI::App* c_verify = app.add_subcommand("verify", "Run the invariant suites");
  c_verify
      ->add_option("--inject-qint-error", o.inject_qint_error,
                   "Perturb deformed integers (self-test of the suites)")
      ->group("");  // hidden
  for (CLI::App* sub : {c_state, c_tomogram, c_moments, c_verify}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(c_verify)) return cmd_verify(o);
  if (o.out.empty()) {
    std::fprintf(stderr, "qtomo: --out is required\n");
    return static_cast<int>(QT_ERR_INVALID_ARGUMENT);
  }
  if (app.got_subcommand(c_state)) return cmd_state(o);
  if (app.got_subcommand(c_tomogram)) return cmd_tomogram(o);
  return cmd_moments(o);
}
