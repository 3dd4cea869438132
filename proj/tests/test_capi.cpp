#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "fock.hpp"
#include "quadrature.hpp"
#include "states.hpp"
#include "tomography.hpp"

#include <qtomo/qtomo_c.h>

using qtomo::cplx;
using qtomo::DeformationParam;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qtomo_capi_" + name))
      .string();
}

qt_state_spec coherent_spec(double re, double im = 0.0) {
  qt_state_spec spec{};
  spec.kind = QT_STATE_COHERENT;
  spec.alpha_re = re;
  spec.alpha_im = im;
  return spec;
}

struct StateHandle {
  qt_state* p = nullptr;
  ~StateHandle() { qt_state_free(p); }
};
struct GridHandle {
  qt_grid* p = nullptr;
  ~GridHandle() { qt_grid_free(p); }
};
struct TableHandle {
  qt_table* p = nullptr;
  ~TableHandle() { qt_table_free(p); }
};

}  // namespace

TEST_CASE("status names") {
  CHECK(std::strcmp(qt_status_name(QT_OK), "ok") == 0);
  CHECK(std::strcmp(qt_status_name(QT_ERR_DIVERGENT_AMPLITUDE),
                    "divergent-amplitude") == 0);
  CHECK(std::strcmp(qt_status_name(QT_ERR_IO), "io-failure") == 0);
  CHECK(std::strcmp(qt_status_name(static_cast<qt_status>(99)), "unknown") ==
        0);
}

TEST_CASE("support bound") {
  double L = 0.0;
  REQUIRE(qt_support_bound(0.9, &L) == QT_OK);
  CHECK(L == doctest::Approx(3.086473033978053).epsilon(1e-15));

  double sentinel = -1.0;
  CHECK(qt_support_bound(1.5, &sentinel) == QT_ERR_INVALID_ARGUMENT);
  CHECK(sentinel == -1.0);  // out-parameter untouched on failure
  CHECK(qt_last_error_message()[0] != '\0');
  CHECK(qt_support_bound(0.9, nullptr) == QT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("state create matches the native constructor") {
  const double a = std::sqrt(0.5);
  StateHandle h;
  qt_state_spec spec = coherent_spec(a);
  REQUIRE(qt_state_create(0.9, &spec, 1e-12, &h.p) == QT_OK);

  qtomo::FockState ref = qtomo::make_coherent(a, DeformationParam(0.9), 1e-12);
  int cutoff = -1;
  REQUIRE(qt_state_cutoff(h.p, &cutoff) == QT_OK);
  REQUIRE(cutoff == ref.cutoff);
  for (int n = 0; n <= cutoff; ++n) {
    double re = 0.0, im = 0.0;
    REQUIRE(qt_state_amplitude(h.p, n, &re, &im) == QT_OK);
    CHECK(re == ref.amps[n].real());
    CHECK(im == ref.amps[n].imag());
  }

  double re = 0.0, im = 0.0;
  REQUIRE(qt_state_moment(h.p, 1, 2, &re, &im) == QT_OK);
  cplx want = qtomo::moment_direct(ref, 1, 2);
  CHECK(re == doctest::Approx(want.real()).epsilon(1e-14));
  CHECK(im == doctest::Approx(want.imag()).epsilon(1e-14));

  CHECK(qt_state_amplitude(h.p, cutoff + 1, &re, &im) ==
        QT_ERR_INVALID_ARGUMENT);
  CHECK(qt_state_amplitude(h.p, -1, &re, &im) == QT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("every state kind constructs") {
  qt_state_spec spec{};
  spec.alpha_re = 0.6;
  spec.r = 0.5;
  spec.phi_s = 0.3;
  spec.xi_re = 0.4;
  spec.xi_im = 0.1;
  spec.n = 2;
  for (int kind = QT_STATE_COHERENT; kind <= QT_STATE_NUMBER; ++kind) {
    spec.kind = kind;
    StateHandle h;
    REQUIRE(qt_state_create(0.8, &spec, 1e-12, &h.p) == QT_OK);
    int cutoff = 0;
    REQUIRE(qt_state_cutoff(h.p, &cutoff) == QT_OK);
    CHECK(cutoff >= 16);
  }
}

TEST_CASE("state creation error mapping") {
  qt_state_spec spec = coherent_spec(0.5);
  qt_state* sentinel = reinterpret_cast<qt_state*>(0x1);
  qt_state* out = sentinel;

  CHECK(qt_state_create(1.2, &spec, 1e-12, &out) == QT_ERR_INVALID_ARGUMENT);
  CHECK(out == sentinel);

  // Coherent amplitudes diverge at the deformed radius of convergence.
  double R = 1.0 / std::sqrt(1.0 - 0.81);
  qt_state_spec far = coherent_spec(R * 1.01);
  CHECK(qt_state_create(0.9, &far, 1e-12, &out) ==
        QT_ERR_DIVERGENT_AMPLITUDE);
  CHECK(std::strlen(qt_last_error_message()) > 0);

  qt_state_spec odd{};
  odd.kind = QT_STATE_CAT_ODD;
  CHECK(qt_state_create(0.9, &odd, 1e-12, &out) == QT_ERR_DEGENERATE_STATE);

  qt_state_spec bad = coherent_spec(0.5);
  bad.kind = 42;
  CHECK(qt_state_create(0.9, &bad, 1e-12, &out) == QT_ERR_INVALID_ARGUMENT);

  CHECK(qt_state_create(0.9, nullptr, 1e-12, &out) == QT_ERR_INVALID_ARGUMENT);
  CHECK(qt_state_create(0.9, &spec, 1e-12, nullptr) ==
        QT_ERR_INVALID_ARGUMENT);
  CHECK(out == sentinel);
}

TEST_CASE("grid accessors match the native grid") {
  StateHandle s;
  qt_state_spec spec = coherent_spec(std::sqrt(0.5));
  REQUIRE(qt_state_create(0.9, &spec, 1e-12, &s.p) == QT_OK);

  GridHandle g;
  REQUIRE(qt_grid_create(s.p, 8, 16, "gauss", &g.p) == QT_OK);
  int nt = 0, nx = 0;
  REQUIRE(qt_grid_dims(g.p, &nt, &nx) == QT_OK);
  CHECK(nt == 8);
  CHECK(nx == 16);

  qtomo::FockState ref =
      qtomo::make_coherent(std::sqrt(0.5), DeformationParam(0.9), 1e-12);
  qtomo::TomogramGrid want =
      qtomo::make_grid(ref, 8, 16, qtomo::XGridKind::GaussNodes);
  for (int i = 0; i < nt; ++i) {
    double th = 0.0;
    REQUIRE(qt_grid_theta(g.p, i, &th) == QT_OK);
    CHECK(th == want.thetas[i]);
  }
  for (int j = 0; j < nx; ++j) {
    double x = 0.0;
    REQUIRE(qt_grid_x(g.p, j, &x) == QT_OK);
    CHECK(x == want.xs[j]);
  }
  double v = 0.0;
  REQUIRE(qt_grid_value(g.p, 3, 7, &v) == QT_OK);
  CHECK(v == want.values(3, 7));
  double q = 0.0;
  REQUIRE(qt_grid_q(g.p, &q) == QT_OK);
  CHECK(q == 0.9);

  CHECK(qt_grid_value(g.p, 8, 0, &v) == QT_ERR_INVALID_ARGUMENT);
  CHECK(qt_grid_value(g.p, 0, 16, &v) == QT_ERR_INVALID_ARGUMENT);

  GridHandle u;
  REQUIRE(qt_grid_create(s.p, 4, 12, "uniform", &u.p) == QT_OK);
  GridHandle bad;
  CHECK(qt_grid_create(s.p, 4, 12, "chebyshev", &bad.p) ==
        QT_ERR_INVALID_ARGUMENT);
  CHECK(qt_grid_create(s.p, 1, 12, "gauss", &bad.p) ==
        QT_ERR_INVALID_ARGUMENT);
  CHECK(bad.p == nullptr);
}

TEST_CASE("grid file round trip through the C interface") {
  StateHandle s;
  qt_state_spec spec = coherent_spec(0.4, 0.2);
  REQUIRE(qt_state_create(0.85, &spec, 1e-12, &s.p) == QT_OK);
  GridHandle g;
  REQUIRE(qt_grid_create(s.p, 6, 10, "gauss", &g.p) == QT_OK);

  std::string path = temp_path("grid.json");
  REQUIRE(qt_grid_write(g.p, path.c_str(), "json", "{\"q\":0.85}") == QT_OK);

  GridHandle r;
  REQUIRE(qt_grid_read(path.c_str(), 0.85, &r.p) == QT_OK);
  int nt = 0, nx = 0;
  REQUIRE(qt_grid_dims(r.p, &nt, &nx) == QT_OK);
  CHECK(nt == 6);
  CHECK(nx == 10);
  double a = 0.0, b = 0.0;
  REQUIRE(qt_grid_value(g.p, 2, 3, &a) == QT_OK);
  REQUIRE(qt_grid_value(r.p, 2, 3, &b) == QT_OK);
  CHECK(a == b);

  GridHandle conflict;
  CHECK(qt_grid_read(path.c_str(), 0.7, &conflict.p) ==
        QT_ERR_INCOMPATIBLE_GRID);
  GridHandle missing;
  CHECK(qt_grid_read(temp_path("absent.json").c_str(), 0.85, &missing.p) ==
        QT_ERR_IO);
  CHECK(qt_grid_write(g.p, path.c_str(), "xml", nullptr) ==
        QT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("moment tables through the C interface") {
  StateHandle s;
  qt_state_spec spec = coherent_spec(std::sqrt(0.5));
  REQUIRE(qt_state_create(0.9, &spec, 1e-12, &s.p) == QT_OK);

  TableHandle direct;
  REQUIRE(qt_table_from_state_direct(s.p, 4, &direct.p) == QT_OK);
  int gmax = 0;
  REQUIRE(qt_table_gamma_max(direct.p, &gmax) == QT_OK);
  CHECK(gmax == 4);

  qtomo::FockState ref =
      qtomo::make_coherent(std::sqrt(0.5), DeformationParam(0.9), 1e-12);
  double re = 0.0, im = 0.0;
  REQUIRE(qt_table_entry(direct.p, 1, 1, &re, &im) == QT_OK);
  cplx want = qtomo::moment_direct(ref, 1, 1);
  CHECK(re == doctest::Approx(want.real()).epsilon(1e-14));
  CHECK(im == doctest::Approx(want.imag()).epsilon(1e-14));
  CHECK(qt_table_entry(direct.p, 4, 1, &re, &im) == QT_ERR_INCOMPLETE_TABLE);
  CHECK(qt_table_entry(direct.p, -1, 0, &re, &im) == QT_ERR_INVALID_ARGUMENT);

  TableHandle extracted;
  REQUIRE(qt_table_extract_from_state(s.p, 4, 0, &extracted.p) == QT_OK);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      double er = 0.0, ei = 0.0, dr = 0.0, di = 0.0;
      REQUIRE(qt_table_entry(extracted.p, a, b, &er, &ei) == QT_OK);
      REQUIRE(qt_table_entry(direct.p, a, b, &dr, &di) == QT_OK);
      CHECK(std::abs(cplx(er - dr, ei - di)) < 1e-8);
    }

  GridHandle g;
  REQUIRE(qt_grid_create(s.p, 64, 80, "gauss", &g.p) == QT_OK);
  TableHandle from_grid;
  double interp = -1.0;
  REQUIRE(qt_table_extract_from_grid(g.p, 2, 0, &interp, &from_grid.p) ==
          QT_OK);
  CHECK(interp >= 0.0);
  CHECK(interp < 1e-8);  // Gauss abscissas need no interpolation
  double er = 0.0, ei = 0.0, dr = 0.0, di = 0.0;
  REQUIRE(qt_table_entry(from_grid.p, 1, 1, &er, &ei) == QT_OK);
  REQUIRE(qt_table_entry(direct.p, 1, 1, &dr, &di) == QT_OK);
  CHECK(std::abs(cplx(er - dr, ei - di)) < 1e-6);

  std::string path = temp_path("table.csv");
  REQUIRE(qt_table_write(extracted.p, direct.p, path.c_str(), "csv",
                         nullptr) == QT_OK);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "alpha,beta,re,im,re_direct,im_direct,abs_err");
}

TEST_CASE("verification entry point") {
  char* report = nullptr;
  int ok = -1;
  std::string jpath = temp_path("verify.json");
  REQUIRE(qt_verify_run(0.0, jpath.c_str(), &report, &ok) == QT_OK);
  REQUIRE(report != nullptr);
  CHECK(ok == 1);
  CHECK(std::string(report).find("PASS") != std::string::npos);
  qt_string_free(report);

  std::ifstream in(jpath);
  REQUIRE(in.good());
  nlohmann::json doc = nlohmann::json::parse(in);
  CHECK(doc["all_passed"].get<bool>());
  CHECK(doc["checks"].size() >= 12);

  // Sabotage: corrupt the deformed integers and the suites must notice.
  char* bad_report = nullptr;
  int bad_ok = -1;
  REQUIRE(qt_verify_run(1e-6, nullptr, &bad_report, &bad_ok) == QT_OK);
  REQUIRE(bad_report != nullptr);
  CHECK(bad_ok == 0);
  CHECK(std::string(bad_report).find("FAIL") != std::string::npos);
  qt_string_free(bad_report);
}
