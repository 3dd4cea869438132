#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fock.hpp"
#include "states.hpp"
#include "tomography.hpp"

using namespace qtomo;
using std::numbers::pi;

namespace {

// Sup of |omega_fm(Gamma) - omega_pure| over a theta/X probe set.
double from_moments_sup_dev(const FockState& s, int gamma) {
  MomentTable t = moment_table_direct(s, gamma);
  double L = support_bound(s.d);
  double sup = 0.0;
  for (int it = 0; it < 9; ++it) {
    double theta = 2.0 * pi * it / 9.0;
    for (int ix = 0; ix < 80; ++ix) {
      double x = -0.98 * L + 1.96 * L * ix / 79.0;
      sup = std::max(sup, std::abs(tomogram_from_moments(t, theta, x, gamma) -
                                   tomogram_pure(s, theta, x)));
    }
  }
  return sup;
}

}  // namespace

TEST_CASE("vacuum tomogram is the angle-independent vacuum density") {
  DeformationParam d(0.9);
  FockState vac = make_number(0, d);
  for (double theta : {0.0, 0.7, 2.0, 5.5})
    for (double x : {-2.5, -0.4, 0.0, 1.8})
      CHECK(tomogram_pure(vac, theta, x) ==
            doctest::Approx(vacuum_density(x, d)).epsilon(1e-14));
  CHECK(tomogram_pure(vac, 0.3, 2.0 * d.L) == 0.0);
}

TEST_CASE("first excited tomogram is J_1^2 times the weight") {
  DeformationParam d(0.7);
  FockState one = make_number(1, d);
  for (double theta : {0.0, 1.3})
    for (double x : {-1.2, 0.3, 0.9}) {
      std::vector<double> J = eval_J(1, x, d);
      CHECK(tomogram_pure(one, theta, x) ==
            doctest::Approx(J[1] * J[1] * vacuum_density(x, d)).epsilon(1e-13));
    }
}

TEST_CASE("density route agrees with the pure route") {
  DeformationParam d(0.8);
  FockState s = make_coherent(cplx(0.5, 0.2), d);
  DensityMatrix rho = density_from_state(s);
  for (double theta : {0.0, 0.9, 3.7})
    for (double x : {-1.5, 0.2, 1.1}) {
      double residue = -1.0;
      double via_rho = tomogram_density(rho, theta, x, &residue);
      CHECK(via_rho == doctest::Approx(tomogram_pure(s, theta, x)).epsilon(1e-12));
      CHECK(residue >= 0.0);
      CHECK(residue < 1e-14);
    }
}

TEST_CASE("diagonal mixtures are angle independent") {
  DeformationParam d(0.7);
  DensityMatrix p0 = density_from_state(make_number(0, d));
  DensityMatrix p1 = density_from_state(make_number(1, d));
  DensityMatrix mixed{d, p0.cutoff, 0.5 * (p0.mat + p1.mat), 0.0};
  for (double x : {-1.0, 0.4}) {
    double a = tomogram_density(mixed, 0.3, x);
    double b = tomogram_density(mixed, 1.1, x);
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
    std::vector<double> J = eval_J(1, x, d);
    double expect = 0.5 * (1.0 + J[1] * J[1]) * vacuum_density(x, d);
    CHECK(a == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("from-moments tomogram of the vacuum is the weight itself") {
  DeformationParam d(0.9);
  MomentTable t = moment_table_direct(make_number(0, d), 4);
  for (double theta : {0.2, 2.1})
    for (double x : {-2.0, 0.0, 1.3})
      CHECK(tomogram_from_moments(t, theta, x, 4) ==
            doctest::Approx(vacuum_density(x, d)).epsilon(1e-13));
}

TEST_CASE("from-moments tomogram converges for a coherent state") {
  DeformationParam d(0.7);
  // Tight truncation so the direct table reaches order 24 inside the margin.
  FockState s = make_coherent(0.5, d, 1e-18);
  double d8 = from_moments_sup_dev(s, 8);
  double d16 = from_moments_sup_dev(s, 16);
  double d24 = from_moments_sup_dev(s, 24);
  CHECK(d8 > d16);
  CHECK(d16 > d24);
  CHECK(d24 < 1e-6);
}

TEST_CASE("from-moments tomogram converges for the squeezed vacuum") {
  DeformationParam d(0.9);
  FockState s = make_squeezed(0.5, 0.0, SqueezedKind::Vacuum, d, 1e-18);
  double prev = 1e300;
  for (int gamma : {8, 16, 24, 30}) {
    double dev = from_moments_sup_dev(s, gamma);
    CHECK(dev < prev);
    prev = dev;
    if (gamma == 30) CHECK(dev < 2e-3);
  }
  CHECK(from_moments_sup_dev(s, 40) < 1e-4);
}

TEST_CASE("tomogram_from_moments needs a wide enough table") {
  DeformationParam d(0.9);
  MomentTable t = moment_table_direct(make_number(0, d), 4);
  try {
    tomogram_from_moments(t, 0.0, 0.5, 6);
    FAIL("expected IncompleteTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompleteTable);
  }
}

TEST_CASE("grid axes") {
  DeformationParam d(0.9);
  FockState s = make_coherent(0.5, d);

  TomogramGrid gauss = make_grid(s, 12, 24, XGridKind::GaussNodes);
  REQUIRE(gauss.thetas.size() == 12);
  REQUIRE(gauss.xs.size() == 24);
  REQUIRE(gauss.x_weights.size() == 24);
  CHECK(gauss.values.rows() == 12);
  CHECK(gauss.values.cols() == 24);
  CHECK(gauss.provenance == "pure");
  for (int i = 0; i < 12; ++i)
    CHECK(gauss.thetas[i] == doctest::Approx(2.0 * pi * i / 12.0).epsilon(1e-15));
  CHECK(gauss.values.minCoeff() >= 0.0);

  TomogramGrid uni = make_grid(s, 4, 9, XGridKind::UniformOpen);
  CHECK(uni.x_weights.empty());
  for (int j = 0; j < 9; ++j)
    CHECK(uni.xs[j] == doctest::Approx(-d.L + 2.0 * d.L * (j + 1) / 10.0).epsilon(1e-14));

  for (auto [nt, nx] : {std::pair{1, 8}, {8, 1}}) {
    try {
      make_grid(s, nt, nx);
      FAIL("expected InvalidArgument");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }
}

TEST_CASE("grid values match pointwise evaluation") {
  DeformationParam d(0.8);
  FockState s = make_cat(std::sqrt(0.5), -1, d);
  TomogramGrid g = make_grid(s, 6, 10);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 10; ++j)
      CHECK(g.values(i, j) ==
            doctest::Approx(tomogram_pure(s, g.thetas[i], g.xs[j])).epsilon(1e-14));
}

TEST_CASE("per-theta normalization on Gauss grids") {
  DeformationParam d(0.9);
  for (const FockState& s :
       {make_coherent(cplx(0.5, 0.4), d), make_squeezed(0.5, 0.0, SqueezedKind::Excited, d)}) {
    TomogramGrid g = make_grid(s, 16, 96);
    for (int i = 0; i < 16; ++i)
      CHECK(per_theta_norm(g, i) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TomogramGrid uni = make_grid(make_coherent(0.5, d), 4, 16, XGridKind::UniformOpen);
  try {
    per_theta_norm(uni, 0);
    FAIL("expected InvalidArgument without weights");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("reflection symmetry on sampled grids") {
  DeformationParam d(0.8);
  FockState s = make_coherent(cplx(0.4, 0.6), d);
  TomogramGrid g = make_grid(s, 8, 32);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 32; ++j)
      CHECK(g.values(i, j) ==
            doctest::Approx(g.values((i + 4) % 8, 31 - j)).epsilon(1e-10));
}

TEST_CASE("from-moments grid tracks the pure grid") {
  DeformationParam d(0.9);
  FockState s = make_squeezed(0.5, 0.0, SqueezedKind::Vacuum, d);
  MomentTable t = moment_table_direct(s, 30);
  TomogramGrid fm = make_grid(t, 30, 8, 40);
  TomogramGrid ref = make_grid(s, 8, 40);
  CHECK(fm.provenance == "from-moments");
  CHECK(fm.values.minCoeff() >= 0.0);
  CHECK((fm.values - ref.values).cwiseAbs().maxCoeff() < 2e-3);
}
