#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fock.hpp"
#include "states.hpp"

using namespace qtomo;

namespace {

cplx overlap(const FockState& a, const FockState& b) {
  int n = std::min(a.cutoff, b.cutoff);
  cplx s = 0.0;
  for (int k = 0; k <= n; ++k) s += std::conj(a.amps[k]) * b.amps[k];
  return s;
}

}  // namespace

TEST_CASE("ladder commutation holds on every basis state") {
  for (double q : {0.5, 0.7, 0.9}) {
    DeformationParam d(q);
    for (int n = 0; n <= 60; ++n) {
      FockState s = make_number(n, d);
      double raise = overlap(s, apply_annihilation(apply_creation(s))).real();
      double lower = overlap(s, apply_creation(apply_annihilation(s))).real();
      CHECK(std::abs(raise - q * q * lower - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("annihilation and creation on basis states") {
  DeformationParam d(0.5);
  FockState two = make_number(2, d);

  FockState down = apply_annihilation(two);
  for (int n = 0; n <= down.cutoff; ++n) {
    double expect = n == 1 ? std::sqrt(1.25) : 0.0;  // sqrt([2]) at q = 1/2
    CHECK(std::abs(down.amps[n] - expect) < 1e-15);
  }

  FockState up = apply_creation(two);
  for (int n = 0; n <= up.cutoff; ++n) {
    double expect = n == 3 ? std::sqrt(q_int(3, d)) : 0.0;
    CHECK(std::abs(up.amps[n] - expect) < 1e-15);
  }

  FockState vac_down = apply_annihilation(make_number(0, d));
  CHECK(vac_down.norm_sq() == 0.0);
}

TEST_CASE("two-photon ladder maps") {
  DeformationParam d(0.5);
  // A+^-1 A: |2> -> sqrt([2]/[1]) |0>;  A A+^-1: |3> -> sqrt([2]/[3]) |1>.
  FockState even = apply_tao_even(make_number(2, d));
  CHECK(std::abs(even.amps[0] - std::sqrt(1.25)) < 1e-15);
  FockState odd = apply_tao_odd(make_number(3, d));
  CHECK(std::abs(odd.amps[1] - std::sqrt(1.25 / 1.3125)) < 1e-15);

  CHECK(apply_tao_even(make_number(0, d)).norm_sq() == 0.0);
  CHECK(apply_tao_even(make_number(1, d)).norm_sq() == 0.0);
  CHECK(apply_tao_odd(make_number(0, d)).norm_sq() == 0.0);
  CHECK(apply_tao_odd(make_number(1, d)).norm_sq() == 0.0);
}

TEST_CASE("apply_creation rejects mass at the cutoff") {
  DeformationParam d(0.5);
  FockState s{d, 3, {0.5, 0.5, 0.5, 0.5}, 1e-12};
  try {
    apply_creation(s);
    FAIL("expected TruncationOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationOverflow);
  }
}

TEST_CASE("moments of basis states") {
  DeformationParam d(0.5);
  FockState two = make_number(2, d);
  CHECK(std::abs(moment_direct(two, 1, 1) - cplx(1.25)) < 1e-14);
  CHECK(std::abs(moment_direct(two, 2, 2) - cplx(1.25)) < 1e-14);  // [2][1]
  CHECK(std::abs(moment_direct(two, 0, 1)) < 1e-15);
  CHECK(std::abs(moment_direct(two, 0, 0) - cplx(1.0)) < 1e-15);
}

TEST_CASE("coherent moments factorize through the eigenvalue") {
  DeformationParam d(0.8);
  cplx alpha(0.4, 0.3);
  FockState s = make_coherent(alpha, d, 1e-14);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      cplx expect = std::pow(std::conj(alpha), a) * std::pow(alpha, b);
      CHECK(std::abs(moment_direct(s, a, b) - expect) < 1e-9);
    }
}

TEST_CASE("moment hermiticity") {
  DeformationParam d(0.9);
  FockState s = make_coherent(cplx(0.5, -0.2), d);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 6 && b <= 3; ++b)
      CHECK(std::abs(moment_direct(s, a, b) - std::conj(moment_direct(s, b, a))) <
            1e-10);
}

TEST_CASE("moment_direct refuses orders inside the safety margin") {
  DeformationParam d(0.9);
  FockState s = make_number(1, d);  // cutoff 16
  try {
    moment_direct(s, 6, 6);
    FAIL("expected OrderTooHigh");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderTooHigh);
  }
}

TEST_CASE("moment table bookkeeping") {
  DeformationParam d(0.7);
  MomentTable t(d, 2);
  CHECK_FALSE(t.has(0, 0));
  try {
    t.at(0, 0);
    FAIL("expected IncompleteTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompleteTable);
  }
  t.set(0, 0, 1.0);
  CHECK(t.has(0, 0));
  CHECK(t.at(0, 0) == cplx(1.0));
  for (auto [a, b] : {std::pair{-1, 0}, {0, -1}}) {
    try {
      t.at(a, b);
      FAIL("expected InvalidArgument");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }
  try {
    t.at(2, 1);  // beyond the table order: the entry can never exist
    FAIL("expected IncompleteTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompleteTable);
  }
}

TEST_CASE("moment_table_direct covers every entry and matches moment_direct") {
  DeformationParam d(0.9);
  FockState s = make_cat(std::sqrt(0.5), +1, d);
  MomentTable t = moment_table_direct(s, 5);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b) {
      CHECK(t.has(a, b));
      CHECK(std::abs(t.at(a, b) - moment_direct(s, a, b)) < 1e-14);
    }
  CHECK(std::abs(t.at(0, 0) - cplx(1.0)) < 1e-14);
}

TEST_CASE("normal ordering of the number operator") {
  DeformationParam d(0.6);
  const int dim = 8;
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) F(n, n) = q_int(n, d);
  CHECK(std::abs(normal_order_coeff(F, 1, 1, d) - cplx(1.0)) < 1e-13);
  CHECK(std::abs(normal_order_coeff(F, 0, 0, d)) < 1e-13);
  CHECK(std::abs(normal_order_coeff(F, 2, 2, d)) < 1e-12);
  CHECK(std::abs(normal_order_coeff(F, 0, 1, d)) < 1e-13);

  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(dim, dim);
  CHECK(std::abs(normal_order_coeff(I, 0, 0, d) - cplx(1.0)) < 1e-13);
  CHECK(std::abs(normal_order_coeff(I, 1, 1, d)) < 1e-13);
  CHECK(std::abs(normal_order_coeff(I, 2, 2, d)) < 1e-12);
}

TEST_CASE("normal ordering reassembles a random Hermitian operator") {
  DeformationParam d(0.8);
  const int dim = 8;
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd F(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) F(i, j) = cplx(u(rng), u(rng));
  F = (F + F.adjoint()).eval();

  Eigen::MatrixXcd G(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) G(a, b) = normal_order_coeff(F, a, b, d);

  // <m|A+^a A^b|n> = delta_{m-a,n-b} sqrt([m]!/[m-a]!) sqrt([n]!/[n-b]!).
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      cplx sum = 0.0;
      for (int a = 0; a <= m; ++a) {
        int b = a + n - m;
        if (b < 0 || b > n) continue;
        sum += G(a, b) *
               std::sqrt(q_factorial(m, d) / q_factorial(m - a, d)) *
               std::sqrt(q_factorial(n, d) / q_factorial(n - b, d));
      }
      CHECK(std::abs(sum - F(m, n)) < 1e-8);
    }
}

TEST_CASE("density reconstruction on an analytic 2x2 table") {
  DeformationParam d(0.5);
  MomentTable t(d, 2);
  t.set(0, 0, 1.0);
  t.set(0, 1, 0.3);
  t.set(1, 0, 0.2);
  t.set(1, 1, 0.1);
  t.set(0, 2, 0.0);
  t.set(2, 0, 0.0);
  DensityMatrix rho = density_from_moments(t);
  REQUIRE(rho.cutoff == 1);
  CHECK(std::abs(rho.mat(0, 0) - cplx(0.9)) < 1e-14);
  CHECK(std::abs(rho.mat(1, 1) - cplx(0.1)) < 1e-14);
  CHECK(std::abs(rho.mat(0, 1) - cplx(0.25)) < 1e-14);  // symmetrized
  CHECK(std::abs(rho.mat(1, 0) - cplx(0.25)) < 1e-14);
  CHECK(rho.asymmetry == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("density round trip for compact states") {
  DeformationParam d(0.9);
  FockState one = make_number(1, d);
  DensityMatrix r1 = density_from_moments(moment_table_direct(one, 2));
  CHECK(std::abs(r1.mat(0, 0)) < 1e-14);
  CHECK(std::abs(r1.mat(1, 1) - cplx(1.0)) < 1e-14);
  CHECK(r1.asymmetry < 1e-14);

  FockState cat = make_cat(std::sqrt(0.5), +1, d, 1e-18);
  DensityMatrix rc = density_from_moments(moment_table_direct(cat, 20));
  DensityMatrix ref = density_from_state(cat);
  int n = rc.cutoff + 1;
  double dev = (rc.mat - ref.mat.topLeftCorner(n, n)).cwiseAbs().maxCoeff();
  CHECK(dev < 1e-6);
  CHECK(std::abs(rc.mat.trace().real() - 1.0) < 1e-6);
}

TEST_CASE("density matrix moments") {
  DeformationParam d(0.5);
  DensityMatrix pure = density_from_state(make_number(2, d));
  CHECK(std::abs(moment_direct(pure, 1, 1) - cplx(1.25)) < 1e-13);

  DensityMatrix vac = density_from_state(make_number(0, d));
  DensityMatrix mixed{d, vac.cutoff, 0.5 * (vac.mat + pure.mat), 0.0};
  CHECK(std::abs(moment_direct(mixed, 1, 1) - cplx(0.625)) < 1e-13);
  CHECK(std::abs(moment_direct(mixed, 0, 0) - cplx(1.0)) < 1e-13);
}

TEST_CASE("trace distance") {
  DeformationParam d(0.5);
  DensityMatrix a = density_from_state(make_number(0, d));
  DensityMatrix b = density_from_state(make_number(1, d));
  CHECK(trace_distance(a, a) < 1e-15);
  CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));

  // Pure states: T = sqrt(1 - |<a|b>|^2).
  FockState coh = make_coherent(0.3, d);
  double ov = std::norm(overlap(make_number(0, d), coh));
  CHECK(trace_distance(a, density_from_state(coh)) ==
        doctest::Approx(std::sqrt(1.0 - ov)).epsilon(1e-10));
}
