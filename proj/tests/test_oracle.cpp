#include <doctest.h>

#include <array>
#include <cmath>

#include "anw/biphoton.hpp"
#include "anw/error.hpp"
#include "anw/oracle.hpp"
#include "support.hpp"

using namespace anw;
using namespace std::complex_literals;

TEST_CASE("matrix exponential is unitary and matches the eigenbasis") {
  testref::Random rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = rng.integer(1, 10);
    const RealMatrix w = testref::tridiagonal(rng.factors(n));
    const double h = rng.uniform(0.0, 15.0);
    const auto u = oracle::expi(w, h);
    ComplexMatrix uu(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) uu(i, j) += u(i, k) * std::conj(u(j, k));
    CHECK(testref::max_diff(uu, ComplexMatrix::identity(n)) < 1e-10);

    const auto e = testref::jacobi(w);
    ComplexMatrix ref(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          ref(i, j) += e.rows(k, i) * std::exp(cplx(0.0, e.values[k] * h)) * e.rows(k, j);
    CHECK(testref::max_diff(u, ref) < 1e-10);
  }
}

TEST_CASE("quadrature trivial cases") {
  const auto one = build_coupling_matrix(make_profile(ProfileKind::homogeneous, 1, 1.0));
  const auto q = oracle::quadrature_q(one, PumpProfile::normalized({1.0}), 3.0).q;
  CHECK(std::abs(q(0, 0) - 3.0i) < 1e-12);

  const auto five = build_coupling_matrix(make_profile(ProfileKind::parabolic, 5, 1.0));
  const auto zero = oracle::quadrature_q(five, pump_preset("flat", 5), 0.0).q;
  CHECK(max_abs(zero) == 0.0);
}

TEST_CASE("quadrature agrees with the closed pipeline on random cases") {
  testref::Random rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.integer(1, 8);
    const auto factors = rng.factors(n);
    const auto omega = build_coupling_matrix(make_profile(ProfileKind::custom, n, 1.0, factors));
    const auto eta = rng.unit_pump(n);
    const double z = rng.uniform(0.0, 10.0);
    const auto pump = PumpProfile::normalized(eta);
    const auto quad = oracle::quadrature_q(omega, pump, z).q;
    CHECK(testref::max_diff(quad, solve(diagonalize(omega), pump, z).q) < 1e-8);
    CHECK(testref::max_diff(quad, testref::reference_q(omega.entries, eta, 1.0, z)) < 1e-8);
  }
}

TEST_CASE("refinement cap is reported") {
  const auto omega = build_coupling_matrix(make_profile(ProfileKind::homogeneous, 4, 1.0));
  oracle::QuadratureConfig cfg;
  cfg.panels = 2;
  cfg.max_panels = 4;
  cfg.tolerance = 1e-14;
  CHECK_THROWS_AS(oracle::quadrature_q(omega, pump_preset("center", 4), 30.0, cfg), ConvergenceError);
  cfg.panels = 3;
  CHECK_THROWS_AS(oracle::quadrature_q(omega, pump_preset("center", 4), 1.0, cfg), ValidationError);
}

TEST_CASE("two-waveguide closed form") {
  const auto k = oracle::closed_form_two_waveguide({1.0, 0.0}, 1.0, 1.0, M_PI);
  CHECK(std::abs(k(0, 0) - 1i * M_PI / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(k(1, 1) + 1i * M_PI / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(k(0, 1)) < 1e-14);

  testref::Random rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const double phi = rng.uniform(0.0, 6.28), z = rng.uniform(0.0, 10.0), c0 = rng.uniform(0.5, 2.0);
    const std::array<cplx, 2> anti{std::polar(M_SQRT1_2, phi + M_PI), std::polar(M_SQRT1_2, phi)};
    CHECK(std::abs(oracle::closed_form_two_waveguide(anti, 1.0, c0, z)(0, 1)) < 1e-14);

    const auto eta = rng.unit_pump(2);
    const int m = static_cast<int>(rng.integer(1, 5));
    CHECK(std::abs(oracle::closed_form_two_waveguide({eta[0], eta[1]}, 1.0, c0, m * M_PI / c0)(0, 1)) < 1e-12);

    const auto es = diagonalize(build_coupling_matrix(make_profile(ProfileKind::homogeneous, 2, c0)));
    const double s = rng.uniform(0.2, 2.0);
    const auto ref = testref::with_degeneracy(testref::reference_q(testref::tridiagonal({c0}), eta, s, z));
    const auto closed = oracle::closed_form_two_waveguide({eta[0], eta[1]}, s, c0, z);
    CHECK(testref::max_diff(closed, ref) < 1e-10);
    CHECK(testref::max_diff(closed, solve(es, PumpProfile::normalized(eta, s), z).k) < 1e-10);
  }
}

TEST_CASE("three-waveguide closed form") {
  const double r = 1.0 / std::sqrt(3.0);
  for (double z : {0.3, 1.0, 4.2}) {
    const auto k = oracle::closed_form_three_waveguide({r, -r, r}, 1.0, 1.0, z);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) CHECK(std::abs(k(i, j)) < 1e-14);
    // Neighbouring diagonal entries carry opposite phases.
    CHECK(std::abs(k(0, 0) + k(1, 1)) < 1e-12);
    CHECK(std::abs(k(1, 1) + k(2, 2)) < 1e-12);
  }
  for (int m = 1; m <= 3; ++m) {
    const auto k = oracle::closed_form_three_waveguide({M_SQRT1_2, 0.0, -M_SQRT1_2}, 1.0, 1.0, m * M_PI / std::sqrt(2.0));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(k(i, i)) < 1e-12);
    CHECK(std::abs(k(0, 2)) < 1e-12);
  }

  testref::Random rng(12);
  const auto es = diagonalize(build_coupling_matrix(make_profile(ProfileKind::homogeneous, 3, 1.0)));
  for (int trial = 0; trial < 20; ++trial) {
    const auto eta = rng.unit_pump(3);
    const auto closed = oracle::closed_form_three_waveguide({eta[0], eta[1], eta[2]}, 1.0, 1.0, 1.3);
    CHECK(asymmetry(closed) < 1e-15);
    CHECK(testref::max_diff(closed, solve(es, PumpProfile::normalized(eta), 1.3).k) < 1e-10);
    CHECK(testref::max_diff(closed, testref::with_degeneracy(testref::reference_q(testref::tridiagonal({1.0, 1.0}), eta, 1.0, 1.3))) <
          1e-10);
  }
}
