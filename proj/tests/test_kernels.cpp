#include <doctest.h>

#include "anw/kernels.hpp"
#include "anw/lattice.hpp"
#include "support.hpp"

using namespace anw;

TEST_CASE("parallel kernels match the serial reference") {
  testref::Random rng(1);
  for (std::size_t n : {1u, 2u, 5u, 33u, 120u}) {
    RealMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) = rng.uniform(-1.0, 1.0);
    const auto d = rng.unit_pump(n);
    std::vector<double> lambda(n);
    for (double& l : lambda) l = rng.uniform(-3.0, 3.0);

    for (int threads : {1, 3}) {
      kernels::set_threads(threads);
      const auto cd = kernels::congruence_diag(s, d);
      CHECK(testref::max_diff(cd, kernels::serial::congruence_diag(s, d)) < 1e-13);
      CHECK(testref::max_diff(kernels::congruence_transpose(s, cd), kernels::serial::congruence_transpose(s, cd)) < 1e-12);
      CHECK(kernels::phase_matching(lambda, 2.7) == kernels::serial::phase_matching(lambda, 2.7));
      CHECK(testref::max_diff(kernels::matmul(cd, cd), kernels::serial::matmul(cd, cd)) < 1e-12);
    }
    kernels::set_threads(0);
  }
}

TEST_CASE("sinc") {
  CHECK(kernels::sinc(0.0) == 1.0);
  for (double x : {1e-9, 1e-5, 1e-4, 2e-4, 0.3, 3.0, -7.0})
    CHECK(kernels::sinc(x) == doctest::Approx(std::sin(x) / x).epsilon(1e-14));
}
