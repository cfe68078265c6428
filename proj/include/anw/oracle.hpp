#pragma once

// Ground truth that never touches the eigendecomposition: Q(z) as the
// integral i s int_0^z exp(i W t) diag(eta) exp(i W t) dt evaluated by
// composite Simpson with a scaling-and-squaring matrix exponential, plus the
// literal two- and three-waveguide homogeneous formulas.

#include <array>
#include <cstddef>

#include "anw/biphoton.hpp"
#include "anw/lattice.hpp"
#include "anw/matrix.hpp"

namespace anw::oracle {

struct QuadratureConfig {
  std::size_t panels = 16;            // starting number of Simpson panels, even, >= 2
  std::size_t max_panels = 1u << 20;  // refinement cap
  double tolerance = 1e-10;           // successive refinements must agree to this (relative to max(1, |Q|))
};

struct QuadratureResult {
  ComplexMatrix q;
  std::size_t panels = 0;  // panels used by the accepted estimate
  double last_change = 0.0;
};

/// exp(i * h * A) for real symmetric A by scaling and squaring a truncated
/// Taylor series.
ComplexMatrix expi(const RealMatrix& a, double h);

/// Throws ConvergenceError if the panel cap is reached before two successive
/// estimates agree, ValidationError for a bad config or dimension mismatch.
QuadratureResult quadrature_q(const CouplingMatrix& omega, const PumpProfile& pump, double z,
                              const QuadratureConfig& cfg = {});

/// Homogeneous two-waveguide K(z). eta holds the two complex unit-pump
/// components, strength is g |alpha|.
ComplexMatrix closed_form_two_waveguide(const std::array<cplx, 2>& eta, double strength, double c0, double z);

/// Homogeneous three-waveguide K(z).
ComplexMatrix closed_form_three_waveguide(const std::array<cplx, 3>& eta, double strength, double c0, double z);

}  // namespace anw::oracle
