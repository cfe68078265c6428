#pragma once

// Dense O(N^3) and O(N^2) kernels behind the direct solver.
//
// Every kernel has two implementations: the default one, parallelised with
// OpenMP and written for cache-friendly row access, and a plain serial
// reference in `kernels::serial` that follows the defining sums literally.
// The reference versions exist for the test suite and the benchmark only.

#include <span>

#include "anw/matrix.hpp"

namespace anw::kernels {

/// S * diag(d) * S^T for real S and complex d. The result is symmetric.
ComplexMatrix congruence_diag(const RealMatrix& s, std::span<const cplx> d);

/// S^T * A * S for real S and complex symmetric A. The result is symmetric;
/// only the upper triangle of the product is computed and then mirrored.
ComplexMatrix congruence_transpose(const RealMatrix& s, const ComplexMatrix& a);

/// T(n,m) = exp(i x) sinc(x) with x = (lambda_n + lambda_m) z / 2.
ComplexMatrix phase_matching(std::span<const double> lambda, double z);

/// General products, used by the quadrature oracle on small matrices.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);

/// Worker count the parallel kernels will use (1 without OpenMP).
int max_threads();
/// Caps the worker count; n <= 0 restores the runtime default.
void set_threads(int n);

namespace serial {

ComplexMatrix congruence_diag(const RealMatrix& s, std::span<const cplx> d);
ComplexMatrix congruence_transpose(const RealMatrix& s, const ComplexMatrix& a);
ComplexMatrix phase_matching(std::span<const double> lambda, double z);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace serial

/// Unnormalized sinc, sin(x)/x, with sinc(0) = 1.
double sinc(double x);

}  // namespace anw::kernels
