#include "anw/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "anw/kernels.hpp"

namespace anw::oracle {

ComplexMatrix expi(const RealMatrix& a, double h) {
  if (!a.square()) throw ValidationError("expi: matrix must be square");
  const std::size_t n = a.rows();

  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
    norm1 = std::max(norm1, col);
  }
  norm1 *= std::abs(h);

  int squarings = 0;
  double scale = 1.0;
  while (norm1 * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }

  ComplexMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = cplx(0.0, h * scale * a(i, j));

  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = scaled(kernels::matmul(term, b), 1.0 / k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum(i, j) += term(i, j);
    if (max_abs(term) <= 1e-18 * std::max(1.0, max_abs(sum))) break;
  }
  for (int s = 0; s < squarings; ++s) sum = kernels::matmul(sum, sum);
  return sum;
}

namespace {

ComplexMatrix simpson(const RealMatrix& omega, std::span<const cplx> eta, double z, std::size_t panels) {
  const std::size_t n = omega.rows();
  const double h = z / static_cast<double>(panels);
  const ComplexMatrix step = expi(omega, h);

  ComplexMatrix acc(n, n);
  ComplexMatrix u = ComplexMatrix::identity(n);
  for (std::size_t j = 0; j <= panels; ++j) {
    if (j > 0) u = kernels::matmul(u, step);
    const double w = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    // u diag(eta) u
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        cplx v = 0.0;
        for (std::size_t m = 0; m < n; ++m) v += u(r, m) * eta[m] * u(m, c);
        acc(r, c) += w * v;
      }
  }
  return scaled(std::move(acc), h / 3.0);
}

}  // namespace

QuadratureResult quadrature_q(const CouplingMatrix& omega, const PumpProfile& pump, double z,
                              const QuadratureConfig& cfg) {
  if (cfg.panels < 2 || cfg.panels % 2 != 0) throw ValidationError("quadrature: panels must be even and >= 2");
  if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("quadrature: z must be finite and >= 0");
  const std::size_t n = omega.size();
  if (pump.size() != n) throw ValidationError("quadrature: pump size does not match the coupling matrix");

  const cplx prefactor(0.0, pump.strength());
  if (z == 0.0) return {ComplexMatrix(n, n), cfg.panels, 0.0};

  std::size_t panels = cfg.panels;
  ComplexMatrix coarse = simpson(omega.entries, pump.eta(), z, panels);
  while (true) {
    const std::size_t finer = panels * 2;
    if (finer > cfg.max_panels) {
      throw ConvergenceError("quadrature: no convergence within " + std::to_string(cfg.max_panels) + " panels");
    }
    ComplexMatrix fine = simpson(omega.entries, pump.eta(), z, finer);
    const double change = max_abs_diff(fine, coarse) * pump.strength();
    const double scale = std::max(1.0, max_abs(fine) * pump.strength());
    panels = finer;
    if (change < cfg.tolerance * scale) {
      // Richardson step: Simpson's error falls by 16 per doubling.
      ComplexMatrix q(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = prefactor * (fine(i, j) + (fine(i, j) - coarse(i, j)) / 15.0);
      return {std::move(q), panels, change};
    }
    coarse = std::move(fine);
  }
}

ComplexMatrix closed_form_two_waveguide(const std::array<cplx, 2>& eta, double strength, double c0, double z) {
  const cplx i(0.0, 1.0);
  const auto [e1, e2] = eta;
  const double s = strength;
  const double sq2 = std::numbers::sqrt2;
  ComplexMatrix k(2, 2);
  k(0, 0) = i * s * (2.0 * z * c0 * (e1 - e2) + (e1 + e2) * std::sin(2.0 * c0 * z)) / (2.0 * sq2 * c0);
  k(0, 1) = s * (e1 + e2) * (std::cos(2.0 * c0 * z) - 1.0) / (2.0 * c0);
  k(1, 0) = k(0, 1);
  k(1, 1) = i * s * (2.0 * z * c0 * (e2 - e1) + (e1 + e2) * std::sin(2.0 * c0 * z)) / (2.0 * sq2 * c0);
  return k;
}

ComplexMatrix closed_form_three_waveguide(const std::array<cplx, 3>& eta, double strength, double c0, double z) {
  const cplx i(0.0, 1.0);
  const auto [e1, e2, e3] = eta;
  const double s = strength;
  const double sq2 = std::numbers::sqrt2;
  const double cz = c0 * z;
  const cplx sym = e1 + 2.0 * e2 + e3;
  const double sin1 = std::sin(sq2 * cz);
  const double sin2 = std::sin(2.0 * sq2 * cz);
  const double cos1 = std::cos(sq2 * cz);
  const double half = std::sin(cz / sq2);
  const double sin_half2 = half * half;

  ComplexMatrix k(3, 3);
  k(0, 0) = i * s / (16.0 * sq2 * c0) *
            (4.0 * cz * (3.0 * e1 - 2.0 * e2 + 3.0 * e3) + 8.0 * sq2 * (e1 - e3) * sin1 + sq2 * sym * sin2);
  k(0, 1) = -s / (2.0 * c0) * sin_half2 * (3.0 * e1 + 2.0 * e2 - e3 + sym * cos1);
  k(0, 2) = i * s * sym / (16.0 * c0) * (-4.0 * cz + sq2 * sin2);
  k(1, 1) = i * s / (8.0 * sq2 * c0) * (-4.0 * cz * (e1 - 2.0 * e2 + e3) + sq2 * sym * sin2);
  k(1, 2) = -s / (2.0 * c0) * sin_half2 * (-e1 + 2.0 * e2 + 3.0 * e3 + sym * cos1);
  k(2, 2) = i * s / (16.0 * sq2 * c0) *
            (4.0 * cz * (3.0 * e1 - 2.0 * e2 + 3.0 * e3) + 8.0 * sq2 * (e3 - e1) * sin1 + sq2 * sym * sin2);
  k(1, 0) = k(0, 1);
  k(2, 0) = k(0, 2);
  k(2, 1) = k(1, 2);
  return k;
}

}  // namespace anw::oracle
