#include "anw/biphoton.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "anw/kernels.hpp"

namespace anw {

namespace {

void require_size(const Eigensystem& es, std::size_t n, const char* what) {
  if (es.size() != n) {
    throw ValidationError(std::string(what) + ": pump has " + std::to_string(n) + " entries but the array has " +
                          std::to_string(es.size()) + " waveguides");
  }
}

void require_z(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("propagation length z must be finite and >= 0");
}

std::shared_ptr<const Eigensystem> share(const Eigensystem& es) { return std::make_shared<const Eigensystem>(es); }

}  // namespace

PumpProfile PumpProfile::normalized(std::vector<cplx> raw, double strength) {
  if (raw.empty()) throw ValidationError("pump: at least one waveguide is required");
  if (!(strength >= 0.0) || !std::isfinite(strength)) throw ValidationError("pump: strength must be finite and >= 0");
  double norm2 = 0.0;
  for (const cplx& v : raw) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ValidationError("pump: non-finite amplitude");
    norm2 += std::norm(v);
  }
  if (norm2 == 0.0) throw DegenerateError("pump: all amplitudes are zero");
  const double norm = std::sqrt(norm2);
  for (cplx& v : raw) v /= norm;
  return PumpProfile(std::move(raw), strength * norm);
}

PumpProfile PumpProfile::from_polar(std::span<const double> amplitudes, std::span<const double> phases,
                                    double strength) {
  if (amplitudes.size() != phases.size()) throw ValidationError("pump: amplitudes and phases differ in length");
  std::vector<cplx> raw(amplitudes.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    if (amplitudes[j] < 0.0) throw ValidationError("pump: amplitudes must be >= 0");
    raw[j] = std::polar(amplitudes[j], phases[j]);
  }
  return normalized(std::move(raw), strength);
}

PumpProfile PumpProfile::with_strength(double strength) const {
  if (!(strength >= 0.0) || !std::isfinite(strength)) throw ValidationError("pump: strength must be finite and >= 0");
  return PumpProfile(eta_, strength);
}

PumpProfile pump_preset(std::string_view name, std::size_t n, double strength) {
  if (n < 1) throw ValidationError("pump preset: n must be >= 1");
  std::vector<cplx> raw(n, 0.0);
  if (name == "center") {
    raw[(n - 1) / 2] = 1.0;
  } else if (name == "flat") {
    std::fill(raw.begin(), raw.end(), cplx(1.0));
  } else if (name == "flat_alternating") {
    for (std::size_t j = 0; j < n; ++j) raw[j] = (j % 2 == 0) ? 1.0 : -1.0;
  } else if (name == "pair_center") {
    if (n < 2) throw ValidationError("pump preset pair_center needs at least two waveguides");
    const std::size_t lo = n / 2 - 1 + (n % 2);
    raw[lo] = 1.0;
    raw[lo + 1] = 1.0;
  } else {
    throw ValidationError("unknown pump preset '" + std::string(name) + "'");
  }
  return PumpProfile::normalized(std::move(raw), strength);
}

std::string_view to_string(Basis basis) { return basis == Basis::individual ? "individual" : "supermode"; }

Basis parse_basis(std::string_view name) {
  if (name == "individual") return Basis::individual;
  if (name == "supermode") return Basis::supermode;
  throw ValidationError("unknown basis '" + std::string(name) + "'");
}

RealMatrix degeneracy_matrix(std::size_t n) {
  RealMatrix d(n, n, 2.0);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = std::numbers::sqrt2;
  return d;
}

ComplexMatrix pump_matrix_supermode(const Eigensystem& es, const PumpProfile& pump) {
  require_size(es, pump.size(), "pump_matrix_supermode");
  return kernels::congruence_diag(es.s_matrix, pump.eta());
}

ComplexMatrix phase_matching_matrix(const Eigensystem& es, double z) {
  require_z(z);
  ComplexMatrix t = kernels::phase_matching(es.eigenvalues, z);
  const std::size_t n = es.size();
  for (std::size_t i = 0; i < n; ++i) t(i, n - 1 - i) = 1.0;
  return t;
}

namespace {

ComplexMatrix apply_degeneracy(ComplexMatrix a) {
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) *= (i == j) ? std::numbers::sqrt2 : 2.0;
  return a;
}

}  // namespace

BiphotonSolution solve(std::shared_ptr<const Eigensystem> es, const PumpProfile& pump, double z) {
  if (!es) throw ValidationError("solve: missing eigensystem");
  require_size(*es, pump.size(), "solve");
  require_z(z);

  BiphotonSolution sol;
  sol.z = z;
  sol.delta = cplx(0.0, z * pump.strength());
  sol.p_tilde = pump_matrix_supermode(*es, pump);
  sol.t_tilde = phase_matching_matrix(*es, z);
  sol.q_tilde = scaled(hadamard(sol.p_tilde, sol.t_tilde), sol.delta);
  sol.k_tilde = apply_degeneracy(sol.q_tilde);
  sol.q = kernels::congruence_transpose(es->s_matrix, sol.q_tilde);
  sol.k = apply_degeneracy(sol.q);
  sol.eigensystem = std::move(es);
  return sol;
}

BiphotonSolution solve(const Eigensystem& es, const PumpProfile& pump, double z) {
  return solve(share(es), pump, z);
}

ComplexMatrix joint_amplitude(const Eigensystem& es, std::span<const cplx> eta, double strength, double z,
                              Basis basis) {
  require_size(es, eta.size(), "joint_amplitude");
  require_z(z);
  const cplx delta(0.0, z * strength);
  ComplexMatrix qt = kernels::congruence_diag(es.s_matrix, eta);
  ComplexMatrix t = phase_matching_matrix(es, z);
  const std::size_t n = es.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) qt(i, j) *= delta * t(i, j);
  if (basis == Basis::supermode) return apply_degeneracy(std::move(qt));
  return apply_degeneracy(kernels::congruence_transpose(es.s_matrix, qt));
}

bool is_alternating(const PumpProfile& pump, double tol) {
  const auto eta = pump.eta();
  for (std::size_t j = 2; j < eta.size(); ++j)
    if (std::abs(eta[j] - eta[j % 2]) > tol) return false;
  return true;
}

BunchingFactors bunching_factors(const PumpProfile& pump) {
  if (!is_alternating(pump)) {
    throw ValidationError("bunching factors need an alternating pump (equal odd and equal even waveguides)");
  }
  const auto eta = pump.eta();
  const cplx odd = eta[0];
  const cplx even = eta.size() > 1 ? eta[1] : cplx(0.0);
  return {0.5 * (odd + even), 0.5 * (odd - even)};
}

BiphotonSolution solve_symmetric_injection(std::shared_ptr<const Eigensystem> es, const PumpProfile& pump,
                                           double z) {
  if (!es) throw ValidationError("solve_symmetric_injection: missing eigensystem");
  require_size(*es, pump.size(), "solve_symmetric_injection");
  require_z(z);
  const auto [f_a, f_b] = bunching_factors(pump);
  const std::size_t n = es->size();
  const RealMatrix& s = es->s_matrix;

  BiphotonSolution sol;
  sol.z = z;
  sol.delta = cplx(0.0, z * pump.strength());
  sol.t_tilde = phase_matching_matrix(*es, z);

  std::vector<cplx> t_diag(n);
  for (std::size_t i = 0; i < n; ++i) t_diag[i] = sol.t_tilde(i, i);

  sol.p_tilde = ComplexMatrix(n, n);
  sol.k_tilde = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    sol.p_tilde(i, i) += f_a;
    sol.p_tilde(i, n - 1 - i) += f_b;
    sol.k_tilde(i, i) += f_a * sol.delta * std::numbers::sqrt2 * t_diag[i];
    const double d_mirror = (i == n - 1 - i) ? std::numbers::sqrt2 : 2.0;
    sol.k_tilde(i, n - 1 - i) += f_b * sol.delta * d_mirror;
  }

  // sum_n S_nk S_nq T~_nn is the congruence S^T diag(T~_nn) S.
  const ComplexMatrix mix = kernels::congruence_diag(transpose(s), t_diag);
  sol.k = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      if (k == q) {
        const double parity = (q % 2 == 0) ? 1.0 : -1.0;
        sol.k(q, q) = std::numbers::sqrt2 * sol.delta * (f_a * mix(q, q) + parity * f_b);
      } else {
        sol.k(k, q) = 2.0 * sol.delta * f_a * mix(k, q);
      }
    }
  }

  sol.q_tilde = ComplexMatrix(n, n);
  sol.q = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = (i == j) ? std::numbers::sqrt2 : 2.0;
      sol.q_tilde(i, j) = sol.k_tilde(i, j) / d;
      sol.q(i, j) = sol.k(i, j) / d;
    }
  sol.eigensystem = std::move(es);
  return sol;
}

BiphotonSolution solve_symmetric_injection(const Eigensystem& es, const PumpProfile& pump, double z) {
  return solve_symmetric_injection(share(es), pump, z);
}

double CorrelationMatrix::unordered_sum() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < size(); ++k)
    for (std::size_t q = k; q < size(); ++q) acc += entries(k, q);
  return acc;
}

CorrelationMatrix correlation_from_amplitudes(const ComplexMatrix& amplitudes, Basis basis) {
  if (!amplitudes.square()) throw ValidationError("correlation: amplitude matrix must be square");
  const std::size_t n = amplitudes.rows();
  double denom = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) denom += (i == j ? 1.0 : 0.5) * std::norm(amplitudes(i, j));
  if (!(denom > 0.0)) throw DegenerateError("correlation: all biphoton amplitudes vanish");

  CorrelationMatrix g{RealMatrix(n, n), basis};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.entries(i, j) = std::norm(amplitudes(i, j)) / denom;
  return g;
}

CorrelationMatrix correlation(const BiphotonSolution& solution, Basis basis) {
  return correlation_from_amplitudes(solution.amplitudes(basis), basis);
}

double similarity(const CorrelationMatrix& gamma, const CorrelationMatrix& gamma_target) {
  require_same_shape(gamma.entries.rows(), gamma.entries.cols(), gamma_target.entries.rows(),
                     gamma_target.entries.cols(), "similarity");
  if (gamma.basis != gamma_target.basis) throw ValidationError("similarity: correlation matrices differ in basis");
  double overlap = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      const double a = gamma.entries(i, j);
      const double b = gamma_target.entries(i, j);
      overlap += std::sqrt(a * b);
      sum_a += a;
      sum_b += b;
    }
  if (!(sum_a > 0.0) || !(sum_b > 0.0)) throw DegenerateError("similarity: empty correlation matrix");
  return overlap * overlap / (sum_a * sum_b);
}

}  // namespace anw
