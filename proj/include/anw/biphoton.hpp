#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "anw/lattice.hpp"
#include "anw/matrix.hpp"

namespace anw {

/// Injection profile. eta is a unit vector (sum |eta_j|^2 = 1); strength is
/// the overall nonlinear coupling g * |alpha| in inverse-length units.
class PumpProfile {
 public:
  /// Rescales `raw` to unit norm and multiplies `strength` by the removed
  /// norm. Throws DegenerateError for an all-zero vector, ValidationError for
  /// an empty one or a negative strength.
  static PumpProfile normalized(std::vector<cplx> raw, double strength = 1.0);
  /// eta_j = amplitudes[j] * exp(i phases[j]), then normalized.
  static PumpProfile from_polar(std::span<const double> amplitudes, std::span<const double> phases,
                                double strength = 1.0);

  std::span<const cplx> eta() const noexcept { return eta_; }
  double strength() const noexcept { return strength_; }
  std::size_t size() const noexcept { return eta_.size(); }

  PumpProfile with_strength(double strength) const;

 private:
  PumpProfile(std::vector<cplx> eta, double strength) : eta_(std::move(eta)), strength_(strength) {}
  std::vector<cplx> eta_;
  double strength_ = 1.0;
};

/// Named injection patterns. "center" injects waveguide (N+1)/2 (lower middle
/// for even N), "flat" all waveguides in phase, "flat_alternating" all
/// waveguides with alternating pi phase, "pair_center" the two middle
/// waveguides in phase.
PumpProfile pump_preset(std::string_view name, std::size_t n, double strength = 1.0);

enum class Basis { individual, supermode };
std::string_view to_string(Basis basis);
Basis parse_basis(std::string_view name);

struct BiphotonSolution {
  double z = 0.0;
  cplx delta;             // i z strength
  ComplexMatrix p_tilde;  // pump matrix, supermode basis
  ComplexMatrix t_tilde;  // phase-matching matrix
  ComplexMatrix q_tilde;  // delta * (P~ o T~)
  ComplexMatrix k_tilde;  // supermode joint spatial amplitude D o Q~
  ComplexMatrix q;        // S^T Q~ S
  ComplexMatrix k;        // individual-mode joint spatial amplitude D o Q
  std::shared_ptr<const Eigensystem> eigensystem;

  const ComplexMatrix& amplitudes(Basis basis) const { return basis == Basis::individual ? k : k_tilde; }
};

/// D(n,m) = 2^(1 - delta_nm / 2): sqrt(2) on the diagonal, 2 elsewhere.
RealMatrix degeneracy_matrix(std::size_t n);

/// P~ = S diag(eta) S^T.
ComplexMatrix pump_matrix_supermode(const Eigensystem& es, const PumpProfile& pump);

/// T~(n,m) = exp(i x) sinc(x), x = (lambda_n + lambda_m) z / 2. Mirror pairs
/// (m = N+1-n) have lambda_n + lambda_m = 0 and are set to exactly 1.
ComplexMatrix phase_matching_matrix(const Eigensystem& es, double z);

/// Full direct solution at propagation length z >= 0.
BiphotonSolution solve(std::shared_ptr<const Eigensystem> es, const PumpProfile& pump, double z);
BiphotonSolution solve(const Eigensystem& es, const PumpProfile& pump, double z);

/// Only the amplitude matrix the caller needs (K for individual, K~ for
/// supermode). This is the hot path of the inverse solver.
ComplexMatrix joint_amplitude(const Eigensystem& es, std::span<const cplx> eta, double strength, double z,
                              Basis basis);

struct BunchingFactors {
  cplx f_a;  // (eta_odd + eta_even) / 2
  cplx f_b;  // (eta_odd - eta_even) / 2
};

/// Requires the alternating form: every odd waveguide (1-based) carries the
/// same eta, and every even waveguide carries the same eta, to 1e-12.
/// Throws ValidationError otherwise.
BunchingFactors bunching_factors(const PumpProfile& pump);
bool is_alternating(const PumpProfile& pump, double tol = 1e-12);

/// Direct assembly for alternating pumps:
///   K~ = delta (F_A diag(D_nn T~_nn) + F_B D_{n,N+1-n} on the antidiagonal),
///   K_qq = sqrt(2) delta (F_A sum_n S_nq^2 T~_nn + (-1)^(q+1) F_B),
///   K_kq = 2 delta F_A sum_n S_nk S_nq T~_nn  (k != q).
/// Does not go through the general P~ o T~ product or the S^T . S basis change.
BiphotonSolution solve_symmetric_injection(std::shared_ptr<const Eigensystem> es, const PumpProfile& pump,
                                           double z);
BiphotonSolution solve_symmetric_injection(const Eigensystem& es, const PumpProfile& pump, double z);

/// Detection probabilities over unordered waveguide (or supermode) pairs.
struct CorrelationMatrix {
  RealMatrix entries;
  Basis basis = Basis::individual;

  std::size_t size() const { return entries.rows(); }
  /// sum_{k<q} G_kq + sum_k G_kk; equals 1 for any normalized matrix.
  double unordered_sum() const;
};

/// G_kq = |K_kq|^2 / sum_ij 2^(delta_ij - 1) |K_ij|^2. Throws DegenerateError
/// when every amplitude vanishes.
CorrelationMatrix correlation_from_amplitudes(const ComplexMatrix& amplitudes, Basis basis);
CorrelationMatrix correlation(const BiphotonSolution& solution, Basis basis);

/// (sum sqrt(G G'))^2 / (sum G * sum G'), in [0, 1].
double similarity(const CorrelationMatrix& gamma, const CorrelationMatrix& gamma_target);

}  // namespace anw
