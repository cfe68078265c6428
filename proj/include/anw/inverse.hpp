#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anw/biphoton.hpp"
#include "anw/lattice.hpp"

namespace anw {

/// Target correlation matrix in either basis, normalized over unordered pairs.
struct TargetSpec {
  Basis basis = Basis::individual;
  RealMatrix matrix;
  std::string name;

  std::size_t size() const { return matrix.rows(); }
  CorrelationMatrix as_correlation() const { return {matrix, basis}; }
};

/// Checks symmetry, non-negativity and the unordered-pair normalization.
/// Throws ValidationError with the first violated condition.
TargetSpec make_target(RealMatrix matrix, Basis basis, std::string name = {});

/// G'(q,k) = delta_{k, N+1-q} / ceil(N/2).
TargetSpec target_antidiagonal(std::size_t n);
/// G'(k,k) = 1/N.
TargetSpec target_diagonal(std::size_t n);
/// Equal weight on every entry whose row and column indices are both odd (1-based).
TargetSpec target_odd_individual(std::size_t n);
/// Same pattern as target_odd_individual, in the supermode basis.
TargetSpec target_odd_supermode(std::size_t n);
/// Looks up one of "antidiagonal", "diagonal", "odd_individual", "odd_supermode".
TargetSpec builtin_target(const std::string& name, std::size_t n);

/// MF = sum_ij (G_ij - G'_ij)^2.
double merit(const CorrelationMatrix& solution_correlation, const TargetSpec& target);

struct OptimizationConfig {
  double z_min = 0.0;
  double z_max = 20.0;
  double amp_min = 0.0;
  double amp_max = 1.0;
  double phase_min = 0.0;
  double phase_max = 6.283185307179586;
  int restarts = 10;
  std::uint64_t seed = 20240601;
  /// Work allowed per restart, counted in amplitude-matrix builds: one per
  /// full merit evaluation and one per single-waveguide block update.
  std::size_t max_evals = 5000;
  /// A restart stops after three consecutive sweeps that each improve MF by
  /// less than tolerance * max(MF, 1e-3).
  double tolerance = 1e-12;
  double strength = 1.0;

  void validate() const;
};

struct RestartRecord {
  double initial_z = 0.0;
  std::vector<double> initial_amplitudes;
  std::vector<double> initial_phases;
  double initial_merit = 0.0;
  double final_merit = 0.0;
  std::size_t evaluations = 0;
};

struct OptimizationResult {
  double best_z = 0.0;
  /// Unit-norm pump built from `amplitudes` and `phases`, carrying cfg.strength.
  PumpProfile best_pump = PumpProfile::normalized({cplx(1.0)});
  /// Optimizer coordinates |eta_j| before normalization, inside the amplitude box.
  std::vector<double> amplitudes;
  /// phi_j rotated so the largest-amplitude waveguide has phase 0 (when the
  /// phase box spans a full turn; otherwise the raw coordinates).
  std::vector<double> phases;
  double merit = 0.0;
  double similarity = 0.0;
  std::vector<RestartRecord> history;
  std::size_t evaluations = 0;
  int best_restart = 0;
  bool z_at_bound = false;
  std::string method;
};

/// Merit of the raw optimizer coordinates x = (z, |eta_1..N|, phi_1..N).
/// Returns nullopt when every amplitude is zero.
class MeritFunction {
 public:
  MeritFunction(const Eigensystem& es, const TargetSpec& target, double strength = 1.0);

  std::optional<double> operator()(std::span<const double> x) const;
  CorrelationMatrix correlation_at(std::span<const double> x) const;
  std::size_t dimension() const { return 2 * es_->size() + 1; }

 private:
  const Eigensystem* es_;
  const TargetSpec* target_;
  double strength_;
};

/// Seeded multi-start bounded minimization of MF over (z, |eta_j|, phi_j).
/// Restarts are independent and may run in parallel; every restart draws its
/// start point from its own generator seeded from (seed, restart index), so
/// the result does not depend on the thread count.
OptimizationResult optimize(const CouplingProfile& profile, const TargetSpec& target, const OptimizationConfig& cfg);

/// Same, for a precomputed eigensystem.
OptimizationResult optimize(const Eigensystem& es, const TargetSpec& target, const OptimizationConfig& cfg);

/// Rotates all phases so the largest-amplitude waveguide has phase 0, wrapped to [0, 2 pi).
std::vector<double> gauge_fixed_phases(std::span<const double> amplitudes, std::span<const double> phases);

}  // namespace anw
