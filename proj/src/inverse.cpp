#include "anw/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "anw/kernels.hpp"

namespace anw {

namespace {

// Upper bound of MF for normalized matrices: sum (a - b)^2 <= sum a^2 + sum b^2 <= 2 + 2.
constexpr double kWorstMerit = 4.0;

std::size_t ceil_half(std::size_t n) { return (n + 1) / 2; }

}  // namespace

TargetSpec make_target(RealMatrix matrix, Basis basis, std::string name) {
  if (!matrix.square() || matrix.empty()) throw ValidationError("target: matrix must be square and non-empty");
  const std::size_t n = matrix.rows();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = matrix(i, j);
      if (!std::isfinite(v) || v < 0.0) throw ValidationError("target: entries must be finite and >= 0");
      if (std::abs(v - matrix(j, i)) > 1e-12) throw ValidationError("target: matrix must be symmetric");
      if (j >= i) total += v;
    }
  if (std::abs(total - 1.0) > 1e-10) {
    throw ValidationError("target: entries must sum to 1 over unordered pairs (got " + std::to_string(total) + ")");
  }
  return {basis, std::move(matrix), std::move(name)};
}

TargetSpec target_antidiagonal(std::size_t n) {
  if (n < 1) throw ValidationError("target: n must be >= 1");
  RealMatrix m(n, n);
  const double v = 1.0 / static_cast<double>(ceil_half(n));
  for (std::size_t q = 0; q < n; ++q) m(q, n - 1 - q) = v;
  return make_target(std::move(m), Basis::individual, "antidiagonal");
}

TargetSpec target_diagonal(std::size_t n) {
  if (n < 1) throw ValidationError("target: n must be >= 1");
  RealMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0 / static_cast<double>(n);
  return make_target(std::move(m), Basis::individual, "diagonal");
}

namespace {

RealMatrix odd_pattern(std::size_t n) {
  if (n < 1) throw ValidationError("target: n must be >= 1");
  const auto odd = static_cast<double>(ceil_half(n));
  const double v = 2.0 / (odd * (odd + 1.0));  // odd*(odd+1)/2 unordered pairs
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; i += 2)
    for (std::size_t j = 0; j < n; j += 2) m(i, j) = v;
  return m;
}

}  // namespace

TargetSpec target_odd_individual(std::size_t n) {
  return make_target(odd_pattern(n), Basis::individual, "odd_individual");
}

TargetSpec target_odd_supermode(std::size_t n) {
  return make_target(odd_pattern(n), Basis::supermode, "odd_supermode");
}

TargetSpec builtin_target(const std::string& name, std::size_t n) {
  if (name == "antidiagonal") return target_antidiagonal(n);
  if (name == "diagonal") return target_diagonal(n);
  if (name == "odd_individual") return target_odd_individual(n);
  if (name == "odd_supermode") return target_odd_supermode(n);
  throw ValidationError("unknown target '" + name + "'");
}

double merit(const CorrelationMatrix& solution_correlation, const TargetSpec& target) {
  require_same_shape(solution_correlation.entries.rows(), solution_correlation.entries.cols(), target.matrix.rows(),
                     target.matrix.cols(), "merit");
  if (solution_correlation.basis != target.basis) throw ValidationError("merit: correlation and target differ in basis");
  double mf = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < target.size(); ++j) {
      const double d = solution_correlation.entries(i, j) - target.matrix(i, j);
      mf += d * d;
    }
  return mf;
}

void OptimizationConfig::validate() const {
  if (!(z_min >= 0.0) || !(z_max > z_min)) throw ValidationError("optimizer: need 0 <= z_min < z_max");
  if (!(amp_min >= 0.0) || !(amp_max > amp_min)) throw ValidationError("optimizer: need 0 <= amp_min < amp_max");
  if (!(phase_max > phase_min)) throw ValidationError("optimizer: need phase_min < phase_max");
  if (restarts < 1) throw ValidationError("optimizer: restarts must be >= 1");
  if (max_evals < 10) throw ValidationError("optimizer: max_evals must be >= 10");
  if (!(tolerance >= 0.0)) throw ValidationError("optimizer: tolerance must be >= 0");
  if (!(strength > 0.0)) throw ValidationError("optimizer: strength must be > 0");
}

MeritFunction::MeritFunction(const Eigensystem& es, const TargetSpec& target, double strength)
    : es_(&es), target_(&target), strength_(strength) {
  if (target.size() != es.size()) throw ValidationError("optimize: target size does not match the array");
}

CorrelationMatrix MeritFunction::correlation_at(std::span<const double> x) const {
  const std::size_t n = es_->size();
  if (x.size() != dimension()) throw ValidationError("merit: wrong parameter count");
  std::vector<cplx> eta(n);
  for (std::size_t j = 0; j < n; ++j) eta[j] = std::polar(x[1 + j], x[1 + n + j]);
  // Gamma does not depend on the pump norm, so the raw amplitudes are used directly.
  return correlation_from_amplitudes(joint_amplitude(*es_, eta, strength_, x[0], target_->basis), target_->basis);
}

std::optional<double> MeritFunction::operator()(std::span<const double> x) const {
  const std::size_t n = es_->size();
  bool any = false;
  for (std::size_t j = 0; j < n; ++j) any = any || x[1 + j] > 0.0;
  if (!any || x[0] <= 0.0) return std::nullopt;
  return merit(correlation_at(x), *target_);
}

std::vector<double> gauge_fixed_phases(std::span<const double> amplitudes, std::span<const double> phases) {
  if (amplitudes.size() != phases.size() || amplitudes.empty()) throw ValidationError("gauge: size mismatch");
  const auto ref = static_cast<std::size_t>(
      std::distance(amplitudes.begin(), std::max_element(amplitudes.begin(), amplitudes.end())));
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> out(phases.size());
  for (std::size_t j = 0; j < phases.size(); ++j) {
    double p = std::fmod(phases[j] - phases[ref], two_pi);
    if (p < 0.0) p += two_pi;
    if (p >= two_pi) p = 0.0;
    out[j] = p;
  }
  out[ref] = 0.0;
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform in [0, 1) from the top 53 bits, independent of the standard
/// library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Box {
  std::vector<double> lo, hi;
  std::size_t dim() const { return lo.size(); }
  void clamp(std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
  }
};

Box make_box(std::size_t n, const OptimizationConfig& cfg) {
  Box b;
  b.lo.push_back(cfg.z_min);
  b.hi.push_back(cfg.z_max);
  for (std::size_t j = 0; j < n; ++j) {
    b.lo.push_back(cfg.amp_min);
    b.hi.push_back(cfg.amp_max);
  }
  for (std::size_t j = 0; j < n; ++j) {
    b.lo.push_back(cfg.phase_min);
    b.hi.push_back(cfg.phase_max);
  }
  return b;
}

struct Point {
  std::vector<double> x;
  double f = kWorstMerit;
};

// Block-coordinate search. For fixed z the amplitude matrix is linear in the
// pump, K = sum_j eta_j H_j, so one waveguide can be re-optimized over its
// (|eta_j|, phi_j) pair at O(N^2) per trial once H_j is known. Sweeps visit
// every waveguide in a shuffled order and then take a pattern search in z.
class BlockSearch {
 public:
  BlockSearch(const Eigensystem& es, const TargetSpec& target, double strength, const Box& box, std::size_t budget)
      : es_(es), target_(target), strength_(strength), box_(box), n_(es.size()), budget_(budget) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) {
        upper_.push_back(i * n_ + j);
        weight_.push_back(i == j ? 1.0 : 2.0);
        goal_.push_back(target.matrix(i, j));
      }
    k0_.resize(upper_.size());
    h_.resize(upper_.size());
  }

  std::size_t evaluations() const { return evals_; }
  bool exhausted() const { return evals_ >= budget_; }
  /// A sweep needs at least the starting build and the closing resynchronization.
  bool can_sweep() const { return evals_ + 2 <= budget_; }

  double full_merit(const std::vector<double>& x) {
    ++evals_;
    const std::size_t n = n_;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) any = any || x[1 + j] > 0.0;
    if (!any || x[0] <= 0.0) return kWorstMerit;
    std::vector<cplx> eta(n);
    for (std::size_t j = 0; j < n; ++j) eta[j] = std::polar(x[1 + j], x[1 + n + j]);
    const ComplexMatrix k = joint_amplitude(es_, eta, strength_, x[0], target_.basis);
    for (std::size_t u = 0; u < upper_.size(); ++u) k0_[u] = k.values()[upper_[u]];
    return merit_of([&](std::size_t u) { return k0_[u]; });
  }

  // One sweep over all waveguides followed by a z pattern search. Returns the new merit.
  double sweep(std::vector<double>& x, double f, std::mt19937_64& rng, double& z_step) {
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n_; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

    const ComplexMatrix t = phase_matching_matrix(es_, x[0]);
    const cplx delta(0.0, x[0] * strength_);
    ComplexMatrix k = current_k(x);
    ++evals_;
    for (std::size_t j : order) {
      if (evals_ + 1 >= budget_) break;  // keep one build for the resynchronization below
      const ComplexMatrix h = contribution(j, t, delta);
      const cplx eta_j = std::polar(x[1 + j], x[1 + n_ + j]);
      for (std::size_t u = 0; u < upper_.size(); ++u) {
        h_[u] = h.values()[upper_[u]];
        k0_[u] = k.values()[upper_[u]] - eta_j * h_[u];
      }
      ++evals_;
      double a = x[1 + j], phi = x[1 + n_ + j];
      f = block_minimize(a, phi);
      const cplx change = std::polar(a, phi) - eta_j;
      if (change != cplx(0.0)) {
        for (std::size_t r = 0; r < n_; ++r)
          for (std::size_t c = 0; c < n_; ++c) k(r, c) += change * h(r, c);
      }
      x[1 + j] = a;
      x[1 + n_ + j] = phi;
    }
    f = full_merit(x);  // resynchronize away from accumulated rounding
    return z_search(x, f, z_step);
  }

 private:
  template <class Entry>
  double merit_of(Entry entry) const {
    double denom = 0.0;
    for (std::size_t u = 0; u < upper_.size(); ++u) denom += std::norm(entry(u));
    if (!(denom > 0.0)) return kWorstMerit;
    double mf = 0.0;
    for (std::size_t u = 0; u < upper_.size(); ++u) {
      const double d = std::norm(entry(u)) / denom - goal_[u];
      mf += weight_[u] * d * d;
    }
    return mf;
  }

  double block_merit(double a, double phi) const {
    const cplx c = std::polar(a, phi);
    return merit_of([&](std::size_t u) { return k0_[u] + c * h_[u]; });
  }

  ComplexMatrix current_k(const std::vector<double>& x) const {
    std::vector<cplx> eta(n_);
    for (std::size_t j = 0; j < n_; ++j) eta[j] = std::polar(x[1 + j], x[1 + n_ + j]);
    return joint_amplitude(es_, eta, strength_, x[0], target_.basis);
  }

  // H_j = delta * D o S^T ((s_j s_j^T) o T~) S, or without the outer change of basis for supermodes.
  ComplexMatrix contribution(std::size_t j, const ComplexMatrix& t, cplx delta) const {
    const RealMatrix& s = es_.s_matrix;
    ComplexMatrix h;
    if (target_.basis == Basis::supermode) {
      h = ComplexMatrix(n_, n_);
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) h(r, c) = s(r, j) * s(c, j) * t(r, c);
    } else {
      RealMatrix a(n_, n_);
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t q = 0; q < n_; ++q) a(r, q) = s(r, j) * s(r, q);
      h = kernels::congruence_transpose(a, t);
    }
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) h(r, c) *= delta * (r == c ? std::numbers::sqrt2 : 2.0);
    return h;
  }

  // Coarse polar grid, then a compass search in (|eta_j|, phi_j).
  double block_minimize(double& a, double& phi) const {
    const std::size_t ia = 1, ip = 1 + n_;
    const double a_lo = box_.lo[ia], a_hi = box_.hi[ia];
    const double p_lo = box_.lo[ip], p_hi = box_.hi[ip];
    double best = block_merit(a, phi);
    constexpr int kAmp = 4, kPhase = 12;
    for (int ka = 0; ka <= kAmp; ++ka) {
      const double ta = a_lo + (a_hi - a_lo) * ka / kAmp;
      for (int kp = 0; kp < kPhase; ++kp) {
        const double tp = p_lo + (p_hi - p_lo) * kp / kPhase;
        const double v = block_merit(ta, tp);
        if (v < best) {
          best = v;
          a = ta;
          phi = tp;
        }
        if (ta == 0.0) break;
      }
    }
    double sa = (a_hi - a_lo) / (2 * kAmp), sp = (p_hi - p_lo) / (2 * kPhase);
    for (int trials = 0; trials < 200 && sa > 1e-7 * (a_hi - a_lo); ++trials) {
      bool moved = false;
      const double cand[4][2] = {{a + sa, phi}, {a - sa, phi}, {a, phi + sp}, {a, phi - sp}};
      for (const auto& c : cand) {
        const double ta = std::clamp(c[0], a_lo, a_hi);
        double tp = c[1];
        if (tp < p_lo) tp += p_hi - p_lo;
        if (tp > p_hi) tp -= p_hi - p_lo;
        const double v = block_merit(ta, tp);
        if (v < best) {
          best = v;
          a = ta;
          phi = tp;
          moved = true;
          break;
        }
      }
      if (!moved) {
        sa *= 0.5;
        sp *= 0.5;
      }
    }
    return best;
  }

  double z_search(std::vector<double>& x, double f, double& step) {
    const double lo = box_.lo[0], hi = box_.hi[0];
    const double min_step = 1e-9 * (hi - lo);
    double s = step;
    int fails = 0;
    while (s > min_step) {
      bool moved = false;
      for (double sgn : {1.0, -1.0}) {
        if (exhausted()) return f;
        std::vector<double> trial = x;
        trial[0] = std::clamp(x[0] + sgn * s, lo, hi);
        if (trial[0] == x[0]) continue;
        const double v = full_merit(trial);
        if (v < f) {
          x = std::move(trial);
          f = v;
          moved = true;
          break;
        }
      }
      if (moved) {
        s *= 2.0;
      } else {
        s *= 0.5;
        ++fails;
      }
      if (fails > 40) break;
    }
    // Next sweep starts from a moderate step so z can still leave a shallow basin.
    step = std::max(step * 0.5, 1e-3 * (hi - lo));
    return f;
  }

  const Eigensystem& es_;
  const TargetSpec& target_;
  double strength_;
  const Box& box_;
  std::size_t n_;
  std::size_t budget_;
  std::vector<std::size_t> upper_;
  std::vector<double> weight_, goal_;
  std::vector<cplx> k0_, h_;
  std::size_t evals_ = 0;
};

struct RestartOutcome {
  RestartRecord record;
  Point best;
};

RestartOutcome run_restart(const Eigensystem& es, const TargetSpec& target, const MeritFunction& mf, const Box& box,
                           const OptimizationConfig& cfg, int index) {
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1)));
  const std::size_t n = (box.dim() - 1) / 2;

  Point start;
  start.x.resize(box.dim());
  bool degenerate = true;
  while (degenerate) {
    for (std::size_t i = 0; i < box.dim(); ++i) start.x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * unit_uniform(rng);
    degenerate = !mf(start.x).has_value();
  }

  BlockSearch search(es, target, cfg.strength, box, cfg.max_evals);
  start.f = search.full_merit(start.x);

  RestartOutcome out;
  out.record.initial_z = start.x[0];
  out.record.initial_amplitudes.assign(start.x.begin() + 1, start.x.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  out.record.initial_phases.assign(start.x.begin() + 1 + static_cast<std::ptrdiff_t>(n), start.x.end());
  // Records use the reference merit path so they compare exactly with the result.
  out.record.initial_merit = *mf(start.x);

  Point best = start;
  double z_step = 0.05 * (box.hi[0] - box.lo[0]);
  int stalls = 0;
  while (search.can_sweep()) {
    const double before = best.f;
    std::vector<double> x = best.x;
    const double f = search.sweep(x, best.f, rng, z_step);
    if (f < best.f) {
      best.x = std::move(x);
      best.f = f;
    }
    stalls = (before - best.f <= cfg.tolerance * std::max(best.f, 1e-3)) ? stalls + 1 : 0;
    if (stalls >= 3) break;
  }

  out.record.final_merit = *mf(best.x);
  out.record.evaluations = search.evaluations();
  out.best = std::move(best);
  return out;
}

}  // namespace

OptimizationResult optimize(const CouplingProfile& profile, const TargetSpec& target, const OptimizationConfig& cfg) {
  const Eigensystem es = diagonalize(build_coupling_matrix(profile));
  return optimize(es, target, cfg);
}

OptimizationResult optimize(const Eigensystem& es, const TargetSpec& target, const OptimizationConfig& cfg) {
  cfg.validate();
  const MeritFunction mf(es, target, cfg.strength);
  const Box box = make_box(es.size(), cfg);
  const std::size_t n = es.size();

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < cfg.restarts; ++r) outcomes[static_cast<std::size_t>(r)] = run_restart(es, target, mf, box, cfg, r);

  OptimizationResult res;
  res.method = "block-coordinate(|eta_j|,phi_j)+z-pattern";
  std::size_t best = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    res.history.push_back(outcomes[r].record);
    res.evaluations += outcomes[r].record.evaluations;
    if (outcomes[r].record.final_merit < outcomes[best].record.final_merit) best = r;
  }
  res.best_restart = static_cast<int>(best);

  const std::vector<double>& x = outcomes[best].best.x;
  res.best_z = x[0];
  res.amplitudes.assign(x.begin() + 1, x.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  const auto raw_phases = std::span<const double>(x).subspan(1 + n, n);
  // Gauge fixing maps phases into [0, 2 pi); only do it when that stays inside the box.
  const bool full_turn = cfg.phase_min <= 0.0 && cfg.phase_max >= 2.0 * std::numbers::pi;
  res.phases = full_turn ? gauge_fixed_phases(res.amplitudes, raw_phases)
                         : std::vector<double>(raw_phases.begin(), raw_phases.end());
  res.best_pump = PumpProfile::from_polar(res.amplitudes, res.phases).with_strength(cfg.strength);

  const CorrelationMatrix gamma = mf.correlation_at(x);
  res.merit = outcomes[best].record.final_merit;
  res.similarity = similarity(gamma, target.as_correlation());
  res.z_at_bound = res.best_z <= cfg.z_min || res.best_z >= cfg.z_max;
  return res;
}

}  // namespace anw
