#include "anw/bench.hpp"

#include <chrono>
#include <cmath>

#include "anw/biphoton.hpp"
#include "anw/inverse.hpp"
#include "anw/io.hpp"
#include "anw/lattice.hpp"

namespace anw::bench {

namespace {

using clock = std::chrono::steady_clock;

TimingRow summarize(std::size_t n, const std::vector<double>& seconds) {
  TimingRow row;
  row.n = n;
  row.repetitions = static_cast<int>(seconds.size());
  double sum = 0.0;
  for (double s : seconds) sum += s;
  row.mean_seconds = sum / static_cast<double>(seconds.size());
  if (seconds.size() > 1) {
    double ss = 0.0;
    for (double s : seconds) ss += (s - row.mean_seconds) * (s - row.mean_seconds);
    row.stddev_seconds = std::sqrt(ss / static_cast<double>(seconds.size() - 1));
  }
  return row;
}

void require_reps(int repetitions) {
  if (repetitions < 1) throw ValidationError("bench: repetitions must be >= 1");
}

}  // namespace

std::vector<TimingRow> direct_sweep(const std::vector<std::size_t>& sizes, int repetitions, double z,
                                    const std::function<void(const TimingRow&)>& progress) {
  require_reps(repetitions);
  std::vector<TimingRow> rows;
  for (std::size_t n : sizes) {
    std::vector<double> seconds;
    for (int r = 0; r < repetitions; ++r) {
      const auto t0 = clock::now();
      const CouplingProfile profile = make_profile(ProfileKind::homogeneous, n, 1.0);
      const auto es = std::make_shared<const Eigensystem>(diagonalize(build_coupling_matrix(profile)));
      const BiphotonSolution sol = solve(es, pump_preset("center", n), z);
      const CorrelationMatrix gamma = correlation(sol, Basis::individual);
      seconds.push_back(std::chrono::duration<double>(clock::now() - t0).count());
      if (!(std::abs(gamma.unordered_sum() - 1.0) < 1e-8)) throw ConvergenceError("bench: correlation lost normalization");
    }
    rows.push_back(summarize(n, seconds));
    if (progress) progress(rows.back());
  }
  return rows;
}

std::vector<TimingRow> inverse_sweep(const std::vector<std::size_t>& sizes, int repetitions, std::uint64_t seed,
                                     std::size_t max_evals, const std::function<void(const TimingRow&)>& progress) {
  require_reps(repetitions);
  std::vector<TimingRow> rows;
  for (std::size_t n : sizes) {
    std::vector<double> seconds;
    double sim = 0.0;
    for (int r = 0; r < repetitions; ++r) {
      OptimizationConfig cfg;
      cfg.restarts = 1;
      cfg.seed = seed + static_cast<std::uint64_t>(r);
      cfg.max_evals = max_evals;
      const auto t0 = clock::now();
      const OptimizationResult res = optimize(make_profile(ProfileKind::parabolic, n, 1.0), target_antidiagonal(n), cfg);
      seconds.push_back(std::chrono::duration<double>(clock::now() - t0).count());
      sim += res.similarity;
    }
    TimingRow row = summarize(n, seconds);
    row.similarity = sim / repetitions;
    rows.push_back(row);
    if (progress) progress(rows.back());
  }
  return rows;
}

std::string to_csv(const std::vector<TimingRow>& rows, bool with_similarity) {
  std::string out = with_similarity ? "n,repetitions,mean_s,stddev_s,similarity\n" : "n,repetitions,mean_s,stddev_s\n";
  for (const TimingRow& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.repetitions) + "," + io::format_double(r.mean_seconds) + "," +
           io::format_double(r.stddev_seconds);
    if (with_similarity) out += "," + io::format_double(r.similarity);
    out += "\n";
  }
  return out;
}

}  // namespace anw::bench
