#pragma once

// Wall-clock timing sweeps for the direct and inverse problems.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace anw::bench {

struct TimingRow {
  std::size_t n = 0;
  int repetitions = 0;
  double mean_seconds = 0.0;
  double stddev_seconds = 0.0;  // sample standard deviation, 0 for one repetition
  double similarity = -1.0;     // inverse rows only
};

/// Homogeneous array, center injection, full pipeline per repetition:
/// diagonalization, solve at z, individual-basis correlation. Even sizes are
/// accepted although the reference protocol uses odd N.
std::vector<TimingRow> direct_sweep(const std::vector<std::size_t>& sizes, int repetitions, double z,
                                    const std::function<void(const TimingRow&)>& progress = {});

/// Parabolic array, antidiagonal target, one seeded restart per repetition
/// (repetition r uses seed + r). Similarity is averaged over repetitions.
std::vector<TimingRow> inverse_sweep(const std::vector<std::size_t>& sizes, int repetitions, std::uint64_t seed,
                                     std::size_t max_evals,
                                     const std::function<void(const TimingRow&)>& progress = {});

/// n,repetitions,mean_s,stddev_s[,similarity]
std::string to_csv(const std::vector<TimingRow>& rows, bool with_similarity);

}  // namespace anw::bench
