#pragma once

// RunConfig: the single JSON document that drives every subcommand.
// Unknown keys are rejected at every nesting level so a typo cannot silently
// fall back to a default.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anw/biphoton.hpp"
#include "anw/inverse.hpp"
#include "anw/lattice.hpp"

namespace anw {

struct ProfileSpec {
  ProfileKind kind = ProfileKind::homogeneous;
  std::size_t n = 7;
  double c0 = 1.0;
  std::optional<std::vector<double>> factors;  // custom profiles only

  CouplingProfile build() const { return make_profile(kind, n, c0, factors); }
};

struct PumpSpec {
  std::optional<std::string> preset;  // center, flat, flat_alternating, pair_center
  std::vector<double> amplitudes;     // used when no preset is given
  std::vector<double> phases;         // radians; empty means all zero

  PumpProfile build(std::size_t n, double strength) const;
};

struct TargetChoice {
  std::string name = "antidiagonal";  // built-in name, ignored when csv is set
  std::optional<std::filesystem::path> csv;
  Basis basis = Basis::individual;  // basis of a CSV target

  TargetSpec build(std::size_t n) const;
};

struct VerifySettings {
  double tolerance = 1e-8;
  std::size_t random_cases = 0;  // extra seeded random pumps on top of the configured one
  std::uint64_t seed = 1;
};

struct BenchSettings {
  std::vector<std::size_t> direct_sizes{1, 11, 51, 101, 201, 501, 1001};
  std::vector<std::size_t> inverse_sizes{10, 20, 30, 40, 50};
  int repetitions = 10;
  int inverse_repetitions = 10;
  double direct_z = 20.0;
};

struct RunConfig {
  ProfileSpec profile;
  PumpSpec pump{std::string("center"), {}, {}};
  std::vector<double> z{1.0};
  double strength = 1.0;
  std::filesystem::path output_dir = "anw-out";
  bool write_json = true;
  bool write_csv = true;
  TargetChoice target;
  OptimizationConfig optimizer;
  VerifySettings verify;
  BenchSettings bench;

  /// Cross-field checks (profile validity, pump length, z >= 0, optimizer bounds).
  void validate() const;
};

/// Parses a config document. Missing keys keep their defaults; unknown keys,
/// wrong types and out-of-range values throw ValidationError naming the key.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// The full config with every default filled in, for reproducibility records.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace anw
