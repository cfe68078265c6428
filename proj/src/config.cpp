#include "anw/config.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "anw/io.hpp"

namespace anw {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ValidationError("config: " + where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.contains(key)) throw ValidationError("config: unknown key '" + where + (where.empty() ? "" : ".") + key + "'");
}

std::string path_of(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

double get_number(const json& j, const std::string& where, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ValidationError("config: '" + path_of(where, key) + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError("config: '" + path_of(where, key) + "' must be finite");
  return d;
}

std::uint64_t get_unsigned(const json& j, const std::string& where, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ValidationError("config: '" + path_of(where, key) + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& where, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw ValidationError("config: '" + path_of(where, key) + "' must be a string");
  return v.get<std::string>();
}

bool get_bool(const json& j, const std::string& where, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ValidationError("config: '" + path_of(where, key) + "' must be true or false");
  return v.get<bool>();
}

std::vector<double> get_numbers(const json& j, const std::string& where, const std::string& key) {
  const json& v = j.at(key);
  if (v.is_number()) return {get_number(j, where, key)};
  if (!v.is_array()) throw ValidationError("config: '" + path_of(where, key) + "' must be a number or a list");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) throw ValidationError("config: '" + path_of(where, key) + "' must hold numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::size_t> get_sizes(const json& j, const std::string& where, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_array()) throw ValidationError("config: '" + path_of(where, key) + "' must be a list");
  std::vector<std::size_t> out;
  for (const json& e : v) {
    if (!e.is_number_integer() || e.get<std::int64_t>() < 1) {
      throw ValidationError("config: '" + path_of(where, key) + "' must hold positive integers");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

template <class Fn>
void with(const json& j, const char* key, Fn&& fn) {
  if (j.contains(key)) fn();
}

}  // namespace

PumpProfile PumpSpec::build(std::size_t n, double strength) const {
  if (preset) return pump_preset(*preset, n, strength);
  if (amplitudes.size() != n) {
    throw ValidationError("config: pump.amplitudes has " + std::to_string(amplitudes.size()) + " entries, expected " +
                          std::to_string(n));
  }
  std::vector<double> ph = phases.empty() ? std::vector<double>(n, 0.0) : phases;
  if (ph.size() != n) throw ValidationError("config: pump.phases must match pump.amplitudes in length");
  return PumpProfile::from_polar(amplitudes, ph, strength);
}

TargetSpec TargetChoice::build(std::size_t n) const {
  if (!csv) return builtin_target(name, n);
  RealMatrix m = io::read_csv(*csv);
  if (m.rows() != n || m.cols() != n) {
    throw ValidationError("target CSV '" + csv->string() + "' is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
  return make_target(std::move(m), basis, csv->stem().string());
}

void RunConfig::validate() const {
  (void)profile.build();
  if (!(strength > 0.0) || !std::isfinite(strength)) throw ValidationError("config: strength must be > 0");
  if (z.empty()) throw ValidationError("config: z must list at least one propagation length");
  for (double v : z)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("config: every z must be finite and >= 0");
  if (!pump.preset) {
    for (double a : pump.amplitudes)
      if (!(a >= 0.0) || !std::isfinite(a)) throw ValidationError("config: pump amplitudes must be finite and >= 0");
    for (double p : pump.phases)
      if (!std::isfinite(p)) throw ValidationError("config: pump phases must be finite");
  }
  (void)pump.build(profile.n, strength);  // unknown preset, wrong length, all-zero amplitudes
  optimizer.validate();
  if (!(verify.tolerance > 0.0)) throw ValidationError("config: verify.tolerance must be > 0");
  if (bench.repetitions < 1 || bench.inverse_repetitions < 1) {
    throw ValidationError("config: bench repetitions must be >= 1");
  }
  if (!(bench.direct_z >= 0.0)) throw ValidationError("config: bench.direct_z must be >= 0");
}

RunConfig parse_run_config(const json& j) {
  only_keys(j, "", {"profile", "pump", "z", "strength", "output_dir", "formats", "target", "optimizer", "verify", "bench"});
  RunConfig cfg;

  with(j, "profile", [&] {
    const json& p = j["profile"];
    only_keys(p, "profile", {"kind", "n", "c0", "factors"});
    with(p, "kind", [&] { cfg.profile.kind = parse_profile_kind(get_string(p, "profile", "kind")); });
    with(p, "n", [&] { cfg.profile.n = get_unsigned(p, "profile", "n"); });
    with(p, "c0", [&] { cfg.profile.c0 = get_number(p, "profile", "c0"); });
    with(p, "factors", [&] { cfg.profile.factors = get_numbers(p, "profile", "factors"); });
  });

  with(j, "pump", [&] {
    const json& p = j["pump"];
    only_keys(p, "pump", {"preset", "amplitudes", "phases"});
    if (p.contains("preset") && (p.contains("amplitudes") || p.contains("phases"))) {
      throw ValidationError("config: pump takes either 'preset' or 'amplitudes'/'phases', not both");
    }
    if (p.contains("preset")) {
      cfg.pump.preset = get_string(p, "pump", "preset");
    } else {
      if (!p.contains("amplitudes")) throw ValidationError("config: pump needs 'preset' or 'amplitudes'");
      cfg.pump.preset.reset();
      cfg.pump.amplitudes = get_numbers(p, "pump", "amplitudes");
      with(p, "phases", [&] { cfg.pump.phases = get_numbers(p, "pump", "phases"); });
    }
  });

  with(j, "z", [&] { cfg.z = get_numbers(j, "", "z"); });
  with(j, "strength", [&] { cfg.strength = get_number(j, "", "strength"); });
  with(j, "output_dir", [&] { cfg.output_dir = get_string(j, "", "output_dir"); });

  with(j, "formats", [&] {
    const json& f = j["formats"];
    only_keys(f, "formats", {"json", "csv"});
    with(f, "json", [&] { cfg.write_json = get_bool(f, "formats", "json"); });
    with(f, "csv", [&] { cfg.write_csv = get_bool(f, "formats", "csv"); });
  });

  with(j, "target", [&] {
    const json& t = j["target"];
    only_keys(t, "target", {"name", "csv", "basis"});
    if (t.contains("name") && t.contains("csv")) throw ValidationError("config: target takes 'name' or 'csv', not both");
    with(t, "name", [&] { cfg.target.name = get_string(t, "target", "name"); });
    with(t, "csv", [&] { cfg.target.csv = get_string(t, "target", "csv"); });
    with(t, "basis", [&] { cfg.target.basis = parse_basis(get_string(t, "target", "basis")); });
  });

  with(j, "optimizer", [&] {
    const json& o = j["optimizer"];
    const std::string w = "optimizer";
    only_keys(o, w, {"z_min", "z_max", "amp_min", "amp_max", "phase_min", "phase_max", "restarts", "seed",
                     "max_evals", "tolerance"});
    OptimizationConfig& oc = cfg.optimizer;
    with(o, "z_min", [&] { oc.z_min = get_number(o, w, "z_min"); });
    with(o, "z_max", [&] { oc.z_max = get_number(o, w, "z_max"); });
    with(o, "amp_min", [&] { oc.amp_min = get_number(o, w, "amp_min"); });
    with(o, "amp_max", [&] { oc.amp_max = get_number(o, w, "amp_max"); });
    with(o, "phase_min", [&] { oc.phase_min = get_number(o, w, "phase_min"); });
    with(o, "phase_max", [&] { oc.phase_max = get_number(o, w, "phase_max"); });
    with(o, "restarts", [&] { oc.restarts = static_cast<int>(get_unsigned(o, w, "restarts")); });
    with(o, "seed", [&] { oc.seed = get_unsigned(o, w, "seed"); });
    with(o, "max_evals", [&] { oc.max_evals = get_unsigned(o, w, "max_evals"); });
    with(o, "tolerance", [&] { oc.tolerance = get_number(o, w, "tolerance"); });
  });

  with(j, "verify", [&] {
    const json& v = j["verify"];
    only_keys(v, "verify", {"tolerance", "random_cases", "seed"});
    with(v, "tolerance", [&] { cfg.verify.tolerance = get_number(v, "verify", "tolerance"); });
    with(v, "random_cases", [&] { cfg.verify.random_cases = get_unsigned(v, "verify", "random_cases"); });
    with(v, "seed", [&] { cfg.verify.seed = get_unsigned(v, "verify", "seed"); });
  });

  with(j, "bench", [&] {
    const json& b = j["bench"];
    only_keys(b, "bench", {"direct_sizes", "inverse_sizes", "repetitions", "inverse_repetitions", "direct_z"});
    with(b, "direct_sizes", [&] { cfg.bench.direct_sizes = get_sizes(b, "bench", "direct_sizes"); });
    with(b, "inverse_sizes", [&] { cfg.bench.inverse_sizes = get_sizes(b, "bench", "inverse_sizes"); });
    with(b, "repetitions", [&] { cfg.bench.repetitions = static_cast<int>(get_unsigned(b, "bench", "repetitions")); });
    with(b, "inverse_repetitions",
         [&] { cfg.bench.inverse_repetitions = static_cast<int>(get_unsigned(b, "bench", "inverse_repetitions")); });
    with(b, "direct_z", [&] { cfg.bench.direct_z = get_number(b, "bench", "direct_z"); });
  });

  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(io::read_json(path)); }

json to_json(const RunConfig& cfg) {
  json profile = {{"kind", std::string(to_string(cfg.profile.kind))}, {"n", cfg.profile.n}, {"c0", cfg.profile.c0}};
  if (cfg.profile.factors) profile["factors"] = *cfg.profile.factors;
  json pump;
  if (cfg.pump.preset) {
    pump["preset"] = *cfg.pump.preset;
  } else {
    pump["amplitudes"] = cfg.pump.amplitudes;
    pump["phases"] = cfg.pump.phases;
  }
  json target;
  if (cfg.target.csv) {
    target = {{"csv", cfg.target.csv->string()}, {"basis", std::string(to_string(cfg.target.basis))}};
  } else {
    target = {{"name", cfg.target.name}};
  }
  const OptimizationConfig& o = cfg.optimizer;
  return {
      {"profile", profile},
      {"pump", pump},
      {"z", cfg.z},
      {"strength", cfg.strength},
      {"output_dir", cfg.output_dir.string()},
      {"formats", {{"json", cfg.write_json}, {"csv", cfg.write_csv}}},
      {"target", target},
      {"optimizer",
       {{"z_min", o.z_min},
        {"z_max", o.z_max},
        {"amp_min", o.amp_min},
        {"amp_max", o.amp_max},
        {"phase_min", o.phase_min},
        {"phase_max", o.phase_max},
        {"restarts", o.restarts},
        {"seed", o.seed},
        {"max_evals", o.max_evals},
        {"tolerance", o.tolerance}}},
      {"verify",
       {{"tolerance", cfg.verify.tolerance}, {"random_cases", cfg.verify.random_cases}, {"seed", cfg.verify.seed}}},
      {"bench",
       {{"direct_sizes", cfg.bench.direct_sizes},
        {"inverse_sizes", cfg.bench.inverse_sizes},
        {"repetitions", cfg.bench.repetitions},
        {"inverse_repetitions", cfg.bench.inverse_repetitions},
        {"direct_z", cfg.bench.direct_z}}},
  };
}

}  // namespace anw
