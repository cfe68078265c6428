#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "anw/bench.hpp"
#include "anw/config.hpp"
#include "anw/io.hpp"
#include "anw/kernels.hpp"
#include "anw/oracle.hpp"
#include "anw/render.hpp"

namespace anw::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// A numerical check failed (verify above tolerance).
struct ThresholdFailure : std::runtime_error {
  json report;
  ThresholdFailure(const std::string& what, json r) : std::runtime_error(what), report(std::move(r)) {}
};

void print_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}}.dump() << "\n";
}

std::string format_z(double z) {
  std::ostringstream s;
  s << z;
  return s.str();
}

// ---------------------------------------------------------------------------
// Flag plumbing. Every run-config field a flag can touch is collected here and
// applied on top of the file (or defaults) after parsing.

struct Flags {
  std::string config;
  std::string out;
  std::string profile;
  std::size_t n = 0;
  double c0 = 0.0;
  std::vector<double> factors;
  std::string preset;
  std::vector<double> amplitudes, phases;
  std::vector<double> z;
  double strength = 0.0;
  bool no_json = false, no_csv = false;

  std::string target, target_csv, basis;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::size_t max_evals = 0;
  double z_min = 0.0, z_max = 0.0;

  double tolerance = 0.0;
  std::size_t random_cases = 0;

  std::vector<std::size_t> direct_sizes, inverse_sizes;
  int repetitions = 0, inverse_repetitions = 0;
  double direct_z = 0.0;

  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_common(CLI::App* cmd, Flags& f) {
  f.opts["config"] = cmd->add_option("-c,--config", f.config, "JSON run config");
  f.opts["out"] = cmd->add_option("-o,--out", f.out, "output directory (default: $ANW_OUTPUT_DIR or ./anw-out)");
  f.opts["profile"] = cmd->add_option("--profile", f.profile, "homogeneous | parabolic | square_root | custom");
  f.opts["n"] = cmd->add_option("-n,--waveguides", f.n, "number of waveguides");
  f.opts["c0"] = cmd->add_option("--c0", f.c0, "characteristic coupling");
  f.opts["factors"] = cmd->add_option("--factors", f.factors, "N-1 coupling factors for a custom profile");
  f.opts["preset"] = cmd->add_option("--preset", f.preset, "center | flat | flat_alternating | pair_center");
  f.opts["amplitudes"] = cmd->add_option("--amplitudes", f.amplitudes, "pump amplitudes |eta_j|");
  f.opts["phases"] = cmd->add_option("--phases", f.phases, "pump phases phi_j in radians");
  f.opts["z"] = cmd->add_option("-z,--z", f.z, "propagation length(s) in units of 1/c0");
  f.opts["strength"] = cmd->add_option("--strength", f.strength, "pump strength g|alpha|");
}

void add_formats(CLI::App* cmd, Flags& f) {
  f.opts["no-json"] = cmd->add_flag("--no-json", f.no_json, "skip JSON matrix files");
  f.opts["no-csv"] = cmd->add_flag("--no-csv", f.no_csv, "skip CSV matrix files");
}

void add_optimizer(CLI::App* cmd, Flags& f) {
  f.opts["target"] = cmd->add_option("--target", f.target, "antidiagonal | diagonal | odd_individual | odd_supermode");
  f.opts["target-csv"] = cmd->add_option("--target-csv", f.target_csv, "target correlation matrix as CSV");
  f.opts["basis"] = cmd->add_option("--basis", f.basis, "basis of a CSV target: individual | supermode");
  f.opts["restarts"] = cmd->add_option("--restarts", f.restarts, "independent restarts");
  f.opts["seed"] = cmd->add_option("--seed", f.seed, "64-bit seed");
  f.opts["max-evals"] = cmd->add_option("--max-evals", f.max_evals, "work budget per restart");
  f.opts["z-min"] = cmd->add_option("--z-min", f.z_min, "lower z bound");
  f.opts["z-max"] = cmd->add_option("--z-max", f.z_max, "upper z bound");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  bool file_sets_output = false;
  if (!f.config.empty()) {
    const json j = io::read_json(f.config);
    cfg = parse_run_config(j);
    file_sets_output = j.contains("output_dir");
  }
  if (!file_sets_output) {
    if (const char* env = std::getenv("ANW_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
  }
  if (f.given("out")) cfg.output_dir = f.out;
  if (f.given("profile")) cfg.profile.kind = parse_profile_kind(f.profile);
  if (f.given("n")) cfg.profile.n = f.n;
  if (f.given("c0")) cfg.profile.c0 = f.c0;
  if (f.given("factors")) {
    cfg.profile.factors = f.factors;
    if (!f.given("n")) cfg.profile.n = f.factors.size() + 1;
  }
  if (f.given("preset") && (f.given("amplitudes") || f.given("phases"))) {
    throw ValidationError("give either --preset or --amplitudes/--phases, not both");
  }
  if (f.given("preset")) cfg.pump = PumpSpec{f.preset, {}, {}};
  if (f.given("amplitudes")) cfg.pump = PumpSpec{std::nullopt, f.amplitudes, f.given("phases") ? f.phases : std::vector<double>{}};
  if (f.given("phases") && !f.given("amplitudes")) {
    if (cfg.pump.preset) throw ValidationError("--phases needs --amplitudes (the configured pump is a preset)");
    cfg.pump.phases = f.phases;
  }
  if (f.given("z")) cfg.z = f.z;
  if (f.given("strength")) cfg.strength = f.strength;
  if (f.given("no-json")) cfg.write_json = !f.no_json;
  if (f.given("no-csv")) cfg.write_csv = !f.no_csv;

  if (f.given("target") && f.given("target-csv")) throw ValidationError("give either --target or --target-csv");
  if (f.given("target")) cfg.target = TargetChoice{f.target, std::nullopt, Basis::individual};
  if (f.given("target-csv")) cfg.target.csv = f.target_csv;
  if (f.given("basis")) cfg.target.basis = parse_basis(f.basis);
  if (f.given("restarts")) cfg.optimizer.restarts = f.restarts;
  if (f.given("seed")) cfg.optimizer.seed = f.seed;
  if (f.given("max-evals")) cfg.optimizer.max_evals = f.max_evals;
  if (f.given("z-min")) cfg.optimizer.z_min = f.z_min;
  if (f.given("z-max")) cfg.optimizer.z_max = f.z_max;

  if (f.given("tolerance")) cfg.verify.tolerance = f.tolerance;
  if (f.given("random-cases")) cfg.verify.random_cases = f.random_cases;
  if (f.given("direct-sizes")) cfg.bench.direct_sizes = f.direct_sizes;
  if (f.given("inverse-sizes")) cfg.bench.inverse_sizes = f.inverse_sizes;
  if (f.given("repetitions")) cfg.bench.repetitions = f.repetitions;
  if (f.given("inverse-repetitions")) cfg.bench.inverse_repetitions = f.inverse_repetitions;
  if (f.given("direct-z")) cfg.bench.direct_z = f.direct_z;

  cfg.optimizer.strength = cfg.strength;
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// solve

json top_entries(const RealMatrix& gamma, std::size_t count) {
  // Upper triangle only: Gamma is symmetric and (k, q) and (q, k) are the same outcome.
  std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> cells;
  for (std::size_t i = 0; i < gamma.rows(); ++i)
    for (std::size_t j = i; j < gamma.cols(); ++j) cells.push_back({gamma(i, j), {i, j}});
  std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  json list = json::array();
  for (std::size_t k = 0; k < std::min(count, cells.size()); ++k)
    list.push_back({{"row", cells[k].second.first + 1}, {"col", cells[k].second.second + 1}, {"gamma", cells[k].first}});
  return list;
}

void write_matrix(const RunConfig& cfg, const fs::path& dir, const std::string& name, const ComplexMatrix& m) {
  if (cfg.write_json) io::write_json(dir / (name + ".json"), io::to_json(m));
  if (cfg.write_csv) io::write_csv_pair(dir / name, m);
}

int cmd_solve(const RunConfig& cfg, bool svg, std::ostream& out) {
  const CouplingProfile profile = cfg.profile.build();
  const auto es = std::make_shared<const Eigensystem>(diagonalize(build_coupling_matrix(profile)));
  const PumpProfile pump = cfg.pump.build(profile.n_waveguides, cfg.strength);
  const fs::path root = cfg.output_dir;
  io::write_json(root / "config.json", to_json(cfg));

  json summary = {{"profile", std::string(to_string(profile.kind))},
                  {"n", profile.n_waveguides},
                  {"eigenvalues", es->eigenvalues},
                  {"runs", json::array()}};
  const bool alternating = is_alternating(pump);
  if (alternating) {
    const BunchingFactors bf = bunching_factors(pump);
    summary["bunching_factors"] = {{"f_a", {bf.f_a.real(), bf.f_a.imag()}}, {"f_b", {bf.f_b.real(), bf.f_b.imag()}}};
    out << "bunching factors: F_A = " << bf.f_a << ", F_B = " << bf.f_b << "\n";
  }

  for (double z : cfg.z) {
    const BiphotonSolution sol = solve(es, pump, z);
    const CorrelationMatrix gamma = correlation(sol, Basis::individual);
    const CorrelationMatrix gamma_tilde = correlation(sol, Basis::supermode);
    const fs::path dir = root / ("z_" + format_z(z));
    write_matrix(cfg, dir, "p_tilde", sol.p_tilde);
    write_matrix(cfg, dir, "t_tilde", sol.t_tilde);
    write_matrix(cfg, dir, "k_tilde", sol.k_tilde);
    write_matrix(cfg, dir, "k", sol.k);
    io::write_csv(dir / "gamma.csv", gamma.entries);
    io::write_csv(dir / "gamma_tilde.csv", gamma_tilde.entries);
    if (svg) {
      const std::string tag = " (c0 z = " + format_z(z) + ")";
      io::write_text(dir / "p_tilde.svg", render::complex_heatmap(sol.p_tilde, "P~" + tag));
      io::write_text(dir / "t_tilde.svg", render::complex_heatmap(sol.t_tilde, "T~" + tag));
      // The figures divide by delta = i z strength; at z = 0 the amplitudes are plotted as they are.
      const bool divide = sol.delta != cplx(0.0);
      const cplx scale = divide ? 1.0 / sol.delta : cplx(1.0);
      const std::string over = divide ? " / delta" : "";
      io::write_text(dir / "k_tilde_over_delta.svg",
                     render::complex_heatmap(scaled(sol.k_tilde, scale), "K~" + over + tag));
      io::write_text(dir / "k_over_delta.svg", render::complex_heatmap(scaled(sol.k, scale), "K" + over + tag));
      io::write_text(dir / "gamma.svg", render::real_heatmap(gamma.entries, "Gamma" + tag));
    }
    json run = {{"z", z},
                {"directory", dir.filename().string()},
                {"top_gamma", top_entries(gamma.entries, 5)},
                {"top_gamma_supermode", top_entries(gamma_tilde.entries, 5)}};
    out << "z = " << format_z(z) << ": largest Gamma entries";
    for (const json& e : run["top_gamma"])
      out << "  (" << e["row"].get<std::size_t>() << "," << e["col"].get<std::size_t>() << ")=" << e["gamma"].get<double>();
    out << "\n";
    summary["runs"].push_back(std::move(run));
  }
  io::write_json(root / "summary.json", summary);
  out << "wrote " << root.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

double scaled_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs_diff(a, b) / std::max(1.0, max_abs(b));
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const CouplingProfile profile = cfg.profile.build();
  const CouplingMatrix omega = build_coupling_matrix(profile);
  const auto es = std::make_shared<const Eigensystem>(diagonalize(omega));
  const std::size_t n = profile.n_waveguides;

  std::vector<PumpProfile> pumps{cfg.pump.build(n, cfg.strength)};
  std::mt19937_64 rng(cfg.verify.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 0; c < cfg.verify.random_cases; ++c) {
    std::vector<cplx> raw(n);
    for (cplx& v : raw) v = std::polar(unit(rng), 2.0 * std::numbers::pi * unit(rng));
    raw[0] += 1e-3;  // keeps the draw away from the all-zero pump
    pumps.push_back(PumpProfile::normalized(std::move(raw), cfg.strength));
  }

  const bool closed_form = profile.kind == ProfileKind::homogeneous && (n == 2 || n == 3);
  double worst_quadrature = 0.0, worst_closed = 0.0;
  json cases = json::array();
  for (std::size_t p = 0; p < pumps.size(); ++p) {
    for (double z : cfg.z) {
      const BiphotonSolution sol = solve(es, pumps[p], z);
      const oracle::QuadratureResult quad = oracle::quadrature_q(omega, pumps[p], z);
      const double dq = scaled_deviation(sol.q, quad.q);
      worst_quadrature = std::max(worst_quadrature, dq);
      json row = {{"pump", p}, {"z", z}, {"quadrature_deviation", dq}, {"panels", quad.panels}};
      if (closed_form) {
        const auto eta = pumps[p].eta();
        const ComplexMatrix k = n == 2 ? oracle::closed_form_two_waveguide({eta[0], eta[1]}, pumps[p].strength(),
                                                                           profile.c0, z)
                                       : oracle::closed_form_three_waveguide({eta[0], eta[1], eta[2]},
                                                                             pumps[p].strength(), profile.c0, z);
        const double dk = scaled_deviation(sol.k, k);
        worst_closed = std::max(worst_closed, dk);
        row["closed_form_deviation"] = dk;
      }
      cases.push_back(std::move(row));
    }
  }

  const double worst = std::max(worst_quadrature, worst_closed);
  json report = {{"profile", std::string(to_string(profile.kind))},
                 {"n", n},
                 {"tolerance", cfg.verify.tolerance},
                 {"max_quadrature_deviation", worst_quadrature},
                 {"cases", cases},
                 {"pass", worst <= cfg.verify.tolerance}};
  if (closed_form) report["max_closed_form_deviation"] = worst_closed;
  io::write_json(fs::path(cfg.output_dir) / "verify.json", report);

  out << "pipeline vs quadrature: max deviation " << worst_quadrature << " over " << cases.size() << " case(s)\n";
  if (closed_form) out << "pipeline vs closed form: max deviation " << worst_closed << "\n";
  if (worst > cfg.verify.tolerance) {
    throw ThresholdFailure("verify: deviation " + io::format_double(worst) + " exceeds tolerance " +
                               io::format_double(cfg.verify.tolerance),
                           report);
  }
  out << "PASS (tolerance " << cfg.verify.tolerance << ")\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// invert

json result_json(const OptimizationResult& r, const TargetSpec& target, const RunConfig& cfg) {
  json history = json::array();
  for (const RestartRecord& h : r.history)
    history.push_back({{"initial_z", h.initial_z},
                       {"initial_amplitudes", h.initial_amplitudes},
                       {"initial_phases", h.initial_phases},
                       {"initial_merit", h.initial_merit},
                       {"final_merit", h.final_merit},
                       {"evaluations", h.evaluations}});
  json eta = json::array();
  for (const cplx& v : r.best_pump.eta()) eta.push_back({v.real(), v.imag()});
  return {{"method", r.method},
          {"target", {{"name", target.name}, {"basis", std::string(to_string(target.basis))}, {"n", target.size()}}},
          {"best_z", r.best_z},
          {"z_at_bound", r.z_at_bound},
          {"merit", r.merit},
          {"similarity", r.similarity},
          {"best_restart", r.best_restart},
          {"evaluations", r.evaluations},
          {"best_pump",
           {{"eta", eta}, {"strength", r.best_pump.strength()}, {"amplitudes", r.amplitudes}, {"phases", r.phases}}},
          {"history", history},
          {"config", to_json(cfg)}};
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
  const CouplingProfile profile = cfg.profile.build();
  const Eigensystem es = diagonalize(build_coupling_matrix(profile));
  const TargetSpec target = cfg.target.build(profile.n_waveguides);

  const auto t0 = std::chrono::steady_clock::now();
  const OptimizationResult r = optimize(es, target, cfg.optimizer);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path root = cfg.output_dir;
  io::write_json(root / "result.json", result_json(r, target, cfg));
  const CorrelationMatrix achieved = correlation_from_amplitudes(
      joint_amplitude(es, r.best_pump.eta(), r.best_pump.strength(), r.best_z, target.basis), target.basis);
  io::write_csv(root / "gamma_achieved.csv", achieved.entries);
  io::write_csv(root / "gamma_target.csv", target.matrix);

  std::vector<double> unit_amplitudes;
  for (const cplx& v : r.best_pump.eta()) unit_amplitudes.push_back(std::abs(v));
  io::write_text(root / "pump.svg", render::pump_bars(unit_amplitudes, r.phases,
                                                      "optimized pump, c0 z = " + format_z(r.best_z)));
  io::write_text(root / "gamma_achieved.svg",
                 render::real_heatmap(achieved.entries, "achieved Gamma, S = " + format_z(r.similarity)));
  io::write_text(root / "gamma_target.svg", render::real_heatmap(target.matrix, "target Gamma (" + target.name + ")"));

  out << "method " << r.method << "\n";
  out << "best restart " << r.best_restart << " of " << r.history.size() << ", MF = " << r.merit
      << ", similarity = " << r.similarity << ", c0 z = " << r.best_z << (r.z_at_bound ? " (at bound)" : "") << "\n";
  out << "evaluations " << r.evaluations << ", " << seconds << " s\n";
  out << "wrote " << root.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(const RunConfig& cfg, bool skip_direct, bool skip_inverse, std::ostream& out) {
  const fs::path root = cfg.output_dir;
  if (!skip_direct) {
    out << "direct: homogeneous, center injection, c0 z = " << cfg.bench.direct_z << "\n";
    const auto rows = bench::direct_sweep(cfg.bench.direct_sizes, cfg.bench.repetitions, cfg.bench.direct_z,
                                          [&](const bench::TimingRow& r) {
                                            out << "  N=" << r.n << "  " << r.mean_seconds << " +- " << r.stddev_seconds
                                                << " s\n" << std::flush;
                                          });
    io::write_text(root / "bench_direct.csv", bench::to_csv(rows, false));
  }
  if (!skip_inverse) {
    out << "inverse: parabolic, antidiagonal target, one restart per repetition\n";
    const auto rows = bench::inverse_sweep(
        cfg.bench.inverse_sizes, cfg.bench.inverse_repetitions, cfg.optimizer.seed, cfg.optimizer.max_evals,
        [&](const bench::TimingRow& r) {
          out << "  N=" << r.n << "  " << r.mean_seconds << " +- " << r.stddev_seconds << " s, similarity "
              << r.similarity << "\n" << std::flush;
        });
    io::write_text(root / "bench_inverse.csv", bench::to_csv(rows, true));
  }
  out << "wrote " << root.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// render

int cmd_render(const std::vector<std::string>& files, std::string out_dir, const std::string& title,
               std::ostream& out) {
  if (out_dir.empty()) {
    const char* env = std::getenv("ANW_OUTPUT_DIR");
    out_dir = (env && *env) ? env : "anw-out";
  }
  for (const std::string& file : files) {
    const fs::path path(file);
    std::string stem = path.filename().string();
    for (const char* suffix : {".re.csv", ".im.csv", ".json", ".csv"}) {
      const std::string s(suffix);
      if (stem.size() > s.size() && stem.compare(stem.size() - s.size(), s.size(), s) == 0) {
        stem.resize(stem.size() - s.size());
        break;
      }
    }
    const ComplexMatrix m = io::load_matrix(path);
    const bool real_file = path.extension() == ".csv" && stem == path.stem().string();
    std::string svg;
    if (real_file) {
      RealMatrix r(m.rows(), m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
      svg = render::real_heatmap(r, title.empty() ? stem : title);
    } else {
      svg = render::complex_heatmap(m, title.empty() ? stem : title);
    }
    const fs::path target = fs::path(out_dir) / (stem + ".svg");
    io::write_text(target, svg);
    out << "wrote " << target.string() << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biphoton states in arrays of nonlinear waveguides", "anw"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap on worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  Flags solve_f, verify_f, invert_f, bench_f;
  bool svg = false, skip_direct = false, skip_inverse = false;
  std::vector<std::string> render_files;
  std::string render_out, render_title;

  CLI::App* solve_cmd = app.add_subcommand("solve", "output state matrices and correlations for each z");
  add_common(solve_cmd, solve_f);
  add_formats(solve_cmd, solve_f);
  solve_cmd->add_flag("--svg", svg, "also render heatmaps");

  CLI::App* verify_cmd = app.add_subcommand("verify", "compare the pipeline with quadrature and closed forms");
  add_common(verify_cmd, verify_f);
  verify_f.opts["tolerance"] = verify_cmd->add_option("--tolerance", verify_f.tolerance, "maximum allowed deviation");
  verify_f.opts["random-cases"] =
      verify_cmd->add_option("--random-cases", verify_f.random_cases, "extra seeded random pumps");

  CLI::App* invert_cmd = app.add_subcommand("invert", "optimize pump and z for a target correlation matrix");
  add_common(invert_cmd, invert_f);
  add_optimizer(invert_cmd, invert_f);

  CLI::App* bench_cmd = app.add_subcommand("bench", "time direct and inverse runs against N");
  add_common(bench_cmd, bench_f);
  bench_f.opts["seed"] = bench_cmd->add_option("--seed", bench_f.seed, "seed of the first inverse repetition");
  bench_f.opts["max-evals"] = bench_cmd->add_option("--max-evals", bench_f.max_evals, "inverse work budget per run");
  bench_f.opts["direct-sizes"] = bench_cmd->add_option("--direct-sizes", bench_f.direct_sizes, "N values for the direct sweep");
  bench_f.opts["inverse-sizes"] = bench_cmd->add_option("--inverse-sizes", bench_f.inverse_sizes, "N values for the inverse sweep");
  bench_f.opts["repetitions"] = bench_cmd->add_option("--repetitions", bench_f.repetitions, "direct repetitions per N");
  bench_f.opts["inverse-repetitions"] =
      bench_cmd->add_option("--inverse-repetitions", bench_f.inverse_repetitions, "inverse repetitions per N");
  bench_f.opts["direct-z"] = bench_cmd->add_option("--direct-z", bench_f.direct_z, "c0 z of the direct solves");
  bench_cmd->add_flag("--skip-direct", skip_direct, "skip the direct sweep");
  bench_cmd->add_flag("--skip-inverse", skip_inverse, "skip the inverse sweep");

  CLI::App* render_cmd = app.add_subcommand("render", "SVG heatmaps of matrix files");
  render_cmd->add_option("files", render_files, ".json, .csv, or CSV-pair files")->required();
  render_cmd->add_option("-o,--out", render_out, "output directory");
  render_cmd->add_option("--title", render_title, "heading (default: file stem)");

  std::vector<const char*> argv{"anw"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "anw 1.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what(), kValidation);
    return kValidation;
  }

  try {
    if (threads > 0) kernels::set_threads(threads);
    if (*render_cmd) return cmd_render(render_files, render_out, render_title, out);
    if (*solve_cmd) return cmd_solve(resolve(solve_f), svg, out);
    if (*verify_cmd) return cmd_verify(resolve(verify_f), out);
    if (*invert_cmd) return cmd_invert(resolve(invert_f), out);
    if (*bench_cmd) return cmd_bench(resolve(bench_f), skip_direct, skip_inverse, out);
  } catch (const ThresholdFailure& e) {
    print_error(err, "threshold", e.what(), kThreshold);
    return kThreshold;
  } catch (const ConvergenceError& e) {
    print_error(err, "convergence", e.what(), kThreshold);
    return kThreshold;
  } catch (const ValidationError& e) {
    print_error(err, "validation", e.what(), kValidation);
    return kValidation;
  } catch (const DegenerateError& e) {
    print_error(err, "degenerate", e.what(), kValidation);
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    print_error(err, "io", e.what(), kValidation);
    return kValidation;
  }
  return kValidation;
}

}  // namespace anw::cli
