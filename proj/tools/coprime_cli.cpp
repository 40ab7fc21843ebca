// Command-line front end: simulate, estimate, music, sweep, check.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "coprime/experiment.hpp"
#include "coprime/self_check.hpp"
#include "coprime/snapshot_sim.hpp"

namespace fs = std::filesystem;
using namespace coprime;

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  int threads = 1;
  std::optional<int> trials;
};

ExperimentConfig resolve(const CommonOptions& opts) {
  ExperimentConfig cfg = load_config(opts.config_path);
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.out_dir) cfg.output_dir = *opts.out_dir;
  if (opts.trials) cfg.n_trials = *opts.trials;
  validate(cfg);
  return cfg;
}

// Sample covariance for the config's template scenario, or the nominal one.
ComplexMatrix single_shot_covariance(const ExperimentConfig& cfg, const CoprimeGeometry& geom) {
  const Scenario sc = make_scenario(cfg, cfg.source_power_db - cfg.noise_power_db, cfg.snapshots, cfg.master_seed);
  if (cfg.nominal_statistics) return nominal_phys_cov(geom, sc);
  return sample_covariance(simulate_snapshots(geom, sc).y);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::trunc);
  if (!os || !(os << text)) throw std::runtime_error("cannot write " + path.string());
}

int cmd_simulate(const CommonOptions& opts) {
  const ExperimentConfig cfg = resolve(opts);
  const CoprimeGeometry geom = build_geometry(cfg.m, cfg.n);
  const Scenario sc = make_scenario(cfg, cfg.source_power_db - cfg.noise_power_db, cfg.snapshots, cfg.master_seed);
  const SnapshotSet set = simulate_snapshots(geom, sc);
  fs::create_directories(cfg.output_dir);
  const fs::path path = cfg.output_dir / "snapshots.bin";
  write_snapshots(path, set);
  std::cerr << "wrote " << set.y.rows() << "x" << set.y.cols() << " snapshots to " << path << "\n";
  return 0;
}

int cmd_estimate(const CommonOptions& opts) {
  const ExperimentConfig cfg = resolve(opts);
  const CoprimeGeometry geom = build_geometry(cfg.m, cfg.n);
  const ComplexMatrix ry = single_shot_covariance(cfg, geom);
  const Scenario truth_sc = make_scenario(cfg, cfg.source_power_db - cfg.noise_power_db, cfg.snapshots, 0);
  const ComplexMatrix rco = nominal_coarray_cov(geom, truth_sc);
  const int k = truth_sc.num_sources();
  fs::create_directories(cfg.output_dir);

  std::printf("%-14s %12s %12s %12s %12s %12s %6s %5s\n", "estimator", "nse", "herm_defect", "min_eig",
              "toep_defect", "noise_spread", "iters", "conv");
  for (const auto& spec : cfg.estimators) {
    const EstimateOutcome est = run_estimator(spec, geom, ry);
    const StructureCertificate cert = certify(est.matrix, k);
    std::printf("%-14s %12.4e %12.4e %12.4e %12.4e %12.4e %6d %5s\n", spec.label.c_str(), nse(est.matrix, rco),
                cert.hermitian_defect, cert.min_eigenvalue, cert.toeplitz_defect, cert.noise_eigen_spread,
                est.iterations, est.converged ? "yes" : "no");
    write_text(cfg.output_dir / (spec.label + ".matrix.csv"), to_matrix_csv(est.matrix));
  }
  return 0;
}

int cmd_music(const CommonOptions& opts) {
  const ExperimentConfig cfg = resolve(opts);
  const CoprimeGeometry geom = build_geometry(cfg.m, cfg.n);
  const ComplexMatrix ry = single_shot_covariance(cfg, geom);
  const int k = static_cast<int>(cfg.thetas_deg.size());
  fs::create_directories(cfg.output_dir);
  for (const auto& spec : cfg.estimators) {
    const EstimateOutcome est = run_estimator(spec, geom, ry);
    const MusicResult music = music_spectrum(subspace_split(est.matrix, k), geom, cfg.grid_step_deg);
    write_spectrum_csv(cfg.output_dir / (spec.label + ".spectrum.csv"), music);
    std::printf("%s%s:", spec.label.c_str(), music.degraded ? " (degraded)" : "");
    for (double t : music.estimates_deg) std::printf(" %.2f", t);
    std::printf("\n");
  }
  return 0;
}

int cmd_sweep(const CommonOptions& opts) {
  const ExperimentConfig cfg = resolve(opts);
  SweepOptions sweep_opts;
  sweep_opts.threads = opts.threads;
  sweep_opts.output_dir = cfg.output_dir;
  sweep_opts.progress = [](const std::string& msg) { std::cerr << msg << std::endl; };
  const SweepReport report = run_sweep(cfg, sweep_opts);
  std::cout << to_csv(report);
  return 0;
}

int cmd_check(const CommonOptions& opts) {
  const auto results = run_self_checks(opts.seed.value_or(1));
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coprime-array coarray covariance estimation and DoA experiments"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opts.config_path, "Experiment JSON config");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Master seed override");
    sub->add_option("--out", opts.out_dir, "Output directory override");
    sub->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--trials", opts.trials, "Trials per cell override")->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "Write one snapshot set to <out>/snapshots.bin");
  auto* estimate = app.add_subcommand("estimate", "Estimate once and print the structure certificate");
  auto* music = app.add_subcommand("music", "Write MUSIC pseudospectra as CSV");
  auto* sweep = app.add_subcommand("sweep", "Run the Monte Carlo sweep");
  auto* check = app.add_subcommand("check", "Run the invariant self-checks");
  for (auto* sub : {simulate, estimate, music, sweep}) add_common(sub, true);
  add_common(check, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(opts);
    if (*estimate) return cmd_estimate(opts);
    if (*music) return cmd_music(opts);
    if (*sweep) return cmd_sweep(opts);
    if (*check) return cmd_check(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
