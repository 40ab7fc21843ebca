#include "coprime/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "coprime/snapshot_sim.hpp"
#include "json.hpp"

namespace coprime {

namespace {

using nlohmann::json;

std::string default_label(const EstimatorSpec& spec) {
  if (spec.kind == EstimatorKind::Psr && spec.sampling == SamplingKind::Averaging) return "psr_averaging";
  return std::string(to_string(spec.kind));
}

EstimatorSpec parse_estimator(const json& j, int signal_dim) {
  EstimatorSpec spec;
  spec.kind = parse_estimator_kind(j.at("kind").get<std::string>());
  switch (spec.kind) {
    case EstimatorKind::AmSelection: spec.sampling = SamplingKind::Selection; break;
    case EstimatorKind::AmAveraging: spec.sampling = SamplingKind::Averaging; break;
    case EstimatorKind::Psr:
      spec.sampling = parse_sampling_kind(j.value("sampling", std::string("selection")));
      break;
    case EstimatorKind::Structured: spec.sampling = SamplingKind::Averaging; break;
  }
  spec.structured.signal_dim = j.value("signal_dim", signal_dim);
  spec.structured.eps = j.value("eps", spec.structured.eps);
  spec.structured.relative_eps = j.value("relative_eps", spec.structured.relative_eps);
  spec.structured.max_iters = j.value("max_iters", spec.structured.max_iters);
  spec.label = j.value("label", default_label(spec));
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("schema_version", 0) != 1) {
      throw ValidationError("config schema_version must be 1");
    }
    ExperimentConfig cfg;
    const auto& geom = j.at("geometry");
    cfg.m = geom.at("m").get<int>();
    cfg.n = geom.at("n").get<int>();

    const auto& sc = j.at("scenario");
    cfg.thetas_deg = sc.at("thetas_deg").get<std::vector<double>>();
    cfg.source_power_db = sc.value("source_power_db", 0.0);
    cfg.noise_power_db = sc.value("noise_power_db", 0.0);

    const auto& sw = j.at("sweep");
    cfg.snr_db = sw.at("snr_db").get<std::vector<double>>();
    cfg.q_list = sw.at("q").get<std::vector<int>>();
    cfg.n_trials = sw.at("n_trials").get<int>();
    cfg.snapshots = sc.value("snapshots", cfg.q_list.empty() ? 1 : cfg.q_list.front());

    for (const auto& e : j.at("estimators")) {
      cfg.estimators.push_back(parse_estimator(e, static_cast<int>(cfg.thetas_deg.size())));
    }
    if (j.contains("music")) cfg.grid_step_deg = j["music"].value("grid_step_deg", cfg.grid_step_deg);
    cfg.master_seed = j.value("master_seed", std::uint64_t{0});
    cfg.nominal_statistics = j.value("nominal_statistics", false);
    if (j.contains("output")) cfg.output_dir = j["output"].value("dir", cfg.output_dir.string());
    validate(cfg);
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config schema error: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config " + path.string());
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

void validate(const ExperimentConfig& cfg) {
  const CoprimeGeometry geom = build_geometry(cfg.m, cfg.n);
  if (cfg.estimators.empty()) throw ValidationError("config lists no estimators");
  if (cfg.n_trials < 1) throw ValidationError("n_trials must be at least 1");
  if (cfg.snr_db.empty() || cfg.q_list.empty()) throw ValidationError("sweep needs at least one SNR and one Q");
  for (int q : cfg.q_list) {
    if (q < 1) throw ValidationError("every Q must be at least 1");
  }
  if (!(cfg.grid_step_deg > 0)) throw ValidationError("grid_step_deg must be positive");
  if (cfg.thetas_deg.empty()) throw ValidationError("scenario needs at least one source");
  validate(geom, make_scenario(cfg, cfg.source_power_db - cfg.noise_power_db, cfg.snapshots, 0));
  std::vector<std::string> labels;
  for (const auto& spec : cfg.estimators) {
    if (spec.kind == EstimatorKind::Structured) validate(spec.structured, geom.coarray_size());
    if (std::find(labels.begin(), labels.end(), spec.label) != labels.end()) {
      throw ValidationError("duplicate estimator label '" + spec.label + "'");
    }
    labels.push_back(spec.label);
  }
}

Scenario make_scenario(const ExperimentConfig& cfg, double snr_db, int snapshots, std::uint64_t seed) {
  Scenario sc;
  sc.thetas_deg = cfg.thetas_deg;
  sc.powers.assign(cfg.thetas_deg.size(), db_to_linear(snr_db + cfg.noise_power_db));
  sc.noise_var = db_to_linear(cfg.noise_power_db);
  sc.snapshots = snapshots;
  sc.seed = seed;
  return sc;
}

EstimateOutcome run_estimator(const EstimatorSpec& spec, const CoprimeGeometry& geom, const ComplexMatrix& ry) {
  switch (spec.kind) {
    case EstimatorKind::AmSelection: return {estimate_am(geom, ry, SamplingKind::Selection)};
    case EstimatorKind::AmAveraging: return {estimate_am(geom, ry, SamplingKind::Averaging)};
    case EstimatorKind::Psr: return {estimate_psr(geom, ry, spec.sampling)};
    case EstimatorKind::Structured: {
      auto res = estimate_structured(geom, ry, spec.structured);
      return {std::move(res.matrix), res.converged, res.iterations, res.eigen_tie};
    }
  }
  throw ValidationError("unhandled estimator kind");
}

CellTruth make_cell_truth(const ExperimentConfig& cfg, const CoprimeGeometry& geom, double snr_db, int q) {
  CellTruth truth;
  truth.scenario = make_scenario(cfg, snr_db, q, 0);
  truth.phys_cov = nominal_phys_cov(geom, truth.scenario);
  truth.coarray_cov = nominal_coarray_cov(geom, truth.scenario);
  truth.signal_basis = subspace_split(truth.coarray_cov, truth.scenario.num_sources()).signal_basis;
  return truth;
}

std::vector<TrialReport> run_trial(const ExperimentConfig& cfg, const CoprimeGeometry& geom, const CellTruth& truth,
                                   int snr_index, int q_index, int realization) {
  ComplexMatrix ry;
  if (cfg.nominal_statistics) {
    ry = truth.phys_cov;
  } else {
    Scenario sc = truth.scenario;
    sc.seed = trial_seed(cfg.master_seed, static_cast<std::uint64_t>(snr_index), static_cast<std::uint64_t>(q_index),
                         static_cast<std::uint64_t>(realization));
    ry = sample_covariance(simulate_snapshots(geom, sc).y);
  }

  const int k = truth.scenario.num_sources();
  std::vector<TrialReport> reports;
  reports.reserve(cfg.estimators.size());
  for (const auto& spec : cfg.estimators) {
    TrialReport rep;
    rep.estimator = spec.label;
    rep.snr_index = snr_index;
    rep.q_index = q_index;
    rep.realization = realization;
    try {
      const EstimateOutcome est = run_estimator(spec, geom, ry);
      rep.converged = est.converged;
      rep.iterations = est.iterations;
      rep.nse = nse(est.matrix, truth.coarray_cov);
      const SubspaceSplit split = subspace_split(est.matrix, k);
      rep.nsse = nsse(split.signal_basis, truth.signal_basis);
      const MusicResult music = music_spectrum(split, geom, cfg.grid_step_deg);
      rep.doa_sq_errors = match_doas(music.estimates_deg, truth.scenario.thetas_deg);
    } catch (const std::exception& e) {
      rep.failed = true;
      rep.error = e.what();
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<TrialReport> run_cell(const ExperimentConfig& cfg, const CoprimeGeometry& geom, int snr_index,
                                  int q_index, int threads) {
  const CellTruth truth = make_cell_truth(cfg, geom, cfg.snr_db[static_cast<std::size_t>(snr_index)],
                                          cfg.q_list[static_cast<std::size_t>(q_index)]);
  std::vector<std::vector<TrialReport>> slots(static_cast<std::size_t>(cfg.n_trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < cfg.n_trials; r = next++) {
      slots[static_cast<std::size_t>(r)] = run_trial(cfg, geom, truth, snr_index, q_index, r);
    }
  };
  const int pool = std::max(1, std::min(threads, cfg.n_trials));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::jthread> workers;
    for (int t = 0; t < pool; ++t) workers.emplace_back(worker);
  }
  std::vector<TrialReport> flat;
  flat.reserve(slots.size() * cfg.estimators.size());
  for (auto& s : slots)
    for (auto& rep : s) flat.push_back(std::move(rep));
  return flat;
}

SweepReport run_sweep(const ExperimentConfig& cfg, const SweepOptions& options) {
  validate(cfg);
  const CoprimeGeometry geom = build_geometry(cfg.m, cfg.n);

  std::ofstream partial;
  std::filesystem::path partial_path;
  if (options.output_dir) {
    std::filesystem::create_directories(*options.output_dir);
    partial_path = *options.output_dir / "sweep.partial.csv";
    partial.open(partial_path, std::ios::trunc);
    if (!partial) throw std::runtime_error("cannot write to " + partial_path.string());
    partial << to_csv({}) << std::flush;
  }

  SweepReport report;
  for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
    for (std::size_t qi = 0; qi < cfg.q_list.size(); ++qi) {
      const auto reports = run_cell(cfg, geom, static_cast<int>(si), static_cast<int>(qi), options.threads);
      SweepReport cell;
      for (const auto& spec : cfg.estimators) {
        std::vector<TrialReport> mine;
        for (const auto& rep : reports)
          if (rep.estimator == spec.label) mine.push_back(rep);
        cell.rows.push_back(aggregate_cell(mine, spec.label, cfg.snr_db[si], cfg.q_list[qi]));
      }
      if (partial.is_open()) {
        const std::string csv = to_csv(cell);
        partial << csv.substr(csv.find('\n') + 1) << std::flush;
      }
      if (options.progress) {
        std::ostringstream msg;
        msg << "cell snr=" << cfg.snr_db[si] << "dB q=" << cfg.q_list[qi] << " done (" << cfg.n_trials << " trials)";
        options.progress(msg.str());
      }
      report.rows.insert(report.rows.end(), cell.rows.begin(), cell.rows.end());
    }
  }

  if (options.output_dir) {
    const auto write = [](const std::filesystem::path& p, const std::string& text) {
      std::ofstream os(p, std::ios::trunc);
      if (!os || !(os << text)) throw std::runtime_error("cannot write " + p.string());
    };
    write(*options.output_dir / "sweep.csv", to_csv(report));
    write(*options.output_dir / "sweep.json", to_json(report));
    partial.close();
    std::filesystem::remove(partial_path);
  }
  return report;
}

}  // namespace coprime
