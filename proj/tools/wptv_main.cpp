// wptv — total-variation denoising of wrapped phase maps.
//
// Subcommands: generate, denoise, metrics, compare, import, export.
// Exit codes: 0 success, 2 usage error, 3 numerical divergence, 4 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "wptv/io.hpp"
#include "wptv/metrics.hpp"
#include "wptv/solvers.hpp"
#include "wptv/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wptv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitIo = 4;

constexpr double kPi = std::numbers::pi;

// --config FILE provides defaults for the long options of a subcommand
// (keys are the option names without the leading dashes); explicit flags
// win. The file is loaded before CLI11 parses, so it simply seeds the
// variables the options are bound to.
json load_config(int argc, char** argv) {
  for (int k = 1; k + 1 < argc; ++k) {
    if (std::string(argv[k]) == "--config") {
      std::ifstream in(argv[k + 1]);
      if (!in) throw IoError(std::string("cannot open config ") + argv[k + 1]);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw IoError(std::string("bad config JSON: ") + e.what());
      }
      return j;
    }
  }
  return json::object();
}

template <class T>
T cfg(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError("config key '" + key + "': " + e.what());
  }
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failure on " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return j;
}

PhasePair read_pair(const fs::path& real_path, const fs::path& im_path) {
  return PhasePair(read_field(real_path), read_field(im_path));
}

void write_pair_outputs(const fs::path& dir, const std::string& stem,
                        const PhasePair& pair) {
  write_field(dir / ("u_real_" + stem + ".phf2"), pair.u_real);
  write_field(dir / ("u_im_" + stem + ".phf2"), pair.u_im);
}

// ---------------------------------------------------------------- generate

int run_generate(const std::string& scene_name, int rows, int cols,
                 double phase_range, double jump_height, double snr_db,
                 std::uint64_t seed, const fs::path& out_dir) {
  SceneSpec scene;
  if (scene_name == "ramp") {
    scene.kind = SceneKind::ramp_with_vertical_jump;
  } else if (scene_name == "gaussian") {
    scene.kind = SceneKind::gaussian_peak;
  } else {
    throw CLI::ValidationError("--scene must be 'ramp' or 'gaussian'");
  }
  scene.rows = rows;
  scene.cols = cols;
  scene.phase_range = phase_range;
  scene.jump_height = jump_height;
  scene.seed = seed;

  const Field2D phi = generate_scene(scene);
  const WrappedPhase psi_true = wrap(phi);
  const auto [psi_noisy, achieved] =
      add_noise(psi_true, NoiseSpec{snr_db, seed});

  fs::create_directories(out_dir);
  write_field(out_dir / "phi.phf2", phi);
  write_field(out_dir / "psi_true.phf2", psi_true.psi);
  write_field(out_dir / "psi_noisy.phf2", psi_noisy.psi);
  write_pair_outputs(out_dir, "true", decompose(psi_true));
  write_pair_outputs(out_dir, "noisy", decompose(psi_noisy));

  json j;
  j["scene"] = scene_name;
  j["rows"] = rows;
  j["cols"] = cols;
  j["phase_range"] = phase_range;
  j["jump_height"] = jump_height;
  j["seed"] = seed;
  j["target_snr_db"] = snr_db;
  j["achieved_snr_db"] = achieved;
  write_json(out_dir / "scene.json", j);

  std::cout << "achieved_snr_db=" << format_double(achieved) << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- denoise

struct DenoiseOutputs {
  fs::path dir;
  void write_solution(const PhasePair& pair) const {
    write_pair_outputs(dir, "denoised", pair);
    write_field(dir / "psi_denoised.phf2", reconstruct(pair).psi);
    write_field(dir / "pyth_dev.phf2", pythagorean_deviation(pair));
  }
};

int run_denoise(const std::string& method, const SolveConfig& config,
                double tau_flag, const std::string& filter_name, double sigma,
                bool normalize_input, const fs::path& in_dir,
                const fs::path& out_dir) {
  PhasePair noisy =
      read_pair(in_dir / "u_real_noisy.phf2", in_dir / "u_im_noisy.phf2");
  if (normalize_input) noisy = normalized(noisy);

  fs::create_directories(out_dir);
  const DenoiseOutputs outputs{out_dir};

  json report;
  report["method"] = method;
  report["lambda1"] = config.params.lambda1;
  report["lambda2"] = config.params.lambda2;
  report["lambda3"] = config.params.lambda3;
  report["beta"] = config.params.beta;
  report["epsilon"] = config.epsilon;
  report["max_outer"] = config.max_outer;
  report["gs_sweeps_per_outer"] = config.gs_sweeps_per_outer;
  report["normalize_input"] = normalize_input;

  auto finish_iterative = [&](const PhasePair& solution,
                              const SolveReport& solve_report) {
    outputs.write_solution(solution);
    write_trace_csv(out_dir / "trace.csv", solve_report);
    report["converged"] = solve_report.converged;
    report["iterations"] = solve_report.outer_iterations;
    report["final_rel_change"] = solve_report.relative_changes.empty()
                                     ? 0.0
                                     : solve_report.relative_changes.back();
    report["wall_time_seconds"] = solve_report.wall_time_seconds;
    write_json(out_dir / "report.json", report);
  };

  if (method == "fixed-point") {
    const auto [solution, solve_report] = fixed_point_denoise(noisy, config);
    finish_iterative(solution, solve_report);
  } else if (method == "gradient-descent") {
    const double tau =
        tau_flag > 0.0 ? tau_flag : suggested_gd_step(noisy, config.params);
    report["tau"] = tau;
    try {
      const auto [solution, solve_report] =
          gradient_descent_denoise(noisy, config, tau);
      finish_iterative(solution, solve_report);
    } catch (const DivergenceError& e) {
      // Preserve the partial trace for post-mortems, then fail loudly.
      write_trace_csv(out_dir / "trace.csv", e.partial_report());
      report["converged"] = false;
      report["diverged"] = true;
      report["iterations"] = e.iteration();
      report["error"] = e.what();
      write_json(out_dir / "report.json", report);
      std::cerr << "wptv: " << e.what() << "\n";
      return kExitDivergence;
    }
  } else if (method == "strobel") {
    StrobelFilter filter;
    if (filter_name == "mean3") {
      filter = StrobelFilter::mean3;
    } else if (filter_name == "gaussian") {
      filter = StrobelFilter::gaussian;
    } else {
      throw CLI::ValidationError("--filter must be 'mean3' or 'gaussian'");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const PhasePair solution = strobel_denoise(noisy, filter, sigma);
    outputs.write_solution(solution);
    report["filter"] = filter_name;
    if (filter == StrobelFilter::gaussian) report["sigma"] = sigma;
    report["converged"] = true;  // direct method
    report["iterations"] = 0;
    report["final_rel_change"] = 0.0;
    report["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    write_json(out_dir / "report.json", report);
  } else {
    throw CLI::ValidationError(
        "--method must be 'fixed-point', 'gradient-descent' or 'strobel'");
  }
  return kExitOk;
}

// ----------------------------------------------------------------- metrics

PhasePair resolve_result_pair(const fs::path& result_dir,
                              const std::string& real_override,
                              const std::string& im_override) {
  if (!real_override.empty() || !im_override.empty()) {
    if (real_override.empty() || im_override.empty()) {
      throw CLI::ValidationError(
          "--result-real and --result-im must be given together");
    }
    return read_pair(real_override, im_override);
  }
  if (fs::exists(result_dir / "u_real_denoised.phf2")) {
    return read_pair(result_dir / "u_real_denoised.phf2",
                     result_dir / "u_im_denoised.phf2");
  }
  if (fs::exists(result_dir / "u_real_noisy.phf2")) {
    return read_pair(result_dir / "u_real_noisy.phf2",
                     result_dir / "u_im_noisy.phf2");
  }
  throw IoError("no result pair found under " + result_dir.string());
}

MetricsRecord metrics_for(const fs::path& result_dir,
                          const fs::path& reference_dir,
                          const std::string& real_override = "",
                          const std::string& im_override = "") {
  const PhasePair result =
      resolve_result_pair(result_dir, real_override, im_override);
  const PhasePair reference = read_pair(reference_dir / "u_real_true.phf2",
                                        reference_dir / "u_im_true.phf2");
  const WrappedPhase noisy = WrappedPhase::from_field(
      read_field(reference_dir / "psi_noisy.phf2"));
  return compute_metrics(result, reference, noisy);
}

json metrics_to_json(const MetricsRecord& rec) {
  json j;
  j["mse_real"] = rec.mse_real;
  j["mse_im"] = rec.mse_im;
  j["iqi_real"] = rec.iqi_real;
  j["iqi_im"] = rec.iqi_im;
  j["snr_db"] = rec.snr_db;
  j["pyth_mean"] = rec.pyth_mean;
  j["pyth_max"] = rec.pyth_max;
  return j;
}

int run_metrics(const fs::path& result_dir, const fs::path& reference_dir,
                const fs::path& out_file, const std::string& real_override,
                const std::string& im_override) {
  const MetricsRecord rec =
      metrics_for(result_dir, reference_dir, real_override, im_override);
  write_json(out_file, metrics_to_json(rec));
  return kExitOk;
}

// ----------------------------------------------------------------- compare

int run_compare(const std::vector<std::string>& run_dirs,
                const fs::path& reference_dir, const fs::path& out_file) {
  std::ofstream out(out_file, std::ios::trunc);
  if (!out) throw IoError("cannot open " + out_file.string() + " for writing");
  out << "method,mse_real,mse_im,iqi_real,iqi_im,pyth_mean,pyth_max,"
         "iterations,wall_time\n";
  for (const std::string& dir : run_dirs) {
    const fs::path run(dir);
    const MetricsRecord rec = metrics_for(run, reference_dir);
    std::string method = run.filename().string();
    long iterations = 0;
    double wall_time = 0.0;
    if (fs::exists(run / "report.json")) {
      const json report = read_json(run / "report.json");
      method = report.value("method", method);
      iterations = report.value("iterations", 0);
      wall_time = report.value("wall_time_seconds", 0.0);
    }
    out << method << "," << format_double(rec.mse_real) << ","
        << format_double(rec.mse_im) << "," << format_double(rec.iqi_real)
        << "," << format_double(rec.iqi_im) << ","
        << format_double(rec.pyth_mean) << "," << format_double(rec.pyth_max)
        << "," << iterations << "," << format_double(wall_time) << "\n";
  }
  if (!out) throw IoError("write failure on " + out_file.string());
  return kExitOk;
}

// ------------------------------------------------------------ import/export

int run_import(const fs::path& image, const fs::path& out_dir) {
  const PgmImport imported = import_pgm_phase(image);
  fs::create_directories(out_dir);
  write_field(out_dir / "psi_noisy.phf2", imported.psi.psi);
  write_pair_outputs(out_dir, "noisy", decompose(imported.psi));
  json j;
  j["source"] = image.string();
  j["rows"] = imported.psi.rows();
  j["cols"] = imported.psi.cols();
  j["maxval"] = imported.maxval;
  j["scale_radians_per_level"] = imported.scale;
  j["offset_radians"] = imported.offset;
  write_json(out_dir / "import_report.json", j);
  return kExitOk;
}

int run_export(const fs::path& in_file, const fs::path& out_file) {
  write_phase_pgm16(out_file, read_field(in_file));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  json config;
  try {
    config = load_config(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "wptv: " << e.what() << "\n";
    return kExitIo;
  }

  CLI::App app{"Total-variation denoising of wrapped phase maps"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file with option defaults (flags override)");

  // generate
  auto* gen = app.add_subcommand("generate", "Synthesize a noisy phase problem");
  std::string scene = cfg<std::string>(config, "scene", "ramp");
  int rows = cfg<int>(config, "rows", 128);
  int cols = cfg<int>(config, "cols", 128);
  double phase_range = cfg<double>(config, "phase-range", 6.0 * kPi);
  double jump_height = cfg<double>(config, "jump-height", kPi);
  double snr_db = cfg<double>(config, "snr-db", 43.34);
  std::uint64_t seed = cfg<std::uint64_t>(config, "seed", 1);
  std::string gen_out = cfg<std::string>(config, "out", "");
  gen->add_option("--scene", scene, "Scene kind: ramp | gaussian");
  gen->add_option("--rows", rows, "Grid rows (>= 16)");
  gen->add_option("--cols", cols, "Grid columns (>= 16)");
  gen->add_option("--phase-range", phase_range,
                  "Peak-to-peak absolute phase in radians");
  gen->add_option("--jump-height", jump_height,
                  "Vertical discontinuity height in radians (ramp scene)");
  gen->add_option("--snr-db", snr_db, "Target SNR of the noisy phase in dB");
  gen->add_option("--seed", seed, "RNG seed (also recorded in scene.json)");
  gen->add_option("--out", gen_out, "Output directory")->required();

  // denoise
  auto* den = app.add_subcommand("denoise", "Denoise a channel pair");
  std::string method = cfg<std::string>(config, "method", "fixed-point");
  SolveConfig solve;
  solve.params.lambda1 = cfg<double>(config, "lambda1", 2.5);
  solve.params.lambda2 = cfg<double>(config, "lambda2", 2.5);
  solve.params.lambda3 = cfg<double>(config, "lambda3", 5.0);
  solve.params.beta = cfg<double>(config, "beta", 1e-3);
  solve.epsilon = cfg<double>(config, "epsilon", 1e-7);
  int max_outer = cfg<int>(config, "max-outer", 0);
  solve.gs_sweeps_per_outer = cfg<int>(config, "gs-sweeps", 1);
  double tau = cfg<double>(config, "tau", 0.0);
  std::string filter_name = cfg<std::string>(config, "filter", "mean3");
  double sigma = cfg<double>(config, "sigma", 1.0);
  bool normalize_input = cfg<bool>(config, "normalize-input", false);
  std::string den_in = cfg<std::string>(config, "in", "");
  std::string den_out = cfg<std::string>(config, "out", "");
  den->add_option("--method", method,
                  "fixed-point | gradient-descent | strobel");
  den->add_option("--lambda1", solve.params.lambda1, "cos-channel fidelity weight");
  den->add_option("--lambda2", solve.params.lambda2, "sin-channel fidelity weight");
  den->add_option("--lambda3", solve.params.lambda3, "unit-circle coupling weight");
  den->add_option("--beta", solve.params.beta, "gradient regularization");
  den->add_option("--epsilon", solve.epsilon, "relative-change stopping tolerance");
  den->add_option("--max-outer", max_outer,
                  "iteration cap (default 1000, 200000 for gradient descent)");
  den->add_option("--gs-sweeps", solve.gs_sweeps_per_outer,
                  "Gauss-Seidel sweeps per outer iteration");
  den->add_option("--tau", tau,
                  "gradient-descent step; 0 picks the stable default");
  den->add_option("--filter", filter_name, "strobel filter: mean3 | gaussian");
  den->add_option("--sigma", sigma, "gaussian filter width");
  den->add_flag("--normalize-input", normalize_input,
                "project the input pair onto the unit circle first");
  den->add_option("--in", den_in, "directory with u_{real,im}_noisy.phf2")
      ->required();
  den->add_option("--out", den_out, "output directory")->required();

  // metrics
  auto* met = app.add_subcommand("metrics", "Score a result against a reference");
  std::string met_result, met_reference, met_out;
  std::string result_real = cfg<std::string>(config, "result-real", "");
  std::string result_im = cfg<std::string>(config, "result-im", "");
  met->add_option("--result", met_result, "run directory to score")->required();
  met->add_option("--reference", met_reference,
                  "directory with the reference problem (from generate)")
      ->required();
  met->add_option("--out", met_out, "output JSON file")->required();
  met->add_option("--result-real", result_real,
                  "explicit cos-channel file (overrides --result lookup)");
  met->add_option("--result-im", result_im, "explicit sin-channel file");

  // compare
  auto* cmp = app.add_subcommand("compare", "Tabulate metrics for several runs");
  std::vector<std::string> run_dirs;
  std::string cmp_reference, cmp_out;
  cmp->add_option("--runs", run_dirs, "run directories")
      ->required()
      ->expected(-1);
  cmp->add_option("--reference", cmp_reference, "reference problem directory")
      ->required();
  cmp->add_option("--out", cmp_out, "output CSV file")->required();

  // import / export
  auto* imp = app.add_subcommand("import", "PGM image to wrapped phase");
  std::string imp_image, imp_out;
  imp->add_option("--image", imp_image, "8/16-bit binary PGM")->required();
  imp->add_option("--out", imp_out, "output directory")->required();

  auto* exp = app.add_subcommand("export", "PHF2 field to 16-bit PGM");
  std::string exp_in, exp_out;
  exp->add_option("--in", exp_in, "input .phf2 field")->required();
  exp->add_option("--out", exp_out, "output .pgm file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return run_generate(scene, rows, cols, phase_range, jump_height, snr_db,
                          seed, gen_out);
    }
    if (den->parsed()) {
      if (max_outer <= 0) {
        max_outer = method == "gradient-descent" ? 200000 : 1000;
      }
      solve.max_outer = max_outer;
      solve.record_energy = true;
      return run_denoise(method, solve, tau, filter_name, sigma,
                         normalize_input, den_in, den_out);
    }
    if (met->parsed()) {
      return run_metrics(met_result, met_reference, met_out, result_real,
                         result_im);
    }
    if (cmp->parsed()) {
      return run_compare(run_dirs, cmp_reference, cmp_out);
    }
    if (imp->parsed()) {
      return run_import(imp_image, imp_out);
    }
    if (exp->parsed()) {
      return run_export(exp_in, exp_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "wptv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DivergenceError& e) {
    std::cerr << "wptv: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const IoError& e) {
    std::cerr << "wptv: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "wptv: " << e.what() << "\n";
    return kExitIo;
  } catch (const ContractError& e) {
    std::cerr << "wptv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeError& e) {
    std::cerr << "wptv: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "wptv: unexpected error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
