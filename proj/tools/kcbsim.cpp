// kcbsim: command-line driver for the sequential-measurement pentagon test.
//
// Exit codes: 0 success, 2 invalid configuration or arguments, 3 runtime
// failure (e.g. an unwritable output path).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcbs/hidden_variable.hpp"
#include "kcbs/io.hpp"
#include "kcbs/kcbs_eval.hpp"
#include "kcbs/photon_stats.hpp"
#include "kcbs/sampler.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format5(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", x);
  return buf;
}

// Output files land in KCBSIM_OUTPUT_DIR unless the path is absolute.
fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("KCBSIM_OUTPUT_DIR")) {
    return fs::path(dir) / p;
  }
  return p;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path.string());
  }
}

std::string verdict_suffix(double s) {
  const auto verdict = kcbs::classify_s(s);
  std::string line = "  verdict = ";
  line += kcbs::to_string(verdict.level);
  if (verdict.few_photon_component) {
    line += " [1-2 photon components present]";
  }
  return line;
}

std::string summary_line(double s, double kappa, bool violates) {
  return "S = " + format5(s) + "  kappa = " + format5(kappa) + "  " +
         (violates ? "VIOLATION" : "no violation") + verdict_suffix(s);
}

void emit_result(const kcbs::KcbsResult& result, const json& config,
                 const std::optional<std::string>& out_path,
                 const std::string& format) {
  std::cout << summary_line(result.s_value, result.kappa,
                            result.violates_classical)
            << "\n";
  if (!out_path) return;
  const fs::path path = resolve_output(*out_path);
  if (format == "json") {
    json artifact{{"config", config}, {"result", kcbs::to_json(result)}};
    write_file(path, artifact.dump(2) + "\n");
  } else {
    write_file(path, kcbs::csv_kcbs_summary(result) +
                         kcbs::csv_joint_tables(result.per_context));
  }
  std::cout << "wrote " << path.string() << "\n";
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  std::stringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    grid.push_back(std::stod(token));
  }
  if (grid.empty()) {
    throw CLI::ValidationError("--grid", "empty loss grid");
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "kcbsim: linear-optical sequential-measurement test of the pentagon "
      "(KCBS) inequality"};
  app.require_subcommand(1);

  std::optional<std::string> out_path;
  std::string format = "csv";

  // ideal ---------------------------------------------------------------
  auto* ideal = app.add_subcommand(
      "ideal", "Evaluate the exact test for a photon in mode 1");
  ideal->add_option("--out", out_path, "Output file (csv or json)");
  ideal->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  ideal->callback([&]() {
    const auto result = kcbs::evaluate_single_photon(
        kcbs::optimal_family(), kcbs::make_single_photon(1, 3));
    emit_result(result, json{{"command", "ideal"}}, out_path, format);
  });

  // coherent ------------------------------------------------------------
  auto* coherent = app.add_subcommand(
      "coherent", "Evaluate the test for a coherent input in mode 1");
  double opt_alpha_sq = -1.0;
  double opt_alpha = -1.0;
  auto* alpha_sq_opt = coherent->add_option("--alpha-sq", opt_alpha_sq,
                                            "Mean photon number |alpha|^2");
  auto* alpha_opt =
      coherent->add_option("--alpha", opt_alpha, "Field amplitude |alpha|");
  alpha_sq_opt->excludes(alpha_opt);
  alpha_opt->excludes(alpha_sq_opt);
  coherent->add_option("--out", out_path, "Output file (csv or json)");
  coherent->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  coherent->callback([&]() {
    if (opt_alpha_sq < 0.0 && opt_alpha < 0.0) {
      throw CLI::ValidationError("coherent",
                                 "one of --alpha-sq or --alpha is required");
    }
    const double alpha_sq =
        opt_alpha_sq >= 0.0 ? opt_alpha_sq : opt_alpha * opt_alpha;
    const auto result = kcbs::evaluate_coherent(
        kcbs::optimal_family(), kcbs::make_coherent(std::sqrt(alpha_sq), 3));
    std::cout << "closed form S = " << format5(kcbs::s_coherent(alpha_sq))
              << "  (mixture-of-coherent bound "
              << format5(kcbs::classical_bound()) << ")\n";
    emit_result(result, json{{"command", "coherent"}, {"alpha_sq", alpha_sq}},
                out_path, format);
  });

  // fock ------------------------------------------------------------------
  auto* fock =
      app.add_subcommand("fock", "Closed-form S for an n-photon input");
  int fock_n = 1;
  int fock_max_n = kcbs::kDefaultTruncation;
  fock->add_option("--n", fock_n, "Photon number")->required();
  fock->add_option("--max-n", fock_max_n,
                   "Largest n in the emitted table (with --out)");
  fock->add_option("--out", out_path, "Output CSV table `n, s_fock`");
  fock->callback([&]() {
    const double s = kcbs::s_fock(fock_n);
    std::cout << summary_line(s, 5.0 - 4.0 * s, s > 2.0) << "\n";
    if (out_path) {
      const fs::path path = resolve_output(*out_path);
      write_file(path, kcbs::csv_fock_table(std::max(fock_n, fock_max_n)));
      std::cout << "wrote " << path.string() << "\n";
    }
  });

  // mixture -----------------------------------------------------------------
  auto* mixture = app.add_subcommand(
      "mixture", "Closed-form S for a photon-number-diagonal mixture");
  std::vector<double> populations;
  mixture->add_option("--populations", populations,
                      "Populations rho_00,rho_11,... (comma separated)")
      ->required()
      ->delimiter(',');
  mixture->callback([&]() {
    const double s = kcbs::s_mixture(kcbs::PhotonNumberMixture(populations));
    std::cout << summary_line(s, 5.0 - 4.0 * s, s > 2.0) << "\n";
    std::cout << "violation thresholds: rho11 > "
              << format5(kcbs::loss_threshold_single())
              << " (vacuum mix), rho11 > "
              << format5(kcbs::loss_threshold_two_photon())
              << " (two-photon mix)\n";
  });

  // sample --------------------------------------------------------------
  auto* sample = app.add_subcommand(
      "sample", "Monte Carlo detector counts over the five contexts");
  kcbs::ShotConfig shot_config;
  sample->add_option("--shots", shot_config.shots_per_context,
                     "Trials per context and window");
  sample->add_option("--reps", shot_config.repetitions,
                     "Windows averaged per context");
  sample->add_option("--seed", shot_config.seed, "RNG seed (required)")
      ->required();
  sample->add_option("--loss", shot_config.loss_rate,
                     "Photon-loss rate rho_00 in [0, 1]");
  sample->add_option("--out", out_path, "Output file");
  sample->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sample->callback([&]() {
    const auto family = kcbs::optimal_family();
    const auto experiment = kcbs::run_experiment(shot_config, family);
    std::cout << "s_hat = " << format5(experiment.s.s_hat) << " +- "
              << format5(experiment.s.sigma) << "  "
              << (experiment.s.s_hat > 2.0 ? "VIOLATION" : "no violation")
              << "\n";
    if (out_path) {
      const fs::path path = resolve_output(*out_path);
      const json config{{"command", "sample"},
                        {"shots", shot_config.shots_per_context},
                        {"repetitions", shot_config.repetitions},
                        {"seed", shot_config.seed},
                        {"loss_rate", shot_config.loss_rate}};
      if (format == "json") {
        json contexts = json::array();
        for (const auto& c : experiment.contexts) {
          contexts.push_back(kcbs::to_json(c));
        }
        const json artifact{{"config", config},
                            {"contexts", contexts},
                            {"s_hat", experiment.s.s_hat},
                            {"sigma", experiment.s.sigma}};
        write_file(path, artifact.dump(2) + "\n");
      } else {
        write_file(path, kcbs::csv_counts_table(experiment.contexts));
      }
      std::cout << "wrote " << path.string() << "\n";
    }
  });

  // loss-sweep ----------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "loss-sweep", "Ideal and sampled S as a function of photon loss");
  kcbs::ShotConfig sweep_config;
  std::string grid_spec = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  sweep->add_option("--grid", grid_spec, "Loss rates, comma separated");
  sweep->add_option("--shots", sweep_config.shots_per_context,
                    "Trials per context and window");
  sweep->add_option("--reps", sweep_config.repetitions,
                    "Windows averaged per context");
  sweep->add_option("--seed", sweep_config.seed, "RNG seed (required)")
      ->required();
  sweep->add_option("--out", out_path, "Output file");
  sweep->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->callback([&]() {
    const auto family = kcbs::optimal_family();
    const auto grid = parse_grid(grid_spec);
    const auto rows = kcbs::loss_sweep(grid, sweep_config, family);
    std::cout << "swept " << rows.size()
              << " loss rates; the violation persists below loss "
              << format5(1.0 - kcbs::loss_threshold_single()) << "\n";
    if (out_path) {
      const fs::path path = resolve_output(*out_path);
      if (format == "json") {
        json rows_json = json::array();
        for (const auto& r : rows) {
          rows_json.push_back({{"loss_rate", r.loss_rate},
                               {"s_ideal", r.s_ideal},
                               {"s_sampled", r.s_sampled},
                               {"sigma", r.sigma}});
        }
        const json artifact{{"config",
                             {{"command", "loss-sweep"},
                              {"grid", grid},
                              {"shots", sweep_config.shots_per_context},
                              {"repetitions", sweep_config.repetitions},
                              {"seed", sweep_config.seed}}},
                            {"rows", rows_json}};
        write_file(path, artifact.dump(2) + "\n");
      } else {
        write_file(path, kcbs::csv_loss_sweep(rows));
      }
      std::cout << "wrote " << path.string() << "\n";
    }
  });

  // oracle ---------------------------------------------------------------
  auto* oracle = app.add_subcommand(
      "oracle", "Enumeration and series cross-checks of the bounds");
  int series_max = 30;
  oracle->add_option("--series-max", series_max,
                     "Largest n for the series cross-check");
  oracle->add_option("--out", out_path, "Assignments dump CSV");
  oracle->callback([&]() {
    const auto range = kcbs::classical_kappa_range();
    std::cout << "assignments: kappa in [" << range.min << ", " << range.max
              << "], max S = " << kcbs::classical_s_max(false) << "\n";
    double worst = 0.0;
    for (int n = 0; n <= series_max; ++n) {
      worst = std::max(worst,
                       std::abs(kcbs::s_fock(n) - kcbs::generating_oracle(n)));
    }
    std::cout << "series check: max |closed form - oracle| = " << worst
              << " for n <= " << series_max << "\n";
    if (out_path) {
      const fs::path path = resolve_output(*out_path);
      write_file(path, kcbs::csv_assignments());
      std::cout << "wrote " << path.string() << "\n";
    }
  });

  // bench -------------------------------------------------------------
  auto* bench =
      app.add_subcommand("bench", "Wave-plate settings realizing each context");
  int bench_context = 0;
  double bench_theta = std::acos(std::pow(5.0, -0.25));
  std::vector<double> bench_phis;
  bool degrees = false;
  bench->add_option("--context", bench_context, "Single context 1..5")
      ->check(CLI::Range(1, 5));
  bench->add_option("--theta", bench_theta, "Family angle theta");
  bench->add_option("--phis", bench_phis, "Five phi angles")->delimiter(',');
  bench->add_flag("--degrees", degrees, "Interpret --theta/--phis in degrees");
  bench->add_option("--out", out_path, "Output JSON file");
  bench->callback([&]() {
    const double to_rad = degrees ? M_PI / 180.0 : 1.0;
    const kcbs::KcbsMeasurementFamily family = [&]() {
      if (bench_phis.empty() && bench->count("--theta") == 0) {
        return kcbs::optimal_family();
      }
      std::array<double, 5> phis{};
      if (bench_phis.empty()) {
        for (int j = 1; j <= 5; ++j) {
          phis[static_cast<std::size_t>(j - 1)] = 4.0 * M_PI * j / 5.0;
        }
      } else if (bench_phis.size() == 5) {
        for (std::size_t i = 0; i < 5; ++i) phis[i] = bench_phis[i] * to_rad;
      } else {
        throw CLI::ValidationError("--phis", "need exactly five angles");
      }
      // The family constructor rejects incompatible settings.
      return kcbs::KcbsMeasurementFamily(bench_theta * to_rad, phis);
    }();

    json records = json::array();
    for (int j = 1; j <= 5; ++j) {
      if (bench_context != 0 && j != bench_context) continue;
      const auto settings = kcbs::bench_compile(j, family);
      records.push_back(kcbs::to_json(settings));
      std::cout << "context " << j << ": angle diffs (rad)";
      for (double a : settings.angle_diffs) {
        std::cout << " " << format5(a);
      }
      std::cout << (settings.verified ? "  [verified]" : "  [MISMATCH]")
                << "\n";
    }
    if (out_path) {
      const fs::path path = resolve_output(*out_path);
      write_file(path, records.dump(2) + "\n");
      std::cout << "wrote " << path.string() << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
