#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hrg/gengraph.hpp"
#include "hrg/graph.hpp"
#include "hrg/limits.hpp"
#include "hrg/params.hpp"

namespace hrg {

struct ExperimentConfig {
  ModelParams params;
  int reps = 1;
  std::int64_t k_max = 25;
  std::uint64_t seed = 1;
  ModelTag model = ModelTag::kpkvb;
  std::filesystem::path output_dir;
  int threads = 0;  // 0 = hardware concurrency
  double tol = 1e-6;
};

/// Sample mean and its standard error over repetitions.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

struct FigGammakRow {
  std::int64_t k;
  MeanSe c_k;
  double gamma_k;
  double gamma_k_asymptote;
};

struct FigGammaRow {
  double alpha;
  MeanSe c_global;
  double gamma;
};

struct DegreesRow {
  std::int64_t k;
  MeanSe nk_over_n;
  double pi_k;
};

struct OracleRow {
  std::int64_t k;
  double gamma_k;
  double gamma_k_oracle;
  double abs_diff;
  bool within_gate;
};

/// Per-rep c(k;G) values averaged across reps, zeros included when a degree
/// is absent in a rep; one row per k in 2..k_max.
std::vector<FigGammakRow> run_fig_gammak(const ExperimentConfig& config);

/// Mean c(G) over reps per alpha in the grid, against gamma.
std::vector<FigGammaRow> run_fig_gamma(const ExperimentConfig& config,
                                       const std::vector<double>& alphas);

/// Empirical N_n(k)/n against pi(k), k in 0..k_max.
std::vector<DegreesRow> run_degrees(const ExperimentConfig& config);

/// Closed form vs oracle per k; a row fails the gate when
/// |diff| > tol * max(|gamma_k|, 1e-3).
std::vector<OracleRow> run_oracle(const ExperimentConfig& config, std::int64_t k_min,
                                  std::int64_t k_max);

/// Generates one graph and writes `edges.txt` + `coords.csv` in output_dir.
void run_generate(const ExperimentConfig& config);

Graph generate_for_model(const ExperimentConfig& config, std::uint64_t seed);

/// Config echo written as `# key=value` lines at the top of every report.
void write_config_header(const ExperimentConfig& config, std::ostream& os);

void write_fig_gammak_csv(const ExperimentConfig& config,
                          const std::vector<FigGammakRow>& rows, std::ostream& os);
void write_fig_gamma_csv(const ExperimentConfig& config, const std::vector<FigGammaRow>& rows,
                         std::ostream& os);
void write_degrees_csv(const ExperimentConfig& config, const std::vector<DegreesRow>& rows,
                       std::ostream& os);
void write_oracle_csv(const ExperimentConfig& config, const std::vector<OracleRow>& rows,
                      std::ostream& os);

/// Emits a gnuplot script rendering the given report (curve + simulation
/// points with error bars). Deterministic: same report, same bytes.
/// Returns the script text; recognizes the three report layouts by header.
std::string make_plot_script(const std::filesystem::path& report_csv);

}  // namespace hrg
