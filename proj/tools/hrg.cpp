#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hrg/experiments.hpp"
#include "hrg/graph.hpp"
#include "hrg/limits.hpp"
#include "hrg/params.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitGate = 2;
constexpr int kExitIo = 3;

struct CliOptions {
  std::string alpha = "0.8";  // comma-separated grid allowed for fig-gamma
  double nu = 1.0;
  std::int64_t n = 10000;
  int reps = 1;
  std::int64_t kmax = 25;
  std::uint64_t seed = 1;
  std::string model = "kpkvb";
  std::string out;
  int threads = 0;
  double tol = 1e-6;
  std::string report;       // for plot
  std::string config_path;  // handled before CLI11 parsing; flags win
};

std::vector<double> parse_alpha_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad alpha value: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty alpha list");
  return out;
}

/// Loads a flat key=value file into the option defaults; CLI flags parsed
/// afterwards win.
void apply_config_file(const std::string& path, CliOptions& o) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line is not key=value: " + line);
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "alpha") {
      o.alpha = value;
    } else if (key == "nu") {
      o.nu = std::stod(value);
    } else if (key == "n") {
      o.n = std::stoll(value);
    } else if (key == "reps") {
      o.reps = std::stoi(value);
    } else if (key == "kmax") {
      o.kmax = std::stoll(value);
    } else if (key == "seed") {
      o.seed = std::stoull(value);
    } else if (key == "model") {
      o.model = value;
    } else if (key == "out") {
      o.out = value;
    } else if (key == "threads") {
      o.threads = std::stoi(value);
    } else if (key == "tol") {
      o.tol = std::stod(value);
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
}

/// Finds --config in raw argv so its values can be loaded before parsing.
std::string find_config_arg(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") return argv[i + 1];
  }
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

hrg::ExperimentConfig build_config(const CliOptions& o, double alpha) {
  hrg::ExperimentConfig cfg;
  cfg.params = hrg::derive_params(alpha, o.nu, o.n);
  cfg.reps = o.reps;
  cfg.k_max = o.kmax;
  cfg.seed = o.seed;
  cfg.model = hrg::model_tag_from_string(o.model);
  cfg.output_dir = o.out;
  cfg.threads = o.threads;
  cfg.tol = o.tol;
  return cfg;
}

/// Writes to `<out>/<name>` when --out is given, else to stdout.
template <typename WriteFn>
void emit_report(const std::string& out, const std::string& name, WriteFn write) {
  if (out.empty()) {
    write(std::cout);
    if (!std::cout.good()) throw std::ios_base::failure("stdout write failed");
    return;
  }
  std::filesystem::create_directories(out);
  const auto path = std::filesystem::path(out) / name;
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open " + path.string());
  write(os);
  if (!os.good()) throw std::ios_base::failure("failed writing " + path.string());
  std::cerr << "wrote " << path.string() << '\n';
}

void add_common_flags(CLI::App* cmd, CliOptions& o, bool with_model = true) {
  cmd->add_option("--alpha", o.alpha, "power-law parameter (comma list for fig-gamma)");
  cmd->add_option("--nu", o.nu, "density parameter");
  cmd->add_option("--n", o.n, "number of vertices");
  cmd->add_option("--reps", o.reps, "repetitions");
  cmd->add_option("--kmax", o.kmax, "largest degree k");
  cmd->add_option("--seed", o.seed, "RNG seed");
  if (with_model) cmd->add_option("--model", o.model, "kpkvb | poissonized | box");
  cmd->add_option("--out", o.out, "output directory (default: stdout)");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_option("--tol", o.tol, "numeric gate tolerance");
  cmd->add_option("--config", o.config_path, "flat key=value config file; flags win");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic random-graph clustering toolkit"};
  app.require_subcommand(1);

  CliOptions o;

  auto* cmd_generate = app.add_subcommand("generate", "sample a graph, write edge list + coords");
  add_common_flags(cmd_generate, o);

  auto* cmd_limits = app.add_subcommand("limits", "tabulate gamma_k, its oracle and pi_k");
  add_common_flags(cmd_limits, o);

  auto* cmd_oracle = app.add_subcommand("oracle", "closed form vs quadrature oracle, gated");
  add_common_flags(cmd_oracle, o);

  auto* cmd_experiment = app.add_subcommand("experiment", "figure-level Monte-Carlo runs");
  cmd_experiment->require_subcommand(1);
  auto* cmd_fig_gamma = cmd_experiment->add_subcommand("fig-gamma", "mean c(G) vs gamma");
  add_common_flags(cmd_fig_gamma, o);
  auto* cmd_fig_gammak = cmd_experiment->add_subcommand("fig-gammak", "mean c(k;G) vs gamma(k)");
  add_common_flags(cmd_fig_gammak, o);
  auto* cmd_degrees = cmd_experiment->add_subcommand("degrees", "empirical N(k)/n vs pi(k)");
  add_common_flags(cmd_degrees, o);

  auto* cmd_plot = app.add_subcommand("plot", "emit a gnuplot script for a report CSV");
  cmd_plot->add_option("--report", o.report, "report CSV path")->required();
  cmd_plot->add_option("--out", o.out, "output directory (default: stdout)");

  try {
    const std::string config = find_config_arg(argc, argv);
    if (!config.empty()) apply_config_file(config, o);
    app.parse(argc, argv);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (cmd_generate->parsed()) {
      const auto alphas = parse_alpha_list(o.alpha);
      auto cfg = build_config(o, alphas.front());
      if (o.out.empty()) cfg.output_dir = ".";
      hrg::run_generate(cfg);
      std::cerr << "wrote " << (cfg.output_dir / "edges.txt").string() << " and "
                << (cfg.output_dir / "coords.csv").string() << '\n';
      return kExitOk;
    }

    if (cmd_limits->parsed()) {
      const auto alphas = parse_alpha_list(o.alpha);
      auto cfg = build_config(o, alphas.front());
      hrg::LimitContext ctx = hrg::make_limit_context(cfg.params.alpha, cfg.params.nu);
      emit_report(o.out, "limits.csv", [&](std::ostream& os) {
        hrg::write_config_header(cfg, os);
        os << "# gamma=" << hrg::gamma_cc(ctx) << '\n';
        hrg::write_limits_csv(ctx, 2, cfg.k_max, os);
      });
      return kExitOk;
    }

    if (cmd_oracle->parsed()) {
      const auto alphas = parse_alpha_list(o.alpha);
      auto cfg = build_config(o, alphas.front());
      const auto rows = hrg::run_oracle(cfg, 2, cfg.k_max);
      emit_report(o.out, "oracle.csv",
                  [&](std::ostream& os) { hrg::write_oracle_csv(cfg, rows, os); });
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.within_gate;
      if (!ok) {
        std::cerr << "oracle gate failed (tol=" << cfg.tol << ")\n";
        return kExitGate;
      }
      return kExitOk;
    }

    if (cmd_fig_gamma->parsed()) {
      const auto alphas = parse_alpha_list(o.alpha);
      auto cfg = build_config(o, alphas.front());
      const auto rows = hrg::run_fig_gamma(cfg, alphas);
      emit_report(o.out, "fig_gamma.csv",
                  [&](std::ostream& os) { hrg::write_fig_gamma_csv(cfg, rows, os); });
      return kExitOk;
    }

    if (cmd_fig_gammak->parsed()) {
      const auto alphas = parse_alpha_list(o.alpha);
      auto cfg = build_config(o, alphas.front());
      const auto rows = hrg::run_fig_gammak(cfg);
      emit_report(o.out, "fig_gammak.csv",
                  [&](std::ostream& os) { hrg::write_fig_gammak_csv(cfg, rows, os); });
      return kExitOk;
    }

    if (cmd_degrees->parsed()) {
      const auto alphas = parse_alpha_list(o.alpha);
      auto cfg = build_config(o, alphas.front());
      const auto rows = hrg::run_degrees(cfg);
      emit_report(o.out, "degrees.csv",
                  [&](std::ostream& os) { hrg::write_degrees_csv(cfg, rows, os); });
      return kExitOk;
    }

    if (cmd_plot->parsed()) {
      const std::string script = hrg::make_plot_script(o.report);
      emit_report(o.out, "plot.gp", [&](std::ostream& os) { os << script; });
      return kExitOk;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
