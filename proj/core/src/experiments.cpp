#include "hrg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hrg/graphstats.hpp"
#include "hrg/kahan.hpp"
#include "hrg/rng.hpp"

namespace hrg {
namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  KahanSum sum;
  for (double v : values) sum.add(v);
  out.mean = sum.value() / static_cast<double>(n);
  if (n > 1) {
    KahanSum sq;
    for (double v : values) sq.add((v - out.mean) * (v - out.mean));
    out.se = std::sqrt(sq.value() / (static_cast<double>(n - 1) * static_cast<double>(n)));
  }
  return out;
}

/// Runs fn(rep) for rep in [0, reps) on a worker pool; results land in
/// rep-indexed slots so the reduction order is fixed.
template <typename T, typename Fn>
std::vector<T> run_reps(int reps, int threads, Fn fn) {
  std::vector<T> results(static_cast<std::size_t>(reps));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int rep = next.fetch_add(1);
      if (rep >= reps) return;
      results[static_cast<std::size_t>(rep)] = fn(rep);
    }
  };
  const int nthreads = std::min(resolve_threads(threads), reps);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

std::uint64_t rep_seed(std::uint64_t seed, int rep) {
  return CounterRng::mix(seed, 0x7265700000000000ULL + static_cast<std::uint64_t>(rep));
}

}  // namespace

Graph generate_for_model(const ExperimentConfig& config, std::uint64_t seed) {
  GenOptions opt;
  opt.threads = 1;  // reps are the parallel axis
  switch (config.model) {
    case ModelTag::kpkvb: return generate_kpkvb(config.params, seed, opt);
    case ModelTag::poissonized: return generate_poissonized(config.params, seed, opt);
    case ModelTag::box: return generate_box(config.params, seed, opt);
  }
  throw std::logic_error("generate_for_model: unknown model");
}

std::vector<FigGammakRow> run_fig_gammak(const ExperimentConfig& config) {
  if (config.reps < 1 || config.k_max < 2) {
    throw std::invalid_argument("run_fig_gammak: requires reps >= 1 and k_max >= 2");
  }
  const std::size_t nk = static_cast<std::size_t>(config.k_max - 1);
  auto per_rep = run_reps<std::vector<double>>(config.reps, config.threads, [&](int rep) {
    const Graph g = generate_for_model(config, rep_seed(config.seed, rep));
    const ClusteringReport report = clustering_report(g);
    std::vector<double> ck(nk, 0.0);
    for (std::int64_t k = 2; k <= config.k_max; ++k) {
      auto it = report.c_of_k.find(k);
      if (it != report.c_of_k.end()) ck[static_cast<std::size_t>(k - 2)] = it->second;
    }
    return ck;
  });

  LimitContext ctx = make_limit_context(config.params.alpha, config.params.nu);
  const AsymptoticRegime regime = asymptotic_regime(ctx);
  std::vector<FigGammakRow> rows;
  rows.reserve(nk);
  std::vector<double> column(per_rep.size());
  for (std::int64_t k = 2; k <= config.k_max; ++k) {
    for (std::size_t r = 0; r < per_rep.size(); ++r) {
      column[r] = per_rep[r][static_cast<std::size_t>(k - 2)];
    }
    FigGammakRow row;
    row.k = k;
    row.c_k = mean_se(column);
    row.gamma_k = gamma_k(ctx, k);
    row.gamma_k_asymptote = regime.c_alpha_nu * regime.scale_at(k);
    rows.push_back(row);
  }
  return rows;
}

std::vector<FigGammaRow> run_fig_gamma(const ExperimentConfig& config,
                                       const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("run_fig_gamma: empty alpha grid");
  std::vector<FigGammaRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    ExperimentConfig cell = config;
    cell.params = derive_params(alpha, config.params.nu, config.params.n);
    auto per_rep = run_reps<double>(cell.reps, cell.threads, [&](int rep) {
      const Graph g = generate_for_model(cell, rep_seed(cell.seed, rep));
      return clustering_report(g).c_global;
    });
    FigGammaRow row;
    row.alpha = alpha;
    row.c_global = mean_se(per_rep);
    row.gamma = gamma_cc(make_limit_context(alpha, config.params.nu));
    rows.push_back(row);
  }
  return rows;
}

std::vector<DegreesRow> run_degrees(const ExperimentConfig& config) {
  if (config.reps < 1) throw std::invalid_argument("run_degrees: requires reps >= 1");
  const std::size_t nk = static_cast<std::size_t>(config.k_max + 1);
  auto per_rep = run_reps<std::vector<double>>(config.reps, config.threads, [&](int rep) {
    const Graph g = generate_for_model(config, rep_seed(config.seed, rep));
    std::vector<double> frac(nk, 0.0);
    const double denom = static_cast<double>(g.num_vertices());
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
      const std::size_t d = g.degree(v);
      if (d < nk) frac[d] += 1.0;
    }
    if (denom > 0) {
      for (double& f : frac) f /= denom;
    }
    return frac;
  });

  LimitContext ctx = make_limit_context(config.params.alpha, config.params.nu);
  std::vector<DegreesRow> rows;
  rows.reserve(nk);
  std::vector<double> column(per_rep.size());
  for (std::int64_t k = 0; k <= config.k_max; ++k) {
    for (std::size_t r = 0; r < per_rep.size(); ++r) {
      column[r] = per_rep[r][static_cast<std::size_t>(k)];
    }
    DegreesRow row;
    row.k = k;
    row.nk_over_n = mean_se(column);
    row.pi_k = degree_pmf(ctx, k);
    rows.push_back(row);
  }
  return rows;
}

std::vector<OracleRow> run_oracle(const ExperimentConfig& config, std::int64_t k_min,
                                  std::int64_t k_max) {
  LimitContext ctx = make_limit_context(config.params.alpha, config.params.nu);
  std::vector<OracleRow> rows;
  for (std::int64_t k = std::max<std::int64_t>(2, k_min); k <= k_max; ++k) {
    OracleRow row;
    row.k = k;
    row.gamma_k = gamma_k(ctx, k);
    row.gamma_k_oracle = gamma_k_oracle(ctx, k, ctx.quad);
    row.abs_diff = std::fabs(row.gamma_k - row.gamma_k_oracle);
    row.within_gate = row.abs_diff <= config.tol * std::max(std::fabs(row.gamma_k), 1e-3);
    rows.push_back(row);
  }
  return rows;
}

void run_generate(const ExperimentConfig& config) {
  const Graph g = generate_for_model(config, config.seed);
  std::filesystem::create_directories(config.output_dir);
  {
    std::ofstream edges(config.output_dir / "edges.txt");
    if (!edges) throw std::ios_base::failure("cannot open edges.txt for writing");
    write_edge_list(g, edges);
    if (!edges.good()) throw std::ios_base::failure("failed writing edges.txt");
  }
  {
    std::ofstream coords(config.output_dir / "coords.csv");
    if (!coords) throw std::ios_base::failure("cannot open coords.csv for writing");
    write_coordinates_csv(g, coords);
    if (!coords.good()) throw std::ios_base::failure("failed writing coords.csv");
  }
}

void write_config_header(const ExperimentConfig& config, std::ostream& os) {
  os << "# alpha=" << config.params.alpha << '\n';
  os << "# nu=" << config.params.nu << '\n';
  os << "# n=" << config.params.n << '\n';
  os << "# reps=" << config.reps << '\n';
  os << "# kmax=" << config.k_max << '\n';
  os << "# seed=" << config.seed << '\n';
  os << "# model=" << to_string(config.model) << '\n';
  os << "# tol=" << config.tol << '\n';
}

void write_fig_gammak_csv(const ExperimentConfig& config,
                          const std::vector<FigGammakRow>& rows, std::ostream& os) {
  write_config_header(config, os);
  os << "k,c_mean,c_se,gamma_k,gamma_k_asymptote\n";
  for (const auto& r : rows) {
    os << r.k << ',' << r.c_k.mean << ',' << r.c_k.se << ',' << r.gamma_k << ','
       << r.gamma_k_asymptote << '\n';
  }
}

void write_fig_gamma_csv(const ExperimentConfig& config, const std::vector<FigGammaRow>& rows,
                         std::ostream& os) {
  write_config_header(config, os);
  os << "alpha,c_mean,c_se,gamma\n";
  for (const auto& r : rows) {
    os << r.alpha << ',' << r.c_global.mean << ',' << r.c_global.se << ',' << r.gamma << '\n';
  }
}

void write_degrees_csv(const ExperimentConfig& config, const std::vector<DegreesRow>& rows,
                       std::ostream& os) {
  write_config_header(config, os);
  os << "k,nk_mean,nk_se,pi_k\n";
  for (const auto& r : rows) {
    os << r.k << ',' << r.nk_over_n.mean << ',' << r.nk_over_n.se << ',' << r.pi_k << '\n';
  }
}

void write_oracle_csv(const ExperimentConfig& config, const std::vector<OracleRow>& rows,
                      std::ostream& os) {
  write_config_header(config, os);
  os << "k,gamma_k,gamma_k_oracle,abs_diff\n";
  for (const auto& r : rows) {
    os << r.k << ',' << r.gamma_k << ',' << r.gamma_k_oracle << ',' << r.abs_diff << '\n';
  }
}

std::string make_plot_script(const std::filesystem::path& report_csv) {
  std::ifstream in(report_csv);
  if (!in) throw std::ios_base::failure("cannot open report: " + report_csv.string());
  std::string line;
  std::string header;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      header = line;
      break;
    }
  }

  const std::string file = report_csv.filename().string();
  std::ostringstream os;
  os << "set datafile separator ','\n";
  os << "set datafile commentschars '#'\n";
  os << "set key left top\n";
  os << "set grid\n";
  if (header.rfind("k,c_mean", 0) == 0) {
    os << "set xlabel 'k'\n";
    os << "set ylabel 'c(k)'\n";
    os << "plot '" << file << "' using 1:4 with lines title 'limit', \\\n";
    os << "     '" << file << "' using 1:5 with lines dashtype 2 title 'asymptote', \\\n";
    os << "     '" << file << "' using 1:2:3 with yerrorbars pointtype 7 title 'simulation'\n";
  } else if (header.rfind("alpha,c_mean", 0) == 0) {
    os << "set xlabel 'alpha'\n";
    os << "set ylabel 'c(G)'\n";
    os << "plot '" << file << "' using 1:4 with lines title 'limit', \\\n";
    os << "     '" << file << "' using 1:2:3 with yerrorbars pointtype 7 title 'simulation'\n";
  } else if (header.rfind("k,nk_mean", 0) == 0) {
    os << "set xlabel 'k'\n";
    os << "set ylabel 'N(k)/n'\n";
    os << "set logscale y\n";
    os << "plot '" << file << "' using 1:4 with lines title 'limit', \\\n";
    os << "     '" << file << "' using 1:2:3 with yerrorbars pointtype 7 title 'simulation'\n";
  } else {
    throw std::invalid_argument("make_plot_script: unrecognized report header: " + header);
  }
  return os.str();
}

}  // namespace hrg
