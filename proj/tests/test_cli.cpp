// End-to-end checks of the hrg command-line tool. Takes the binary path as
// argv[1]; exercises file formats, determinism, config precedence and exit
// codes.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << '\n';
  }
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-hrg-binary>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path work = fs::temp_directory_path() / "hrg_cli_test";
  fs::remove_all(work);
  fs::create_directories(work);
  const std::string w = work.string();

  // generate: determinism and header contract
  check(run(bin + " generate --alpha 0.8 --nu 1 --n 10 --seed 3 --out " + w + "/g1 2>/dev/null") == 0,
        "generate exits 0");
  check(run(bin + " generate --alpha 0.8 --nu 1 --n 10 --seed 3 --out " + w + "/g2 2>/dev/null") == 0,
        "generate (rerun) exits 0");
  check(slurp(work / "g1/edges.txt") == slurp(work / "g2/edges.txt"),
        "same seed gives byte-identical edge lists");
  check(slurp(work / "g1/coords.csv") == slurp(work / "g2/coords.csv"),
        "same seed gives byte-identical coordinates");

  check(run(bin + " generate --alpha 0.8 --nu 1 --n 10 --seed 4 --out " + w + "/g3 2>/dev/null") == 0,
        "generate with another seed exits 0");
  if (slurp(work / "g1/edges.txt") == slurp(work / "g3/edges.txt")) {
    std::cerr << "note: different seeds produced identical edge lists (allowed)\n";
  }

  check(run(bin + " generate --alpha 0.8 --nu 1 --n 10 --seed 3 --model box --out " + w +
            "/gbox 2>/dev/null") == 0,
        "box generate exits 0");
  check(slurp(work / "gbox/edges.txt").rfind("# box", 0) == 0, "box header records model=box");

  // limits tabulation
  check(run(bin + " limits --alpha 0.8 --nu 1 --kmax 4 --out " + w + "/lim 2>/dev/null") == 0,
        "limits exits 0");
  {
    const std::string csv = slurp(work / "lim/limits.csv");
    check(csv.find("k,gamma_k,gamma_k_oracle,degree_pmf") != std::string::npos,
          "limits CSV has the documented columns");
    check(csv.find("# gamma=") != std::string::npos, "limits CSV echoes gamma");
  }

  // oracle gate: passes at 1e-6, fails at 0
  check(run(bin + " oracle --alpha 0.8 --nu 1 --kmax 4 --out " + w + "/oracle 2>/dev/null") == 0,
        "oracle exits 0 at the default gate");
  check(run(bin + " oracle --alpha 0.8 --nu 1 --kmax 3 --tol 0 --out " + w +
            "/oracle0 2>/dev/null") == 2,
        "oracle exits 2 when the gate is zero");

  // experiments + plot round trip
  check(run(bin + " experiment fig-gammak --alpha 0.8 --nu 1 --n 50 --reps 2 --kmax 6 "
                  "--seed 1 --out " + w + "/fk 2>/dev/null") == 0,
        "fig-gammak exits 0");
  check(slurp(work / "fk/fig_gammak.csv").find("k,c_mean,c_se,gamma_k,gamma_k_asymptote") !=
            std::string::npos,
        "fig-gammak CSV columns");
  check(run(bin + " experiment fig-gamma --alpha 0.7,1.0 --nu 1 --n 50 --reps 2 --seed 1 "
                  "--out " + w + "/fg 2>/dev/null") == 0,
        "fig-gamma exits 0 with an alpha grid");
  {
    const std::string csv = slurp(work / "fg/fig_gamma.csv");
    check(csv.find("alpha,c_mean,c_se,gamma") != std::string::npos, "fig-gamma CSV columns");
    check(csv.find("\n0.7,") != std::string::npos && csv.find("\n1,") != std::string::npos,
          "fig-gamma has one row per alpha");
  }
  check(run(bin + " experiment degrees --alpha 0.8 --nu 1 --n 50 --reps 2 --kmax 6 --seed 1 "
                  "--out " + w + "/dg 2>/dev/null") == 0,
        "degrees exits 0");

  check(run(bin + " plot --report " + w + "/fk/fig_gammak.csv --out " + w + "/plot 2>/dev/null") == 0,
        "plot exits 0");
  {
    const std::string gp = slurp(work / "plot/plot.gp");
    check(gp.find("fig_gammak.csv") != std::string::npos, "plot references the CSV");
    check(gp.find("yerrorbars") != std::string::npos, "plot draws error bars");
  }
  check(run(bin + " plot --report " + w + "/fk/fig_gammak.csv --out " + w + "/plot2 2>/dev/null") == 0,
        "plot re-emission exits 0");
  check(slurp(work / "plot/plot.gp") == slurp(work / "plot2/plot.gp"),
        "plot re-emission is byte-identical");

  // config file with flag precedence
  {
    std::ofstream cfg(work / "exp.cfg");
    cfg << "alpha=0.9\nnu=1\nn=40\nreps=1\nkmax=4\nseed=9\n";
  }
  check(run(bin + " experiment fig-gammak --config " + w + "/exp.cfg --out " + w +
            "/cfgrun 2>/dev/null") == 0,
        "config-file run exits 0");
  check(slurp(work / "cfgrun/fig_gammak.csv").find("# alpha=0.9") != std::string::npos,
        "config file sets alpha");
  check(run(bin + " experiment fig-gammak --config " + w + "/exp.cfg --alpha 0.8 --out " + w +
            "/cfgflag 2>/dev/null") == 0,
        "config+flag run exits 0");
  check(slurp(work / "cfgflag/fig_gammak.csv").find("# alpha=0.8") != std::string::npos,
        "flags win over the config file");

  // validation and I/O exit codes
  check(run(bin + " generate --alpha 0.4 --nu 1 --n 10 2>/dev/null") == 1,
        "alpha <= 1/2 exits 1");
  check(run(bin + " limits --alpha 0.8 --nu -1 2>/dev/null") == 1, "nu <= 0 exits 1");
  check(run(bin + " nonsense 2>/dev/null") == 1, "unknown subcommand exits 1");
  check(run(bin + " plot --report " + w + "/does_not_exist.csv 2>/dev/null") == 3,
        "missing report exits 3");
  check(run(bin + " generate --alpha 0.8 --nu 1 --n 5 --out /proc/hrg_forbidden 2>/dev/null") == 3,
        "unwritable output dir exits 3");

  fs::remove_all(work);
  if (failures == 0) {
    std::cout << "test_cli: all checks passed\n";
    return 0;
  }
  std::cerr << "test_cli: " << failures << " checks failed\n";
  return 1;
}
