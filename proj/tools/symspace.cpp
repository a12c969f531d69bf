#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "symspace/experiments.hpp"
#include "symspace/gpd.hpp"
#include "symspace/verify.hpp"

namespace {

uint64_t env_seed() {
  const char* s = std::getenv("SYMSPACE_SEED");
  if (!s || !*s) return 0;
  return std::strtoull(s, nullptr, 10);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw symspace::error("cannot open output file " + path);
  return f;
}

int cmd_polar(const std::string& input, const std::string& sigma, int order,
              const std::string& out_prefix) {
  symspace::Mat x = symspace::read_mat_file(input);
  symspace::Involution inv = symspace::involution_from_id(sigma);
  symspace::PolarFactors f = symspace::generalized_polar(x, inv, order);
  if (f.log_norm > 0.5)
    std::cerr << "warning: ||log x|| = " << f.log_norm
              << " exceeds 0.5; the series truncation is unreliable this far from identity\n";
  symspace::write_mat_file(out_prefix + ".p", f.p_factor);
  symspace::write_mat_file(out_prefix + ".k", f.k_factor);
  std::cout << "residual=" << symspace::format_sig17(f.residual) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed) {
  auto results = symspace::verify_suites(suite, seed);
  bool all_ok = true;
  for (const auto& sr : results) {
    bool ok = sr.pass();
    all_ok = all_ok && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << sr.suite << " (" << sr.checks.size() << " checks)\n";
    for (const auto& c : sr.checks) {
      if (!c.pass)
        std::cerr << "  failed: " << c.name << "  value=" << c.value
                  << "  threshold=" << c.threshold << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

int cmd_compose(const symspace::ComposeConfig& cfg, const std::string& out) {
  auto rows = symspace::run_compose(cfg);
  auto f = open_out(out);
  symspace::write_compose_csv(f, rows);
  return 0;
}

int cmd_experiment(const std::string& which, const symspace::ExperimentConfig& cfg,
                   const std::string& out) {
  std::vector<symspace::ResultRow> rows;
  if (which == "altdir") {
    rows = symspace::run_altdir_experiment(cfg);
  } else if (which == "stiff") {
    rows = symspace::run_stiff_experiment(cfg);
  } else {
    throw symspace::error("unknown experiment '" + which + "' (expected altdir | stiff)");
  }
  auto f = open_out(out);
  symspace::write_experiment_csv(f, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric-space splittings, generalized polar decompositions and "
               "symmetry-preserving composition schemes"};
  app.require_subcommand(1);
  // the experiment subcommand takes a literal --h option, so help is --help only
  app.set_help_flag("--help", "print help");

  // polar
  auto* polar = app.add_subcommand("polar", "generalized polar decomposition of a matrix file");
  std::string polar_input, polar_sigma, polar_out;
  int polar_order = 4;
  polar->add_option("--input", polar_input, "matrix text file")->required();
  polar->add_option("--sigma", polar_sigma,
                    "involution id: transpose-inverse | conjugate | inner:<r-file>")
      ->required();
  polar->add_option("--order", polar_order, "series truncation order (1..4)")
      ->check(CLI::Range(1, 4));
  polar->add_option("--out", polar_out, "output prefix; writes <prefix>.p and <prefix>.k")
      ->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run module invariant suites");
  std::string verify_suite = "all";
  uint64_t verify_seed = env_seed();
  verify->add_option("--suite", verify_suite, "matcore|involutions|series|gpd|flows|all");
  verify->add_option("--seed", verify_seed, "randomization seed (default SYMSPACE_SEED or 0)");

  // compose
  auto* compose = app.add_subcommand("compose", "composition-scheme order experiments on ODEs");
  symspace::ComposeConfig ccfg;
  std::string compose_out;
  compose->add_option("--scheme", ccfg.scheme, "scovel | tm | yoshida | selfadjoint")->required();
  compose->add_option("--levels", ccfg.levels, "levels / iterations (default 3)");
  compose->add_option("--problem", ccfg.problem, "harmonic | linear-sym | so3")->required();
  compose->add_option("--hmax", ccfg.hmax, "largest base step of the ladder");
  compose->add_option("--rungs", ccfg.rungs, "ladder rungs, ratio 1/2");
  compose->add_option("--out", compose_out, "output CSV path")->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "PDE experiments (altdir | stiff)");
  experiment->set_help_flag("--help", "print help");
  std::string exp_which, exp_out;
  symspace::ExperimentConfig ecfg;
  experiment->add_option("which", exp_which, "altdir | stiff")->required();
  experiment->add_option("--grid", ecfg.grid_n, "grid points per dimension (altdir)");
  experiment->add_option("--L", ecfg.grid_length, "domain half-width (altdir)");
  experiment->add_option("--delta", ecfg.delta, "grid spacing on [-1,1] (stiff)");
  experiment->add_option("--h", ecfg.h, "step size / ladder top (altdir)");
  experiment->add_option("--rungs", ecfg.rungs, "ladder rungs; 1 = fixed-step mode");
  experiment->add_option("--levels", ecfg.levels, "Thue-Morse levels 0..k (altdir)");
  experiment->add_option("--tend", ecfg.t_end, "end time (defaults: altdir 0.96, stiff 1.0)");
  experiment->add_option("--out", exp_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (polar->parsed()) return cmd_polar(polar_input, polar_sigma, polar_order, polar_out);
    if (verify->parsed()) return cmd_verify(verify_suite, verify_seed);
    if (compose->parsed()) return cmd_compose(ccfg, compose_out);
    if (experiment->parsed()) return cmd_experiment(exp_which, ecfg, exp_out);
  } catch (const symspace::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
