#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chsh/analysis.hpp"
#include "chsh/case_study.hpp"
#include "chsh/config.hpp"
#include "chsh/errors.hpp"
#include "chsh/io.hpp"
#include "chsh/scan.hpp"
#include "verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw chsh::ValidationError(chsh::Invariant::parse, out_path + ": cannot open for writing");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal CHSH violation of qubit-qudit states"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 0;
  bool no_timing = false;
  app.add_option("--threads", threads, "OpenMP threads (default: CHSH_MAX_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-timing", no_timing, "Omit timing fields so output is byte-reproducible");

  auto* analyze = app.add_subcommand("analyze", "Maximal CHSH value, bounds and optimal observables of a state");
  std::string state_path;
  bool seesaw_check = false, as_json = false, as_csv = false;
  int grid = 30;
  std::uint64_t analyze_seed = 0;
  analyze->add_option("state", state_path, "State file (JSON)")->required();
  analyze->add_flag("--seesaw-check", seesaw_check, "Cross-check with the see-saw search");
  analyze->add_option("--grid", grid, "Euler grid points per angle")->check(CLI::Range(2, 1000));
  analyze->add_option("--seed", analyze_seed, "See-saw seed");
  auto* json_flag = analyze->add_flag("--json", as_json, "JSON output (default)");
  analyze->add_flag("--csv", as_csv, "CSV output")->excludes(json_flag);
  analyze->add_flag("--no-timing", no_timing, "Omit timing fields");

  auto* scan = app.add_subcommand("random-scan", "CHSH statistics over random Bures states");
  std::size_t scan_d = 2, samples = 10000;
  std::uint64_t scan_seed = 1;
  std::string scan_out;
  scan->add_option("--d", scan_d, "Qudit dimension")->required()->check(CLI::Range(2, 64));
  scan->add_option("--samples", samples, "Number of states")->check(CLI::PositiveNumber);
  scan->add_option("--seed", scan_seed, "Seed");
  scan->add_option("--out", scan_out, "Write the CSV here instead of stdout");
  scan->add_flag("--no-timing", no_timing, "Omit timing fields");

  auto* cases = app.add_subcommand("case-study", "Qubit-qutrit family grid (negativity and CHSH value)");
  int resolution = 101;
  std::string case_out;
  cases->add_option("--resolution", resolution, "Grid points per axis")->check(CLI::Range(2, 100000));
  cases->add_option("--out", case_out, "Write the CSV here instead of stdout");
  cases->add_flag("--no-timing", no_timing, "Omit timing fields");

  auto* verify = app.add_subcommand("verify", "Cross-validation battery");
  std::size_t trials = 100;
  std::uint64_t verify_seed = 7;
  verify->add_option("--trials", trials, "Trials per battery")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (threads == 0) {
    if (const char* env = std::getenv("CHSH_MAX_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 0) {
        std::cerr << "usage: CHSH_MAX_THREADS must be a non-negative integer, got '" << env << "'\n";
        return kExitUsage;
      }
      threads = static_cast<int>(v);
    }
  }
  chsh::set_thread_count(threads);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (*analyze) {
      chsh::AnalysisOptions opt;
      opt.optimizer.grid_alpha = opt.optimizer.grid_beta = opt.optimizer.grid_gamma = grid;
      opt.seesaw_check = seesaw_check;
      opt.seesaw.seed = analyze_seed;
      opt.timing = !no_timing;
      const auto report = chsh::analyze(chsh::load_state(state_path), opt);
      if (as_csv)
        std::cout << chsh::report_to_csv(report);
      else
        std::cout << chsh::report_to_json(report).dump(2) << '\n';
    } else if (*scan) {
      const auto stats = chsh::nonlocality_scan(scan_d, samples, scan_seed);
      std::string text = chsh::scan_to_csv(stats);
      if (!no_timing) text += "# timing elapsed_seconds=" + chsh::format12(seconds_since(t0)) + "\n";
      emit(text, scan_out);
      if (!scan_out.empty()) std::cout << text.substr(text.find("# summary"));
    } else if (*cases) {
      std::string text = chsh::grid_to_csv(chsh::grid_scan(resolution));
      if (!no_timing) text += "# timing elapsed_seconds=" + chsh::format12(seconds_since(t0)) + "\n";
      emit(text, case_out);
    } else if (*verify) {
      return chsh::cli::run_verify(trials, verify_seed, std::cout) ? kExitOk : kExitNumeric;
    }
  } catch (const chsh::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}
