// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--criteria 1,2,5] [--cli path/to/chsh]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "chsh/case_study.hpp"
#include "chsh/io.hpp"
#include "chsh/optimizer.hpp"
#include "chsh/random.hpp"
#include "chsh/seesaw.hpp"
#include "json.hpp"

#ifndef CHSH_CLI_PATH
#define CHSH_CLI_PATH "chsh"
#endif

using namespace chsh;
namespace fs = std::filesystem;

namespace {

const double kTsirelson = 2.0 * std::numbers::sqrt2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CommandResult {
  int status = -1;
  std::string out;
};

struct Context {
  std::string cli;
  fs::path workdir;
  // aggregated over every state analyzed by any criterion
  double max_certificate_error = 0.0;
  std::size_t certificate_states = 0;
  std::size_t purity_violators = 0;
  std::size_t purity_failures = 0;
  std::map<std::size_t, std::map<std::string, std::string>> scan_summaries;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

CommandResult run(const std::string& cmd) {
  CommandResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

void record_state(Context& ctx, const QubitQuditState& s, const ChshResult& r) {
  ctx.max_certificate_error = std::max(ctx.max_certificate_error, std::abs(bell_value(s, r.observables) - r.value));
  ++ctx.certificate_states;
  if (r.violates) {
    ++ctx.purity_violators;
    if (!purity_violation_bound(s).satisfied) ++ctx.purity_failures;
  }
}

QubitQuditState sample(std::uint64_t seed, std::size_t i, std::size_t d) {
  RngStream rng = RngStream(seed).substream(i);
  return random_bures_state(d, rng);
}

std::map<std::string, std::string> parse_summary(const std::string& csv) {
  std::map<std::string, std::string> kv;
  const auto pos = csv.find("# summary");
  if (pos == std::string::npos) return kv;
  std::istringstream line(csv.substr(pos + 9, csv.find('\n', pos) - pos - 9));
  std::string tok;
  while (line >> tok) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

Outcome check_tsirelson(Context& ctx) {
  const fs::path file = ctx.workdir / "bell.json";
  std::ofstream(file) << state_to_json(states::bell_phi_plus()).dump();
  Stopwatch sw;
  const auto r = run(quote(ctx.cli) + " analyze " + quote(file.string()) + " --no-timing");
  const double t = sw.seconds();
  if (r.status != 0) return {false, "analyze exited with " + std::to_string(r.status)};
  const auto j = nlohmann::json::parse(r.out);
  const double value = j.at("value").get<double>();
  const double cert = j.at("certificate").get<double>();
  ctx.max_certificate_error = std::max(ctx.max_certificate_error, std::abs(cert - value));
  ++ctx.certificate_states;
  const double err = std::abs(value - kTsirelson);
  return {err < 1e-8 && t < 1.0 && j.at("violates").get<bool>(),
          "B=" + fmt("%.16g", value) + " |B-2sqrt2|=" + fmt("%.2e", err) + " time=" + fmt("%.3fs", t)};
}

Outcome check_horodecki(Context& ctx) {
  Stopwatch sw;
  std::size_t failures = 0, violating = 0;
  double worst = 0.0, worst_violating = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto s = sample(2002, i, 2);
    const auto b = decompose(s);
    const auto r = max_chsh(b);
    record_state(ctx, s, r);
    const double h = horodecki_qubit_qubit(b);
    const double err = std::abs(r.value - h);
    worst = std::max(worst, err);
    if (!(err < 1e-6)) ++failures;
    if (r.value > 2.0 || h > 2.0) {
      ++violating;
      worst_violating = std::max(worst_violating, err);
    }
  }
  const double t = sw.seconds();
  return {failures == 0 && t < 120.0,
          "states=1000 mismatches=" + std::to_string(failures) + " max|diff|=" + fmt("%.3e", worst) +
              " violating_states=" + std::to_string(violating) + " max|diff|_violating=" +
              fmt("%.3e", worst_violating) + " time=" + fmt("%.1fs", t)};
}

Outcome check_werner(Context& ctx) {
  double worst = 0.0;
  for (double eta : {0.5, 1.0 / std::numbers::sqrt2, 0.9}) {
    const auto s = states::werner(eta);
    const auto r = max_chsh(s);
    record_state(ctx, s, r);
    worst = std::max(worst, std::abs(r.value - kTsirelson * eta));
  }
  const double t = 1.0 / std::numbers::sqrt2;
  bool flips = true;
  for (double eta : {0.5, t - 1e-9, t}) flips &= !max_chsh(states::werner(eta)).violates;
  for (double eta : {t + 1e-9, t + 1e-6, 0.9}) flips &= max_chsh(states::werner(eta)).violates;
  return {worst < 1e-6 && flips,
          "max|B-2sqrt2*eta|=" + fmt("%.2e", worst) + " flag_flips_above_1/sqrt2=" + (flips ? "yes" : "no")};
}

Outcome check_seesaw(Context& ctx) {
  Stopwatch sw;
  double worst = 0.0;
  std::size_t failures = 0;
  for (std::size_t d : {3u, 4u})
    for (std::size_t i = 0; i < 200; ++i) {
      const auto s = sample(4000 + d, i, d);
      const auto r = max_chsh(s);
      record_state(ctx, s, r);
      SeesawConfig cfg;
      cfg.starts = 16;
      cfg.seed = 1000 * d + i;
      const double err = std::abs(seesaw_max(s, cfg).value - r.value);
      worst = std::max(worst, err);
      if (!(err < 1e-4)) ++failures;
    }
  const double t = sw.seconds();
  return {failures == 0 && t < 600.0, "states=400 failures=" + std::to_string(failures) +
                                          " max|seesaw-B|=" + fmt("%.3e", worst) + " time=" + fmt("%.1fs", t)};
}

Outcome check_sandwich(Context& ctx) {
  std::size_t failures = 0;
  double worst_low = -1e300, worst_high = -1e300;
  for (std::size_t d = 2; d <= 6; ++d)
    for (std::size_t i = 0; i < 1000; ++i) {
      const auto s = sample(5000 + d, i, d);
      const auto r = max_chsh(s);
      record_state(ctx, s, r);
      worst_low = std::max(worst_low, r.lower - r.value);
      worst_high = std::max(worst_high, r.value - r.upper);
      if (!(r.lower - 1e-8 <= r.value && r.value <= r.upper + 1e-8)) ++failures;
    }
  return {failures == 0, "states=5000 failures=" + std::to_string(failures) + " max(lower-B)=" +
                             fmt("%.2e", worst_low) + " max(B-upper)=" + fmt("%.3f", worst_high)};
}

Outcome check_random_scan(Context& ctx) {
  struct Run {
    std::size_t d;
    double lo, hi;  // accepted p_violation range; hi < 0 means "at most 1 violation"
  };
  bool pass = true;
  std::string detail;
  for (const Run& scan_run : {Run{2, 0.082, 0.100}, Run{4, 0.010, 0.018}, Run{10, -1, -1}}) {
    Stopwatch sw;
    const auto r = run(quote(ctx.cli) + " random-scan --d " + std::to_string(scan_run.d) +
                       " --samples 10000 --seed 1 --no-timing");
    const double t = sw.seconds();
    auto kv = parse_summary(r.out);
    if (r.status != 0 || kv.empty()) {
      pass = false;
      detail += " d=" + std::to_string(scan_run.d) + ":exit" + std::to_string(r.status);
      continue;
    }
    ctx.scan_summaries[scan_run.d] = kv;
    ctx.max_certificate_error = std::max(ctx.max_certificate_error, std::stod(kv["max_certificate_error"]));
    ctx.certificate_states += std::stoul(kv["samples"]);
    ctx.purity_violators += std::stoul(kv["violations"]);
    ctx.purity_failures += std::stoul(kv["purity_condition_failures"]);
    const double p = std::stod(kv["p_violation"]);
    const auto violations = std::stoul(kv["violations"]);
    bool ok = scan_run.hi < 0 ? violations <= 1 : (p >= scan_run.lo && p <= scan_run.hi);
    if (scan_run.d == 4) ok &= t < 1800.0;
    pass &= ok;
    detail += " d=" + std::to_string(scan_run.d) + ":p=" + fmt("%.4f", p) + "(" + std::to_string(violations) +
              "/10000," + fmt("%.0fs", t) + ")";
  }
  return {pass, detail.substr(1)};
}

Outcome check_lower_accuracy(Context& ctx) {
  for (std::size_t d : {4u, 10u})
    if (!ctx.scan_summaries.count(d)) {
      const auto r = run(quote(ctx.cli) + " random-scan --d " + std::to_string(d) + " --samples 10000 --seed 1 --no-timing");
      ctx.scan_summaries[d] = parse_summary(r.out);
    }
  auto rel = [&](std::size_t d) {
    const auto& kv = ctx.scan_summaries[d];
    const auto it = kv.find("lower_rel_error_mean");
    return it == kv.end() ? std::nan("") : std::stod(it->second);
  };
  const double e4 = rel(4), e10 = rel(10);
  return {e4 >= 0.05 && e4 <= 0.20 && e10 >= 0.01 && e10 <= 0.10,
          "d=4 mean=" + fmt("%.4f", e4) + " (band 0.05-0.20) d=10 mean=" + fmt("%.4f", e10) + " (band 0.01-0.10)"};
}

Outcome check_case_study(Context& ctx) {
  Stopwatch sw;
  const auto r = run(quote(ctx.cli) + " case-study --resolution 101 --no-timing");
  const double t = sw.seconds();
  if (r.status != 0) return {false, "case-study exited with " + std::to_string(r.status)};
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  if (line != kGridCsvHeader) return {false, "unexpected header: " + line};
  std::size_t rows = 0, non_entangled_elsewhere = 0, ent_nonviol = 0, excluded = 0, excluded_violating = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9) return {false, "malformed row: " + line};
    ++rows;
    const double x = std::stod(f[0]), y = std::stod(f[1]), e = std::stod(f[2]), b = std::stod(f[3]);
    const bool entangled = f[6] == "1", violates = f[7] == "1", excl = f[8] == "1";
    const bool centre = std::abs(x - 1.0 / 3) < 1e-9 && std::abs(y - 1.0 / 3) < 1e-9;
    if (!(e > 1e-9) && !centre) ++non_entangled_elsewhere;
    if (entangled && !violates && b <= 2.0) ++ent_nonviol;
    if (excl) {
      ++excluded;
      if (violates) ++excluded_violating;
    }
  }
  return {rows == 5151 && non_entangled_elsewhere == 0 && ent_nonviol > 0 && excluded_violating == 0 && t < 900.0,
          "rows=" + std::to_string(rows) + " (a)non_entangled_off_centre=" + std::to_string(non_entangled_elsewhere) +
              " (b)entangled_nonviolating=" + std::to_string(ent_nonviol) + " (c)excluded=" + std::to_string(excluded) +
              ",excluded_violating=" + std::to_string(excluded_violating) + " time=" + fmt("%.0fs", t)};
}

Outcome check_embedding(Context& ctx) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const auto s = sample(9009, i, 2);
    const auto b = decompose(s);
    const auto base = max_chsh(b);
    record_state(ctx, s, base);
    for (std::size_t d2 : {3u, 4u}) {
      const auto e = embed(b, d2);
      const auto r = max_chsh(e);
      record_state(ctx, reconstruct(e), r);
      worst = std::max(worst, std::abs(r.value - base.value));
    }
  }
  return {worst < 1e-6, "states=50 targets=3,4 max|diff|=" + fmt("%.3e", worst)};
}

Outcome check_purity(Context& ctx) {
  return {ctx.purity_failures == 0 && ctx.purity_violators > 0,
          "violating_states_seen=" + std::to_string(ctx.purity_violators) +
              " below_purity_threshold=" + std::to_string(ctx.purity_failures)};
}

Outcome check_lemma(Context&) {
  RngStream rng(1111);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto [a0, a1] = rng.normal_pair();
    const auto [a2, b0] = rng.normal_pair();
    const auto [b1, b2] = rng.normal_pair();
    const auto c = lemma_rotation_identity(Vec3{a0, a1, a2}, Vec3{b0, b1, b2});
    worst = std::max(worst, std::abs(c.lhs - c.rhs));
  }
  return {worst < 1e-6, "pairs=1000 max|lhs-rhs|=" + fmt("%.3e", worst)};
}

Outcome check_certificate(Context& ctx) {
  return {ctx.certificate_states > 0 && ctx.max_certificate_error < 1e-8,
          "states=" + std::to_string(ctx.certificate_states) + " max|bell_value-B|=" +
              fmt("%.3e", ctx.max_certificate_error)};
}

Outcome check_determinism(Context& ctx) {
  const fs::path file = ctx.workdir / "werner.json";
  std::ofstream(file) << state_to_json(states::werner(0.8)).dump();
  const std::string c = quote(ctx.cli);
  const std::vector<std::string> commands{
      c + " --no-timing analyze " + quote(file.string()) + " --seesaw-check --seed 3",
      c + " --no-timing analyze " + quote(file.string()) + " --csv",
      c + " random-scan --d 3 --samples 200 --seed 11 --no-timing",
      c + " case-study --resolution 15 --no-timing",
      c + " verify --trials 4 --seed 5",
  };
  std::size_t identical = 0;
  for (const auto& cmd : commands) {
    const auto a = run(cmd);
    const auto b = run(cmd + " --threads 2");
    const auto e = run("CHSH_MAX_THREADS=3 " + cmd);
    if (a.status == b.status && a.status == e.status && a.out == b.out && a.out == e.out && !a.out.empty())
      ++identical;
  }
  return {identical == commands.size(),
          "commands=" + std::to_string(commands.size()) + " runs_each=3 byte_identical=" + std::to_string(identical)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  Context ctx;
  ctx.cli = CHSH_CLI_PATH;
  app.add_option("--criteria", selected, "Criteria to run (default: all)")->delimiter(',');
  app.add_option("--cli", ctx.cli, "Path to the chsh executable");
  CLI11_PARSE(app, argc, argv);

  ctx.workdir = fs::temp_directory_path() / ("chsh_acceptance_" + std::to_string(getpid()));
  fs::create_directories(ctx.workdir);

  using Check = std::function<Outcome(Context&)>;
  const std::vector<std::pair<std::string, Check>> criteria{
      {"Tsirelson exactness (analyze Bell state)", check_tsirelson},
      {"Horodecki equivalence (1000 states, d=2)", check_horodecki},
      {"Werner threshold", check_werner},
      {"see-saw cross-validation (d=3,4)", check_seesaw},
      {"bound sandwich (d=2..6)", check_sandwich},
      {"random-scan statistics (d=2,4,10)", check_random_scan},
      {"lower-bound accuracy", check_lower_accuracy},
      {"case-study reproduction (resolution 101)", check_case_study},
      {"embedding invariance", check_embedding},
      {"purity necessary condition", check_purity},
      {"rotation identity for vector pairs", check_lemma},
      {"certificate property", check_certificate},
      {"determinism with --no-timing", check_determinism},
  };
  std::set<int> want(selected.begin(), selected.end());
  if (want.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) want.insert(i);

  int failed = 0;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (!want.count(i)) continue;
    const auto& [name, check] = criteria[static_cast<std::size_t>(i - 1)];
    Outcome o;
    try {
      o = check(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i << ": " << name << " | " << o.detail << std::endl;
  }
  fs::remove_all(ctx.workdir);
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
