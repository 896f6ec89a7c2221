#include "chsh/analysis.hpp"

#include <chrono>

#include "chsh/case_study.hpp"
#include "chsh/optimizer.hpp"

namespace chsh {

AnalysisReport analyze(const QubitQuditState& state, const AnalysisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ChshResult r = max_chsh(state, options.optimizer);
  const PurityBound pb = purity_violation_bound(state);

  AnalysisReport rep;
  rep.d = state.d();
  rep.value = r.value;
  rep.violates = r.violates;
  rep.lower = r.lower;
  rep.upper = r.upper;
  rep.objective = r.objective;
  rep.evaluations = r.evaluations;
  rep.rotation = r.rotation;
  rep.a_axis = r.observables.a.axis();
  rep.a_prime_axis = r.observables.a_prime.axis();
  rep.b = r.observables.b.matrix().matrix();
  rep.b_prime = r.observables.b_prime.matrix().matrix();
  rep.certificate = bell_value(state, r.observables);
  rep.purity = pb.purity;
  rep.purity_threshold = pb.threshold;
  rep.purity_condition = pb.satisfied;
  rep.log_negativity = log_negativity(state);
  if (options.seesaw_check) {
    const SeesawReport s = seesaw_max(state, options.seesaw);
    rep.seesaw = SeesawSummary{s.value, s.iterations, s.starts, s.converged};
  }
  if (options.timing)
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace chsh
