// Source-level disentangling of detected locks.
//
// Both rewrites are driven by the offending top-layer environment of a
// detection and leave every prefix not named in it untouched.
//
//   PrefixToParallel  a.P  ->  a.0 | P     when the environment holds a:i
//                     ~a.P ->  ~a.0 | P    when it holds a:o
//   PullOutput        a.P  ->  a.P' | ~a.0 when it holds a:i (the original
//                                          ~a is dropped where it occurs)
//                     ~a.P ->  ~a.0 | P'   when it holds a:o
//
// PrefixToParallel does not descend into a rewritten continuation.

#ifndef UNTANGLE_REFACTOR_HPP
#define UNTANGLE_REFACTOR_HPP

#include <stdexcept>
#include <vector>

#include "untangle/analysis.hpp"
#include "untangle/core.hpp"
#include "untangle/oracle.hpp"

namespace untangle {

enum class Strategy { PrefixToParallel, PullOutput };

const char* to_string(Strategy s) noexcept;  // "d1" | "d2"

Process disentangle_par(const Env& g, const Process& p);
Process disentangle_pull(const Env& g, const Process& p);
Process disentangle(Strategy s, const Env& g, const Process& p);

struct RefactorOptions {
  DlMode mode = DlMode::Relaxed;
  bool all = false;     // keep rewriting while the output is still detected
  bool verify = true;   // run the oracle on the output
  OracleBudget budget{};
};

struct RefactorResult {
  Process original;
  Env env_used;                   // environment of the first rewrite
  std::vector<Env> envs_applied;  // every rewrite, in order
  Process output;
  bool still_linear = false;
  std::optional<bool> output_lock_free;  // empty when verification is off
  std::vector<Env> residual_reports;     // analysis of the output
};

class NoLockDetected : public std::runtime_error {
 public:
  NoLockDetected() : std::runtime_error("no potential self-lock detected") {}
};

// Throws NoLockDetected, NotLinear, BudgetExceeded.
RefactorResult refactor(const Process& p, Strategy s, const RefactorOptions& options = {});

}  // namespace untangle

#endif  // UNTANGLE_REFACTOR_HPP
