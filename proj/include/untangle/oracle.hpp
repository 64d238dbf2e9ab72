// Semantic decision procedures by exhaustive exploration of the reduction
// graph. Deliberately brute force: these are the ground truth the static
// analysis is measured against.

#ifndef UNTANGLE_ORACLE_HPP
#define UNTANGLE_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "untangle/core.hpp"
#include "untangle/semantics.hpp"

namespace untangle {

struct OracleBudget {
  std::size_t max_nodes = 200000;     // reachable states
  std::size_t max_components = 20;    // top-level components per state (2^k subsets)
};

// Top-level (unguarded) occurrence of the input `a` / output `~a`.
bool pred_in(const Name& a, const CanonicalProcess& p);
bool pred_out(const Name& a, const CanonicalProcess& p);
bool pred_sync(const Name& a, const CanonicalProcess& p);
bool pred_wait(const Name& a, const CanonicalProcess& p);

bool pred_in(const Name& a, const Process& p);
bool pred_out(const Name& a, const Process& p);
bool pred_sync(const Name& a, const Process& p);
bool pred_wait(const Name& a, const Process& p);

// Occurrence at any depth, guarded or not.
bool pred_cin(const Name& a, const Process& p);
bool pred_cout(const Name& a, const Process& p);

bool is_complete(const Process& p);
bool is_top_complete(const CanonicalProcess& p);
bool is_top_complete(const Process& p);
bool is_self_deadlocked(const CanonicalProcess& p);
bool is_self_deadlocked(const Process& p);

bool is_lock_free(const ReductionGraph& g);
bool is_lock_free(const Process& p, const OracleBudget& budget = {});

struct LockWitness {
  std::vector<Step> trace;                 // from the process to the state R
  CanonicalProcess state;                  // R
  std::vector<Process> locked_components;  // sub-multiset of R forming Q
  CanonicalProcess locked() const { return compose(locked_components); }
};

// Evaluates the existence of a reachable self-deadlocked parallel group,
// regardless of completeness. The witness is minimal by trace length, then
// group size, then printed group.
struct LockSearch {
  bool found = false;
  std::optional<LockWitness> witness;
};

LockSearch find_self_lock(const ReductionGraph& g, const OracleBudget& budget = {});
LockSearch find_self_lock(const Process& p, const OracleBudget& budget = {});

struct PslResult {
  bool self_locking_reachable = false;  // evaluated on any process
  bool psl = false;                     // additionally requires completeness
  std::optional<LockWitness> witness;
};

PslResult is_psl(const Process& p, const OracleBudget& budget = {});

struct Classification {
  bool linear = false;
  bool complete = false;
  bool lock_free = false;
  bool deadlocked = false;
  bool top_complete = false;
  bool self_deadlocked = false;
  bool self_locking_reachable = false;
  bool potentially_self_locking = false;

  friend bool operator==(const Classification&, const Classification&) = default;
};

// Throws BudgetExceeded.
Classification classify(const Process& p, const OracleBudget& budget = {});

// (complete and not lock-free) == potentially self-locking.
bool psl_characterization_holds(const Process& p, const OracleBudget& budget = {});

}  // namespace untangle

#endif  // UNTANGLE_ORACLE_HPP
