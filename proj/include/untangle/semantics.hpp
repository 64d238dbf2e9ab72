// Reduction semantics on canonical forms. A step consumes one input prefix
// and one complementary output prefix sitting at top level and releases both
// continuations in parallel with the rest.

#ifndef UNTANGLE_SEMANTICS_HPP
#define UNTANGLE_SEMANTICS_HPP

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "untangle/core.hpp"

namespace untangle {

struct Step {
  Name channel;
  CanonicalProcess target;
};

// Sorted by (channel, printed target). One entry per unordered pair of
// complementary top-level components, so ill-typed terms may list
// duplicates.
std::vector<Step> steps(const CanonicalProcess& p);

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t limit)
      : std::runtime_error(what + " exceeded budget of " + std::to_string(limit)),
        limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

struct Edge {
  Name channel;
  std::size_t target;  // node index
};

// Breadth-first closure of `steps`. Node 0 is the root; nodes are numbered in
// discovery order and deduplicated by canonical form.
class ReductionGraph {
 public:
  const CanonicalProcess& root() const { return nodes_.front(); }
  const std::vector<CanonicalProcess>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges(std::size_t node) const { return edges_.at(node); }
  // Length of the shortest reduction sequence from the root.
  std::size_t distance(std::size_t node) const { return distance_.at(node); }
  // Predecessor on one shortest path (the first discovered); root maps to itself.
  std::size_t parent(std::size_t node) const { return parent_.at(node); }
  const Name& parent_channel(std::size_t node) const { return parent_channel_.at(node); }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept;
  std::size_t depth() const noexcept;

  std::size_t index_of(const CanonicalProcess& p) const;  // npos if absent
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  // Channels along the first-discovered shortest path from the root.
  std::vector<Step> trace_to(std::size_t node) const;

 private:
  friend ReductionGraph reachable(const CanonicalProcess&, std::size_t);

  std::vector<CanonicalProcess> nodes_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<std::size_t> distance_;
  std::vector<std::size_t> parent_;
  std::vector<Name> parent_channel_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

// Throws BudgetExceeded when more than `max_nodes` states are reachable.
ReductionGraph reachable(const CanonicalProcess& p, std::size_t max_nodes = kUnlimited);
ReductionGraph reachable(const Process& p, std::size_t max_nodes = kUnlimited);

bool is_deadlocked(const CanonicalProcess& p);
bool is_deadlocked(const Process& p);

// One "--a--> <process>" line per step.
std::string render_trace(const std::vector<Step>& trace);

}  // namespace untangle

#endif  // UNTANGLE_SEMANTICS_HPP
