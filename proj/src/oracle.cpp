#include "untangle/oracle.hpp"

#include <functional>
#include <set>

#include "untangle/typing.hpp"

namespace untangle {

namespace {

bool top_has(const Name& a, Polarity pol, const CanonicalProcess& p) {
  for (const auto& c : p.components())
    if (c.action().name == a && c.action().polarity == pol) return true;
  return false;
}

bool occurs(const Name& a, Polarity pol, const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Inert:
      return false;
    case Process::Kind::Prefix:
      return (p.action().name == a && p.action().polarity == pol) ||
             occurs(a, pol, p.continuation());
    case Process::Kind::Par:
      return occurs(a, pol, p.left()) || occurs(a, pol, p.right());
  }
  return false;
}

bool occurs(const Name& a, Polarity pol, const CanonicalProcess& p) {
  for (const auto& c : p.components())
    if (occurs(a, pol, c)) return true;
  return false;
}

std::set<Name> top_names(const CanonicalProcess& p) {
  std::set<Name> out;
  for (const auto& c : p.components()) out.insert(c.action().name);
  return out;
}

}  // namespace

bool pred_in(const Name& a, const CanonicalProcess& p) { return top_has(a, Polarity::In, p); }
bool pred_out(const Name& a, const CanonicalProcess& p) { return top_has(a, Polarity::Out, p); }
bool pred_sync(const Name& a, const CanonicalProcess& p) { return pred_in(a, p) && pred_out(a, p); }
bool pred_wait(const Name& a, const CanonicalProcess& p) { return pred_in(a, p) != pred_out(a, p); }

bool pred_in(const Name& a, const Process& p) { return pred_in(a, canonical(p)); }
bool pred_out(const Name& a, const Process& p) { return pred_out(a, canonical(p)); }
bool pred_sync(const Name& a, const Process& p) { return pred_sync(a, canonical(p)); }
bool pred_wait(const Name& a, const Process& p) { return pred_wait(a, canonical(p)); }

bool pred_cin(const Name& a, const Process& p) { return occurs(a, Polarity::In, p); }
bool pred_cout(const Name& a, const Process& p) { return occurs(a, Polarity::Out, p); }

bool is_complete(const Process& p) {
  for (const auto& a : names(p))
    if (pred_cin(a, p) != pred_cout(a, p)) return false;
  return true;
}

bool is_top_complete(const CanonicalProcess& p) {
  for (const auto& c : p.components()) {
    const Action& act = c.action();
    if (!occurs(act.name, co(act.polarity), p)) return false;
  }
  return true;
}

bool is_top_complete(const Process& p) { return is_top_complete(canonical(p)); }

bool is_self_deadlocked(const CanonicalProcess& p) {
  return is_deadlocked(p) && is_top_complete(p);
}

bool is_self_deadlocked(const Process& p) { return is_self_deadlocked(canonical(p)); }

bool is_lock_free(const ReductionGraph& g) {
  // Names that synchronise in some state reachable from each node. Every
  // step removes two prefixes, so the recursion depth is bounded.
  std::vector<std::optional<std::set<Name>>> memo(g.size());
  std::function<const std::set<Name>&(std::size_t)> sync_reach =
      [&](std::size_t n) -> const std::set<Name>& {
    if (memo[n]) return *memo[n];
    std::set<Name> acc;
    const auto& node = g.nodes()[n];
    for (const auto& a : top_names(node))
      if (pred_sync(a, node)) acc.insert(a);
    for (const auto& e : g.edges(n)) {
      const auto& sub = sync_reach(e.target);
      acc.insert(sub.begin(), sub.end());
    }
    memo[n] = std::move(acc);
    return *memo[n];
  };

  for (std::size_t n = 0; n < g.size(); ++n) {
    const auto& node = g.nodes()[n];
    for (const auto& a : top_names(node)) {
      if (pred_wait(a, node) && !sync_reach(n).count(a)) return false;
    }
  }
  return true;
}

bool is_lock_free(const Process& p, const OracleBudget& budget) {
  return is_lock_free(reachable(p, budget.max_nodes));
}

namespace {

struct Candidate {
  std::size_t node;
  std::vector<Process> parts;
  std::string key;
};

// Smallest self-deadlocked group among the components of `state`.
std::optional<Candidate> smallest_group(const CanonicalProcess& state, std::size_t node,
                                        const OracleBudget& budget) {
  const std::size_t k = state.size();
  if (k == 0) return std::nullopt;
  if (k > budget.max_components) throw BudgetExceeded("component count", budget.max_components);

  const auto& comps = state.components();
  for (std::size_t size = 1; size <= k; ++size) {
    std::optional<Candidate> best;
    // Index combinations of `size` elements in lexicographic order.
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<Process> parts;
      parts.reserve(size);
      for (auto i : idx) parts.push_back(comps[i]);
      CanonicalProcess q = compose(parts);
      if (is_self_deadlocked(q) && (!best || q.key() < best->key))
        best = Candidate{node, std::move(parts), q.key()};

      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == k - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

LockSearch find_self_lock(const ReductionGraph& g, const OracleBudget& budget) {
  std::optional<Candidate> best;
  for (std::size_t n = 0; n < g.size(); ++n) {
    // Nodes are in breadth-first order: once a level holding a witness is
    // finished, deeper nodes cannot improve on it.
    if (best && g.distance(n) > g.distance(best->node)) break;
    auto cand = smallest_group(g.nodes()[n], n, budget);
    if (!cand) continue;
    if (!best || cand->parts.size() < best->parts.size() ||
        (cand->parts.size() == best->parts.size() && cand->key < best->key))
      best = std::move(cand);
  }
  LockSearch result;
  if (best) {
    result.found = true;
    result.witness = LockWitness{g.trace_to(best->node), g.nodes()[best->node],
                                 compose(best->parts).components()};
  }
  return result;
}

LockSearch find_self_lock(const Process& p, const OracleBudget& budget) {
  return find_self_lock(reachable(p, budget.max_nodes), budget);
}

PslResult is_psl(const Process& p, const OracleBudget& budget) {
  auto search = find_self_lock(p, budget);
  PslResult r;
  r.self_locking_reachable = search.found;
  r.psl = search.found && is_complete(p);
  r.witness = std::move(search.witness);
  return r;
}

Classification classify(const Process& p, const OracleBudget& budget) {
  const CanonicalProcess c = canonical(p);
  const ReductionGraph g = reachable(c, budget.max_nodes);
  Classification out;
  out.linear = check_linear(p).linear();
  out.complete = is_complete(p);
  out.lock_free = is_lock_free(g);
  out.deadlocked = is_deadlocked(c);
  out.top_complete = is_top_complete(c);
  out.self_deadlocked = out.deadlocked && out.top_complete;
  out.self_locking_reachable = find_self_lock(g, budget).found;
  out.potentially_self_locking = out.complete && out.self_locking_reachable;
  return out;
}

bool psl_characterization_holds(const Process& p, const OracleBudget& budget) {
  const Classification c = classify(p, budget);
  return (c.complete && !c.lock_free) == c.potentially_self_locking;
}

}  // namespace untangle
