#include "untangle/semantics.hpp"

#include <algorithm>
#include <deque>

namespace untangle {

std::vector<Step> steps(const CanonicalProcess& p) {
  const auto& comps = p.components();
  std::vector<Step> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      const Action& x = comps[i].action();
      const Action& y = comps[j].action();
      if (x.name != y.name || x.polarity == y.polarity) continue;
      std::vector<Process> parts;
      parts.reserve(comps.size());
      parts.push_back(comps[i].continuation());
      parts.push_back(comps[j].continuation());
      for (std::size_t k = 0; k < comps.size(); ++k)
        if (k != i && k != j) parts.push_back(comps[k]);
      out.push_back(Step{x.name, compose(std::move(parts))});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Step& a, const Step& b) {
    if (a.channel != b.channel) return a.channel < b.channel;
    return a.target.key() < b.target.key();
  });
  return out;
}

std::size_t ReductionGraph::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

std::size_t ReductionGraph::depth() const noexcept {
  std::size_t d = 0;
  for (auto x : distance_) d = std::max(d, x);
  return d;
}

std::size_t ReductionGraph::index_of(const CanonicalProcess& p) const {
  auto it = index_.find(p.key());
  return it == index_.end() ? npos : it->second;
}

std::vector<Step> ReductionGraph::trace_to(std::size_t node) const {
  std::vector<Step> trace;
  while (node != 0) {
    trace.push_back(Step{parent_channel_.at(node), nodes_.at(node)});
    node = parent_.at(node);
  }
  std::reverse(trace.begin(), trace.end());
  return trace;
}

ReductionGraph reachable(const CanonicalProcess& p, std::size_t max_nodes) {
  ReductionGraph g;
  auto add = [&](const CanonicalProcess& node, std::size_t dist, std::size_t parent,
                 const Name* channel) {
    if (g.nodes_.size() >= max_nodes) throw BudgetExceeded("reachable state count", max_nodes);
    std::size_t id = g.nodes_.size();
    g.index_.emplace(node.key(), id);
    g.nodes_.push_back(node);
    g.edges_.emplace_back();
    g.distance_.push_back(dist);
    g.parent_.push_back(parent);
    g.parent_channel_.push_back(channel ? *channel : Name("tau"));
    return id;
  };

  add(p, 0, 0, nullptr);
  // Nodes are appended in discovery order, so the node vector is the queue.
  for (std::size_t cur = 0; cur < g.nodes_.size(); ++cur) {
    std::vector<Step> next = steps(g.nodes_[cur]);
    for (auto& s : next) {
      std::size_t target = g.index_of(s.target);
      if (target == ReductionGraph::npos)
        target = add(s.target, g.distance_[cur] + 1, cur, &s.channel);
      g.edges_[cur].push_back(Edge{s.channel, target});
    }
  }
  return g;
}

ReductionGraph reachable(const Process& p, std::size_t max_nodes) {
  return reachable(canonical(p), max_nodes);
}

bool is_deadlocked(const CanonicalProcess& p) { return !p.empty() && steps(p).empty(); }

bool is_deadlocked(const Process& p) { return is_deadlocked(canonical(p)); }

std::string render_trace(const std::vector<Step>& trace) {
  std::string out;
  for (const auto& s : trace) {
    out += "--" + s.channel.str() + "--> " + s.target.key() + "\n";
  }
  return out;
}

}  // namespace untangle
