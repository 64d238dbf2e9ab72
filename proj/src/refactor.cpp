#include "untangle/refactor.hpp"

#include "untangle/typing.hpp"

namespace untangle {

const char* to_string(Strategy s) noexcept {
  return s == Strategy::PrefixToParallel ? "d1" : "d2";
}

namespace {

bool holds(const Env& g, const Name& a, Permission p) {
  auto q = g.lookup(a);
  return q && *q == p;
}

Process zero_prefix(const Action& a) { return Process::prefix(a, Process::inert()); }

}  // namespace

Process disentangle_par(const Env& g, const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Inert:
      return p;
    case Process::Kind::Par:
      return Process::par(disentangle_par(g, p.left()), disentangle_par(g, p.right()));
    case Process::Kind::Prefix: {
      const Action& a = p.action();
      if (holds(g, a.name, is_input(a) ? Permission::I : Permission::O))
        return Process::par(zero_prefix(a), p.continuation());
      return Process::prefix(a, disentangle_par(g, p.continuation()));
    }
  }
  return p;
}

Process disentangle_pull(const Env& g, const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Inert:
      return p;
    case Process::Kind::Par:
      return Process::par(disentangle_pull(g, p.left()), disentangle_pull(g, p.right()));
    case Process::Kind::Prefix: {
      const Action& a = p.action();
      Process rest = disentangle_pull(g, p.continuation());
      if (is_input(a)) {
        if (holds(g, a.name, Permission::I))
          return Process::par(Process::prefix(a, std::move(rest)), zero_prefix(co(a)));
        return Process::prefix(a, std::move(rest));
      }
      if (holds(g, a.name, Permission::O)) return Process::par(zero_prefix(a), std::move(rest));
      if (holds(g, a.name, Permission::I)) return rest;
      return Process::prefix(a, std::move(rest));
    }
  }
  return p;
}

Process disentangle(Strategy s, const Env& g, const Process& p) {
  return s == Strategy::PrefixToParallel ? disentangle_par(g, p) : disentangle_pull(g, p);
}

RefactorResult refactor(const Process& p, Strategy s, const RefactorOptions& options) {
  require_linear(p);
  Verdict v = analyze(p, options.mode);
  if (!v.is_detected()) throw NoLockDetected();

  RefactorResult r;
  r.original = p;
  r.env_used = v.reports().front();
  r.output = p;

  // Each round rewrites with one fresh report; the bound is the number of
  // prefixes since every productive round detaches at least one of them.
  const std::size_t max_rounds = options.all ? prefix_count(p) + 1 : 1;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const Env g = v.reports().front();
    Process next = disentangle(s, g, r.output);
    r.envs_applied.push_back(g);
    const bool progressed = !(next == r.output);
    r.output = std::move(next);
    r.still_linear = check_linear(r.output).linear();
    if (!r.still_linear || !progressed) break;
    v = analyze(r.output, options.mode);
    if (!v.is_detected()) break;
  }

  if (r.still_linear) {
    Verdict residual = analyze(r.output, options.mode);
    if (residual.is_detected()) r.residual_reports = residual.reports();
  }
  if (options.verify) r.output_lock_free = is_lock_free(r.output, options.budget);
  return r;
}

}  // namespace untangle
