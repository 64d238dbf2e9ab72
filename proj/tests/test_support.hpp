// Shared fixtures: the named example processes and random term builders.

#ifndef UNTANGLE_TEST_SUPPORT_HPP
#define UNTANGLE_TEST_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "untangle/analysis.hpp"
#include "untangle/core.hpp"
#include "untangle/corpus.hpp"

namespace untangle::testing {

inline const char* const kP1 = "a.b.0 | ~b.~c.0 | c.~a.0";
inline const char* const kP2 = "d.(a.b.0 | ~b.~c.0) | ~d.c.~a.0";
inline const char* const kP3 = "a.~a.0";
inline const char* const kP4 = "a.(b.~a.0 | ~b.0)";
inline const char* const kP5 = "a.~b.c.0 | ~c.b.~a.0";
inline const char* const kNestedLockFree = "(a.~b.0 | b.0) | ~a.0";

inline Process P(const std::string& text) { return parse(text); }

inline Env env(std::initializer_list<std::pair<const char*, Permission>> entries) {
  Env::Map m;
  for (const auto& [n, p] : entries) m.emplace(Name(n), p);
  return Env(std::move(m));
}

constexpr Permission I = Permission::I;
constexpr Permission O = Permission::O;
constexpr Permission IO = Permission::IO;

// Arbitrary (not necessarily linear) term over names a..(a+names-1).
inline Process random_term(std::mt19937_64& rng, int depth, int names = 3) {
  const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  const int choice = depth <= 0 ? 0 : pick(5);
  if (choice == 0) return Process::inert();
  if (choice <= 2) {
    Action a{pool_name(static_cast<std::size_t>(pick(names))), pick(2) ? Polarity::In : Polarity::Out};
    return Process::prefix(a, random_term(rng, depth - 1, names));
  }
  return Process::par(random_term(rng, depth - 1, names), random_term(rng, depth - 1, names));
}

// Re-associates and permutes the top-level components of `p`, sprinkling
// inert components; the result is structurally congruent to `p`.
inline Process reshuffle(const Process& p, std::mt19937_64& rng) {
  std::vector<Process> parts = canonical(p).components();
  std::shuffle(parts.begin(), parts.end(), rng);
  if (rng() % 2) parts.push_back(Process::inert());
  if (parts.empty()) return Process::inert();
  std::function<Process(std::size_t, std::size_t)> build = [&](std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + 1 + rng() % (hi - lo - 1);
    return Process::par(build(lo, mid), build(mid, hi));
  };
  return build(0, parts.size());
}

// Corpus slice used by the property suites: complete linear processes with
// shape parameters cycling through names <= 4, depth <= 5, width <= 4.
inline GenParams corpus_params(std::uint64_t i, bool complete = true) {
  GenParams g;
  g.seed = 0x5eed0000ULL + i;
  static constexpr std::size_t kNames[] = {4, 3, 4, 2};
  g.names = kNames[i % 4];
  g.max_depth = 1 + (i / 4) % 5;
  g.max_width = 1 + (i / 20) % 4;
  g.force_complete = complete;
  return g;
}

}  // namespace untangle::testing

#endif  // UNTANGLE_TEST_SUPPORT_HPP
