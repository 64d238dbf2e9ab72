// Seeded generation of linear processes, and a greedy shrinker for
// counterexamples found on them.

#ifndef UNTANGLE_CORPUS_HPP
#define UNTANGLE_CORPUS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "untangle/core.hpp"

namespace untangle {

struct GenParams {
  std::uint64_t seed = 0;
  std::size_t names = 3;      // channel pool a, b, c, ...
  std::size_t max_depth = 4;  // longest prefix chain from the root
  std::size_t max_width = 3;  // components per parallel level
  bool force_complete = false;
};

// Linear by construction: a multiset of action tokens (each name at most once
// per polarity; both polarities when complete) is shuffled and partitioned
// into parallel groups and prefix chains. The generator draws only raw
// 64-bit words from std::mt19937_64, so output is identical across platforms.
//
// Throws std::invalid_argument when names, max_depth or max_width is zero.
Process gen_linear(const GenParams& params);

// Name used for the i-th channel of the pool: a..z, then n26, n27, ...
Name pool_name(std::size_t i);

// All single-step reductions of a term: dropping a parallel branch, removing
// one prefix, or replacing a subterm by 0.
std::vector<Process> shrink_candidates(const Process& p);

// Repeatedly replaces `p` by its first shrink candidate still satisfying
// `failing` until none does.
Process minimize(const Process& p, const std::function<bool(const Process&)>& failing);

}  // namespace untangle

#endif  // UNTANGLE_CORPUS_HPP
