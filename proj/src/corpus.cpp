#include "untangle/corpus.hpp"

#include <algorithm>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace untangle {

namespace {

constexpr std::uint64_t kCapLimit = std::uint64_t{1} << 40;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return std::min(kCapLimit, a + b); }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kCapLimit / a) return kCapLimit;
  return std::min(kCapLimit, a * b);
}

class Generator {
 public:
  explicit Generator(const GenParams& params)
      : rng_(params.seed), width_(params.max_width) {
    // group_cap_[d]: most tokens one prefix chain of depth <= d can carry,
    // sub_cap_[d]: most tokens a parallel level of depth <= d can carry.
    group_cap_.assign(params.max_depth + 1, 0);
    sub_cap_.assign(params.max_depth + 1, 0);
    for (std::size_t d = 1; d <= params.max_depth; ++d) {
      std::uint64_t best = 0;
      for (std::size_t len = 1; len <= d; ++len) best = std::max(best, sat_add(len, sub_cap_[d - len]));
      group_cap_[d] = best;
      sub_cap_[d] = sat_mul(width_, best);
    }
  }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return x % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  std::uint64_t sub_cap(std::size_t d) const { return sub_cap_[d]; }

  Process level(std::span<const Action> tokens, std::size_t depth) {
    const std::size_t m = tokens.size();
    if (m == 0) return Process::inert();
    const std::uint64_t cap = group_cap_[depth];
    const std::size_t wmin = static_cast<std::size_t>((m + cap - 1) / cap);
    const std::size_t wmax = std::min(width_, m);
    const std::size_t w = wmin + below(wmax - wmin + 1);

    std::vector<std::size_t> sizes(w, 1);
    for (std::size_t left = m - w; left > 0; --left) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < w; ++i)
        if (sizes[i] < cap) open.push_back(i);
      ++sizes[open[below(open.size())]];
    }

    std::vector<Process> groups;
    std::size_t at = 0;
    for (auto size : sizes) {
      groups.push_back(chain(tokens.subspan(at, size), depth));
      at += size;
    }
    return bracket(groups, 0, groups.size());
  }

 private:
  Process chain(std::span<const Action> tokens, std::size_t depth) {
    const std::size_t m = tokens.size();
    std::vector<std::size_t> lengths;
    for (std::size_t len = 1; len <= std::min(m, depth); ++len)
      if (m - len <= sub_cap_[depth - len]) lengths.push_back(len);
    const std::size_t len = lengths[below(lengths.size())];

    Process p = level(tokens.subspan(len), depth - len);
    for (std::size_t i = len; i > 0; --i) p = Process::prefix(tokens[i - 1], std::move(p));
    return p;
  }

  // Random binary association of groups[lo, hi).
  Process bracket(const std::vector<Process>& groups, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return groups[lo];
    const std::size_t mid = lo + 1 + below(hi - lo - 1);
    return Process::par(bracket(groups, lo, mid), bracket(groups, mid, hi));
  }

  std::mt19937_64 rng_;
  std::size_t width_;
  std::vector<std::uint64_t> group_cap_;
  std::vector<std::uint64_t> sub_cap_;
};

}  // namespace

Name pool_name(std::size_t i) {
  if (i < 26) return Name(std::string(1, static_cast<char>('a' + i)));
  return Name("n" + std::to_string(i));
}

Process gen_linear(const GenParams& params) {
  if (params.names == 0) throw std::invalid_argument("gen_linear: names must be at least 1");
  if (params.max_depth == 0) throw std::invalid_argument("gen_linear: max_depth must be at least 1");
  if (params.max_width == 0) throw std::invalid_argument("gen_linear: max_width must be at least 1");

  Generator gen(params);

  // Tokens grouped per name so that whole names can be dropped if the shape
  // limits cannot hold them all.
  std::vector<std::vector<Action>> per_name;
  for (std::size_t i = 0; i < params.names; ++i) {
    const Name n = pool_name(i);
    std::vector<Action> tokens;
    if (params.force_complete) {
      if (gen.below(4) != 0) tokens = {Action{n, Polarity::In}, Action{n, Polarity::Out}};
    } else {
      switch (gen.below(4)) {
        case 0: break;
        case 1: tokens = {Action{n, Polarity::In}}; break;
        case 2: tokens = {Action{n, Polarity::Out}}; break;
        default: tokens = {Action{n, Polarity::In}, Action{n, Polarity::Out}}; break;
      }
    }
    if (!tokens.empty()) per_name.push_back(std::move(tokens));
  }
  if (params.force_complete && per_name.empty()) {
    const Name n = pool_name(gen.below(params.names));
    per_name.push_back({Action{n, Polarity::In}, Action{n, Polarity::Out}});
  }

  auto total = [&] {
    std::size_t t = 0;
    for (const auto& v : per_name) t += v.size();
    return t;
  };
  while (total() > gen.sub_cap(params.max_depth)) per_name.pop_back();

  std::vector<Action> tokens;
  for (auto& v : per_name) tokens.insert(tokens.end(), v.begin(), v.end());
  gen.shuffle(tokens);
  return gen.level(tokens, params.max_depth);
}

// ── Shrinking ───────────────────────────────────────────────────────────────

std::vector<Process> shrink_candidates(const Process& p) {
  std::vector<Process> out;
  switch (p.kind()) {
    case Process::Kind::Inert:
      break;
    case Process::Kind::Prefix:
      out.push_back(Process::inert());
      out.push_back(p.continuation());
      for (auto& c : shrink_candidates(p.continuation()))
        out.push_back(Process::prefix(p.action(), std::move(c)));
      break;
    case Process::Kind::Par:
      out.push_back(p.left());
      out.push_back(p.right());
      for (auto& c : shrink_candidates(p.left())) out.push_back(Process::par(std::move(c), p.right()));
      for (auto& c : shrink_candidates(p.right())) out.push_back(Process::par(p.left(), std::move(c)));
      break;
  }
  return out;
}

Process minimize(const Process& p, const std::function<bool(const Process&)>& failing) {
  Process current = p;
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (auto& cand : shrink_candidates(current)) {
      if (failing(cand)) {
        current = std::move(cand);
        shrunk = true;
        break;
      }
    }
  }
  return current;
}

}  // namespace untangle
