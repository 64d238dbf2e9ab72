// Compositional detection of potential self-deadlock.
//
// Each subterm is summarised by a layered permission environment: layer k
// collects the capabilities found at prefix depth k. Prefixing pushes a new
// top layer, parallel composition merges layer by layer. A detection fires
// when a top layer holds no matched (io) capability and every complementary
// capability is already buried in the layers below it.

#ifndef UNTANGLE_ANALYSIS_HPP
#define UNTANGLE_ANALYSIS_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "untangle/core.hpp"

namespace untangle {

enum class Permission { I, O, IO };

// i + o = io; every other combination is undefined.
std::optional<Permission> merge(Permission a, Permission b) noexcept;
Permission complement(Permission p) noexcept;
// Reflexive, plus i <= io and o <= io.
bool below(Permission a, Permission b) noexcept;
const char* to_string(Permission p) noexcept;  // "i" | "o" | "io"

class MergeConflict : public std::runtime_error {
 public:
  explicit MergeConflict(Name name)
      : std::runtime_error("conflicting permissions for '" + name.str() + "'"),
        name_(std::move(name)) {}
  const Name& name() const noexcept { return name_; }

 private:
  Name name_;
};

// Partial map from names to permissions.
class Env {
 public:
  using Map = std::map<Name, Permission>;

  Env() = default;
  explicit Env(Map entries) : entries_(std::move(entries)) {}
  Env(std::initializer_list<std::pair<const Name, Permission>> entries) : entries_(entries) {}

  static Env single(const Name& n, Permission p) { return Env(Map{{n, p}}); }

  const Map& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::optional<Permission> lookup(const Name& n) const;

  // "(a:i, b:o)"; "()" when empty.
  std::string str() const;

  friend bool operator==(const Env&, const Env&) = default;

 private:
  Map entries_;
};

// Throws MergeConflict.
Env env_merge(const Env& a, const Env& b);
Env env_complement(const Env& g);

enum class DlMode {
  Relaxed,  // non-empty and no io
  Strict,   // codomain is exactly {i, o}
};

bool env_is_deadlock(const Env& g, DlMode mode = DlMode::Relaxed);
// Non-empty and every permission io.
bool env_is_complete(const Env& g);
bool env_subset(const Env& a, const Env& b);

// Top layer first; the empty list is ε.
using LayeredEnv = std::vector<Env>;

LayeredEnv lenv_merge(const LayeredEnv& a, const LayeredEnv& b);
Env lenv_flatten(const LayeredEnv& h);
// "(a:i);(b:o);ε"
std::string to_string(const LayeredEnv& h);

class Verdict {
 public:
  static Verdict layers(LayeredEnv h) { return Verdict(std::move(h), {}, false); }
  static Verdict detected(std::vector<Env> reports);

  bool is_detected() const noexcept { return detected_; }
  // Valid only for the matching alternative.
  const LayeredEnv& layers() const;
  const std::vector<Env>& reports() const;

  std::string str() const;

  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  Verdict(LayeredEnv h, std::vector<Env> r, bool d)
      : layers_(std::move(h)), reports_(std::move(r)), detected_(d) {}

  LayeredEnv layers_;
  std::vector<Env> reports_;
  bool detected_;
};

// g ▶ v
Verdict verdict_prefix(const Env& g, const Verdict& v, DlMode mode = DlMode::Relaxed);
// v1 ⊕ v2
Verdict verdict_merge(const Verdict& a, const Verdict& b, DlMode mode = DlMode::Relaxed);

// Expects a linear process; a merge conflict on ill-typed input surfaces as
// MergeConflict.
Verdict analyze(const Process& p, DlMode mode = DlMode::Relaxed);

// Applies the rules along the term exactly as written: each `|` node is one
// binary merge, with no reordering or flattening.
Verdict analyze_syntactic(const Process& p, DlMode mode = DlMode::Relaxed);

// The layering alone, with every detection check switched off: prefixing
// pushes a layer and composition merges layer-wise.
LayeredEnv layering(const Process& p);

}  // namespace untangle

#endif  // UNTANGLE_ANALYSIS_HPP
