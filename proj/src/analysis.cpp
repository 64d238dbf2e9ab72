#include "untangle/analysis.hpp"

#include <algorithm>

namespace untangle {

std::optional<Permission> merge(Permission a, Permission b) noexcept {
  if ((a == Permission::I && b == Permission::O) || (a == Permission::O && b == Permission::I))
    return Permission::IO;
  return std::nullopt;
}

Permission complement(Permission p) noexcept {
  switch (p) {
    case Permission::I: return Permission::O;
    case Permission::O: return Permission::I;
    case Permission::IO: return Permission::IO;
  }
  return p;
}

bool below(Permission a, Permission b) noexcept { return a == b || b == Permission::IO; }

const char* to_string(Permission p) noexcept {
  switch (p) {
    case Permission::I: return "i";
    case Permission::O: return "o";
    case Permission::IO: return "io";
  }
  return "?";
}

// ── Env ─────────────────────────────────────────────────────────────────────

std::optional<Permission> Env::lookup(const Name& n) const {
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string Env::str() const {
  std::string out = "(";
  bool first = true;
  for (const auto& [n, p] : entries_) {
    if (!first) out += ", ";
    first = false;
    out += n.str() + ":" + to_string(p);
  }
  return out + ")";
}

Env env_merge(const Env& a, const Env& b) {
  Env::Map out = a.entries();
  for (const auto& [n, p] : b.entries()) {
    auto [it, fresh] = out.emplace(n, p);
    if (fresh) continue;
    auto m = merge(it->second, p);
    if (!m) throw MergeConflict(n);
    it->second = *m;
  }
  return Env(std::move(out));
}

Env env_complement(const Env& g) {
  Env::Map out;
  for (const auto& [n, p] : g.entries()) out.emplace(n, complement(p));
  return Env(std::move(out));
}

bool env_is_deadlock(const Env& g, DlMode mode) {
  bool has_i = false, has_o = false, has_io = false;
  for (const auto& [n, p] : g.entries()) {
    has_i |= p == Permission::I;
    has_o |= p == Permission::O;
    has_io |= p == Permission::IO;
  }
  if (mode == DlMode::Strict) return has_i && has_o && !has_io;
  return !g.empty() && !has_io;
}

bool env_is_complete(const Env& g) {
  return !g.empty() && std::all_of(g.entries().begin(), g.entries().end(),
                                   [](const auto& e) { return e.second == Permission::IO; });
}

bool env_subset(const Env& a, const Env& b) {
  for (const auto& [n, p] : a.entries()) {
    auto q = b.lookup(n);
    if (!q || !below(p, *q)) return false;
  }
  return true;
}

// ── Layered environments ────────────────────────────────────────────────────

LayeredEnv lenv_merge(const LayeredEnv& a, const LayeredEnv& b) {
  LayeredEnv out;
  const std::size_t n = std::max(a.size(), b.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.size()) out.push_back(b[i]);
    else if (i >= b.size()) out.push_back(a[i]);
    else out.push_back(env_merge(a[i], b[i]));
  }
  return out;
}

Env lenv_flatten(const LayeredEnv& h) {
  Env acc;
  for (const auto& g : h) acc = env_merge(acc, g);
  return acc;
}

std::string to_string(const LayeredEnv& h) {
  std::string out;
  for (const auto& g : h) out += g.str() + ";";
  return out + "ε";
}

// ── Verdicts ────────────────────────────────────────────────────────────────

Verdict Verdict::detected(std::vector<Env> reports) {
  if (reports.empty()) throw std::invalid_argument("a detection needs at least one report");
  return Verdict({}, std::move(reports), true);
}

const LayeredEnv& Verdict::layers() const {
  if (detected_) throw std::logic_error("layers() on a detection verdict");
  return layers_;
}

const std::vector<Env>& Verdict::reports() const {
  if (!detected_) throw std::logic_error("reports() on a layered verdict");
  return reports_;
}

std::string Verdict::str() const {
  if (!detected_) return to_string(layers_);
  std::string out = "DL";
  for (const auto& g : reports_) out += " " + g.str();
  return out;
}

Verdict verdict_prefix(const Env& g, const Verdict& v, DlMode mode) {
  if (v.is_detected()) return v;
  const LayeredEnv& h = v.layers();
  if (env_is_deadlock(g, mode) && env_subset(env_complement(g), lenv_flatten(h)))
    return Verdict::detected({g});
  LayeredEnv out;
  out.reserve(h.size() + 1);
  out.push_back(g);
  out.insert(out.end(), h.begin(), h.end());
  return Verdict::layers(std::move(out));
}

Verdict verdict_merge(const Verdict& a, const Verdict& b, DlMode mode) {
  if (a.is_detected() || b.is_detected()) {
    std::vector<Env> reports;
    if (a.is_detected()) reports = a.reports();
    if (b.is_detected()) reports.insert(reports.end(), b.reports().begin(), b.reports().end());
    return Verdict::detected(std::move(reports));
  }
  const LayeredEnv& h1 = a.layers();
  const LayeredEnv& h2 = b.layers();
  if (!h1.empty() && !h2.empty()) {
    const Env top = env_merge(h1.front(), h2.front());
    const LayeredEnv rest1(h1.begin() + 1, h1.end());
    const LayeredEnv rest2(h2.begin() + 1, h2.end());
    if (env_is_deadlock(top, mode) &&
        env_subset(env_complement(top), lenv_flatten(lenv_merge(rest1, rest2))))
      return Verdict::detected({top});
    // The whole top layer synchronises away, so the layers below it are
    // examined as if they were on top.
    if (env_is_complete(top))
      return verdict_merge(Verdict::layers(rest1), Verdict::layers(rest2), mode);
  }
  return Verdict::layers(lenv_merge(h1, h2));
}

namespace {

Verdict analyze_canonical(const CanonicalProcess& c, DlMode mode);

Verdict analyze_component(const Process& comp, DlMode mode) {
  const Action& act = comp.action();
  Verdict inner = analyze_canonical(canonical(comp.continuation()), mode);
  return verdict_prefix(Env::single(act.name, is_input(act) ? Permission::I : Permission::O),
                        inner, mode);
}

Verdict analyze_canonical(const CanonicalProcess& c, DlMode mode) {
  if (c.empty()) return Verdict::layers({});
  Verdict acc = analyze_component(c.components().front(), mode);
  for (std::size_t i = 1; i < c.size(); ++i)
    acc = verdict_merge(acc, analyze_component(c.components()[i], mode), mode);
  return acc;
}

LayeredEnv layering_canonical(const CanonicalProcess& c) {
  LayeredEnv acc;
  for (const auto& comp : c.components()) {
    const Action& act = comp.action();
    LayeredEnv h{Env::single(act.name, is_input(act) ? Permission::I : Permission::O)};
    LayeredEnv below = layering_canonical(canonical(comp.continuation()));
    h.insert(h.end(), below.begin(), below.end());
    acc = lenv_merge(acc, h);
  }
  return acc;
}

}  // namespace

Verdict analyze_syntactic(const Process& p, DlMode mode) {
  switch (p.kind()) {
    case Process::Kind::Inert:
      return Verdict::layers({});
    case Process::Kind::Prefix: {
      const Action& act = p.action();
      return verdict_prefix(Env::single(act.name, is_input(act) ? Permission::I : Permission::O),
                            analyze_syntactic(p.continuation(), mode), mode);
    }
    case Process::Kind::Par:
      return verdict_merge(analyze_syntactic(p.left(), mode), analyze_syntactic(p.right(), mode), mode);
  }
  return Verdict::layers({});
}

Verdict analyze(const Process& p, DlMode mode) { return analyze_canonical(canonical(p), mode); }

LayeredEnv layering(const Process& p) { return layering_canonical(canonical(p)); }

}  // namespace untangle
