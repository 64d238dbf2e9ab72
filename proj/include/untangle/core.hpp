// Process terms of finite linear CCS: names, actions, the term tree,
// canonical forms modulo structural congruence, and the text syntax.
//
//   proc ::= "0" | act "." proc | proc "|" proc | "(" proc ")"
//   act  ::= ident | "~" ident
//
// `|` is right-associative and binds looser than prefixing. `#` starts a
// comment that runs to the end of the line.

#ifndef UNTANGLE_CORE_HPP
#define UNTANGLE_CORE_HPP

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace untangle {

class Name {
 public:
  // Throws std::invalid_argument unless id matches [A-Za-z][A-Za-z0-9_]*.
  explicit Name(std::string id);

  const std::string& str() const noexcept { return id_; }

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;

  static bool is_valid(std::string_view id) noexcept;

 private:
  std::string id_;
};

enum class Polarity { In, Out };

constexpr Polarity co(Polarity p) noexcept {
  return p == Polarity::In ? Polarity::Out : Polarity::In;
}

struct Action {
  Name name;
  Polarity polarity;

  friend bool operator==(const Action&, const Action&) = default;
};

constexpr bool is_input(const Action& a) noexcept { return a.polarity == Polarity::In; }
inline Action co(const Action& a) { return Action{a.name, co(a.polarity)}; }

// "a" or "~a".
std::string to_string(const Action& a);

Action in(std::string_view name);
Action out(std::string_view name);

// Immutable process tree. Copies share structure.
class Process {
 public:
  enum class Kind { Inert, Prefix, Par };

  Process();  // inert

  static Process inert() { return Process(); }
  static Process prefix(Action action, Process continuation);
  static Process par(Process left, Process right);
  // Right-nested composition of `parts`; inert when empty.
  static Process par_all(const std::vector<Process>& parts);

  Kind kind() const noexcept;
  bool is_inert() const noexcept { return kind() == Kind::Inert; }
  bool is_prefix() const noexcept { return kind() == Kind::Prefix; }
  bool is_par() const noexcept { return kind() == Kind::Par; }

  // Valid only for the matching kind; throw std::logic_error otherwise.
  const Action& action() const;
  const Process& continuation() const;
  const Process& left() const;
  const Process& right() const;

  // Structural (AST) equality, not congruence.
  friend bool operator==(const Process& a, const Process& b);

 private:
  struct Node;
  explicit Process(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Number of action prefixes in the tree.
std::size_t prefix_count(const Process& p);

std::string print(const Process& p);

// Multiset of prefix components, sorted by printed text. Continuations of
// the components are themselves in canonical shape. Empty means inert.
class CanonicalProcess {
 public:
  CanonicalProcess() = default;

  const std::vector<Process>& components() const noexcept { return components_; }
  const std::vector<std::string>& texts() const noexcept { return texts_; }
  std::size_t size() const noexcept { return components_.size(); }
  bool empty() const noexcept { return components_.empty(); }

  // Components joined by " | " ("0" when empty). Identifies the class.
  const std::string& key() const noexcept { return key_; }

  // The composition of the components as a right-nested term.
  Process to_process() const;

  friend bool operator==(const CanonicalProcess& a, const CanonicalProcess& b) {
    return a.key_ == b.key_;
  }

 private:
  friend CanonicalProcess canonical(const Process& p);
  friend CanonicalProcess compose(std::vector<Process> components);

  std::vector<Process> components_;
  std::vector<std::string> texts_;
  std::string key_ = "0";
};

CanonicalProcess canonical(const Process& p);

// Canonicalizes the parallel composition of `components`.
CanonicalProcess compose(std::vector<Process> components);

bool struct_eq(const Process& p, const Process& q);

std::set<Name> names(const Process& p);
std::set<Name> names(const CanonicalProcess& p);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

// Location of one action prefix in source text (1-based).
struct ActionSite {
  Action action;
  std::size_t line;
  std::size_t column;
};

struct ParsedProcess {
  Process term;
  std::vector<ActionSite> sites;  // in source order
  std::size_t first_line = 1;
};

Process parse(std::string_view text);

// `line_offset` shifts reported line numbers, for blocks cut out of a file.
ParsedProcess parse_with_sites(std::string_view text, std::size_t line_offset = 0);

// Splits a file into processes separated by blank lines. Lines holding only
// a comment do not separate processes.
std::vector<ParsedProcess> parse_file(std::string_view text);

}  // namespace untangle

#endif  // UNTANGLE_CORE_HPP
