#include "untangle/core.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

namespace untangle {

// ── Name / Action ───────────────────────────────────────────────────────────

bool Name::is_valid(std::string_view id) noexcept {
  if (id.empty() || !std::isalpha(static_cast<unsigned char>(id.front()))) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Name::Name(std::string id) : id_(std::move(id)) {
  if (!is_valid(id_)) throw std::invalid_argument("invalid name '" + id_ + "'");
}

std::string to_string(const Action& a) {
  return is_input(a) ? a.name.str() : "~" + a.name.str();
}

Action in(std::string_view name) { return Action{Name(std::string(name)), Polarity::In}; }
Action out(std::string_view name) { return Action{Name(std::string(name)), Polarity::Out}; }

// ── Process ─────────────────────────────────────────────────────────────────

struct Process::Node {
  Kind kind;
  std::optional<Action> action;
  Process first;   // continuation, or left operand
  Process second;  // right operand
};

namespace {
const char* kind_name(Process::Kind k) {
  switch (k) {
    case Process::Kind::Inert: return "inert";
    case Process::Kind::Prefix: return "prefix";
    case Process::Kind::Par: return "parallel";
  }
  return "?";
}
}  // namespace

Process::Process() = default;

Process Process::prefix(Action action, Process continuation) {
  return Process(std::make_shared<const Node>(
      Node{Kind::Prefix, std::move(action), std::move(continuation), Process()}));
}

Process Process::par(Process left, Process right) {
  return Process(std::make_shared<const Node>(
      Node{Kind::Par, std::nullopt, std::move(left), std::move(right)}));
}

Process Process::par_all(const std::vector<Process>& parts) {
  if (parts.empty()) return Process();
  Process acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = par(*it, acc);
  return acc;
}

Process::Kind Process::kind() const noexcept { return node_ ? node_->kind : Kind::Inert; }

const Action& Process::action() const {
  if (kind() != Kind::Prefix)
    throw std::logic_error(std::string("action() on ") + kind_name(kind()) + " process");
  return *node_->action;
}

const Process& Process::continuation() const {
  if (kind() != Kind::Prefix)
    throw std::logic_error(std::string("continuation() on ") + kind_name(kind()) + " process");
  return node_->first;
}

const Process& Process::left() const {
  if (kind() != Kind::Par)
    throw std::logic_error(std::string("left() on ") + kind_name(kind()) + " process");
  return node_->first;
}

const Process& Process::right() const {
  if (kind() != Kind::Par)
    throw std::logic_error(std::string("right() on ") + kind_name(kind()) + " process");
  return node_->second;
}

bool operator==(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Process::Kind::Inert:
      return true;
    case Process::Kind::Prefix:
      return a.action() == b.action() && a.continuation() == b.continuation();
    case Process::Kind::Par:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

std::size_t prefix_count(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Inert: return 0;
    case Process::Kind::Prefix: return 1 + prefix_count(p.continuation());
    case Process::Kind::Par: return prefix_count(p.left()) + prefix_count(p.right());
  }
  return 0;
}

// ── Printer ─────────────────────────────────────────────────────────────────

namespace {

void print_into(const Process& p, std::string& out) {
  switch (p.kind()) {
    case Process::Kind::Inert:
      out += '0';
      return;
    case Process::Kind::Prefix:
      out += to_string(p.action());
      out += '.';
      if (p.continuation().is_par()) {
        out += '(';
        print_into(p.continuation(), out);
        out += ')';
      } else {
        print_into(p.continuation(), out);
      }
      return;
    case Process::Kind::Par:
      // `|` associates to the right. A composite right operand is still
      // bracketed when the left one is, so that (P | Q) | (R | S) reads as
      // written.
      if (p.left().is_par()) {
        out += '(';
        print_into(p.left(), out);
        out += ") | ";
        if (p.right().is_par()) {
          out += '(';
          print_into(p.right(), out);
          out += ')';
        } else {
          print_into(p.right(), out);
        }
      } else {
        print_into(p.left(), out);
        out += " | ";
        print_into(p.right(), out);
      }
      return;
  }
}

}  // namespace

std::string print(const Process& p) {
  std::string out;
  print_into(p, out);
  return out;
}

// ── Canonical form ──────────────────────────────────────────────────────────

namespace {

void flatten(const Process& p, std::vector<Process>& out) {
  switch (p.kind()) {
    case Process::Kind::Inert:
      return;
    case Process::Kind::Prefix:
      out.push_back(p);
      return;
    case Process::Kind::Par:
      flatten(p.left(), out);
      flatten(p.right(), out);
      return;
  }
}

}  // namespace

CanonicalProcess compose(std::vector<Process> parts) {
  std::vector<Process> prefixes;
  for (const auto& part : parts) flatten(part, prefixes);

  std::vector<std::pair<std::string, Process>> keyed;
  keyed.reserve(prefixes.size());
  for (const auto& pre : prefixes) {
    Process body = canonical(pre.continuation()).to_process();
    Process comp = Process::prefix(pre.action(), std::move(body));
    keyed.emplace_back(print(comp), std::move(comp));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  CanonicalProcess c;
  c.components_.reserve(keyed.size());
  c.texts_.reserve(keyed.size());
  c.key_.clear();
  for (auto& [text, comp] : keyed) {
    if (!c.key_.empty()) c.key_ += " | ";
    c.key_ += text;
    c.texts_.push_back(std::move(text));
    c.components_.push_back(std::move(comp));
  }
  if (c.key_.empty()) c.key_ = "0";
  return c;
}

CanonicalProcess canonical(const Process& p) { return compose({p}); }

Process CanonicalProcess::to_process() const { return Process::par_all(components_); }

bool struct_eq(const Process& p, const Process& q) { return canonical(p) == canonical(q); }

namespace {
void collect_names(const Process& p, std::set<Name>& out) {
  switch (p.kind()) {
    case Process::Kind::Inert:
      return;
    case Process::Kind::Prefix:
      out.insert(p.action().name);
      collect_names(p.continuation(), out);
      return;
    case Process::Kind::Par:
      collect_names(p.left(), out);
      collect_names(p.right(), out);
      return;
  }
}
}  // namespace

std::set<Name> names(const Process& p) {
  std::set<Name> out;
  collect_names(p, out);
  return out;
}

std::set<Name> names(const CanonicalProcess& p) {
  std::set<Name> out;
  for (const auto& c : p.components()) collect_names(c, out);
  return out;
}

// ── Parser ──────────────────────────────────────────────────────────────────

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t line_offset)
      : text_(text), line_(1 + line_offset) {}

  ParsedProcess run() {
    skip_space();
    ParsedProcess result;
    result.first_line = line_;
    result.term = parse_proc();
    skip_space();
    if (!at_end()) fail("unexpected '" + std::string(1, peek()) + "'");
    result.sites = std::move(sites_);
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  void expect(char c) {
    skip_space();
    if (at_end()) fail(std::string("expected '") + c + "' but reached end of input");
    if (peek() != c) fail(std::string("expected '") + c + "' but found '" + peek() + "'");
    advance();
  }

  // proc ::= unit ("|" proc)?
  Process parse_proc() {
    Process head = parse_unit();
    skip_space();
    if (!at_end() && peek() == '|') {
      advance();
      return Process::par(std::move(head), parse_proc());
    }
    return head;
  }

  // unit ::= "0" | act "." unit | "(" proc ")"
  Process parse_unit() {
    skip_space();
    if (at_end()) fail("expected a process but reached end of input");
    char c = peek();
    if (c == '0') {
      advance();
      return Process::inert();
    }
    if (c == '(') {
      advance();
      Process inner = parse_proc();
      expect(')');
      return inner;
    }
    if (c == '~' || std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t line = line_, column = column_;
      Polarity pol = Polarity::In;
      if (c == '~') {
        pol = Polarity::Out;
        advance();
        skip_space();
      }
      Action act{parse_name(), pol};
      sites_.push_back(ActionSite{act, line, column});
      expect('.');
      return Process::prefix(std::move(act), parse_unit());
    }
    fail("expected a process but found '" + std::string(1, c) + "'");
  }

  Name parse_name() {
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek())))
      fail("expected a name");
    std::string id;
    while (!at_end() &&
           (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      id += peek();
      advance();
    }
    return Name(std::move(id));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_ = 1;
  std::vector<ActionSite> sites_;
};

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

bool has_code(std::string_view block) {
  bool comment = false;
  for (char c : block) {
    if (c == '\n') comment = false;
    else if (c == '#') comment = true;
    else if (!comment && !std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

}  // namespace

Process parse(std::string_view text) { return Parser(text, 0).run().term; }

ParsedProcess parse_with_sites(std::string_view text, std::size_t line_offset) {
  return Parser(text, line_offset).run();
}

std::vector<ParsedProcess> parse_file(std::string_view text) {
  std::vector<ParsedProcess> out;
  std::size_t line_no = 0;
  std::size_t block_line = 0;
  std::string block;

  auto flush = [&] {
    if (has_code(block)) out.push_back(parse_with_sites(block, block_line));
    block.clear();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (is_blank(line)) {
      flush();
    } else {
      if (block.empty()) block_line = line_no;
      block.append(line);
      block += '\n';
    }
    ++line_no;
    pos = end + 1;
  }
  flush();
  return out;
}

}  // namespace untangle
