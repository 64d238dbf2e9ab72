// untangle: detect and disentangle potentially self-locking CCS processes.
//
//   untangle check    FILE...   static detection          exit 0/1/2
//   untangle oracle   FILE...   exhaustive classification exit 0/1/2/3
//   untangle refactor FILE...   rewrite detected locks    exit 0/1/2
//   untangle gen                stream generated processes
//   untangle fmt      FILE...   print canonical forms
//
// FILE may be `-` for standard input. A file holds one process, or several
// separated by blank lines.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "untangle/analysis.hpp"
#include "untangle/core.hpp"
#include "untangle/corpus.hpp"
#include "untangle/oracle.hpp"
#include "untangle/refactor.hpp"
#include "untangle/report.hpp"
#include "untangle/typing.hpp"

namespace {

using namespace untangle;

constexpr int kOk = 0;
constexpr int kFound = 1;
constexpr int kError = 2;
constexpr int kBudget = 3;

// Combines per-process outcomes: errors dominate, then budget, then findings.
int worst(int a, int b) {
  auto rank = [](int c) { return c == kError ? 3 : c == kBudget ? 2 : c == kFound ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Source {
  std::string path;
  std::vector<ParsedProcess> processes;
};

// Prints the diagnostic itself; returns nullopt on read or parse failure.
std::optional<Source> load(const std::string& path, bool json) {
  try {
    return Source{path, parse_file(read_source(path))};
  } catch (const ParseError& e) {
    if (json) {
      Json j;
      j["file"] = path;
      j["error"] = Json{{"kind", "parse"}, {"line", e.line()}, {"column", e.column()}, {"message", e.detail()}};
      std::cout << j.dump() << "\n";
    } else {
      std::cerr << path << ":" << e.line() << ":" << e.column() << ": error: " << e.detail() << "\n";
    }
  } catch (const std::exception& e) {
    if (json) {
      Json j;
      j["file"] = path;
      j["error"] = Json{{"kind", "io"}, {"message", e.what()}};
      std::cout << j.dump() << "\n";
    } else {
      std::cerr << path << ": error: " << e.what() << "\n";
    }
  }
  return std::nullopt;
}

Json header(const Source& src, std::size_t index) {
  const ParsedProcess& pp = src.processes[index];
  Json j;
  j["file"] = src.path;
  j["index"] = index;
  j["line"] = pp.first_line;
  j["source"] = print(pp.term);
  return j;
}

std::string where(const Source& src, std::size_t index) {
  return src.path + ":" + std::to_string(src.processes[index].first_line);
}

long long micros_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Returns false (after reporting) if the process is not linear.
bool report_linearity(const Source& src, std::size_t index, bool json, Json& j) {
  auto lin = check_linear(src.processes[index].term);
  if (lin.linear()) {
    if (json) j["linear"] = true;
    return true;
  }
  if (json) {
    j["linear"] = false;
    j["violation"] = to_json(*lin.violation);
  } else {
    std::cerr << where(src, index) << ": error: not linear: " << lin.violation->message() << "\n";
  }
  return false;
}

// ── check ───────────────────────────────────────────────────────────────────

struct CheckOptions {
  std::vector<std::string> files;
  DlMode mode = DlMode::Relaxed;
  bool json = false;
};

void describe_report(const Source& src, std::size_t index, const Env& g) {
  const auto& sites = src.processes[index].sites;
  for (const auto& [name, perm] : g.entries()) {
    const Polarity pol = perm == Permission::O ? Polarity::Out : Polarity::In;
    for (const auto& site : sites) {
      if (site.action.name == name && site.action.polarity == pol) {
        std::cout << "  " << src.path << ":" << site.line << ":" << site.column << ": note: prefix '"
                  << to_string(site.action) << "' (" << name.str() << ":" << to_string(perm) << ")\n";
      }
    }
  }
}

int cmd_check(const CheckOptions& opt) {
  int code = kOk;
  for (const auto& path : opt.files) {
    auto src = load(path, opt.json);
    if (!src) {
      code = worst(code, kError);
      continue;
    }
    for (std::size_t i = 0; i < src->processes.size(); ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      Json j = header(*src, i);
      if (!report_linearity(*src, i, opt.json, j)) {
        code = worst(code, kError);
        if (opt.json) std::cout << j.dump() << "\n";
        continue;
      }
      const Verdict v = analyze(src->processes[i].term, opt.mode);
      code = worst(code, v.is_detected() ? kFound : kOk);
      if (opt.json) {
        j["dl_mode"] = opt.mode == DlMode::Strict ? "strict" : "relaxed";
        j["analysis"] = to_json(v);
        j["timing_us"] = micros_since(t0);
        std::cout << j.dump() << "\n";
        continue;
      }
      if (v.is_detected()) {
        for (const auto& g : v.reports()) {
          std::cout << where(*src, i) << ": warning: potential self-lock, offending environment "
                    << g.str() << "\n";
          describe_report(*src, i, g);
        }
      } else {
        std::cout << where(*src, i) << ": no potential self-lock detected\n";
      }
    }
  }
  return code;
}

// ── oracle ──────────────────────────────────────────────────────────────────

struct OracleOptions {
  std::vector<std::string> files;
  bool witness = false;
  bool json = false;
  std::size_t budget = OracleBudget{}.max_nodes;
};

int cmd_oracle(const OracleOptions& opt) {
  int code = kOk;
  OracleBudget budget;
  budget.max_nodes = opt.budget;
  for (const auto& path : opt.files) {
    auto src = load(path, opt.json);
    if (!src) {
      code = worst(code, kError);
      continue;
    }
    for (std::size_t i = 0; i < src->processes.size(); ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      const Process& p = src->processes[i].term;
      Json j = header(*src, i);
      try {
        const Classification c = classify(p, budget);
        code = worst(code, c.potentially_self_locking ? kFound : kOk);
        j["classification"] = to_json(c);
        std::optional<LockWitness> w;
        if (opt.witness && c.self_locking_reachable) w = is_psl(p, budget).witness;
        if (opt.json) {
          if (opt.witness) j["witness"] = w ? to_json(*w) : Json(nullptr);
          j["timing_us"] = micros_since(t0);
          std::cout << j.dump() << "\n";
          continue;
        }
        std::cout << where(*src, i) << ": " << print(p) << "\n";
        for (const auto& [k, v] : j["classification"].items())
          std::cout << "  " << k << " = " << (v.get<bool>() ? "true" : "false") << "\n";
        if (w) {
          std::cout << "  witness:\n";
          std::cout << "    " << w->trace.size() << " step(s) from " << canonical(p).key() << "\n";
          std::istringstream lines(render_trace(w->trace));
          for (std::string line; std::getline(lines, line);) std::cout << "    " << line << "\n";
          std::cout << "    self-deadlocked group: " << w->locked().key() << "\n";
        }
      } catch (const BudgetExceeded& e) {
        code = worst(code, kBudget);
        if (opt.json) {
          j["error"] = Json{{"kind", "budget"}, {"limit", e.limit()}, {"message", e.what()}};
          std::cout << j.dump() << "\n";
        } else {
          std::cerr << where(*src, i) << ": error: " << e.what() << "\n";
        }
      }
    }
  }
  return code;
}

// ── refactor ────────────────────────────────────────────────────────────────

struct RefactorCliOptions {
  std::vector<std::string> files;
  std::string strategy;
  DlMode mode = DlMode::Relaxed;
  bool all = false;
  bool verify = false;
  bool json = false;
  std::size_t budget = OracleBudget{}.max_nodes;
};

int cmd_refactor(const RefactorCliOptions& opt) {
  const Strategy strategy = opt.strategy == "d1" ? Strategy::PrefixToParallel : Strategy::PullOutput;
  RefactorOptions ro;
  ro.mode = opt.mode;
  ro.all = opt.all;
  ro.verify = opt.verify;
  ro.budget.max_nodes = opt.budget;

  int code = kOk;
  for (const auto& path : opt.files) {
    auto src = load(path, opt.json);
    if (!src) {
      code = worst(code, kError);
      continue;
    }
    for (std::size_t i = 0; i < src->processes.size(); ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      Json j = header(*src, i);
      j["strategy"] = to_string(strategy);
      if (!report_linearity(*src, i, opt.json, j)) {
        code = worst(code, kError);
        if (opt.json) std::cout << j.dump() << "\n";
        continue;
      }
      try {
        const RefactorResult r = refactor(src->processes[i].term, strategy, ro);
        j["output"] = print(r.output);
        j["verification"] = verification_json(r);
        j["timing_us"] = micros_since(t0);
        if (opt.json) {
          std::cout << j.dump() << "\n";
        } else {
          std::cout << print(r.output) << "\n";
          if (opt.verify) std::cout << j["verification"].dump(2) << "\n";
        }
      } catch (const NoLockDetected&) {
        code = worst(code, kFound);
        if (opt.json) {
          j["output"] = nullptr;
          j["error"] = Json{{"kind", "no-lock-detected"}};
          std::cout << j.dump() << "\n";
        } else {
          std::cerr << where(*src, i) << ": no potential self-lock detected; nothing to refactor\n";
        }
      } catch (const BudgetExceeded& e) {
        code = worst(code, kError);
        std::cerr << where(*src, i) << ": error: " << e.what() << "\n";
      }
    }
  }
  return code;
}

// ── gen / fmt ───────────────────────────────────────────────────────────────

struct GenCliOptions {
  GenParams params;
  std::size_t count = 1;
};

int cmd_gen(const GenCliOptions& opt) {
  for (std::size_t i = 0; i < opt.count; ++i) {
    GenParams p = opt.params;
    p.seed += i;
    std::cout << print(gen_linear(p)) << "\n";
  }
  return kOk;
}

struct FmtOptions {
  std::vector<std::string> files;
  bool in_place = false;
};

int cmd_fmt(const FmtOptions& opt) {
  int code = kOk;
  for (const auto& path : opt.files) {
    auto src = load(path, false);
    if (!src) {
      code = worst(code, kError);
      continue;
    }
    std::string out;
    for (std::size_t i = 0; i < src->processes.size(); ++i) {
      if (i > 0) out += "\n";
      out += canonical(src->processes[i].term).key() + "\n";
    }
    if (opt.in_place && path != "-") {
      std::ofstream(path, std::ios::binary | std::ios::trunc) << out;
    } else {
      std::cout << out;
    }
  }
  return code;
}

const std::map<std::string, DlMode> kDlModes{{"relaxed", DlMode::Relaxed}, {"strict", DlMode::Strict}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect and disentangle potentially self-locking CCS processes"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Static detection of potential self-locks");
  check_cmd->add_option("files", check.files, "Process files ('-' for stdin)")->required();
  check_cmd->add_option("--dl-mode", check.mode, "Deadlock test on environments")
      ->transform(CLI::CheckedTransformer(kDlModes, CLI::ignore_case));
  check_cmd->add_flag("--json", check.json, "One JSON object per process");

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive semantic classification");
  oracle_cmd->add_option("files", oracle.files, "Process files ('-' for stdin)")->required();
  oracle_cmd->add_flag("--witness", oracle.witness, "Print a minimal lock witness");
  oracle_cmd->add_option("--budget", oracle.budget, "Maximum number of reachable states")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_flag("--json", oracle.json, "One JSON object per process");

  RefactorCliOptions refac;
  auto* refactor_cmd = app.add_subcommand("refactor", "Disentangle detected locks");
  refactor_cmd->add_option("files", refac.files, "Process files ('-' for stdin)")->required();
  refactor_cmd->add_option("--strategy", refac.strategy, "d1 (prefix to parallel) or d2 (pull output)")
      ->required()
      ->check(CLI::IsMember({"d1", "d2"}));
  refactor_cmd->add_option("--dl-mode", refac.mode, "Deadlock test on environments")
      ->transform(CLI::CheckedTransformer(kDlModes, CLI::ignore_case));
  refactor_cmd->add_flag("--all", refac.all, "Keep rewriting until nothing is detected");
  refactor_cmd->add_flag("--verify", refac.verify, "Check lock-freedom of the output");
  refactor_cmd->add_option("--budget", refac.budget, "Maximum number of reachable states")
      ->check(CLI::PositiveNumber);
  refactor_cmd->add_flag("--json", refac.json, "One JSON object per process");

  GenCliOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate linear processes, one per line");
  gen_cmd->add_option("--seed", gen.params.seed, "Seed of the first process");
  gen_cmd->add_option("--names", gen.params.names, "Channel pool size")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--depth", gen.params.max_depth, "Maximum prefix depth")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--width", gen.params.max_width, "Maximum parallel width")->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--complete", gen.params.force_complete, "Use both polarities of every name");
  gen_cmd->add_option("--count", gen.count, "Number of processes (seeds seed..seed+count-1)");

  FmtOptions fmt;
  auto* fmt_cmd = app.add_subcommand("fmt", "Print processes in canonical form");
  fmt_cmd->add_option("files", fmt.files, "Process files ('-' for stdin)")->required();
  fmt_cmd->add_flag("-i,--in-place", fmt.in_place, "Rewrite files instead of printing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*check_cmd) return cmd_check(check);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*refactor_cmd) return cmd_refactor(refac);
    if (*gen_cmd) return cmd_gen(gen);
    if (*fmt_cmd) return cmd_fmt(fmt);
  } catch (const std::exception& e) {
    std::cerr << "untangle: internal error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
