#include "untangle/typing.hpp"

namespace untangle {

namespace {
void count_into(const Process& p, UsageCount& usage) {
  switch (p.kind()) {
    case Process::Kind::Inert:
      return;
    case Process::Kind::Prefix: {
      Usage& u = usage[p.action().name];
      ++(is_input(p.action()) ? u.inputs : u.outputs);
      count_into(p.continuation(), usage);
      return;
    }
    case Process::Kind::Par:
      count_into(p.left(), usage);
      count_into(p.right(), usage);
      return;
  }
}
}  // namespace

std::string LinearityViolation::message() const {
  return "name '" + name.str() + "' used " + std::to_string(count) + " times as " +
         (polarity == Polarity::In ? "input" : "output") + " (at most once allowed)";
}

UsageCount count_usage(const Process& p) {
  UsageCount usage;
  count_into(p, usage);
  return usage;
}

LinearityResult check_linear(const Process& p) {
  LinearityResult result{count_usage(p), std::nullopt};
  for (const auto& [name, u] : result.usage) {
    if (u.inputs > 1) {
      result.violation = LinearityViolation{name, Polarity::In, u.inputs};
      break;
    }
    if (u.outputs > 1) {
      result.violation = LinearityViolation{name, Polarity::Out, u.outputs};
      break;
    }
  }
  return result;
}

UsageCount require_linear(const Process& p) {
  auto result = check_linear(p);
  if (result.violation) throw NotLinear(*result.violation);
  return std::move(result.usage);
}

}  // namespace untangle
