// JSON renderings shared by the command-line tool and its tests.

#ifndef UNTANGLE_REPORT_HPP
#define UNTANGLE_REPORT_HPP

#include <json.hpp>

#include "untangle/analysis.hpp"
#include "untangle/oracle.hpp"
#include "untangle/refactor.hpp"
#include "untangle/typing.hpp"

namespace untangle {

using Json = nlohmann::ordered_json;

Json to_json(const Env& g);                  // {"a":"i","c":"o"}
Json to_json(const LayeredEnv& h);           // [{...}, ...]
Json to_json(const Verdict& v);              // {"verdict":"locked","reports":[...]}
Json to_json(const Classification& c);
Json to_json(const LockWitness& w);
Json to_json(const LinearityViolation& v);
Json verification_json(const RefactorResult& r);

Permission permission_from_string(const std::string& s);  // throws std::invalid_argument
Env env_from_json(const Json& j);

}  // namespace untangle

#endif  // UNTANGLE_REPORT_HPP
