#include "untangle/report.hpp"

namespace untangle {

Json to_json(const Env& g) {
  Json out = Json::object();
  for (const auto& [n, p] : g.entries()) out[n.str()] = to_string(p);
  return out;
}

Json to_json(const LayeredEnv& h) {
  Json out = Json::array();
  for (const auto& g : h) out.push_back(to_json(g));
  return out;
}

Json to_json(const Verdict& v) {
  Json out;
  if (v.is_detected()) {
    out["verdict"] = "locked";
    Json reports = Json::array();
    for (const auto& g : v.reports()) reports.push_back(to_json(g));
    out["reports"] = std::move(reports);
  } else {
    out["verdict"] = "no-detection";
    out["layers"] = to_json(v.layers());
  }
  return out;
}

Json to_json(const Classification& c) {
  Json out;
  out["linear"] = c.linear;
  out["complete"] = c.complete;
  out["lock_free"] = c.lock_free;
  out["deadlocked"] = c.deadlocked;
  out["top_complete"] = c.top_complete;
  out["self_deadlocked"] = c.self_deadlocked;
  out["self_locking_reachable"] = c.self_locking_reachable;
  out["potentially_self_locking"] = c.potentially_self_locking;
  return out;
}

Json to_json(const LockWitness& w) {
  Json trace = Json::array();
  for (const auto& s : w.trace) trace.push_back(Json{{"channel", s.channel.str()}, {"target", s.target.key()}});
  Json locked = Json::array();
  for (const auto& c : w.locked_components) locked.push_back(print(c));
  Json out;
  out["trace"] = std::move(trace);
  out["state"] = w.state.key();
  out["locked_components"] = std::move(locked);
  return out;
}

Json to_json(const LinearityViolation& v) {
  Json out;
  out["name"] = v.name.str();
  out["polarity"] = v.polarity == Polarity::In ? "input" : "output";
  out["count"] = v.count;
  return out;
}

Json verification_json(const RefactorResult& r) {
  Json applied = Json::array();
  for (const auto& g : r.envs_applied) applied.push_back(to_json(g));
  Json residual = Json::array();
  for (const auto& g : r.residual_reports) residual.push_back(to_json(g));
  Json out;
  out["env_used"] = to_json(r.env_used);
  out["envs_applied"] = std::move(applied);
  out["still_linear"] = r.still_linear;
  out["output_lock_free"] = r.output_lock_free ? Json(*r.output_lock_free) : Json(nullptr);
  out["residual_reports"] = std::move(residual);
  return out;
}

Permission permission_from_string(const std::string& s) {
  if (s == "i") return Permission::I;
  if (s == "o") return Permission::O;
  if (s == "io") return Permission::IO;
  throw std::invalid_argument("unknown permission '" + s + "'");
}

Env env_from_json(const Json& j) {
  Env::Map m;
  for (const auto& [k, v] : j.items()) m.emplace(Name(k), permission_from_string(v.get<std::string>()));
  return Env(std::move(m));
}

}  // namespace untangle
