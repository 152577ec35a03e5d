#pragma once

// Report rendering: plain text and the json report schema
// {instance, window, checks: [{id, law, status, counterexample?}], timing_ms?}.
// Check order is fixed by the suites, so json output is byte-identical
// across runs; timing is only emitted on request.

#include <json.hpp>

#include "aqg/qgdata.hpp"

namespace aqg {

inline std::string report_text(const Report& rep) {
  std::string out;
  for (const auto& c : rep.checks) {
    out += (c.pass ? "pass " : "FAIL ") + c.id + "  (" + c.law + ")";
    if (!c.pass) out += "\n     counterexample: " + c.counterexample;
    out += "\n";
  }
  std::size_t f = rep.failures();
  out += std::to_string(rep.checks.size()) + " checks, " + std::to_string(f) +
         (f == 1 ? " failure\n" : " failures\n");
  return out;
}

inline nlohmann::json report_json(const Report& rep, const std::string& instance,
                                  int window, std::optional<long> timing_ms = std::nullopt) {
  nlohmann::json j;
  j["instance"] = instance;
  j["window"] = window;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    nlohmann::json e;
    e["id"] = c.id;
    e["law"] = c.law;
    e["status"] = c.pass ? "pass" : "fail";
    if (!c.pass) e["counterexample"] = c.counterexample;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

}  // namespace aqg
