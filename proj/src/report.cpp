#include "opkit/report.hpp"

#include <algorithm>
#include <cmath>

namespace opkit {

void Report::check(const std::string& name, double residual, double tolerance) {
  checks_.push_back({name, std::isfinite(residual) && residual <= tolerance, residual, tolerance});
}

void Report::check_flag(const std::string& name, bool ok) {
  checks_.push_back({name, ok, ok ? 0.0 : 1.0, 0.0});
}

void Report::record_input(const std::string& role, const std::string& name,
                          const std::string& text) {
  io::Json in;
  in["source"] = name;
  in["fnv1a64"] = io::fnv1a_hex(text);
  in["bytes"] = text.size();
  provenance_["inputs"][role] = std::move(in);
}

void Report::record_tolerances(const ToleranceConfig& tol) {
  io::Json t;
  t["rank_tol"] = tol.rank_tol;
  t["psd_tol"] = tol.psd_tol;
  t["residual_tol"] = tol.residual_tol;
  t["tail_tol"] = tol.tail_tol;
  provenance_["tolerances"] = std::move(t);
}

bool Report::all_passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

io::Json Report::to_json() const {
  io::Json j;
  j["command"] = command_;
  j["verdict"] = all_passed() ? "PASS" : "FAIL";
  io::Json checks = io::Json::array();
  for (const auto& c : checks_) {
    io::Json e;
    e["name"] = c.name;
    e["verdict"] = c.passed ? "PASS" : "FAIL";
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["results"] = results_;
  j["provenance"] = provenance_;
  j["warnings"] = warnings_;
  return j;
}

}  // namespace opkit
