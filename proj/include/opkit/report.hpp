#pragma once

// Machine-readable run report: checks with residual and tolerance, result
// data, provenance and warnings, serialized in a fixed field order.

#include <string>
#include <vector>

#include "opkit/json_io.hpp"

namespace opkit {

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Passes iff residual <= tolerance.
  void check(const std::string& name, double residual, double tolerance);
  /// Boolean check; the residual is 0 on success and 1 otherwise.
  void check_flag(const std::string& name, bool ok);

  io::Json& results() { return results_; }
  io::Json& provenance() { return provenance_; }
  void warn(std::string w) { warnings_.push_back(std::move(w)); }

  void record_input(const std::string& role, const std::string& name, const std::string& text);
  void record_tolerances(const ToleranceConfig& tol);

  const std::vector<Check>& checks() const { return checks_; }
  bool all_passed() const;
  io::Json to_json() const;

 private:
  std::string command_;
  std::vector<Check> checks_;
  io::Json results_ = io::Json::object();
  io::Json provenance_ = io::Json::object();
  std::vector<std::string> warnings_;
};

}  // namespace opkit
