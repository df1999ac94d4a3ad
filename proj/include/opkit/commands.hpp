#pragma once

// One function per CLI subcommand. Inputs arrive as raw JSON text so that
// the report can hash them; every function returns a finished Report and
// lets library errors propagate.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opkit/report.hpp"

namespace opkit {

struct NamedText {
  std::string name;
  std::string text;
};

struct ClassifyRequest {
  NamedText op;
  /// Class names that must hold (bounded_below, concave, two_contraction,
  /// two_isometry, pure, wandering) or fail when prefixed with "not_".
  std::vector<std::string> expect;
};

struct SemigroupRequest {
  NamedText generator;  ///< matrix JSON or a dense operator
  std::vector<double> times;
  bool cogenerator = false;
  bool growth_bound = false;
  bool equivalence_suite = false;
  std::size_t samples = 32;
};

struct ModelRequest {
  NamedText op;
  std::optional<NamedText> coeffs;
  std::optional<std::pair<Complex, Complex>> kernel;  ///< (lambda, z)
  bool verify_intertwine = false;
  bool verify_reproduce = false;
  bool verify_semigroup = false;
  std::size_t order = 32;
  Complex lambda{0.5, 0.0};
  double t = 1.0;
};

struct HardyRequest {
  std::optional<std::vector<Complex>> blaschke;
  std::optional<NamedText> symbol;  ///< series JSON or a Blaschke object
  std::optional<double> semigroup_t;
  bool model_space = false;
  std::optional<std::size_t> ladder;
  bool caradus = false;
  std::optional<std::size_t> multiplicity;
  std::size_t n = 64;
  std::size_t order = 4096;
  bool inner_check = false;
  std::size_t grid = 256;
  bool differentiation_scan = false;
  std::optional<double> composition_r;
};

Report run_classify(const ClassifyRequest& req, const ToleranceConfig& tol);
Report run_semigroup(const SemigroupRequest& req, const ToleranceConfig& tol);
Report run_model(const ModelRequest& req, const ToleranceConfig& tol);
Report run_hardy(const HardyRequest& req, const ToleranceConfig& tol);
/// Acceptance criteria plus smoke checks on the bundled fixtures.
Report run_verify_all(const ToleranceConfig& tol, const std::string& fixture_dir);

}  // namespace opkit
