// Command-line front end. Talks to the library only through opkit.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opkit/opkit.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kParse = 2, kNumeric = 3 };

// Raised for problems the caller can fix on the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string name;
  std::string text;
  opk_input view() const { return {name.c_str(), text.c_str()}; }
};

Input read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  auto slash = path.find_last_of('/');
  return {slash == std::string::npos ? path : path.substr(slash + 1), ss.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) {
    out.push_back(cur);
  }
  return out;
}

void complex_literal(const std::string& s, double* re, double* im) {
  if (opk_parse_complex(s.c_str(), re, im) != OPK_OK) {
    throw UsageError(opk_last_error());
  }
}

int status_exit(opk_status s) {
  switch (s) {
    case OPK_ERR_PARSE:
    case OPK_ERR_INVALID_ARGUMENT:
    case OPK_ERR_AMBIENT_MISMATCH:
      return kParse;
    default:
      return kNumeric;
  }
}

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_number_float()) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v.get<double>();
    return ss.str();
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const std::string& prefix, const nlohmann::ordered_json& v, std::ostream& out) {
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items()) {
      flatten(prefix.empty() ? k : prefix + "." + k, sub, out);
    }
  } else if (v.is_array()) {
    const std::string flat = v.dump();
    if (flat.size() > 100) {
      out << "  " << prefix << ": [" << v.size() << " entries]\n";
    } else {
      out << "  " << prefix << ": " << flat << "\n";
    }
  } else {
    out << "  " << prefix << ": " << scalar_text(v) << "\n";
  }
}

std::string as_text(const std::string& json) {
  const auto j = nlohmann::ordered_json::parse(json);
  std::ostringstream out;
  out << j["command"].get<std::string>() << ": " << j["verdict"].get<std::string>() << "\n";
  for (const auto& c : j["checks"]) {
    out << "  " << c["verdict"].get<std::string>() << " " << c["name"].get<std::string>();
    if (c.contains("residual") && !c["residual"].is_null()) {
      out << "  residual=" << scalar_text(c["residual"]) << " tol=" << scalar_text(c["tolerance"]);
    }
    out << "\n";
  }
  if (j.contains("results") && !j["results"].empty()) {
    out << "results:\n";
    flatten("", j["results"], out);
  }
  if (j.contains("warnings")) {
    for (const auto& w : j["warnings"]) {
      out << "warning: " << w.get<std::string>() << "\n";
    }
  }
  return out.str();
}

struct Common {
  opk_tolerance tol = opk_default_tolerance();
  std::string format = "json";
  std::string out;
};

int emit(const Common& common, const char* op, opk_status s, char* json, int passed) {
  if (s != OPK_OK) {
    std::cerr << "opkit " << op << ": " << opk_last_error() << "\n";
    return status_exit(s);
  }
  std::string body = common.format == "text" ? as_text(json) : std::string(json);
  opk_string_free(json);
  if (common.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(common.out, std::ios::binary);
    if (!f) {
      std::cerr << "opkit " << op << ": cannot write " << common.out << "\n";
      return kParse;
    }
    f << body;
  }
  if (!passed) {
    std::cerr << "opkit " << op << ": one or more checks failed\n";
  }
  return passed ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opkit: concave operators, Cauchy duals and analytic models"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--tol-rank", common.tol.rank_tol, "rank tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-psd", common.tol.psd_tol, "semidefiniteness tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-residual", common.tol.residual_tol, "residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-tail", common.tol.tail_tol, "series tail tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", common.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", common.out, "write the report here instead of stdout");

  // classify
  auto* classify = app.add_subcommand("classify", "concavity classes of an operator");
  std::string classify_op;
  std::vector<std::string> expect;
  classify->add_option("--operator", classify_op, "operator JSON")->required();
  classify->add_option("--expect", expect, "classes that must hold; prefix not_ to negate")
      ->delimiter(',');

  // semigroup
  auto* semigroup = app.add_subcommand("semigroup", "matrix semigroup and its cogenerator");
  std::string generator;
  std::vector<double> times;
  bool cogen = false, growth = false, suite = false;
  std::size_t samples = 32;
  semigroup->add_option("--generator", generator, "matrix JSON")->required();
  semigroup->add_option("--t", times, "evaluation times")->delimiter(',');
  semigroup->add_flag("--cogenerator", cogen);
  semigroup->add_flag("--growth-bound", growth);
  semigroup->add_flag("--equivalence-suite", suite);
  semigroup->add_option("--samples", samples, "random vectors per time in the suite")
      ->check(CLI::PositiveNumber);

  // model
  auto* model = app.add_subcommand("model", "analytic model of a 2-concave operator");
  std::string model_op, coeffs, kernel, lambda = "0.5";
  std::vector<std::string> verify;
  std::size_t model_order = 32;
  double model_t = 1.0;
  model->add_option("--operator", model_op, "operator JSON")->required();
  model->add_option("--coeffs", coeffs, "vector JSON");
  model->add_option("--kernel", kernel, "lambda,z");
  model->add_option("--verify", verify, "intertwine, reproduce, semigroup")
      ->delimiter(',')
      ->check(CLI::IsMember({"intertwine", "reproduce", "semigroup"}));
  model->add_option("--N", model_order, "truncation order");
  model->add_option("--lambda", lambda, "evaluation point for --verify reproduce");
  model->add_option("--t", model_t, "semigroup parameter for --verify semigroup");

  // hardy
  auto* hardy = app.add_subcommand("hardy", "Blaschke products, model spaces, Toeplitz checks");
  std::string blaschke, symbol_file;
  double semigroup_t = 0.0, composition_r = 0.0;
  bool model_space = false, caradus = false, inner = false, diff_scan = false;
  std::size_t ladder = 0, multiplicity = 0, n = 64, hardy_order = 4096, grid = 256;
  auto* t_opt = hardy->add_option("--semigroup-t", semigroup_t, "exponent of the inner semigroup");
  hardy->add_option("--blaschke", blaschke, "zeros a1,a2,...");
  hardy->add_option("--symbol-file", symbol_file, "series JSON");
  hardy->add_flag("--model-space", model_space);
  auto* ladder_opt = hardy->add_option("--ladder", ladder, "number of levels");
  hardy->add_flag("--caradus", caradus);
  hardy->add_option("--multiplicity", multiplicity, "declared kernel dimension");
  hardy->add_option("--n", n, "matrix truncation size");
  hardy->add_option("--N", hardy_order, "series truncation order");
  hardy->add_flag("--inner-check", inner);
  hardy->add_option("--grid", grid, "boundary grid points");
  hardy->add_flag("--diff-scan", diff_scan);
  auto* comp_opt = hardy->add_option("--composition", composition_r, "automorphism parameter r");

  // verify-all
  auto* verify_all = app.add_subcommand("verify-all", "acceptance suite and fixture checks");
  std::string fixtures;
  verify_all->add_option("--fixtures", fixtures, "fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  char* json = nullptr;
  int passed = 0;
  try {
    if (*classify) {
      const Input op = read_file(classify_op);
      std::vector<const char*> ex;
      for (const auto& e : expect) ex.push_back(e.c_str());
      opk_classify_request req{op.view(), ex.data(), ex.size()};
      const auto s = opk_report_classify(&req, &common.tol, &json, &passed);
      return emit(common, "classify", s, json, passed);
    }
    if (*semigroup) {
      const Input gen = read_file(generator);
      opk_semigroup_request req{gen.view(), times.data(), times.size(), cogen, growth, suite,
                                samples};
      const auto s = opk_report_semigroup(&req, &common.tol, &json, &passed);
      return emit(common, "semigroup", s, json, passed);
    }
    if (*model) {
      const Input op = read_file(model_op);
      Input x;
      opk_model_request req{};
      req.op = op.view();
      if (!coeffs.empty()) {
        x = read_file(coeffs);
        req.coeffs = x.view();
      }
      if (!kernel.empty()) {
        const auto parts = split(kernel, ',');
        if (parts.size() != 2) {
          throw UsageError("--kernel expects lambda,z");
        }
        complex_literal(parts[0], &req.kernel[0], &req.kernel[1]);
        complex_literal(parts[1], &req.kernel[2], &req.kernel[3]);
        req.has_kernel = 1;
      }
      for (const auto& v : verify) {
        if (v == "intertwine") req.verify |= OPK_VERIFY_INTERTWINE;
        if (v == "reproduce") req.verify |= OPK_VERIFY_REPRODUCE;
        if (v == "semigroup") req.verify |= OPK_VERIFY_SEMIGROUP;
      }
      req.order = model_order;
      complex_literal(lambda, &req.lambda[0], &req.lambda[1]);
      req.t = model_t;
      const auto s = opk_report_model(&req, &common.tol, &json, &passed);
      return emit(common, "model", s, json, passed);
    }
    if (*hardy) {
      std::vector<double> zeros;
      Input sym;
      opk_hardy_request req{};
      if (!blaschke.empty()) {
        for (const auto& a : split(blaschke, ',')) {
          double re = 0.0, im = 0.0;
          complex_literal(a, &re, &im);
          zeros.push_back(re);
          zeros.push_back(im);
        }
        req.blaschke_re_im = zeros.data();
        req.blaschke_count = zeros.size() / 2;
      }
      if (!symbol_file.empty()) {
        sym = read_file(symbol_file);
        req.symbol = sym.view();
      }
      req.has_semigroup_t = t_opt->count() > 0;
      req.semigroup_t = semigroup_t;
      req.model_space = model_space;
      req.has_ladder = ladder_opt->count() > 0;
      req.ladder = ladder;
      req.caradus = caradus;
      req.multiplicity = multiplicity;
      req.n = n;
      req.order = hardy_order;
      req.inner_check = inner;
      req.grid = grid;
      req.differentiation_scan = diff_scan;
      req.has_composition = comp_opt->count() > 0;
      req.composition_r = composition_r;
      const auto s = opk_report_hardy(&req, &common.tol, &json, &passed);
      return emit(common, "hardy", s, json, passed);
    }
    if (*verify_all) {
      const auto s = opk_verify_all(&common.tol, fixtures.empty() ? nullptr : fixtures.c_str(),
                                    &json, &passed);
      return emit(common, "verify-all", s, json, passed);
    }
  } catch (const UsageError& e) {
    std::cerr << "opkit: " << e.what() << "\n";
    return kParse;
  }
  return kParse;
}
