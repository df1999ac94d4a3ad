#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "opkit/opkit.h"

namespace {
const char* kIso = R"({"kind":"shift","head_weights":[],"tail_weight":1.0})";
const char* kDir = R"({"kind":"shift","head_weights":[],"tail_weight":1.0,"tail_ratio":[2,1]})";
}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(opk_status_name(OPK_OK)) == "OK");
  CHECK(std::string(opk_status_name(OPK_ERR_PARSE)) == "ParseError");
  CHECK(std::string(opk_status_name(OPK_ERR_INVALID_AUTOMORPHISM)) == "InvalidAutomorphism");
  opk_operator* op = nullptr;
  CHECK(opk_operator_parse("{", &op) == OPK_ERR_PARSE);
  CHECK(std::strlen(opk_last_error()) > 0);
  CHECK(op == nullptr);
  CHECK(opk_operator_parse(nullptr, &op) == OPK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("classification through handles") {
  opk_operator* op = nullptr;
  REQUIRE(opk_operator_parse(kDir, &op) == OPK_OK);
  size_t dim = 7;
  CHECK(opk_operator_ambient(op, &dim) == OPK_OK);
  CHECK(dim == 0);
  opk_classification c{};
  CHECK(opk_classify(op, nullptr, &c) == OPK_OK);
  CHECK(c.two_isometry == 1);
  CHECK(c.pure == 1);
  opk_tolerance bad = opk_default_tolerance();
  bad.psd_tol = -1;
  CHECK(opk_classify(op, &bad, &c) == OPK_ERR_INVALID_ARGUMENT);
  opk_operator_free(op);
}

TEST_CASE("model kernel") {
  opk_operator* op = nullptr;
  REQUIRE(opk_operator_parse(kIso, &op) == OPK_OK);
  opk_model* m = nullptr;
  REQUIRE(opk_model_build(op, nullptr, &m) == OPK_OK);
  size_t d = 0;
  double radius = 0;
  CHECK(opk_model_info(m, &d, &radius) == OPK_OK);
  CHECK(d == 1);
  CHECK(radius == 1.0);
  double out[2];
  CHECK(opk_model_kernel(m, 0.5, 0, 0.5, 0, nullptr, out, 1, &d) == OPK_OK);
  CHECK(std::abs(out[0] - 4.0 / 3.0) <= 1e-12);
  CHECK(opk_model_kernel(m, 1.5, 0, 0.5, 0, nullptr, out, 1, &d) == OPK_ERR_OUTSIDE_DISC);
  opk_model_free(m);
  opk_operator_free(op);
}

TEST_CASE("series handles") {
  opk_series* s = nullptr;
  REQUIRE(opk_series_multiplier(1.0, 8, &s) == OPK_OK);
  double re = 0, im = 0;
  CHECK(opk_series_coeff(s, 0, &re, &im) == OPK_OK);
  CHECK(std::abs(re - std::exp(-1.0)) <= 1e-15);
  size_t order = 0;
  CHECK(opk_series_order(s, &order) == OPK_OK);
  CHECK(order == 8);
  opk_series_free(s);
  const double zeros[2] = {0.5, 0.0};
  opk_series* b = nullptr;
  REQUIRE(opk_series_blaschke(zeros, 1, 16, &b) == OPK_OK);
  CHECK(opk_series_coeff(b, 1, &re, &im) == OPK_OK);
  CHECK(std::abs(re + 0.75) <= 1e-15);
  opk_series* e = nullptr;
  CHECK(opk_series_inner_symbol(b, 0.5, 16, &e) == OPK_OK);
  opk_series_free(e);
  opk_series_free(b);
  const double bad[2] = {1.0, 0.0};
  CHECK(opk_series_blaschke(bad, 1, 4, &b) == OPK_ERR_ZERO_ON_BOUNDARY);
}

TEST_CASE("complex parsing and reports") {
  double re = 0, im = 0;
  CHECK(opk_parse_complex("0.3+0.2i", &re, &im) == OPK_OK);
  CHECK(re == 0.3);
  CHECK(im == 0.2);
  CHECK(opk_parse_complex("x", &re, &im) == OPK_ERR_PARSE);

  const char* expect[] = {"two_isometry"};
  opk_classify_request req{{"dirichlet.json", kDir}, expect, 1};
  char* json = nullptr;
  int passed = 0;
  REQUIRE(opk_report_classify(&req, nullptr, &json, &passed) == OPK_OK);
  CHECK(passed == 1);
  CHECK(std::string(json).find("\"verdict\": \"PASS\"") != std::string::npos);
  opk_string_free(json);
}
