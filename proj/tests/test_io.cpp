#include <doctest.h>

#include "opkit/commands.hpp"
#include "opkit/error.hpp"
#include "opkit/json_io.hpp"

using namespace opkit;

TEST_CASE("complex literals") {
  CHECK(io::parse_complex_literal("0.3") == Complex(0.3, 0.0));
  CHECK(io::parse_complex_literal("-0.2i") == Complex(0.0, -0.2));
  CHECK(io::parse_complex_literal("0.3+0.2i") == Complex(0.3, 0.2));
  CHECK(io::parse_complex_literal("1e-1-2e-1i") == Complex(0.1, -0.2));
  CHECK(io::parse_complex_literal("i") == Complex(0.0, 1.0));
  CHECK_THROWS_AS(io::parse_complex_literal(""), Error);
  CHECK_THROWS_AS(io::parse_complex_literal("abc"), Error);
}

TEST_CASE("operator round trip") {
  const char* text = R"({"kind":"direct_sum","parts":[
    {"kind":"shift","head_weights":[2.0],"tail_weight":1.0,"tail_ratio":[2,1]},
    {"kind":"dense","matrix":{"rows":1,"cols":1,"data":[[0,1]]}}]})";
  const auto op = io::parse_operator(io::parse_text(text));
  const auto again = io::parse_operator(io::to_json(op));
  CHECK(io::dump(io::to_json(op)) == io::dump(io::to_json(again)));
  CHECK_THROWS_AS(io::parse_operator(io::parse_text(R"({"kind":"weird"})")), Error);
  CHECK_THROWS_AS(io::parse_text("{not json"), Error);
  try {
    io::parse_text("[1,");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
}

TEST_CASE("series and vectors") {
  const auto s = io::parse_series(io::parse_text("[[1,0],[0.5,-1]]"));
  CHECK(s.order() == 1);
  CHECK_FALSE(s.truncated());
  CHECK(s[1] == Complex(0.5, -1.0));
  const auto x = io::parse_vector(io::parse_text(R"({"entries":[[3,1,2]]})"), std::nullopt);
  CHECK(x.get(3) == Complex(1.0, 2.0));
  CHECK_FALSE(x.ambient().has_value());
}

TEST_CASE("dump is deterministic and round-trip exact") {
  io::Json j;
  j["b"] = 0.1;
  j["a"] = 1.0 / 3.0;
  j["n"] = std::nan("");
  const std::string s = io::dump(j);
  CHECK(s == io::dump(j));
  CHECK(s.find("\"b\"") < s.find("\"a\""));
  CHECK(s.find("0.33333333333333331") != std::string::npos);
  CHECK(s.find("null") != std::string::npos);
  const auto back = io::parse_text(s);
  CHECK(back["a"].get<double>() == 1.0 / 3.0);
  CHECK(io::fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("reports carry residual and tolerance for every check") {
  const std::string dir = R"({"kind":"shift","head_weights":[],"tail_weight":1.0,"tail_ratio":[2,1]})";
  const Report r = run_classify({{"dirichlet.json", dir}, {"two_isometry", "not_concave"}}, {});
  CHECK_FALSE(r.all_passed());
  const auto j = r.to_json();
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("residual"));
    CHECK(c.contains("tolerance"));
  }
  CHECK(j["verdict"] == "FAIL");
  CHECK(io::dump(j) == io::dump(run_classify({{"dirichlet.json", dir}, {"two_isometry", "not_concave"}}, {}).to_json()));
  CHECK_THROWS_AS(run_classify({{"d", dir}, {"bogus"}}, {}), Error);
}

TEST_CASE("model and semigroup reports") {
  ModelRequest m;
  m.op = {"iso", R"({"kind":"shift","head_weights":[],"tail_weight":1.0})"};
  m.kernel = std::make_pair(Complex(0.5), Complex(0.5));
  const Report r = run_model(m, {});
  CHECK(r.all_passed());
  const auto v = r.to_json()["results"]["kernel"]["value"];
  CHECK(std::abs(v[0][0][0].get<double>() - 4.0 / 3.0) <= 1e-12);

  SemigroupRequest s;
  s.generator = {"zero", R"({"rows":2,"cols":2,"data":[[0,0],[0,0],[0,0],[0,0]]})"};
  s.cogenerator = true;
  const Report sr = run_semigroup(s, {});
  CHECK(sr.all_passed());
  const auto cg = sr.to_json()["results"]["cogenerator"];
  CHECK(cg[0][0][0].get<double>() == -1.0);
  CHECK(cg[1][1][0].get<double>() == -1.0);
}
