#include "opkit/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>

namespace opkit::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) {
    fail(std::string(what) + " must be a number");
  }
  return j.get<double>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

double parse_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail("malformed number '" + std::string(s) + "'");
  }
  return v;
}

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent >= 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ',';
        }
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short arrays of scalars stay on one line.
      bool flat = j.size() <= 4;
      for (const auto& e : j) {
        flat = flat && !e.is_structured();
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += flat ? ", " : ",";
        }
        first = false;
        if (!flat) {
          newline(depth + 1);
        }
        dump_into(e, indent, depth + 1, out);
      }
      if (!flat) {
        newline(depth);
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
      out.append(buf, res.ptr);
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

Complex parse_complex(const Json& j) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  if (!j.is_array() || j.size() != 2) {
    fail("complex number must be [re, im]");
  }
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex parse_complex_literal(std::string_view s) {
  std::string t;
  for (char ch : s) {
    if (ch != ' ') {
      t += ch;
    }
  }
  if (t.empty()) {
    fail("empty complex literal");
  }
  if (t.back() != 'i' && t.back() != 'j') {
    return {parse_double(t), 0.0};
  }
  t.pop_back();
  // Split at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag = [](std::string_view v) {
    if (v.empty() || v == "+") {
      return 1.0;
    }
    if (v == "-") {
      return -1.0;
    }
    return parse_double(v);
  };
  if (split == std::string::npos) {
    return {0.0, imag(t)};
  }
  return {parse_double(std::string_view(t).substr(0, split)),
          imag(std::string_view(t).substr(split))};
}

ComplexMatrix parse_matrix(const Json& j) {
  const std::size_t rows = count(field(j, "rows"), "rows");
  const std::size_t cols = count(field(j, "cols"), "cols");
  if (rows != cols || rows == 0) {
    fail("matrix must be square with n >= 1");
  }
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != rows * cols) {
    fail("matrix data must hold rows*cols entries");
  }
  const auto n = static_cast<Eigen::Index>(rows);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      m(i, k) = parse_complex(data[static_cast<std::size_t>(i * n + k)]);
    }
  }
  return ComplexMatrix(std::move(m));
}

Json to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      data.push_back(to_json(m(i, k)));
    }
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

StructuredOperator parse_operator(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) {
    fail("operator kind must be a string");
  }
  const std::string k = kind.get<std::string>();
  if (k == "dense") {
    return StructuredOperator::dense(parse_matrix(field(j, "matrix")));
  }
  if (k == "shift") {
    std::vector<double> head;
    if (j.contains("head_weights")) {
      const Json& h = j.at("head_weights");
      if (!h.is_array()) {
        fail("head_weights must be an array");
      }
      for (const auto& w : h) {
        head.push_back(number(w, "weight"));
      }
    }
    const double tail = number(field(j, "tail_weight"), "tail_weight");
    std::optional<TailRatio> ratio;
    if (j.contains("tail_ratio")) {
      const Json& r = j.at("tail_ratio");
      if (!r.is_array() || r.size() != 2) {
        fail("tail_ratio must be [p, q]");
      }
      ratio = TailRatio{number(r[0], "tail_ratio"), number(r[1], "tail_ratio")};
    }
    return StructuredOperator::shift(WeightedShift(std::move(head), tail, ratio));
  }
  if (k == "direct_sum") {
    const Json& parts = field(j, "parts");
    if (!parts.is_array() || parts.empty()) {
      fail("direct_sum needs a non-empty parts array");
    }
    std::vector<StructuredOperator> ops;
    for (const auto& p : parts) {
      ops.push_back(parse_operator(p));
    }
    return StructuredOperator::direct_sum(std::move(ops));
  }
  fail("unknown operator kind '" + k + "'");
}

Json to_json(const StructuredOperator& t) {
  Json j;
  switch (t.kind()) {
    case StructuredOperator::Kind::Dense:
      j["kind"] = "dense";
      j["matrix"] = to_json(t.matrix());
      break;
    case StructuredOperator::Kind::Shift: {
      const auto& w = t.weights();
      j["kind"] = "shift";
      j["head_weights"] = w.head_weights();
      j["tail_weight"] = w.tail_weight();
      if (w.tail_ratio()) {
        j["tail_ratio"] = Json::array({w.tail_ratio()->num_offset, w.tail_ratio()->den_offset});
      }
      break;
    }
    case StructuredOperator::Kind::DirectSum: {
      j["kind"] = "direct_sum";
      Json parts = Json::array();
      for (const auto& p : t.parts()) {
        parts.push_back(to_json(p));
      }
      j["parts"] = std::move(parts);
      break;
    }
  }
  return j;
}

FiniteSupportVector parse_vector(const Json& j, Ambient fallback) {
  Ambient amb = fallback;
  if (j.contains("ambient")) {
    const Json& a = j.at("ambient");
    amb = a.is_null() ? Ambient{} : Ambient{count(a, "ambient")};
  }
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) {
    fail("entries must be an array");
  }
  FiniteSupportVector x(amb);
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) {
      fail("vector entry must be [k, re, im]");
    }
    x.add(count(e[0], "index"), {number(e[1], "real part"), number(e[2], "imaginary part")});
  }
  return x;
}

Json to_json(const FiniteSupportVector& x) {
  Json entries = Json::array();
  for (const auto& [k, v] : x.entries()) {
    entries.push_back(Json::array({k, v.real(), v.imag()}));
  }
  Json j;
  j["entries"] = std::move(entries);
  j["ambient"] = x.ambient() ? Json(*x.ambient()) : Json(nullptr);
  return j;
}

PowerSeries parse_series(const Json& j) {
  const Json* arr = &j;
  bool truncated = false;
  if (j.is_object()) {
    arr = &field(j, "coeffs");
    if (j.contains("truncated")) {
      if (!j.at("truncated").is_boolean()) {
        fail("truncated must be a boolean");
      }
      truncated = j.at("truncated").get<bool>();
    }
  }
  if (!arr->is_array() || arr->empty()) {
    fail("series must be a non-empty coefficient array");
  }
  std::vector<Complex> c;
  for (const auto& e : *arr) {
    c.push_back(parse_complex(e));
  }
  return PowerSeries(std::move(c), truncated);
}

Json to_json(const PowerSeries& f) {
  Json arr = Json::array();
  for (const Complex& c : f.coeffs()) {
    arr.push_back(to_json(c));
  }
  return arr;
}

BlaschkeSpec parse_blaschke(const Json& j) {
  const Json& zeros = field(j, "zeros");
  if (!zeros.is_array()) {
    fail("zeros must be an array");
  }
  BlaschkeSpec b;
  for (const auto& z : zeros) {
    b.zeros.push_back(parse_complex(z));
  }
  if (j.contains("unimodular")) {
    b.unimodular = parse_complex(j.at("unimodular"));
  }
  b.validate();
  return b;
}

std::string dump(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace opkit::io
