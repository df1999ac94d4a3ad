#pragma once

// JSON formats for the CLI and the C API.
//   complex  [re, im] or a bare number
//   matrix   {"rows": n, "cols": n, "data": [[re, im], ...]} row-major
//   operator {"kind": "shift", "head_weights": [...], "tail_weight": c,
//             "tail_ratio": [p, q]}            (tail_ratio optional)
//          | {"kind": "dense", "matrix": <matrix>}
//          | {"kind": "direct_sum", "parts": [<operator>, ...]}
//   vector   {"entries": [[k, re, im], ...], "ambient": n}  (ambient optional)
//   series   [[re, im], ...] or {"coeffs": [...], "truncated": bool}
//   blaschke {"zeros": [<complex>, ...], "unimodular": <complex>}
// Malformed input raises Error(Parse).

#include <string>
#include <string_view>

#include <json.hpp>

#include "opkit/hardy.hpp"
#include "opkit/operators.hpp"

namespace opkit::io {

using Json = nlohmann::ordered_json;

Json parse_text(std::string_view text);

Complex parse_complex(const Json& j);
Json to_json(Complex c);
/// "0.3", "-0.2i", "0.3+0.2i", "1e-3-2.5i".
Complex parse_complex_literal(std::string_view s);

ComplexMatrix parse_matrix(const Json& j);
Json to_json(const CMatrix& m);
inline Json to_json(const ComplexMatrix& m) { return to_json(m.eigen()); }

StructuredOperator parse_operator(const Json& j);
Json to_json(const StructuredOperator& t);

/// An absent "ambient" field takes `fallback`.
FiniteSupportVector parse_vector(const Json& j, Ambient fallback);
Json to_json(const FiniteSupportVector& x);

PowerSeries parse_series(const Json& j);
Json to_json(const PowerSeries& f);

BlaschkeSpec parse_blaschke(const Json& j);

/// Compact or indented JSON with every double printed to 17 significant
/// digits via std::to_chars; non-finite doubles become null.
std::string dump(const Json& j, int indent = 2);

/// FNV-1a, 64 bit, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace opkit::io
