#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "maxmod/classify.hpp"
#include "maxmod/polynomial.hpp"
#include "maxmod/tracer.hpp"

namespace maxmod {

using Json = nlohmann::json;

/// Sorted keys, no whitespace, floats as %.17g (always with '.' or exponent),
/// non-finite floats as null. Parsing the output and dumping again is
/// byte-identical.
std::string canonical_dump(const Json& j);

/// {"coeffs": [[re, im], ...]} with an optional "truncated": bool.
Polynomial polynomial_from_json(const Json& j);
Json polynomial_to_json(const Polynomial& p);

Json to_json(const ExceptionalWitness& w);
Json to_json(const Classification& c);
Json to_json(const PredictedJ& j);
Json trace_summary_json(const TraceResult& t);

/// One row per sample: r,theta,re,im,mod,curve_id.
void write_csv(std::ostream& out, const TraceResult& t);

/// z-plane drawing: one <path> per surviving curve, dashed <polyline> for
/// curves that end before r_min.
void write_svg(std::ostream& out, const TraceResult& t);

std::string format_double(double x);

}  // namespace maxmod
