#pragma once

#include <string>
#include <string_view>

#include "maxmod/classify.hpp"
#include "maxmod/io.hpp"
#include "maxmod/tracer.hpp"

namespace maxmod {

enum class Agreement { Confirmed, ConjectureConsistent, Discrepant };

std::string_view to_string(Agreement a) noexcept;

/// Compares a traced component count with the coefficient-level prediction.
///
/// Non-exceptional: the count must equal mu. Exceptional with a decided magic
/// verdict: mu (not magic) or 2 mu (magic). Exceptional with an unknown
/// verdict: any count in the predicted range that is mu or 2 mu is consistent
/// with the conjecture; anything else is a discrepancy.
Agreement agreement(const Classification& c, int n_components);

struct RunReport {
    Polynomial input;
    Classification classification;
    TraceResult trace;
    Agreement verdict = Agreement::Discrepant;
    std::string csv_path;
    std::string svg_path;
};

Json to_json(const RunReport& r);

}  // namespace maxmod
