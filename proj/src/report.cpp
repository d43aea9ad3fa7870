#include "maxmod/report.hpp"

namespace maxmod {

std::string_view to_string(Agreement a) noexcept {
    switch (a) {
        case Agreement::Confirmed: return "CONFIRMED";
        case Agreement::ConjectureConsistent: return "CONJECTURE_CONSISTENT";
        case Agreement::Discrepant: return "DISCREPANT";
    }
    return "DISCREPANT";
}

Agreement agreement(const Classification& c, int n_components) {
    if (!c.exceptional) {
        return n_components == c.mu ? Agreement::Confirmed : Agreement::Discrepant;
    }
    switch (c.magic) {
        case MagicVerdict::Magic:
            return n_components == 2 * c.mu ? Agreement::Confirmed : Agreement::Discrepant;
        case MagicVerdict::NotMagic:
            return n_components == c.mu ? Agreement::Confirmed : Agreement::Discrepant;
        case MagicVerdict::Unknown:
            break;
    }
    const bool in_range = c.predicted_count.contains(n_components);
    const bool conjectured = n_components == c.mu || n_components == 2 * c.mu;
    return in_range && conjectured ? Agreement::ConjectureConsistent : Agreement::Discrepant;
}

Json to_json(const RunReport& r) {
    Json artifacts = Json::object();
    if (!r.csv_path.empty()) {
        artifacts["csv"] = r.csv_path;
    }
    if (!r.svg_path.empty()) {
        artifacts["svg"] = r.svg_path;
    }
    return {
        {"input", polynomial_to_json(r.input)},
        {"classification", to_json(r.classification)},
        {"predicted_J", to_json(r.classification.predicted_j)},
        {"trace", trace_summary_json(r.trace)},
        {"agreement", std::string(to_string(r.verdict))},
        {"artifacts", artifacts},
    };
}

}  // namespace maxmod
