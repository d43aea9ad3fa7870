#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxmod/classify.hpp"
#include "maxmod/io.hpp"
#include "maxmod/tracer.hpp"

namespace maxmod {

enum class Family { Cubic, Quartic };

/// Throws InvalidConfig for anything but "cubic" / "quartic".
Family parse_family(std::string_view name);

struct HuntConfig {
    Family family = Family::Cubic;
    int samples = 100;
    std::uint64_t seed = 1;
    double on_locus_fraction = 0.5;
    TraceConfig trace{.r_min = 1e-3, .r_max = 0.1, .n_radii = 60};
};

struct HuntSample {
    Polynomial p;
    bool on_locus = false;
};

struct HuntFinding {
    Polynomial p;
    bool on_locus = false;
    bool exceptional = false;
    MagicVerdict magic = MagicVerdict::Unknown;
    int mu = 0;
    int n_components = 0;
    bool conjecture_holds = false;
    std::optional<std::string> error;
};

/// Coefficients have modulus uniform in [0.5, 2] and uniform argument. On-locus
/// samples solve the resonance condition for arg b_sigma given random m, m'.
/// Deterministic for a fixed seed.
std::vector<HuntSample> generate_hunt_samples(const HuntConfig& cfg);

/// Classifies and traces one sample. r_min is raised to twice the numerical
/// floor when necessary.
HuntFinding examine(const HuntSample& s, const TraceConfig& trace_cfg);

/// All samples, processed concurrently; output order follows the samples.
std::vector<HuntFinding> run_hunt(const HuntConfig& cfg);

Json to_json(const HuntFinding& f);

}  // namespace maxmod
