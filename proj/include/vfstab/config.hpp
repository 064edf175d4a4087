#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vfstab/analysis.hpp"

namespace vfstab {

struct SweepRanges {
    double m_lo = 0.3;
    double m_hi = 0.9;
    int m_count = 7;
    double b_lo = 0.5;
    double b_hi = 1.5;
    int b_count = 11;
};

struct SensitivitySettings {
    double span = 0.5;
    int points = 21;
};

/// Everything a CLI run depends on. Text form is one `key = value` per line
/// with dotted section names; `#` starts a comment.
struct RunConfig {
    PlantParameters plant;
    AdmittanceParams adm;
    bool adaptive = false;
    AdaptationCenter center;

    double dt = 5e-4;
    double T = 20.0;
    VelocityProfile vd;
    double v_init = 0.0;
    double force_noise = 0.0;
    std::uint64_t seed = 0;

    CrossingSearch search;
    DetectionSettings detection;
    SweepRanges sweep;
    SensitivitySettings sensitivity;
    OptimizationSettings optimize;

    std::string output_dir = "out";  // not part of the echo

    /// Throws ConfigError naming the first offending key.
    void validate() const;

    /// Simulation settings; the admittance is the adaptation center when
    /// `adaptive` is set, the constant (m, b) otherwise.
    SimConfig sim_config() const;
};

/// Apply `key = value` lines on top of `cfg`. Errors carry the line number.
void parse_config(std::string_view text, RunConfig& cfg);
RunConfig load_config_file(const std::string& path);

/// Apply one `key=value` override.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Every key in a fixed order; parsing the result reproduces `cfg` exactly.
std::string resolved_config_text(const RunConfig& cfg);

std::vector<std::string> config_keys();

}  // namespace vfstab
