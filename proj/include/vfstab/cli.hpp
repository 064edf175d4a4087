#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vfstab/config.hpp"

namespace vfstab {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitNumerical = 2,
    kExitOptimizerWarning = 3,
};

struct SweepCell {
    double m = 0.0;
    double b = 0.0;
    double d = 0.0;
    bool crossing_found = false;
    bool predicted = false;  // limit cycle predicted (d > 1)
    double f_lc = 0.0;       // [Hz], 0 when not predicted
    double X_lc = 0.0;
    Detection detection;
    double f_dominant = 0.0;  // largest non-DC spectral peak [Hz]
    bool diverged = false;

    bool agrees() const { return predicted == detection.detected; }
};

struct SweepTable {
    std::vector<double> m_values;
    std::vector<double> b_values;
    std::vector<SweepCell> cells;  // m outer, b inner

    double agreement_rate() const;
};

/// d, the harmonic-balance prediction and a simulation per (m, b) cell of
/// the configured sweep ranges. Cells run in parallel; results do not depend
/// on the thread count.
SweepTable run_sweep(const RunConfig& cfg);

struct OptimizeReport {
    double effort_p0 = 0.0;
    double effort_const_star = 0.0;
    OptimizationResult result;
    std::vector<AdmittanceParams> trajectory;
    std::vector<double> trajectory_d;
    bool trajectory_stable = false;  // every trajectory point has d < 1
};

OptimizeReport run_optimize(const RunConfig& cfg);

// Each command writes its files into `out` (which must exist) and a short
// report to `log`, and returns an exit code. Exceptions propagate.
int cmd_analyze(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_sensitivity(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_optimize(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

/// Validate, create the output directory, write resolved.cfg and dispatch.
/// Maps exceptions to exit codes and prints them to `err`.
int run_command(const std::string& verb, const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace vfstab
