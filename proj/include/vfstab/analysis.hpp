#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vfstab/harmonic.hpp"
#include "vfstab/simloop.hpp"
#include "vfstab/spectral.hpp"

namespace vfstab {

enum class SweepParam { kB, kM, kR };
enum class SweepMetric { kD, kPk };

const char* to_string(SweepParam p);
const char* to_string(SweepMetric m);

struct SensitivityCurve {
    SweepParam which_param = SweepParam::kB;
    SweepMetric which_metric = SweepMetric::kD;
    std::vector<double> rel_param;   // dp/p0, strictly increasing, contains 0
    std::vector<double> rel_metric;  // dmetric/metric0
    std::vector<double> metric;      // absolute metric at each point
    double nominal_metric = 0.0;

    /// S = (dmetric/metric0) / (dp/p0) at index i (undefined at the anchor).
    double sensitivity(std::size_t i) const { return rel_metric[i] / rel_param[i]; }
};

/// Admittance after a relative change `rel` of the chosen parameter. For r,
/// both m and b scale by (1 + rel), keeping m/b fixed.
AdmittanceParams perturb(const AdmittanceParams& nominal, SweepParam which, double rel);

/// Sweep grid span * (i - half) / half, i = 0..points-1; points must be odd.
std::vector<double> sweep_grid(double span, int points);

/// Relative change of d over +/- span. Throws std::domain_error if the
/// nominal point has no negative-real-axis crossing.
SensitivityCurve sensitivity_theoretical(const PlantParameters& p, const AdmittanceParams& nominal, SweepParam which,
                                         double span = 0.5, int points = 21, const CrossingSearch& search = {});

/// Pk of the simulated tangential force (trailing detection window) at each
/// sweep point. The nominal run must itself be detected as oscillating;
/// otherwise Pk0 is numerical residue and std::domain_error is thrown.
SensitivityCurve sensitivity_simulated(const SimConfig& sim, SweepParam which, double span = 0.5, int points = 21,
                                       const DetectionSettings& detection = {});

/// Mean absolute tangential force.
double effort(const SimTrace& trace);

enum class SearchMode { kRay, kGrid };

struct OptimizationSettings {
    SearchMode mode = SearchMode::kRay;
    double alpha_lo = 0.5;
    double alpha_hi = 3.0;
    double alpha_tol = 1e-3;
    int grid_points = 11;   // per axis in grid mode, over [alpha_lo, alpha_hi] x p0
    double spread = 0.5;    // adaptation bound half-width
    double warn_fraction = 0.1;
};

struct Probe {
    double m_star = 0.0;
    double b_star = 0.0;
    double effort = 0.0;
    double J = 0.0;
};

struct OptimizationResult {
    AdaptationCenter center;
    double alpha = 0.0;  // ray mode: p* = alpha * p0
    double J = 0.0;
    double effort_adaptive = 0.0;
    bool warning = false;  // J above warn_fraction * F0
    std::vector<Probe> probes;
};

/// Effort of a run whose admittance follows the adaptation law around `center`.
double adaptive_effort(const SimConfig& sim, const AdaptationCenter& center);

/// Minimize |effort(adaptive around p) - F0|. The nominal p0 is the constant
/// admittance held by `sim`; v0 is the peak of its velocity profile.
OptimizationResult optimize_center(const SimConfig& sim, double F0, const OptimizationSettings& settings = {});

struct StabilityCell {
    double m = 0.0;
    double b = 0.0;
    double d = 0.0;
    bool crossing_found = false;
    bool exists = false;
};

struct StabilityMap {
    std::vector<double> m_values;
    std::vector<double> b_values;
    std::vector<StabilityCell> cells;  // row-major, m outer, b inner

    const StabilityCell& at(std::size_t im, std::size_t ib) const { return cells[im * b_values.size() + ib]; }
};

std::vector<double> linspace(double lo, double hi, int count);

StabilityMap stability_map(const PlantParameters& p, double m_lo, double m_hi, double b_lo, double b_hi, int m_count,
                           int b_count, const CrossingSearch& search = {});

/// Adaptation trajectory (m(v), b(v)) for v in [0, v0].
std::vector<AdmittanceParams> adaptation_trajectory(const AdaptationCenter& center, int points = 21);

void write_sensitivity_csv(std::ostream& os, const SensitivityCurve& curve);
void write_stability_csv(std::ostream& os, const StabilityMap& map);

}  // namespace vfstab
