#pragma once

#include <optional>
#include <vector>

#include "vfstab/plant.hpp"

namespace vfstab {

/// Symmetric unit-slope saturation clipping at +/- level.
struct SaturationNL {
    double level = 0.5;

    double operator()(double x) const noexcept { return x > level ? level : (x < -level ? -level : x); }
};

/// Real describing function of the unit-slope saturation with level S.
/// F(X) = 1 for X <= S, otherwise (2/pi)(asin(S/X) + (S/X) sqrt(1-(S/X)^2)).
double describing_function(double amplitude, double level);

/// Unique X > S with describing_function(X, S) == f_target, by bisection.
double invert_describing_function(double f_target, double level);

struct Crossing {
    double omega = 0.0;      // [rad/s]
    double magnitude = 0.0;  // |G_l0(j omega)|
};

struct CrossingSearch {
    double omega_lo = 0.1;
    double omega_hi = 1e4;
    int grid_points = 2000;
};

/// Negative-real-axis crossings of the delayed analysis loop, ordered by
/// frequency. Sign changes of Im on a log grid are refined by bisection.
std::vector<Crossing> phase_crossings(const PlantParameters& p, const AdmittanceParams& adm,
                                      const CrossingSearch& search = {});

/// Same search on an explicit loop and delay.
std::vector<Crossing> phase_crossings(const RationalTF& loop, double t0, const CrossingSearch& search = {});

struct DistanceResult {
    double d = 0.0;               // largest crossing magnitude (1/M_a)
    bool crossing_found = false;  // false: no negative-axis crossing in band, d = 0
    double omega_c = 0.0;         // governing crossing
    std::vector<Crossing> crossings;
};

DistanceResult distance_d(const PlantParameters& p, const AdmittanceParams& adm, const CrossingSearch& search = {});

struct LimitCyclePrediction {
    bool exists = false;
    double crossover_gain = 0.0;          // d
    std::optional<double> amplitude;      // X_lc, same units as the saturated signal
    std::optional<double> frequency_hz;   // f_lc
    std::optional<double> omega_c;        // [rad/s]
    std::optional<double> harmonic_ratio; // |G(3 w_c)| / |G(w_c)|, filter-hypothesis check
    std::vector<Crossing> alternates;     // other crossings with magnitude > 1
};

LimitCyclePrediction predict_limit_cycle(const PlantParameters& p, const AdmittanceParams& adm,
                                         const SaturationNL& sat, const CrossingSearch& search = {});

}  // namespace vfstab
