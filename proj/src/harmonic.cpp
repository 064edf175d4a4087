#include "vfstab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vfstab {

double describing_function(double amplitude, double level) {
    if (!(amplitude > 0.0) || !(level > 0.0)) {
        throw std::invalid_argument("describing function needs positive amplitude and level");
    }
    if (amplitude <= level) {
        return 1.0;
    }
    const double r = level / amplitude;
    return 2.0 / std::numbers::pi * (std::asin(r) + r * std::sqrt(1.0 - r * r));
}

double invert_describing_function(double f_target, double level) {
    if (!(f_target > 0.0 && f_target < 1.0)) {
        throw std::invalid_argument("describing function target must lie in (0, 1)");
    }
    if (!(level > 0.0)) {
        throw std::invalid_argument("saturation level must be positive");
    }
    double lo = level;
    double hi = 2.0 * level;
    while (describing_function(hi, level) > f_target) {
        lo = hi;
        hi *= 2.0;
    }
    // F is strictly decreasing on (S, inf).
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (describing_function(mid, level) > f_target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-15 * hi) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<Crossing> phase_crossings(const RationalTF& loop, double t0, const CrossingSearch& search) {
    if (!(search.omega_lo > 0.0) || !(search.omega_hi > search.omega_lo) || search.grid_points < 2) {
        throw std::invalid_argument("crossing search needs 0 < omega_lo < omega_hi and at least 2 grid points");
    }
    const auto eval = [&](double w) { return eval_delayed_loop(loop, t0, w); };

    const double log_lo = std::log(search.omega_lo);
    const double step = (std::log(search.omega_hi) - log_lo) / (search.grid_points - 1);

    std::vector<Crossing> out;
    double w_prev = search.omega_lo;
    Complex g_prev = eval(w_prev);
    for (int i = 1; i < search.grid_points; ++i) {
        const double w = i + 1 == search.grid_points ? search.omega_hi : std::exp(log_lo + step * i);
        const Complex g = eval(w);
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
            throw std::runtime_error("non-finite loop response during crossing search");
        }
        const bool sign_change = (g_prev.imag() < 0.0) != (g.imag() < 0.0) || g.imag() == 0.0;
        if (sign_change) {
            double a = w_prev;
            double b = w;
            double im_a = g_prev.imag();
            while (b - a > 1e-10 * b) {
                const double mid = 0.5 * (a + b);
                const double im_mid = eval(mid).imag();
                if ((im_mid < 0.0) == (im_a < 0.0) && im_mid != 0.0) {
                    a = mid;
                    im_a = im_mid;
                } else {
                    b = mid;
                }
            }
            const double wc = 0.5 * (a + b);
            const Complex gc = eval(wc);
            if (gc.real() < 0.0) {
                out.push_back({wc, std::abs(gc)});
            }
        }
        w_prev = w;
        g_prev = g;
    }
    return out;
}

std::vector<Crossing> phase_crossings(const PlantParameters& p, const AdmittanceParams& adm,
                                      const CrossingSearch& search) {
    return phase_crossings(build_analysis_loop(p, adm), p.t0, search);
}

DistanceResult distance_d(const PlantParameters& p, const AdmittanceParams& adm, const CrossingSearch& search) {
    DistanceResult r;
    r.crossings = phase_crossings(p, adm, search);
    for (const Crossing& c : r.crossings) {
        if (!r.crossing_found || c.magnitude > r.d) {
            r.d = c.magnitude;
            r.omega_c = c.omega;
            r.crossing_found = true;
        }
    }
    return r;
}

LimitCyclePrediction predict_limit_cycle(const PlantParameters& p, const AdmittanceParams& adm,
                                         const SaturationNL& sat, const CrossingSearch& search) {
    const DistanceResult dist = distance_d(p, adm, search);
    LimitCyclePrediction out;
    out.crossover_gain = dist.d;
    out.exists = dist.crossing_found && dist.d > 1.0;
    if (!out.exists) {
        return out;
    }
    const RationalTF loop = build_analysis_loop(p, adm);
    out.omega_c = dist.omega_c;
    out.frequency_hz = dist.omega_c / (2.0 * std::numbers::pi);
    out.amplitude = invert_describing_function(1.0 / dist.d, sat.level);
    out.harmonic_ratio = std::abs(eval_delayed_loop(loop, p.t0, 3.0 * dist.omega_c)) / dist.d;
    for (const Crossing& c : dist.crossings) {
        if (c.magnitude > 1.0 && c.omega != dist.omega_c) {
            out.alternates.push_back(c);
        }
    }
    return out;
}

}  // namespace vfstab
