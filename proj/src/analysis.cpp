#include "vfstab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "vfstab/csv.hpp"

namespace vfstab {

const char* to_string(SweepParam p) {
    switch (p) {
        case SweepParam::kB: return "b";
        case SweepParam::kM: return "m";
        case SweepParam::kR: return "r";
    }
    return "?";
}

const char* to_string(SweepMetric m) { return m == SweepMetric::kD ? "d" : "Pk"; }

AdmittanceParams perturb(const AdmittanceParams& nominal, SweepParam which, double rel) {
    AdmittanceParams out = nominal;
    switch (which) {
        case SweepParam::kB: out.b *= 1.0 + rel; break;
        case SweepParam::kM: out.m *= 1.0 + rel; break;
        case SweepParam::kR:
            out.m *= 1.0 + rel;
            out.b *= 1.0 + rel;
            break;
    }
    return out;
}

std::vector<double> sweep_grid(double span, int points) {
    if (!(span > 0.0 && span < 1.0)) {
        throw std::invalid_argument("sweep span must lie in (0, 1)");
    }
    if (points < 3 || points % 2 == 0) {
        throw std::invalid_argument("sweep needs an odd number of points >= 3");
    }
    const int half = points / 2;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        out.push_back(span * static_cast<double>(i - half) / static_cast<double>(half));
    }
    return out;
}

namespace {

template <class Metric>
SensitivityCurve sweep(SweepParam which, SweepMetric metric_kind, double span, int points, double nominal,
                       Metric&& metric) {
    SensitivityCurve c;
    c.which_param = which;
    c.which_metric = metric_kind;
    c.nominal_metric = nominal;
    c.rel_param = sweep_grid(span, points);
    for (double rel : c.rel_param) {
        const double value = rel == 0.0 ? nominal : metric(rel);
        c.metric.push_back(value);
        c.rel_metric.push_back(rel == 0.0 ? 0.0 : (value - nominal) / nominal);
    }
    return c;
}

double steady_pk(const SimConfig& sim, const DetectionSettings& detection) {
    return analyze_oscillation(simulate(sim), detection).peak.pk;
}

}  // namespace

SensitivityCurve sensitivity_theoretical(const PlantParameters& p, const AdmittanceParams& nominal, SweepParam which,
                                         double span, int points, const CrossingSearch& search) {
    const DistanceResult d0 = distance_d(p, nominal, search);
    if (!d0.crossing_found || !(d0.d > 0.0)) {
        throw std::domain_error("d is zero at the nominal admittance (no negative-axis crossing); choose another nominal");
    }
    return sweep(which, SweepMetric::kD, span, points, d0.d,
                 [&](double rel) { return distance_d(p, perturb(nominal, which, rel), search).d; });
}

SensitivityCurve sensitivity_simulated(const SimConfig& sim, SweepParam which, double span, int points,
                                       const DetectionSettings& detection) {
    const auto* nominal = std::get_if<AdmittanceParams>(&sim.admittance);
    if (nominal == nullptr) {
        throw std::invalid_argument("simulated sensitivity needs a constant nominal admittance");
    }
    const Detection nominal_run = analyze_oscillation(simulate(sim), detection);
    if (!nominal_run.detected || !(nominal_run.peak.pk > 0.0)) {
        throw std::domain_error("no oscillation at the nominal admittance (Pk0 = " + format_number(nominal_run.peak.pk) +
                                " N); choose a nominal inside the oscillatory regime");
    }
    return sweep(which, SweepMetric::kPk, span, points, nominal_run.peak.pk, [&](double rel) {
        SimConfig cfg = sim;
        cfg.admittance = perturb(*nominal, which, rel);
        return steady_pk(cfg, detection);
    });
}

double effort(const SimTrace& trace) {
    if (trace.F_tau.empty()) {
        throw std::invalid_argument("effort of an empty trace");
    }
    double s = 0.0;
    for (double f : trace.F_tau) s += std::abs(f);
    return s / static_cast<double>(trace.F_tau.size());
}

double adaptive_effort(const SimConfig& sim, const AdaptationCenter& center) {
    SimConfig cfg = sim;
    cfg.admittance = center;
    return effort(simulate(cfg));
}

OptimizationResult optimize_center(const SimConfig& sim, double F0, const OptimizationSettings& settings) {
    if (!(F0 > 0.0)) {
        throw std::invalid_argument("baseline effort F0 must be positive");
    }
    const auto* p0 = std::get_if<AdmittanceParams>(&sim.admittance);
    if (p0 == nullptr) {
        throw std::invalid_argument("optimization needs the constant nominal admittance p0 in the template");
    }
    const double v0 = sim.vd.max_velocity();
    if (!(v0 > 0.0)) {
        throw std::invalid_argument("optimization needs a nonzero velocity profile");
    }

    OptimizationResult res;
    const auto probe = [&](double m_star, double b_star) {
        const AdaptationCenter c{m_star, b_star, v0, settings.spread};
        const double e = adaptive_effort(sim, c);
        res.probes.push_back({m_star, b_star, e, std::abs(e - F0)});
        return res.probes.back().J;
    };

    if (settings.mode == SearchMode::kRay) {
        // Golden-section search on alpha, p = alpha * p0.
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = settings.alpha_lo;
        double b = settings.alpha_hi;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = probe(c * p0->m, c * p0->b);
        double fd = probe(d * p0->m, d * p0->b);
        while (b - a > settings.alpha_tol) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = probe(c * p0->m, c * p0->b);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = probe(d * p0->m, d * p0->b);
            }
        }
        probe(settings.alpha_lo * p0->m, settings.alpha_lo * p0->b);
        probe(settings.alpha_hi * p0->m, settings.alpha_hi * p0->b);
        probe(0.5 * (a + b) * p0->m, 0.5 * (a + b) * p0->b);
    } else {
        const auto alphas = linspace(settings.alpha_lo, settings.alpha_hi, settings.grid_points);
        for (double am : alphas) {
            for (double ab : alphas) {
                probe(am * p0->m, ab * p0->b);
            }
        }
    }

    const auto best = std::min_element(res.probes.begin(), res.probes.end(),
                                       [](const Probe& x, const Probe& y) { return x.J < y.J; });
    res.center = {best->m_star, best->b_star, v0, settings.spread};
    res.alpha = best->m_star / p0->m;
    res.J = best->J;
    res.effort_adaptive = best->effort;
    res.warning = res.J > settings.warn_fraction * F0;
    return res;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) {
        throw std::invalid_argument("linspace needs at least one point");
    }
    if (count == 1) {
        return {lo};
    }
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1));
    }
    return out;
}

StabilityMap stability_map(const PlantParameters& p, double m_lo, double m_hi, double b_lo, double b_hi, int m_count,
                           int b_count, const CrossingSearch& search) {
    if (!(m_lo > 0.0 && m_hi >= m_lo && b_lo > 0.0 && b_hi >= b_lo)) {
        throw std::invalid_argument("stability map ranges must be positive and ordered");
    }
    StabilityMap map;
    map.m_values = linspace(m_lo, m_hi, m_count);
    map.b_values = linspace(b_lo, b_hi, b_count);
    for (double m : map.m_values) {
        for (double b : map.b_values) {
            const DistanceResult r = distance_d(p, {m, b}, search);
            map.cells.push_back({m, b, r.d, r.crossing_found, r.crossing_found && r.d > 1.0});
        }
    }
    return map;
}

std::vector<AdmittanceParams> adaptation_trajectory(const AdaptationCenter& center, int points) {
    std::vector<AdmittanceParams> out;
    for (double v : linspace(0.0, center.v0, points)) {
        out.push_back(adaptation_law(v, center));
    }
    return out;
}

void write_sensitivity_csv(std::ostream& os, const SensitivityCurve& c) {
    os << "rel_" << to_string(c.which_param) << ",rel_" << to_string(c.which_metric) << ','
       << to_string(c.which_metric) << '\n';
    for (std::size_t i = 0; i < c.rel_param.size(); ++i) {
        os << format_number(c.rel_param[i]) << ',' << format_number(c.rel_metric[i]) << ','
           << format_number(c.metric[i]) << '\n';
    }
}

void write_stability_csv(std::ostream& os, const StabilityMap& map) {
    os << "m,b,d,crossing_found,exists\n";
    for (const StabilityCell& c : map.cells) {
        os << format_number(c.m) << ',' << format_number(c.b) << ',' << format_number(c.d) << ','
           << (c.crossing_found ? 1 : 0) << ',' << (c.exists ? 1 : 0) << '\n';
    }
}

}  // namespace vfstab
