// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Lines tagged "info" are diagnostics and never gate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vfstab/cli.hpp"

using namespace vfstab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_s) {
        o.pass = false;
        o.detail += "; runtime over budget";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d %s: %s (%.2f s, budget %.0f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
                budget_s);
    std::fflush(stdout);
}

void info(const std::string& text) {
    std::printf("[info] %s\n", text.c_str());
    std::fflush(stdout);
}

std::string fmt(double x, int prec = 4) {
    std::ostringstream ss;
    ss.precision(prec);
    ss << x;
    return ss.str();
}

double worst_coeff_rel(const RationalTF& block, const std::pair<Polynomial, Polynomial>& closed) {
    const RationalTF ref = canonicalize(RationalTF(closed.first, closed.second));
    if (block.num().degree() != ref.num().degree() || block.den().degree() != ref.den().degree()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    const auto cmp = [&](const Polynomial& a, const Polynomial& b) {
        for (int i = 0; i <= b.degree(); ++i) {
            const double diff = std::abs(a.coeff(i) - b.coeff(i));
            if (diff > 0.0) worst = std::max(worst, diff / std::abs(b.coeff(i)));
        }
    };
    cmp(block.num(), ref.num());
    cmp(block.den(), ref.den());
    return worst;
}

// Ordering |S_b| > |S_r| > |S_m| at index i of curves listed as b, m, r.
bool ordered(const SensitivityCurve& b, const SensitivityCurve& m, const SensitivityCurve& r, std::size_t i) {
    const double sb = std::abs(b.sensitivity(i));
    const double sm = std::abs(m.sensitivity(i));
    const double sr = std::abs(r.sensitivity(i));
    return sb > sr && sr > sm;
}

std::string endpoint_text(const char* tag, const SensitivityCurve& b, const SensitivityCurve& m,
                          const SensitivityCurve& r, std::size_t i) {
    return std::string(tag) + " |S_b|=" + fmt(std::abs(b.sensitivity(i))) + " |S_r|=" + fmt(std::abs(r.sensitivity(i))) +
           " |S_m|=" + fmt(std::abs(m.sensitivity(i))) + (ordered(b, m, r, i) ? " ok" : " VIOLATED");
}

SweepTable grid_at(double t0) {
    RunConfig cfg;
    cfg.plant.t0 = t0;
    return run_sweep(cfg);
}

const SweepCell& cell(const SweepTable& t, double m, double b) {
    for (const SweepCell& c : t.cells) {
        if (std::abs(c.m - m) < 1e-9 && std::abs(c.b - b) < 1e-9) return c;
    }
    throw std::runtime_error("grid cell not found");
}

struct FrequencyMatch {
    int predicted = 0;
    int matched = 0;
    double worst = 0.0;
};

FrequencyMatch frequency_match(const SweepTable& t) {
    FrequencyMatch f;
    for (const SweepCell& c : t.cells) {
        if (!c.predicted) continue;
        ++f.predicted;
        const double err = std::abs(c.f_dominant - c.f_lc) / c.f_lc;
        f.worst = std::max(f.worst, err);
        if (err <= 0.10) ++f.matched;
    }
    return f;
}

}  // namespace

int main() {
    const PlantParameters nominal;
    const AdmittanceParams p0{0.6, 1.0};

    criterion(1, "appendix oracle equivalence", 1.0, [&] {
        std::mt19937 rng(20240);
        std::uniform_real_distribution<double> u(0.5, 1.5);
        double worst_gc = worst_coeff_rel(build_controlled_tf(nominal), appendix_Gc_coeffs(nominal));
        double worst_gl = worst_coeff_rel(build_loop_gain(nominal, p0), appendix_Gl_coeffs(nominal, p0));
        for (int draw = 0; draw < 100; ++draw) {
            PlantParameters p = nominal;
            for (double* f : {&p.J_l, &p.K_el, &p.D_el, &p.n, &p.J_m, &p.D_m, &p.K_h, &p.b_h, &p.K_P, &p.K_D}) {
                *f *= u(rng);
            }
            const AdmittanceParams a{p0.m * u(rng), p0.b * u(rng)};
            worst_gc = std::max(worst_gc, worst_coeff_rel(build_controlled_tf(p), appendix_Gc_coeffs(p)));
            worst_gl = std::max(worst_gl, worst_coeff_rel(build_loop_gain(p, a), appendix_Gl_coeffs(p, a)));
        }
        return Outcome{worst_gc <= 1e-8 && worst_gl <= 1e-8,
                       "nominal + 100 draws, worst coefficient rel. error G_c " + fmt(worst_gc, 3) + ", G_l " +
                           fmt(worst_gl, 3) + " (closed-form beta_2 taken with the primed b_1')"};
    });

    criterion(2, "describing function vs first-harmonic integral", 1.0, [&] {
        const double S = nominal.v_max;
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double X = S * std::pow(10.0, -1.0 + 3.0 * i / 199.0);
            worst = std::max(worst, std::abs(describing_function(X, S) - oracle::first_harmonic_gain(X, S)));
        }
        return Outcome{worst <= 1e-8, "200 amplitudes in [0.1S, 100S], max abs error " + fmt(worst, 3)};
    });

    criterion(3, "no-delay stability", 1.0, [&] {
        PlantParameters p = nominal;
        p.t0 = 0.0;
        const DistanceResult r = distance_d(p, p0);
        int above = 0;
        for (const Crossing& c : r.crossings) above += c.magnitude > 1.0 ? 1 : 0;
        const bool lc = predict_limit_cycle(p, p0, SaturationNL{p.v_max}).exists;
        return Outcome{above == 0 && !lc, std::to_string(r.crossings.size()) + " negative-axis crossing(s), d = " +
                                              fmt(r.d) + ", limit cycle predicted: " + (lc ? "yes" : "no")};
    });

    SweepTable grid;
    criterion(4, "limit-cycle dichotomy on the 7x11 grid", 300.0, [&] {
        grid = grid_at(nominal.t0);
        const double rate = grid.agreement_rate();
        const SweepCell& soft = cell(grid, 0.3, 0.5);
        const SweepCell& stiff = cell(grid, 0.9, 1.5);
        const SweepCell* argmax = &grid.cells.front();
        int predicted = 0;
        int detected = 0;
        for (const SweepCell& c : grid.cells) {
            if (c.d > argmax->d) argmax = &c;
            predicted += c.predicted;
            detected += c.detection.detected;
        }
        const bool corner_d = argmax == &soft;
        const bool corner_pk = soft.detection.peak.pk > stiff.detection.peak.pk;
        return Outcome{rate >= 0.9 && corner_d && corner_pk,
                       "agreement " + fmt(rate) + " (" + std::to_string(predicted) + " predicted, " +
                           std::to_string(detected) + " detected); d(0.3,0.5) = " + fmt(soft.d) + ", grid max d = " +
                           fmt(argmax->d) + " at (" + fmt(argmax->m) + "," + fmt(argmax->b) + ")" +
                           (corner_d ? "" : " VIOLATED") + "; Pk(0.3,0.5) = " + fmt(soft.detection.peak.pk, 3) +
                           " > Pk(0.9,1.5) = " + fmt(stiff.detection.peak.pk, 3) + (corner_pk ? "" : " VIOLATED")};
    });

    criterion(5, "predicted vs simulated limit-cycle frequency", 300.0, [&] {
        if (grid.cells.empty()) throw std::runtime_error("grid from criterion 4 unavailable");
        const FrequencyMatch f = frequency_match(grid);
        if (f.predicted == 0) {
            return Outcome{true, "vacuous: no grid cell has a predicted limit cycle at t0 = " + fmt(nominal.t0)};
        }
        return Outcome{f.matched == f.predicted, std::to_string(f.matched) + "/" + std::to_string(f.predicted) +
                                                     " cells within 10%, worst " + fmt(f.worst)};
    });

    criterion(6, "sensitivity ordering", 600.0, [&] {
        const auto theo = [&](SweepParam w) { return sensitivity_theoretical(nominal, p0, w); };
        const SensitivityCurve db = theo(SweepParam::kB);
        const SensitivityCurve dm = theo(SweepParam::kM);
        const SensitivityCurve dr = theo(SweepParam::kR);
        const std::size_t last = db.rel_param.size() - 1;
        bool ok = ordered(db, dm, dr, 0) && ordered(db, dm, dr, last);
        bool positive = true;
        for (std::size_t i = 0; i < db.rel_param.size(); ++i) {
            if (db.rel_param[i] < 0.0 && !(db.rel_metric[i] > 0.0)) positive = false;
        }
        ok = ok && positive;
        std::string detail = "d: " + endpoint_text("-50%", db, dm, dr, 0) + ", " +
                             endpoint_text("+50%", db, dm, dr, last) + "; delta d > 0 for all negative b steps: " +
                             (positive ? "yes" : "no");
        SimConfig sim;
        sim.admittance = p0;
        try {
            const SensitivityCurve pb = sensitivity_simulated(sim, SweepParam::kB);
            const SensitivityCurve pm = sensitivity_simulated(sim, SweepParam::kM);
            const SensitivityCurve pr = sensitivity_simulated(sim, SweepParam::kR);
            ok = ok && ordered(pb, pm, pr, 0) && ordered(pb, pm, pr, last);
            detail += "; Pk: " + endpoint_text("-50%", pb, pm, pr, 0) + ", " + endpoint_text("+50%", pb, pm, pr, last);
        } catch (const std::domain_error& e) {
            ok = false;
            detail += std::string("; Pk family unavailable: ") + e.what();
        }
        return Outcome{ok, detail};
    });

    criterion(7, "transparency optimization structure", 600.0, [&] {
        const OptimizeReport r = run_optimize(RunConfig{});
        const double gap = std::abs(r.result.effort_adaptive - r.effort_p0) / r.effort_p0;
        const double penalty = r.effort_const_star / r.effort_p0 - 1.0;
        double max_d = 0.0;
        for (double d : r.trajectory_d) max_d = std::max(max_d, d);
        return Outcome{gap <= 0.05 && penalty >= 0.15 && r.trajectory_stable,
                       "alpha* = " + fmt(r.result.alpha) + ", F0 = " + fmt(r.effort_p0) + ", adaptive gap " +
                           fmt(100.0 * gap, 3) + "%, constant p* penalty +" + fmt(100.0 * penalty, 3) +
                           "%, max d on trajectory " + fmt(max_d)};
    });

    criterion(8, "numerical hygiene", 60.0, [&] {
        std::string detail;
        bool ok = true;

        SimConfig c;
        const SimTrace coarse = simulate(c);
        SimConfig half = c;
        half.dt /= 2.0;
        const SimTrace fine = simulate(half);
        double rk4 = 0.0;
        const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-3); };
        rk4 = std::max({rel(coarse.v.back(), fine.v.back()), rel(coarse.l.back(), fine.l.back()),
                        rel(coarse.x_dot.back(), fine.x_dot.back()), rel(coarse.F_tau.back(), fine.F_tau.back())});
        ok = ok && rk4 < 1e-4;
        detail += "RK4 halving " + fmt(rk4, 3);

        SimConfig lin;
        lin.plant.t0 = 0.0;
        lin.plant.v_max = std::numeric_limits<double>::infinity();
        const SimTrace base = simulate(lin);
        lin.vd.peak *= 2.5;
        const SimTrace scaled = simulate(lin);
        double lin_err = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            lin_err = std::max({lin_err, std::abs(scaled.F_tau[i] - 2.5 * base.F_tau[i]),
                                std::abs(scaled.v[i] - 2.5 * base.v[i]), std::abs(scaled.l[i] - 2.5 * base.l[i])});
            scale = std::max({scale, std::abs(scaled.F_tau[i]), std::abs(scaled.v[i]), std::abs(scaled.l[i])});
        }
        lin_err /= scale;
        ok = ok && lin_err <= 1e-8;
        detail += ", linearity " + fmt(lin_err, 3);

        const Spectrum spec = amplitude_spectrum(coarse.F_tau, coarse.dt, Window::kHann);
        const std::size_t n = spec.samples_used;
        const std::size_t off = coarse.F_tau.size() - n;
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += coarse.F_tau[off + i];
        mean /= static_cast<double>(n);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
            num += std::pow(w * (coarse.F_tau[off + i] - mean), 2);
            den += w * w;
        }
        const double parseval = std::abs(spectrum_power(spec) - num / den) / (num / den);
        ok = ok && parseval <= 1e-6;
        detail += ", Parseval " + fmt(parseval, 3);

        double ss = 0.0;
        for (const RationalTF& g : {build_controlled_tf(nominal), build_motor_to_link_tf(nominal),
                                    build_robot_tf(nominal)}) {
            const StateSpace realization = tf_to_statespace(g);
            for (double w = 0.1; w <= 1e4; w *= 1.25) {
                const Complex ref = tf_freq_response(g, w);
                ss = std::max(ss, std::abs(realization.freq_response(w) - ref) / std::abs(ref));
            }
        }
        ok = ok && ss <= 1e-8;
        detail += ", state-space vs rational " + fmt(ss, 3);
        return Outcome{ok, detail};
    });

    // Diagnostics in the oscillatory regime (longer delay). Not criteria.
    try {
        const double t0 = 0.012;
        const SweepTable g = grid_at(t0);
        const FrequencyMatch f = frequency_match(g);
        const SweepCell* argmax = &g.cells.front();
        for (const SweepCell& c : g.cells) {
            if (c.d > argmax->d) argmax = &c;
        }
        info("t0 = " + fmt(t0) + ": agreement " + fmt(g.agreement_rate()) + ", frequency within 10% in " +
             std::to_string(f.matched) + "/" + std::to_string(f.predicted) + " predicted cells (worst " +
             fmt(f.worst) + "), grid max d = " + fmt(argmax->d) + " at (" + fmt(argmax->m) + "," + fmt(argmax->b) +
             "), d(0.3,0.5) = " + fmt(cell(g, 0.3, 0.5).d));
        PlantParameters p = nominal;
        p.t0 = t0;
        const SensitivityCurve db = sensitivity_theoretical(p, p0, SweepParam::kB);
        const SensitivityCurve dm = sensitivity_theoretical(p, p0, SweepParam::kM);
        const SensitivityCurve dr = sensitivity_theoretical(p, p0, SweepParam::kR);
        info("t0 = " + fmt(t0) + " d sensitivities: " + endpoint_text("-50%", db, dm, dr, 0) + ", " +
             endpoint_text("+50%", db, dm, dr, db.rel_param.size() - 1));
    } catch (const std::exception& e) {
        info(std::string("oscillatory-regime diagnostics failed: ") + e.what());
    }

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
