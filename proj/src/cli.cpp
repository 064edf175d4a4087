#include "vfstab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vfstab/csv.hpp"
#include "vfstab/errors.hpp"
#include "vfstab/svg.hpp"

namespace vfstab {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + p.string());
    }
    return os;
}

void write_text(const fs::path& p, const std::string& text) { open_out(p) << text; }

class Summary {
public:
    void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
    void add(const std::string& key, double value) { add(key, format_number(value)); }
    void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }

    void write(const fs::path& p) const {
        std::ofstream os = open_out(p);
        os << "key,value\n";
        for (const auto& [k, v] : rows_) os << k << ',' << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

template <class F>
void parallel_for(std::size_t n, F&& body) {
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// Min/max envelope so long traces stay small in SVG without hiding oscillations.
svg::Series envelope(const std::vector<double>& t, const std::vector<double>& y, std::string color,
                     std::string label, std::size_t buckets = 2000) {
    svg::Series s;
    s.color = std::move(color);
    s.label = std::move(label);
    const std::size_t n = std::min(t.size(), y.size());
    const std::size_t stride = std::max<std::size_t>(1, (n + buckets - 1) / buckets);
    for (std::size_t i = 0; i < n; i += stride) {
        const std::size_t end = std::min(n, i + stride);
        const auto [lo, hi] = std::minmax_element(y.begin() + static_cast<std::ptrdiff_t>(i),
                                                  y.begin() + static_cast<std::ptrdiff_t>(end));
        const bool lo_first = lo < hi;
        s.x.push_back(t[i]);
        s.y.push_back(lo_first ? *lo : *hi);
        if (stride > 1) {
            s.x.push_back(t[end - 1]);
            s.y.push_back(lo_first ? *hi : *lo);
        }
    }
    return s;
}

std::vector<double> log_grid(const CrossingSearch& search) {
    std::vector<double> w;
    const double a = std::log10(search.omega_lo);
    const double b = std::log10(search.omega_hi);
    for (int i = 0; i < search.grid_points; ++i) {
        w.push_back(std::pow(10.0, a + (b - a) * i / (search.grid_points - 1)));
    }
    return w;
}

std::string opt_number(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

std::string nyquist_svg(const RationalTF& loop, double t0, double level, const DistanceResult& dist,
                        const CrossingSearch& search) {
    svg::Series curve;
    curve.label = "G_l0(jw)";
    for (double w : log_grid(search)) {
        const Complex g = eval_delayed_loop(loop, t0, w);
        curve.x.push_back(g.real());
        curve.y.push_back(g.imag());
    }
    svg::Series locus;
    locus.color = "#d62728";
    locus.label = "-1/F(X)";
    locus.dashed = true;
    for (double r = 1.0; r <= 1000.0; r *= 1.05) {
        locus.x.push_back(-1.0 / describing_function(r * level, level));
        locus.y.push_back(0.0);
    }
    svg::Series marks;
    marks.markers = true;
    marks.color = "#2ca02c";
    marks.label = "crossings";
    for (const Crossing& c : dist.crossings) {
        marks.x.push_back(-c.magnitude);
        marks.y.push_back(0.0);
    }
    svg::Series critical{{-1.0}, {0.0}, "black", "-1", true, false};

    const double r = std::max(1.5, 1.3 * dist.d);
    svg::Axes axes;
    axes.title = "Nyquist plot of the delayed loop";
    axes.xlabel = "Re";
    axes.ylabel = "Im";
    axes.xlim = {{-r, 0.5 * r}};
    axes.ylim = {{-r, r}};
    return svg::line_plot(axes, {curve, locus, marks, critical});
}

void write_stability_svg(const fs::path& p, const StabilityMap& map, const std::vector<svg::Series>& overlays,
                         const std::string& title) {
    svg::Heatmap h;
    h.x = map.b_values;
    h.y = map.m_values;
    h.colorbar_label = "d (outlined: d > 1)";
    for (const StabilityCell& c : map.cells) {
        h.values.push_back(c.d);
        h.flagged.push_back(c.exists);
    }
    svg::Axes axes;
    axes.title = title;
    axes.xlabel = "b [N s/m]";
    axes.ylabel = "m [kg]";
    write_text(p, svg::heatmap(axes, h, overlays));
}

}  // namespace

double SweepTable::agreement_rate() const {
    if (cells.empty()) return 0.0;
    const auto n = std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) { return c.agrees(); });
    return static_cast<double>(n) / static_cast<double>(cells.size());
}

SweepTable run_sweep(const RunConfig& cfg) {
    SweepTable table;
    table.m_values = linspace(cfg.sweep.m_lo, cfg.sweep.m_hi, cfg.sweep.m_count);
    table.b_values = linspace(cfg.sweep.b_lo, cfg.sweep.b_hi, cfg.sweep.b_count);
    for (double m : table.m_values) {
        for (double b : table.b_values) {
            SweepCell c;
            c.m = m;
            c.b = b;
            table.cells.push_back(c);
        }
    }
    const SimConfig base = cfg.sim_config();
    parallel_for(table.cells.size(), [&](std::size_t i) {
        SweepCell& c = table.cells[i];
        const AdmittanceParams adm{c.m, c.b};
        const LimitCyclePrediction pred = predict_limit_cycle(cfg.plant, adm, SaturationNL{cfg.plant.v_max}, cfg.search);
        const DistanceResult dist = distance_d(cfg.plant, adm, cfg.search);
        c.d = dist.d;
        c.crossing_found = dist.crossing_found;
        c.predicted = pred.exists;
        c.f_lc = pred.frequency_hz.value_or(0.0);
        c.X_lc = pred.amplitude.value_or(0.0);
        SimConfig sim = base;
        sim.admittance = adm;
        try {
            const SimTrace trace = simulate(sim);
            c.detection = analyze_oscillation(trace, cfg.detection);
            c.f_dominant = peak_high_freq(detection_spectrum(trace, cfg.detection), 0.0).f_refined;
        } catch (const DivergenceError&) {
            c.diverged = true;
            c.detection.detected = true;
        }
    });
    return table;
}

int cmd_analyze(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const RationalTF loop = build_analysis_loop(cfg.plant, cfg.adm);
    const double t0 = cfg.plant.t0;
    {
        std::ofstream os = open_out(out / "nyquist.csv");
        os << "omega,re,im\n";
        for (double w : log_grid(cfg.search)) {
            const Complex g = eval_delayed_loop(loop, t0, w);
            os << format_number(w) << ',' << format_number(g.real()) << ',' << format_number(g.imag()) << '\n';
        }
    }
    const DistanceResult dist = distance_d(cfg.plant, cfg.adm, cfg.search);
    {
        std::ofstream os = open_out(out / "crossings.csv");
        os << "omega,freq_hz,magnitude\n";
        for (const Crossing& c : dist.crossings) {
            os << format_number(c.omega) << ',' << format_number(c.omega / (2.0 * M_PI)) << ','
               << format_number(c.magnitude) << '\n';
        }
    }
    const LimitCyclePrediction pred =
        predict_limit_cycle(cfg.plant, cfg.adm, SaturationNL{cfg.plant.v_max}, cfg.search);
    {
        std::ofstream os = open_out(out / "prediction.csv");
        os << "m,b,t0,d,crossing_found,exists,X_lc,f_lc,omega_c,harmonic_ratio\n";
        os << format_number(cfg.adm.m) << ',' << format_number(cfg.adm.b) << ',' << format_number(t0) << ','
           << format_number(dist.d) << ',' << (dist.crossing_found ? 1 : 0) << ',' << (pred.exists ? 1 : 0) << ','
           << opt_number(pred.amplitude) << ',' << opt_number(pred.frequency_hz) << ',' << opt_number(pred.omega_c)
           << ',' << opt_number(pred.harmonic_ratio) << '\n';
    }
    write_text(out / "nyquist.svg", nyquist_svg(loop, t0, cfg.plant.v_max, dist, cfg.search));

    log << "d = " << format_number(dist.d);
    if (dist.crossing_found) log << " (crossing at " << format_number(dist.omega_c) << " rad/s)";
    log << '\n';
    if (pred.exists) {
        log << "limit cycle predicted: X = " << format_number(*pred.amplitude) << " m/s, f = "
            << format_number(*pred.frequency_hz) << " Hz\n";
    } else {
        log << "no limit cycle predicted\n";
    }
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const SimTrace trace = simulate(cfg.sim_config());
    {
        std::ofstream os = open_out(out / "trace.csv");
        write_trace_csv(os, trace);
    }
    const Spectrum spec = detection_spectrum(trace, cfg.detection);
    {
        std::ofstream os = open_out(out / "spectrum.csv");
        write_spectrum_csv(os, spec);
    }
    const Detection det = analyze_oscillation(trace, cfg.detection);
    const auto sat_steps = std::count(trace.sat_active.begin(), trace.sat_active.end(), std::uint8_t{1});

    Summary s;
    s.add("Pk", det.peak.pk);
    s.add("f_peak", det.peak.f_peak);
    s.add("f_refined", det.peak.f_refined);
    s.add("threshold", det.threshold);
    s.add("oscillation_detected", det.detected);
    s.add("effort", effort(trace));
    s.add("saturated_fraction", static_cast<double>(sat_steps) / static_cast<double>(trace.size()));
    if (!cfg.adaptive) {
        const LimitCyclePrediction pred =
            predict_limit_cycle(cfg.plant, cfg.adm, SaturationNL{cfg.plant.v_max}, cfg.search);
        s.add("d", pred.crossover_gain);
        s.add("limit_cycle_predicted", pred.exists);
        s.add("f_lc", opt_number(pred.frequency_hz));
    }
    s.write(out / "summary.csv");

    std::vector<double> vd;
    for (double t : trace.t) vd.push_back(cfg.vd.velocity(t));
    svg::Axes fa{"Tangential human force", "t [s]", "F_tau [N]", false, {}, {}};
    write_text(out / "force.svg", svg::line_plot(fa, {envelope(trace.t, trace.F_tau, "#1f77b4", "F_tau")}));
    svg::Axes va{"Velocities", "t [s]", "[m/s]", false, {}, {}};
    write_text(out / "velocity.svg",
               svg::line_plot(va, {envelope(trace.t, trace.v, "#1f77b4", "proxy v"),
                                   envelope(trace.t, trace.x_dot, "#ff7f0e", "robot x_dot"),
                                   envelope(trace.t, vd, "#7f7f7f", "v_d")}));
    svg::Series amp{spec.freqs, spec.mags, "#1f77b4", "|FFT(F_tau)|", false, false};
    const double f_hi = std::min(spec.freqs.back(), 25.0);
    svg::Series thr{{cfg.detection.f_min, f_hi}, {det.threshold, det.threshold}, "#d62728", "threshold", false, true};
    svg::Axes sa{"Amplitude spectrum of F_tau", "f [Hz]", "[N]", false, {{0.0, f_hi}}, {}};
    write_text(out / "spectrum.svg", svg::line_plot(sa, {amp, thr}));

    log << "Pk = " << format_number(det.peak.pk) << " N at " << format_number(det.peak.f_refined) << " Hz, "
        << "oscillation " << (det.detected ? "detected" : "not detected") << '\n';
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const SweepTable table = run_sweep(cfg);
    {
        std::ofstream os = open_out(out / "grid.csv");
        os << "m,b,d,crossing_found,exists,X_lc,f_lc,Pk,f_peak,f_refined,f_dominant,detected,diverged,agree\n";
        for (const SweepCell& c : table.cells) {
            os << format_number(c.m) << ',' << format_number(c.b) << ',' << format_number(c.d) << ','
               << (c.crossing_found ? 1 : 0) << ',' << (c.predicted ? 1 : 0) << ',' << format_number(c.X_lc) << ','
               << format_number(c.f_lc) << ',' << format_number(c.detection.peak.pk) << ','
               << format_number(c.detection.peak.f_peak) << ',' << format_number(c.detection.peak.f_refined) << ',' << format_number(c.f_dominant) << ','
               << (c.detection.detected ? 1 : 0) << ',' << (c.diverged ? 1 : 0) << ',' << (c.agrees() ? 1 : 0)
               << '\n';
        }
    }
    const auto max_d = std::max_element(table.cells.begin(), table.cells.end(),
                                        [](const SweepCell& a, const SweepCell& b) { return a.d < b.d; });
    double worst_freq = 0.0;
    int predicted = 0;
    int detected = 0;
    for (const SweepCell& c : table.cells) {
        predicted += c.predicted ? 1 : 0;
        detected += c.detection.detected ? 1 : 0;
        if (c.predicted && c.f_lc > 0.0) {
            worst_freq = std::max(worst_freq, std::abs(c.f_dominant - c.f_lc) / c.f_lc);
        }
    }
    Summary s;
    s.add("cells", static_cast<int>(table.cells.size()));
    s.add("predicted_cells", predicted);
    s.add("detected_cells", detected);
    s.add("agreement_rate", table.agreement_rate());
    s.add("max_d", max_d->d);
    s.add("max_d_m", max_d->m);
    s.add("max_d_b", max_d->b);
    s.add("max_relative_frequency_error", worst_freq);
    s.write(out / "summary.csv");

    svg::Heatmap dmap;
    svg::Heatmap pmap;
    dmap.x = pmap.x = table.b_values;
    dmap.y = pmap.y = table.m_values;
    dmap.colorbar_label = "d (outlined: limit cycle predicted)";
    pmap.colorbar_label = "log10 Pk [N] (outlined: oscillation detected)";
    for (const SweepCell& c : table.cells) {
        dmap.values.push_back(c.d);
        dmap.flagged.push_back(c.predicted);
        pmap.values.push_back(std::log10(std::max(c.detection.peak.pk, 1e-12)));
        pmap.flagged.push_back(c.detection.detected);
    }
    svg::Axes axes{"Distance d over the admittance grid", "b [N s/m]", "m [kg]", false, {}, {}};
    write_text(out / "d_map.svg", svg::heatmap(axes, dmap));
    axes.title = "Simulated Pk over the admittance grid";
    write_text(out / "pk_map.svg", svg::heatmap(axes, pmap));

    log << table.cells.size() << " cells, " << predicted << " predicted, " << detected
        << " detected, agreement " << format_number(table.agreement_rate()) << '\n';
    return kExitOk;
}

int cmd_sensitivity(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const SweepParam params[] = {SweepParam::kB, SweepParam::kM, SweepParam::kR};
    const int last = cfg.sensitivity.points - 1;
    const auto name = [](SweepParam p, SweepMetric m) {
        return std::string("sens_") + to_string(m) + '_' + to_string(p) + ".csv";
    };
    const auto panel_rows = [](const std::vector<SensitivityCurve>& curves, const std::string& metric) {
        std::vector<std::pair<svg::Axes, std::vector<svg::Series>>> rows;
        for (const SensitivityCurve& c : curves) {
            svg::Axes a;
            a.title = "Relative change of " + metric + " versus " + to_string(c.which_param);
            a.xlabel = std::string("d") + to_string(c.which_param) + " / " + to_string(c.which_param) + "0";
            a.ylabel = "d" + metric + " / " + metric + "0";
            rows.push_back({a, {svg::Series{c.rel_param, c.rel_metric, "#1f77b4", "", false, false},
                                svg::Series{c.rel_param, c.rel_metric, "#1f77b4", "", true, false}}});
        }
        return rows;
    };

    Summary s;
    std::vector<SensitivityCurve> theo;
    for (SweepParam p : params) {
        theo.push_back(sensitivity_theoretical(cfg.plant, cfg.adm, p, cfg.sensitivity.span, cfg.sensitivity.points,
                                               cfg.search));
        std::ofstream os = open_out(out / name(p, SweepMetric::kD));
        write_sensitivity_csv(os, theo.back());
    }
    write_text(out / "sensitivity_d.svg", svg::panels(panel_rows(theo, "d")));

    const auto ordered = [](const std::vector<SensitivityCurve>& c, int i) {
        const double sb = std::abs(c[0].sensitivity(i));
        const double sm = std::abs(c[1].sensitivity(i));
        const double sr = std::abs(c[2].sensitivity(i));
        return sb > sr && sr > sm;
    };
    const auto report = [&](const std::vector<SensitivityCurve>& c, const std::string& metric) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            const std::string base = "S_" + metric + "_" + to_string(params[k]);
            s.add(base + "_minus", c[k].sensitivity(0));
            s.add(base + "_plus", c[k].sensitivity(last));
        }
        const bool lo = ordered(c, 0);
        const bool hi = ordered(c, last);
        s.add("ordering_" + metric + "_minus", lo);
        s.add("ordering_" + metric + "_plus", hi);
        log << metric << " ordering |S_b| > |S_r| > |S_m|: " << (lo ? "holds" : "fails") << " at -span, "
            << (hi ? "holds" : "fails") << " at +span\n";
    };
    report(theo, "d");
    bool positive = true;
    for (std::size_t i = 0; i < theo[0].rel_param.size(); ++i) {
        if (theo[0].rel_param[i] < 0.0 && !(theo[0].rel_metric[i] > 0.0)) positive = false;
    }
    s.add("delta_d_positive_for_negative_b", positive);

    try {
        std::vector<SensitivityCurve> sim;
        SimConfig base = cfg.sim_config();
        base.admittance = cfg.adm;
        for (SweepParam p : params) {
            sim.push_back(sensitivity_simulated(base, p, cfg.sensitivity.span, cfg.sensitivity.points, cfg.detection));
            std::ofstream os = open_out(out / name(p, SweepMetric::kPk));
            write_sensitivity_csv(os, sim.back());
        }
        write_text(out / "sensitivity_pk.svg", svg::panels(panel_rows(sim, "Pk")));
        report(sim, "pk");
    } catch (const std::domain_error&) {
        s.add("simulated_family", std::string("unavailable"));
        s.write(out / "summary.csv");
        throw;
    }
    s.write(out / "summary.csv");
    return kExitOk;
}

OptimizeReport run_optimize(const RunConfig& cfg) {
    SimConfig sim = cfg.sim_config();
    sim.admittance = cfg.adm;
    OptimizeReport r;
    r.effort_p0 = effort(simulate(sim));
    OptimizationSettings settings = cfg.optimize;
    r.result = optimize_center(sim, r.effort_p0, settings);
    SimConfig at_star = sim;
    at_star.admittance = AdmittanceParams{r.result.center.m_star, r.result.center.b_star};
    r.effort_const_star = effort(simulate(at_star));
    r.trajectory = adaptation_trajectory(r.result.center);
    r.trajectory_stable = true;
    for (const AdmittanceParams& a : r.trajectory) {
        const DistanceResult d = distance_d(cfg.plant, a, cfg.search);
        r.trajectory_d.push_back(d.d);
        if (!(d.d < 1.0)) r.trajectory_stable = false;
    }
    return r;
}

int cmd_optimize(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const OptimizeReport r = run_optimize(cfg);
    const OptimizationResult& res = r.result;
    {
        std::ofstream os = open_out(out / "effort_table.csv");
        os << "constant_p0,constant_p_star,adaptive_p_star\n";
        os << format_number(r.effort_p0) << ',' << format_number(r.effort_const_star) << ','
           << format_number(res.effort_adaptive) << '\n';
    }
    {
        std::ofstream os = open_out(out / "probes.csv");
        os << "m_star,b_star,effort,J\n";
        for (const Probe& p : res.probes) {
            os << format_number(p.m_star) << ',' << format_number(p.b_star) << ',' << format_number(p.effort) << ','
               << format_number(p.J) << '\n';
        }
    }
    {
        std::ofstream os = open_out(out / "trajectory.csv");
        os << "m,b,d\n";
        for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
            os << format_number(r.trajectory[i].m) << ',' << format_number(r.trajectory[i].b) << ','
               << format_number(r.trajectory_d[i]) << '\n';
        }
    }
    Summary s;
    s.add("alpha", res.alpha);
    s.add("m_star", res.center.m_star);
    s.add("b_star", res.center.b_star);
    s.add("J", res.J);
    s.add("effort_gap", std::abs(res.effort_adaptive - r.effort_p0) / r.effort_p0);
    s.add("constant_penalty", r.effort_const_star / r.effort_p0 - 1.0);
    s.add("trajectory_stable", r.trajectory_stable);
    s.add("warning", res.warning);
    s.write(out / "summary.csv");

    double m_lo = cfg.sweep.m_lo, m_hi = cfg.sweep.m_hi, b_lo = cfg.sweep.b_lo, b_hi = cfg.sweep.b_hi;
    for (const AdmittanceParams& a : r.trajectory) {
        m_lo = std::min(m_lo, a.m);
        m_hi = std::max(m_hi, a.m);
        b_lo = std::min(b_lo, a.b);
        b_hi = std::max(b_hi, a.b);
    }
    const StabilityMap map = stability_map(cfg.plant, m_lo, m_hi, b_lo, b_hi, 25, 25, cfg.search);
    {
        std::ofstream os = open_out(out / "stability_map.csv");
        write_stability_csv(os, map);
    }
    svg::Series traj;
    traj.color = "white";
    traj.label = "adaptation trajectory";
    for (const AdmittanceParams& a : r.trajectory) {
        traj.x.push_back(a.b);
        traj.y.push_back(a.m);
    }
    svg::Series p0{{cfg.adm.b}, {cfg.adm.m}, "black", "p0", true, false};
    svg::Series ps{{res.center.b_star}, {res.center.m_star}, "#2ca02c", "p*", true, false};
    write_stability_svg(out / "stability_map.svg", map, {traj, p0, ps}, "Stability map and adaptation trajectory");

    log << "alpha* = " << format_number(res.alpha) << ", efforts: p0 " << format_number(r.effort_p0)
        << ", constant p* " << format_number(r.effort_const_star) << ", adaptive p* "
        << format_number(res.effort_adaptive) << '\n';
    log << "trajectory " << (r.trajectory_stable ? "stays in" : "leaves") << " the d < 1 region\n";
    if (res.warning) {
        log << "warning: best J = " << format_number(res.J) << " exceeds " << format_number(cfg.optimize.warn_fraction)
            << " x F0\n";
        return kExitOptimizerWarning;
    }
    return kExitOk;
}

int run_command(const std::string& verb, const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    try {
        cfg.validate();
        const fs::path out(cfg.output_dir);
        fs::create_directories(out);
        write_text(out / "resolved.cfg", resolved_config_text(cfg));
        if (verb == "analyze") return cmd_analyze(cfg, out, log);
        if (verb == "simulate") return cmd_simulate(cfg, out, log);
        if (verb == "sweep") return cmd_sweep(cfg, out, log);
        if (verb == "sensitivity") return cmd_sensitivity(cfg, out, log);
        if (verb == "optimize") return cmd_optimize(cfg, out, log);
        err << "error: unknown command '" << verb << "'\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error";
        if (e.line() > 0) err << " at line " << e.line();
        err << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const DivergenceError& e) {
        err << "numerical error: " << e.what() << " (t = " << format_number(e.time()) << " s)\n";
        return kExitNumerical;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace vfstab
