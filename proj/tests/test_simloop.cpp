#include <doctest.h>

#include <cmath>
#include <limits>

#include "vfstab/errors.hpp"
#include "vfstab/simloop.hpp"

using namespace vfstab;

namespace {

SimConfig short_run(double T = 4.0) {
    SimConfig c;
    c.T = T;
    return c;
}

}  // namespace

TEST_CASE("delay line reads back exact and interpolated samples") {
    DelayLine d(0.01, 0.05);
    CHECK(d.sample_ago(0.0) == 0.0);
    for (int i = 0; i < 20; ++i) d.push(3.0 * i);  // ramp: value 3 per sample
    CHECK(d.sample_ago(0.0) == 57.0);
    CHECK(d.sample_ago(0.03) == doctest::Approx(48.0).epsilon(1e-12));
    CHECK(d.sample_ago(0.025) == doctest::Approx(49.5).epsilon(1e-12));
    CHECK(d.sample_ago(0.05) == doctest::Approx(42.0).epsilon(1e-12));

    DelayLine young(0.01, 0.05);
    young.push(1.0);
    young.push(2.0);
    CHECK(young.sample_ago(0.01) == 1.0);
    CHECK(young.sample_ago(0.03) == 0.0);  // before the history began
    CHECK_THROWS_AS(DelayLine(0.0, 0.1), std::invalid_argument);
}

TEST_CASE("velocity profile position integrates the velocity") {
    using F = VelocityProfile::Family;
    for (F family : {F::kTrapezoid, F::kMinimumJerk, F::kConstant}) {
        VelocityProfile vd;
        vd.family = family;
        // The constant profile jumps at onset; keep the jump on the grid origin.
        vd.start = family == F::kConstant ? 0.0 : 0.5;
        vd.hold = 3.0;
        vd.duration = 4.0;
        double integral = 0.0;
        const double h = 1e-4;
        for (int i = 0; i < 100000; ++i) {
            const double t = i * h;
            integral += h / 6.0 * (vd.velocity(t) + 4.0 * vd.velocity(t + 0.5 * h) + vd.velocity(t + h));
            if ((i + 1) % 10000 == 0) CHECK(integral == doctest::Approx(vd.position(t + h)).epsilon(1e-6));
        }
    }
    VelocityProfile mj;
    mj.family = F::kMinimumJerk;
    CHECK(mj.velocity(mj.duration / 2) == doctest::Approx(mj.peak));
}

TEST_CASE("adaptation law spans the bounds") {
    const AdaptationCenter c{0.6, 1.0, 0.2, 0.5};
    const AdmittanceParams at_rest = adaptation_law(0.0, c);
    CHECK(at_rest.m == doctest::Approx(0.3));
    CHECK(at_rest.b == doctest::Approx(1.5));
    const AdmittanceParams fast = adaptation_law(-0.5, c);
    CHECK(fast.m == doctest::Approx(0.9));
    CHECK(fast.b == doctest::Approx(0.5));
    const AdmittanceParams mid = adaptation_law(0.1, c);
    CHECK(mid.m == doctest::Approx(0.6));
    CHECK(mid.b == doctest::Approx(1.0));
    const AdaptationCenter collapsed{0.6, 1.0, 0.2, 0.0};
    CHECK(adaptation_law(0.13, collapsed).m == doctest::Approx(0.6));
}

TEST_CASE("trace layout and determinism") {
    const SimConfig c = short_run();
    const SimTrace a = simulate(c);
    const SimTrace b = simulate(c);
    CHECK(a.size() == static_cast<std::size_t>(std::llround(c.T / c.dt)) + 1);
    CHECK(a.t.front() == 0.0);
    CHECK(a.t.back() == doctest::Approx(c.T));
    CHECK(a.F_tau == b.F_tau);
    CHECK(a.v == b.v);
    CHECK(a.m_t.front() == doctest::Approx(0.6));
}

TEST_CASE("halving the step barely moves the final state") {
    SimConfig c = short_run(6.0);
    const SimTrace coarse = simulate(c);
    c.dt /= 2.0;
    const SimTrace fine = simulate(c);
    const auto close = [](double x, double y) { return std::abs(x - y) <= 1e-4 * std::max(std::abs(y), 1e-3); };
    CHECK(close(coarse.v.back(), fine.v.back()));
    CHECK(close(coarse.l.back(), fine.l.back()));
    CHECK(close(coarse.x_dot.back(), fine.x_dot.back()));
    CHECK(close(coarse.F_tau.back(), fine.F_tau.back()));
}

TEST_CASE("response is linear when the saturation never engages") {
    SimConfig c = short_run();
    c.plant.t0 = 0.0;
    c.plant.v_max = std::numeric_limits<double>::infinity();
    const SimTrace base = simulate(c);
    c.vd.peak *= 3.0;
    const SimTrace scaled = simulate(c);
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        worst = std::max(worst, std::abs(scaled.F_tau[i] - 3.0 * base.F_tau[i]));
        worst = std::max(worst, std::abs(scaled.v[i] - 3.0 * base.v[i]));
        scale = std::max({scale, std::abs(scaled.F_tau[i]), std::abs(scaled.v[i])});
    }
    CHECK(worst <= 1e-8 * scale);
}

TEST_CASE("free oscillation decays at zero delay") {
    SimConfig c = short_run(10.0);
    c.plant.t0 = 0.0;
    c.vd.peak = 0.0;
    c.v_init = 0.2;
    const SimTrace tr = simulate(c);
    // Kinetic energy of the proxy is not monotone (the human spring stores
    // energy), but its successive local maxima must not grow.
    double last_peak = std::numeric_limits<double>::infinity();
    int peaks = 0;
    for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
        const double ke = tr.v[i] * tr.v[i];
        if (ke > tr.v[i - 1] * tr.v[i - 1] && ke >= tr.v[i + 1] * tr.v[i + 1] && ke > 1e-20) {
            CHECK(ke <= last_peak * (1.0 + 1e-9));
            last_peak = ke;
            ++peaks;
        }
    }
    CHECK(peaks >= 3);
    CHECK(std::abs(tr.v.back()) < 1e-3 * 0.2);
}

TEST_CASE("saturation flag follows the commanded velocity") {
    SimConfig c = short_run();
    c.vd.peak = 0.8;
    c.vd.family = VelocityProfile::Family::kConstant;
    const SimTrace tr = simulate(c);
    bool any = false;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        any = any || tr.sat_active[i];
        if (tr.sat_active[i]) CHECK(std::abs(tr.v[i]) >= c.plant.v_max - 1e-12);
    }
    CHECK(any);
}

TEST_CASE("force projected on the path tangent") {
    SimConfig c = short_run(2.0);
    c.path = PathCurve::line({0, 0, 0}, {5, 0, 0});
    const SimTrace plain = simulate(c);
    c.force_script = [](double) { return Vec3(0.0, 3.0, -1.0); };  // normal to the path
    const SimTrace normal = simulate(c);
    CHECK(normal.F_tau == plain.F_tau);
    c.force_script = [](double t) { return Vec3(t > 1.0 ? 0.5 : 0.0, 3.0, 0.0); };
    const SimTrace pushed = simulate(c);
    CHECK(pushed.l.back() > plain.l.back() + 1e-3);  // settles 0.5 / K_h ahead

    SimConfig bad = short_run(1.0);
    bad.force_script = [](double) { return Vec3::Zero().eval(); };
    CHECK_THROWS_AS(simulate(bad), std::invalid_argument);
}

TEST_CASE("force noise is reproducible from the seed") {
    SimConfig c = short_run(1.0);
    c.force_noise = 0.01;
    c.seed = 5;
    const SimTrace a = simulate(c);
    const SimTrace b = simulate(c);
    CHECK(a.F_tau == b.F_tau);
    c.seed = 6;
    CHECK(simulate(c).F_tau != a.F_tau);
}

TEST_CASE("adaptive admittance is logged") {
    SimConfig c = short_run();
    c.admittance = AdaptationCenter{};
    const SimTrace tr = simulate(c);
    CHECK(tr.m_t.front() == doctest::Approx(0.3));
    CHECK(tr.b_t.front() == doctest::Approx(1.5));
    CHECK(tr.m_t.back() == doctest::Approx(0.9).epsilon(2e-2));
}

TEST_CASE("divergence is reported with its time") {
    SimConfig c;
    c.dt = 0.05;  // far outside the RK4 stability region of the inner loop
    c.T = 500.0;
    c.plant.v_max = std::numeric_limits<double>::infinity();
    try {
        simulate(c);
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        CHECK(e.time() > 0.0);
        CHECK(e.time() <= c.T);
    }
}

TEST_CASE("invalid simulation settings are rejected") {
    SimConfig c;
    c.dt = -1.0;
    CHECK_THROWS_AS(simulate(c), std::invalid_argument);
    c = {};
    c.admittance = AdmittanceParams{-0.1, 1.0};
    CHECK_THROWS_AS(simulate(c), std::invalid_argument);
}
