#include "vfstab/simloop.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "vfstab/csv.hpp"
#include "vfstab/errors.hpp"
#include "vfstab/harmonic.hpp"

namespace vfstab {

double VelocityProfile::velocity(double t) const {
    const double tau = t - start;
    if (tau < 0.0) {
        return 0.0;
    }
    switch (family) {
        case Family::kConstant:
            return peak;
        case Family::kTrapezoid:
            if (tau < ramp) return peak * tau / ramp;
            if (tau < ramp + hold) return peak;
            if (tau < 2.0 * ramp + hold) return peak * (2.0 * ramp + hold - tau) / ramp;
            return 0.0;
        case Family::kMinimumJerk: {
            if (tau >= duration) return 0.0;
            const double s = tau / duration;
            // Peak of 30 s^2 (1-s)^2 is 1.875 at s = 1/2.
            return peak / 1.875 * 30.0 * s * s * (1.0 - s) * (1.0 - s);
        }
    }
    return 0.0;
}

double VelocityProfile::position(double t) const {
    const double tau = t - start;
    if (tau <= 0.0) {
        return 0.0;
    }
    switch (family) {
        case Family::kConstant:
            return peak * tau;
        case Family::kTrapezoid: {
            if (tau < ramp) return 0.5 * peak * tau * tau / ramp;
            const double up = 0.5 * peak * ramp;
            if (tau < ramp + hold) return up + peak * (tau - ramp);
            const double end = 2.0 * ramp + hold;
            if (tau < end) {
                const double rem = end - tau;
                return 2.0 * up + peak * hold - 0.5 * peak * rem * rem / ramp;
            }
            return 2.0 * up + peak * hold;
        }
        case Family::kMinimumJerk: {
            const double dist = peak * duration / 1.875;
            const double s = std::min(tau / duration, 1.0);
            return dist * s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
        }
    }
    return 0.0;
}

double VelocityProfile::max_velocity() const { return std::abs(peak); }

void VelocityProfile::validate() const {
    if (!std::isfinite(peak) || !std::isfinite(start)) {
        throw std::invalid_argument("sim.vd.peak and sim.vd.start must be finite");
    }
    if (family == Family::kTrapezoid && (!(ramp > 0.0) || !(hold >= 0.0))) {
        throw std::invalid_argument("sim.vd.ramp must be positive and sim.vd.hold non-negative");
    }
    if (family == Family::kMinimumJerk && !(duration > 0.0)) {
        throw std::invalid_argument("sim.vd.duration must be positive");
    }
}

void AdaptationCenter::validate() const {
    if (!(m_star > 0.0)) throw std::invalid_argument("adapt.m_star must be strictly positive");
    if (!(b_star > 0.0)) throw std::invalid_argument("adapt.b_star must be strictly positive");
    if (!(v0 > 0.0)) throw std::invalid_argument("adapt.v0 must be strictly positive");
    if (!(spread >= 0.0 && spread < 1.0)) throw std::invalid_argument("adapt.spread must lie in [0, 1)");
}

AdmittanceParams adaptation_law(double v, const AdaptationCenter& center, double v0) {
    if (!(v0 > 0.0)) {
        throw std::invalid_argument("adaptation velocity v0 must be positive");
    }
    const double ratio = std::min(std::abs(v), v0) / v0;
    return {center.m_min() + (center.m_max() - center.m_min()) * ratio,
            center.b_max() + (center.b_min() - center.b_max()) * ratio};
}

AdmittanceParams adaptation_law(double v, const AdaptationCenter& center) {
    return adaptation_law(v, center, center.v0);
}

DelayLine::DelayLine(double dt, double max_delay) : dt_(dt) {
    if (!(dt > 0.0) || !(max_delay >= 0.0)) {
        throw std::invalid_argument("delay line needs dt > 0 and max_delay >= 0");
    }
    buf_.assign(static_cast<std::size_t>(std::ceil(max_delay / dt)) + 2, 0.0);
}

void DelayLine::push(double x) {
    head_ = (head_ + 1) % buf_.size();
    buf_[head_] = x;
    count_ = std::min(count_ + 1, buf_.size());
}

double DelayLine::at_index_ago(std::size_t k) const {
    if (k >= count_) {
        return 0.0;
    }
    return buf_[(head_ + buf_.size() - k) % buf_.size()];
}

double DelayLine::sample_ago(double delay) const {
    const double pos = delay / dt_;
    double whole = std::floor(pos);
    double frac = pos - whole;
    // Snap delays that are integer multiples of dt up to rounding.
    if (frac > 1.0 - 1e-9) {
        whole += 1.0;
        frac = 0.0;
    } else if (frac < 1e-9) {
        frac = 0.0;
    }
    const auto k = static_cast<std::size_t>(whole);
    if (k + 1 >= buf_.size() && frac > 0.0) {
        throw std::out_of_range("delay exceeds delay line capacity");
    }
    const double newer = at_index_ago(k);
    return frac == 0.0 ? newer : newer + frac * (at_index_ago(k + 1) - newer);
}

void SimConfig::validate() const {
    plant.validate();
    vd.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("sim.dt must be strictly positive");
    if (!(T >= 10.0 * dt)) throw std::invalid_argument("sim.T must be at least 10 * sim.dt");
    if (!std::isfinite(v_init)) throw std::invalid_argument("sim.v_init must be finite");
    if (!(force_noise >= 0.0)) throw std::invalid_argument("sim.force_noise must be non-negative");
    if (force_script && !path) throw std::invalid_argument("a 3D force script needs a path to project on");
    std::visit([](const auto& a) { a.validate(); }, admittance);
}

namespace {

class Loop {
public:
    explicit Loop(const SimConfig& cfg)
        : cfg_(cfg),
          ctrl_(tf_to_statespace(build_controlled_tf(cfg.plant))),
          link_(tf_to_statespace(build_motor_to_link_tf(cfg.plant))),
          sat_{cfg.plant.v_max},
          gain_(cfg.plant.reference_gain()),
          nc_(ctrl_.order()),
          nl_(link_.order()) {
        if (link_.D != 0.0) {
            throw std::logic_error("motor-to-link model must be strictly proper");
        }
    }

    int state_size() const { return 3 + nc_ + nl_; }

    AdmittanceParams admittance(double v) const {
        if (const auto* c = std::get_if<AdaptationCenter>(&cfg_.admittance)) {
            return adaptation_law(v, *c);
        }
        return std::get<AdmittanceParams>(cfg_.admittance);
    }

    double link_velocity(const Eigen::VectorXd& y) const { return link_.C.dot(y.segment(3 + nc_, nl_)); }

    double force(double t, const Eigen::VectorXd& y, double extra) const {
        const PlantParameters& p = cfg_.plant;
        double f = p.K_h * (cfg_.vd.position(t) - y(2)) + p.b_h * (cfg_.vd.velocity(t) - link_velocity(y)) + extra;
        if (cfg_.force_script) {
            f += project_force(*cfg_.path, y(1), cfg_.force_script(t));
        }
        return f;
    }

    // dy/dt given the (delayed, saturated) proxy velocity seen by the robot.
    void derivative(double t, const Eigen::VectorXd& y, double delayed_vc, double extra, Eigen::VectorXd& dy) const {
        const double v = y(0);
        const AdmittanceParams adm = admittance(v);
        const double f = force(t, y, extra);
        const double u = gain_ * delayed_vc;
        const auto xc = y.segment(3, nc_);
        const auto xl = y.segment(3 + nc_, nl_);
        const double motor_velocity = ctrl_.C.dot(xc) + ctrl_.D * u;

        dy(0) = (f - adm.b * v) / adm.m;
        dy(1) = v;
        dy(2) = link_.C.dot(xl);
        dy.segment(3, nc_) = ctrl_.A * xc + ctrl_.B * u;
        dy.segment(3 + nc_, nl_) = link_.A * xl + link_.B * motor_velocity;
    }

    double saturate(double v) const { return sat_(v); }

private:
    const SimConfig& cfg_;
    StateSpace ctrl_;
    StateSpace link_;
    SaturationNL sat_;
    double gain_;
    int nc_;
    int nl_;
};

}  // namespace

SimTrace simulate(const SimConfig& config) {
    config.validate();
    const Loop loop(config);
    const double dt = config.dt;
    const double t0 = config.plant.t0;
    const auto steps = static_cast<std::size_t>(std::llround(config.T / dt));

    std::mt19937_64 rng(config.seed.value_or(0));
    std::normal_distribution<double> noise(0.0, 1.0);

    SimTrace tr;
    tr.dt = dt;
    for (auto* series : {&tr.t, &tr.v, &tr.l, &tr.F_tau, &tr.x_dot, &tr.m_t, &tr.b_t}) {
        series->reserve(steps + 1);
    }
    tr.sat_active.reserve(steps + 1);

    Eigen::VectorXd y = Eigen::VectorXd::Zero(loop.state_size());
    y(0) = config.v_init;

    DelayLine history(dt, t0);
    Eigen::VectorXd k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), stage(y.size());

    // Saturated proxy velocity at t_n + c*dt - t0.
    const auto delayed = [&](double c, double vc_now, double vc_stage) {
        const double lag = t0 - c * dt;
        if (lag >= 0.0) {
            return history.sample_ago(lag);
        }
        // Delay shorter than the stage offset: interpolate inside the step.
        return vc_now + (vc_stage - vc_now) * (c * dt - t0) / (c * dt);
    };

    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double extra = config.force_noise > 0.0 ? config.force_noise * noise(rng) : 0.0;
        const double vc_now = loop.saturate(y(0));
        history.push(vc_now);

        const AdmittanceParams adm = loop.admittance(y(0));
        tr.t.push_back(t);
        tr.v.push_back(y(0));
        tr.l.push_back(y(1));
        tr.F_tau.push_back(loop.force(t, y, extra));
        tr.x_dot.push_back(loop.link_velocity(y));
        tr.sat_active.push_back(std::abs(y(0)) > config.plant.v_max ? 1 : 0);
        tr.m_t.push_back(adm.m);
        tr.b_t.push_back(adm.b);

        if (k == steps) {
            break;
        }

        loop.derivative(t, y, t0 > 0.0 ? history.sample_ago(t0) : vc_now, extra, k1);
        stage = y + 0.5 * dt * k1;
        loop.derivative(t + 0.5 * dt, stage, delayed(0.5, vc_now, loop.saturate(stage(0))), extra, k2);
        stage = y + 0.5 * dt * k2;
        loop.derivative(t + 0.5 * dt, stage, delayed(0.5, vc_now, loop.saturate(stage(0))), extra, k3);
        stage = y + dt * k3;
        loop.derivative(t + dt, stage, delayed(1.0, vc_now, loop.saturate(stage(0))), extra, k4);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!y.allFinite()) {
            throw DivergenceError("simulation diverged at t = " + format_number(t + dt) + " s", t + dt);
        }
    }
    return tr;
}

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
    os << "t,v,l,F_tau,x_dot,sat_active,m_t,b_t\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        os << format_number(trace.t[i]) << ',' << format_number(trace.v[i]) << ',' << format_number(trace.l[i])
           << ',' << format_number(trace.F_tau[i]) << ',' << format_number(trace.x_dot[i]) << ','
           << static_cast<int>(trace.sat_active[i]) << ',' << format_number(trace.m_t[i]) << ','
           << format_number(trace.b_t[i]) << '\n';
    }
}

}  // namespace vfstab
