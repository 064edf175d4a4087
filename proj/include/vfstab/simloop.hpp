#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "vfstab/path.hpp"
#include "vfstab/plant.hpp"

namespace vfstab {

/// Velocity the human intends to impose along the path, v_d(t), and its
/// integral l_d(t).
struct VelocityProfile {
    enum class Family { kTrapezoid, kMinimumJerk, kConstant };

    Family family = Family::kTrapezoid;
    double peak = 0.2;        // [m/s]
    double start = 0.0;       // onset [s]
    double ramp = 2.0;        // trapezoid ramp duration [s]
    double hold = 18.0;       // trapezoid plateau duration [s]
    double duration = 10.0;   // minimum-jerk motion duration [s]

    double velocity(double t) const;
    double position(double t) const;
    double max_velocity() const;

    void validate() const;
};

/// Center point p* = (m*, b*) of the velocity-scheduled admittance, the task
/// velocity v0, and the relative half-width of the [m_min, m_max] and
/// [b_min, b_max] bounds (0.5 gives [0.5, 1.5] x center).
struct AdaptationCenter {
    double m_star = 0.6;
    double b_star = 1.0;
    double v0 = 0.2;
    double spread = 0.5;

    double m_min() const noexcept { return (1.0 - spread) * m_star; }
    double m_max() const noexcept { return (1.0 + spread) * m_star; }
    double b_min() const noexcept { return (1.0 - spread) * b_star; }
    double b_max() const noexcept { return (1.0 + spread) * b_star; }

    void validate() const;
};

/// Mass grows and damping shrinks linearly with |v|, saturating at v0.
AdmittanceParams adaptation_law(double v, const AdaptationCenter& center, double v0);
AdmittanceParams adaptation_law(double v, const AdaptationCenter& center);

/// Ring buffer of uniformly spaced samples read back at an arbitrary delay
/// with linear interpolation. Samples older than the history read as zero.
class DelayLine {
public:
    DelayLine(double dt, double max_delay);

    void push(double x);

    /// Value `delay` seconds before the most recent sample, 0 <= delay <= max_delay.
    double sample_ago(double delay) const;

private:
    double at_index_ago(std::size_t k) const;

    double dt_;
    std::vector<double> buf_;
    std::size_t head_ = 0;   // slot of the most recent sample
    std::size_t count_ = 0;
};

struct SimConfig {
    double dt = 5e-4;
    double T = 20.0;
    VelocityProfile vd;
    PlantParameters plant;
    std::variant<AdmittanceParams, AdaptationCenter> admittance = AdmittanceParams{};
    double v_init = 0.0;  // initial proxy velocity [m/s]

    // Optional 3D force acting on the handle, projected on the path tangent
    // at the current proxy position. Needs `path`.
    std::optional<PathCurve> path;
    std::function<Vec3(double)> force_script;

    double force_noise = 0.0;            // white tangential force noise, std dev [N]
    std::optional<std::uint64_t> seed;   // noise generator seed (0 when unset)

    void validate() const;
};

struct SimTrace {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<double> v;
    std::vector<double> l;
    std::vector<double> F_tau;
    std::vector<double> x_dot;
    std::vector<std::uint8_t> sat_active;
    std::vector<double> m_t;
    std::vector<double> b_t;

    std::size_t size() const noexcept { return t.size(); }
};

/// Fixed-step RK4 simulation of the human / proxy / saturation / delay /
/// robot loop. Throws DivergenceError carrying the time at which the state
/// stopped being finite.
SimTrace simulate(const SimConfig& config);

/// CSV with header t,v,l,F_tau,x_dot,sat_active,m_t,b_t.
void write_trace_csv(std::ostream& os, const SimTrace& trace);

}  // namespace vfstab
