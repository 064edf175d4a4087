#pragma once

#include <utility>

#include "vfstab/poly_lti.hpp"

namespace vfstab {

/// Where the proxy velocity enters the position controller.
///
/// kLinkSide scales the reference by the gear ratio so the reference-to-link
/// chain has unit DC gain. kMotorSide feeds the proxy velocity straight into
/// G_r, whose DC gain is then 1/n.
enum class ReferenceSide { kLinkSide, kMotorSide };

/// Physical constants of the elastic-joint robot, the human arm model, the
/// inner position controller, the loop delay and the actuator velocity limit.
/// Defaults are the nominal values used throughout the analysis.
struct PlantParameters {
    double J_l = 0.66;    // link inertia [kg m^2]
    double K_el = 100.0;  // transmission stiffness [N m/rad]
    double D_el = 0.01;   // transmission damping [N m s/rad]
    double n = 50.0;      // gear ratio
    double J_m = 0.10;    // motor inertia [kg m^2]
    double D_m = 0.11;    // motor damping [N m s/rad]
    double K_h = 150.0;   // human stiffness [N/m]
    double b_h = 0.68;    // human damping [N s/m]
    double K_P = 2000.0;  // position gain [1/s^2]
    double K_D = 89.44;   // velocity gain [1/s]
    double t0 = 0.005;    // lumped loop delay [s]
    double v_max = 0.5;   // actuator velocity saturation [m/s]
    ReferenceSide reference = ReferenceSide::kLinkSide;

    double J_lr() const noexcept { return J_l / (n * n); }
    double J_t() const noexcept { return J_lr() + J_m; }

    /// Gain between the saturated proxy velocity and the G_r input.
    double reference_gain() const noexcept { return reference == ReferenceSide::kLinkSide ? n : 1.0; }

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;
};

/// Virtual mass and damping of the proxy.
struct AdmittanceParams {
    double m = 0.6;  // [kg]
    double b = 1.0;  // [N s/m]

    void validate() const;
};

RationalTF build_proxy_tf(const AdmittanceParams& adm);
RationalTF build_human_tf(const PlantParameters& p);
RationalTF build_motor_tf(const PlantParameters& p);

/// Inverse-dynamics position loop closed around the motor model by block
/// algebra; biproper, order 4 over order 4.
RationalTF build_controlled_tf(const PlantParameters& p);
RationalTF build_motor_to_link_tf(const PlantParameters& p);

/// G_c * G_mr.
RationalTF build_robot_tf(const PlantParameters& p);

/// G_h * G_p * G_r as a series composition; order 6 over order 8.
RationalTF build_loop_gain(const PlantParameters& p, const AdmittanceParams& adm);

/// The loop that the simulator actually closes: build_loop_gain scaled by the
/// reference gain. Identical to build_loop_gain for ReferenceSide::kMotorSide.
RationalTF build_analysis_loop(const PlantParameters& p, const AdmittanceParams& adm);

/// Closed-form numerator/denominator of G_c, returned in ascending powers.
std::pair<Polynomial, Polynomial> appendix_Gc_coeffs(const PlantParameters& p);

/// Closed-form numerator (beta_1..beta_7) and denominator
/// s * (alpha_1 s^7 + ... + alpha_8) of G_l, in ascending powers.
std::pair<Polynomial, Polynomial> appendix_Gl_coeffs(const PlantParameters& p, const AdmittanceParams& adm);

/// G_l(jw) * exp(-j w t0). The delay is an exact phase rotation.
Complex eval_delayed_loop(const RationalTF& loop, double t0, double omega);

}  // namespace vfstab
