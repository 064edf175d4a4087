#include "vfstab/plant.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vfstab {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be strictly positive");
    }
}

}  // namespace

void PlantParameters::validate() const {
    require_positive(J_l, "plant.J_l");
    require_positive(K_el, "plant.K_el");
    require_positive(D_el, "plant.D_el");
    require_positive(n, "plant.n");
    require_positive(J_m, "plant.J_m");
    require_positive(D_m, "plant.D_m");
    require_positive(K_h, "plant.K_h");
    require_positive(b_h, "plant.b_h");
    require_positive(K_P, "plant.K_P");
    require_positive(K_D, "plant.K_D");
    if (!(v_max > 0.0)) {  // +inf disables the saturation
        throw std::invalid_argument("plant.v_max must be strictly positive");
    }
    if (!(t0 >= 0.0) || !std::isfinite(t0)) {
        throw std::invalid_argument("plant.t0 must be non-negative");
    }
}

void AdmittanceParams::validate() const {
    require_positive(m, "adm.m");
    require_positive(b, "adm.b");
}

RationalTF build_proxy_tf(const AdmittanceParams& adm) {
    adm.validate();
    return {Polynomial{1.0}, Polynomial{adm.b, adm.m}};
}

RationalTF build_human_tf(const PlantParameters& p) {
    return {Polynomial{p.K_h, p.b_h}, Polynomial{0.0, 1.0}};
}

RationalTF build_motor_tf(const PlantParameters& p) {
    const double Jlr = p.J_lr();
    const double Jt = p.J_t();
    const double a1 = Jlr * p.J_m;
    const double a2 = Jlr * p.D_m + Jt * p.D_el;
    const double a3 = Jt * p.K_el + p.D_m * p.D_el;
    const double a4 = p.D_m * p.K_el;
    return {Polynomial{p.K_el, p.D_el, Jlr}, Polynomial{0.0, a4, a3, a2, a1}};
}

RationalTF build_controlled_tf(const PlantParameters& p) {
    // tau_m = J_t (s^2 X_d + (K_D s + K_P)(X_d - X_m))
    const RationalTF motor = build_motor_tf(p);
    const RationalTF feedforward{Polynomial{p.K_P, p.K_D, 1.0}, Polynomial{1.0}};
    const RationalTF feedback{Polynomial{p.K_P, p.K_D}, Polynomial{1.0}};
    const RationalTF plant = tf_scale(motor, p.J_t());
    return tf_series(tf_feedback(plant, feedback), feedforward);
}

RationalTF build_motor_to_link_tf(const PlantParameters& p) {
    return {Polynomial{p.K_el, p.D_el}, Polynomial{p.n * p.K_el, p.n * p.D_el, p.n * p.J_lr()}};
}

RationalTF build_robot_tf(const PlantParameters& p) {
    return tf_series(build_controlled_tf(p), build_motor_to_link_tf(p));
}

RationalTF build_loop_gain(const PlantParameters& p, const AdmittanceParams& adm) {
    return tf_series(tf_series(build_human_tf(p), build_proxy_tf(adm)), build_robot_tf(p));
}

RationalTF build_analysis_loop(const PlantParameters& p, const AdmittanceParams& adm) {
    return tf_scale(build_loop_gain(p, adm), p.reference_gain());
}

std::pair<Polynomial, Polynomial> appendix_Gc_coeffs(const PlantParameters& p) {
    const double Jlr = p.J_lr();
    const double Jt = p.J_t();
    const double Jm = p.J_m;
    const double Kel = p.K_el;
    const double Del = p.D_el;
    const double Dm = p.D_m;
    const double KP = p.K_P;
    const double KD = p.K_D;

    const double b1 = Jt * Jlr;
    const double b2 = Jt * (Del + KD * Jlr);
    const double b3 = Jt * (Kel + KD * Del + KP * Jlr);
    const double b4 = Jt * (KD * Kel + KP * Del);
    const double b5 = Jt * KP * Kel;

    const double a1 = Jlr * Jm;
    const double a2 = Jlr * (Dm + Jt * KD) + Del * Jt;
    const double a3 = Jt * (Jlr * KP + Del * KD) + Jt * Kel + Dm * Del;
    const double a4 = Kel * (Dm + Jt * KD) + Del * Jt * KP;
    const double a5 = Kel * Jt * KP;

    return {Polynomial::from_descending({b1, b2, b3, b4, b5}),
            Polynomial::from_descending({a1, a2, a3, a4, a5})};
}

std::pair<Polynomial, Polynomial> appendix_Gl_coeffs(const PlantParameters& p, const AdmittanceParams& adm) {
    const auto [gc_num, gc_den] = appendix_Gc_coeffs(p);
    // Primed coefficients, index 1 = highest power.
    const auto bp = [&](int i) { return gc_num.coeff(5 - i); };
    const auto ap = [&](int i) { return gc_den.coeff(5 - i); };

    const double Jlr = p.J_lr();
    const double Kel = p.K_el;
    const double Del = p.D_el;
    const double Kh = p.K_h;
    const double bh = p.b_h;
    const double n = p.n;
    const double m = adm.m;
    const double b = adm.b;

    const double beta1 = Del * bp(1) * bh;
    // Printed as K_el b_1 b_h; the expansion requires the primed b_1'.
    const double beta2 = Del * (Kh * bp(1) + bp(2) * bh) + Kel * bp(1) * bh;
    const double beta3 = Del * (Kh * bp(2) + bh * bp(3)) + Kel * (Kh * bp(1) + bp(2) * bh);
    const double beta4 = Del * (Kh * bp(3) + bh * bp(4)) + Kel * (Kh * bp(2) + bh * bp(3));
    const double beta5 = Del * (Kh * bp(4) + bh * bp(5)) + Kel * (Kh * bp(3) + bh * bp(4));
    const double beta6 = Del * Kh * bp(5) + Kel * (Kh * bp(4) + bh * bp(5));
    const double beta7 = Kel * Kh * bp(5);

    const double alpha1 = Jlr * ap(1) * m * n;
    const double alpha2 = Jlr * n * (ap(1) * b + ap(2) * m) + Del * ap(1) * m * n;
    const double alpha3 = Jlr * n * (ap(2) * b + ap(3) * m) + Del * n * (ap(1) * b + ap(2) * m) + Kel * ap(1) * m * n;
    const double alpha4 =
        Jlr * n * (ap(3) * b + ap(4) * m) + Del * n * (ap(2) * b + ap(3) * m) + Kel * n * (ap(1) * b + ap(2) * m);
    const double alpha5 =
        Jlr * n * (ap(4) * b + ap(5) * m) + Del * n * (ap(3) * b + ap(4) * m) + Kel * n * (ap(2) * b + ap(3) * m);
    const double alpha6 = Jlr * n * ap(5) * b + Del * n * (ap(4) * b + ap(5) * m) + Kel * n * (ap(3) * b + ap(4) * m);
    const double alpha7 = Del * n * ap(5) * b + Kel * n * (ap(4) * b + ap(5) * m);
    const double alpha8 = Kel * ap(5) * b * n;

    return {Polynomial::from_descending({beta1, beta2, beta3, beta4, beta5, beta6, beta7}),
            Polynomial::from_descending({alpha1, alpha2, alpha3, alpha4, alpha5, alpha6, alpha7, alpha8, 0.0})};
}

Complex eval_delayed_loop(const RationalTF& loop, double t0, double omega) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("delayed loop evaluation requires omega > 0");
    }
    return tf_freq_response(loop, omega) * std::polar(1.0, -omega * t0);
}

}  // namespace vfstab
