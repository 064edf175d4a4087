#pragma once

// Reference computations used only by the tests. They avoid the library's
// own algorithms: direct sums instead of FFT, quadrature instead of closed
// forms, complex arithmetic on the physical equations instead of polynomial
// algebra.

#include <cmath>
#include <complex>
#include <vector>

#include "vfstab/plant.hpp"

namespace oracle {

using cd = std::complex<double>;

// 16-point Gauss-Legendre rule on [a, b].
inline double gauss16(double a, double b, const auto& f) {
    static const double x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                                0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
    static const double w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                                0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
    return s * h;
}

// First-harmonic sine coefficient of sat(X sin t) divided by X, integrated
// piecewise so every panel is smooth.
inline double first_harmonic_gain(double X, double S) {
    const auto f = [&](double t) {
        const double u = X * std::sin(t);
        const double y = u > S ? S : (u < -S ? -S : u);
        return y * std::sin(t);
    };
    std::vector<double> knots{0.0};
    if (X > S) {
        const double ts = std::asin(S / X);
        knots.insert(knots.end(), {ts, M_PI - ts, M_PI + ts, 2.0 * M_PI - ts});
    }
    knots.push_back(2.0 * M_PI);
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const int panels = 8;
        const double h = (knots[k + 1] - knots[k]) / panels;
        for (int p = 0; p < panels; ++p) integral += gauss16(knots[k] + p * h, knots[k] + (p + 1) * h, f);
    }
    return integral / (M_PI * X);
}

inline std::vector<cd> naive_dft(const std::vector<cd>& x) {
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            s += x[j] * std::polar(1.0, -2.0 * M_PI * static_cast<double>((k * j) % n) / static_cast<double>(n));
        }
        out[k] = s;
    }
    return out;
}

// Loop gain at s = jw straight from the component equations:
//   force     F  = (b_h s + K_h)/s * (-x_dot)
//   proxy     v  = F / (m s + b)
//   motor     tau = J_t (s^2 q_d + (K_D s + K_P)(q_d - q_m)), with the
//             two-mass transmission written as a 2x2 linear system
//   link      x  = q_l / n
inline cd loop_gain(const vfstab::PlantParameters& p, const vfstab::AdmittanceParams& a, double w) {
    const cd s(0.0, w);
    const double Jlr = p.J_l / (p.n * p.n);
    const double Jt = Jlr + p.J_m;
    // Transmission: J_m s^2 qm + D_m s qm + (D_el s + K_el)(qm - ql) = tau
    //               J_lr s^2 ql + (D_el s + K_el)(ql - qm) = 0
    const cd k = p.D_el * s + p.K_el;
    const cd a11 = p.J_m * s * s + p.D_m * s + k;
    const cd a22 = Jlr * s * s + k;
    // qm/tau and ql/tau from Cramer's rule.
    const cd det = a11 * a22 - k * k;
    const cd qm_tau = a22 / det;
    const cd ql_tau = k / det;
    // tau = Jt (s^2 + K_D s + K_P) qd - Jt (K_D s + K_P) qm  ->  qm/qd
    const cd c_ff = Jt * (s * s + p.K_D * s + p.K_P);
    const cd c_fb = Jt * (p.K_D * s + p.K_P);
    const cd tau_qd = c_ff / (1.0 + c_fb * qm_tau);
    const cd ql_qd = tau_qd * ql_tau;
    const cd human = (p.b_h * s + p.K_h) / s;
    const cd proxy = 1.0 / (a.m * s + a.b);
    return human * proxy * ql_qd / p.n;
}

}  // namespace oracle
