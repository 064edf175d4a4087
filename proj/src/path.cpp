#include "vfstab/path.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace vfstab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGaussNodes{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                            0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

struct SplineEval {
    const PathCurve::Spline& s;

    std::size_t segment(double u) const {
        auto it = std::upper_bound(s.knots.begin(), s.knots.end(), u);
        std::size_t i = it == s.knots.begin() ? 0 : static_cast<std::size_t>(it - s.knots.begin()) - 1;
        return std::min(i, s.knots.size() - 2);
    }

    Vec3 point(std::size_t i, double u) const {
        const double h = s.knots[i + 1] - s.knots[i];
        const double a = (s.knots[i + 1] - u) / h;
        const double b = (u - s.knots[i]) / h;
        return a * s.points[i] + b * s.points[i + 1] +
               ((a * a * a - a) * s.second[i] + (b * b * b - b) * s.second[i + 1]) * (h * h / 6.0);
    }

    Vec3 derivative(std::size_t i, double u) const {
        const double h = s.knots[i + 1] - s.knots[i];
        const double a = (s.knots[i + 1] - u) / h;
        const double b = (u - s.knots[i]) / h;
        return (s.points[i + 1] - s.points[i]) / h +
               (-(3.0 * a * a - 1.0) * s.second[i] + (3.0 * b * b - 1.0) * s.second[i + 1]) * (h / 6.0);
    }

    // Arc length from knot i to parameter u, two Gauss panels.
    double partial_length(std::size_t i, double u) const {
        const double u0 = s.knots[i];
        double total = 0.0;
        for (int panel = 0; panel < 2; ++panel) {
            const double a = u0 + (u - u0) * panel / 2.0;
            const double b = u0 + (u - u0) * (panel + 1) / 2.0;
            const double half = 0.5 * (b - a);
            const double mid = 0.5 * (a + b);
            for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
                total += kGaussWeights[k] * half * derivative(i, mid + half * kGaussNodes[k]).norm();
            }
        }
        return total;
    }

    // Parameter u on segment i whose arc length from knot i equals target.
    double invert(std::size_t i, double target) const {
        double lo = s.knots[i];
        double hi = s.knots[i + 1];
        const double seg_len = s.cum_len[i + 1] - s.cum_len[i];
        double u = lo + (hi - lo) * std::clamp(target / seg_len, 0.0, 1.0);
        for (int it = 0; it < 60; ++it) {
            const double f = partial_length(i, u) - target;
            if (std::abs(f) < 1e-14 * std::max(1.0, seg_len)) {
                break;
            }
            if (f > 0.0) {
                hi = u;
            } else {
                lo = u;
            }
            double next = u - f / derivative(i, u).norm();
            if (!(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
            }
            u = next;
        }
        return u;
    }

    std::pair<std::size_t, double> locate(double l) const {
        auto it = std::upper_bound(s.cum_len.begin(), s.cum_len.end(), l);
        std::size_t i = it == s.cum_len.begin() ? 0 : static_cast<std::size_t>(it - s.cum_len.begin()) - 1;
        i = std::min(i, s.knots.size() - 2);
        return {i, invert(i, l - s.cum_len[i])};
    }
};

}  // namespace

PathCurve PathCurve::line(const Vec3& from, const Vec3& to) {
    const Vec3 delta = to - from;
    const double len = delta.norm();
    if (!(len > 0.0)) {
        throw std::invalid_argument("line path endpoints coincide");
    }
    return PathCurve(Line{from, delta / len, len});
}

PathCurve PathCurve::arc(const Vec3& center, double radius, double start_angle, double sweep, const Vec3& e1,
                         const Vec3& e2) {
    if (!(radius > 0.0) || sweep == 0.0 || !std::isfinite(sweep)) {
        throw std::invalid_argument("arc path needs positive radius and nonzero sweep");
    }
    if (std::abs(e1.norm() - 1.0) > 1e-9 || std::abs(e2.norm() - 1.0) > 1e-9 || std::abs(e1.dot(e2)) > 1e-9) {
        throw std::invalid_argument("arc plane axes must be orthonormal");
    }
    return PathCurve(Arc{center, e1, e2, radius, start_angle, sweep});
}

PathCurve PathCurve::spline(const std::vector<Vec3>& waypoints) {
    const std::size_t n = waypoints.size();
    if (n < 2) {
        throw std::invalid_argument("spline path needs at least two waypoints");
    }
    Spline s;
    s.points = waypoints;
    s.knots.resize(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double chord = (waypoints[i] - waypoints[i - 1]).norm();
        if (!(chord > 0.0)) {
            throw std::invalid_argument("spline path has repeated consecutive waypoints");
        }
        s.knots[i] = s.knots[i - 1] + chord;
    }

    // Natural spline: tridiagonal system for interior second derivatives.
    s.second.assign(n, Vec3::Zero());
    if (n > 2) {
        std::vector<double> diag(n, 0.0);
        std::vector<double> upper(n, 0.0);
        std::vector<Vec3> rhs(n, Vec3::Zero());
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = s.knots[i] - s.knots[i - 1];
            const double h1 = s.knots[i + 1] - s.knots[i];
            diag[i] = (h0 + h1) / 3.0;
            upper[i] = h1 / 6.0;
            rhs[i] = (waypoints[i + 1] - waypoints[i]) / h1 - (waypoints[i] - waypoints[i - 1]) / h0;
        }
        // Thomas algorithm over rows 1..n-2; lower coefficient of row i is h0/6.
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double lower = (s.knots[i] - s.knots[i - 1]) / 6.0;
            const double w = lower / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            const Vec3 next = i + 2 < n ? s.second[i + 1] : Vec3::Zero();
            s.second[i] = (rhs[i] - upper[i] * next) / diag[i];
        }
    }

    s.cum_len.assign(n, 0.0);
    SplineEval eval{s};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        s.cum_len[i + 1] = s.cum_len[i] + eval.partial_length(i, s.knots[i + 1]);
    }
    return PathCurve(std::move(s));
}

double PathCurve::length() const {
    return std::visit(overloaded{[](const Line& ln) { return ln.len; },
                                 [](const Arc& a) { return a.radius * std::abs(a.sweep); },
                                 [](const Spline& s) { return s.cum_len.back(); }},
                      shape_);
}

Vec3 PathCurve::position(double l) const {
    l = std::clamp(l, 0.0, length());
    return std::visit(overloaded{[&](const Line& ln) -> Vec3 { return ln.from + l * ln.dir; },
                                 [&](const Arc& a) -> Vec3 {
                                     const double th = a.start_angle + std::copysign(l / a.radius, a.sweep);
                                     return a.center + a.radius * (std::cos(th) * a.e1 + std::sin(th) * a.e2);
                                 },
                                 [&](const Spline& s) -> Vec3 {
                                     SplineEval eval{s};
                                     const auto [i, u] = eval.locate(l);
                                     return eval.point(i, u);
                                 }},
                      shape_);
}

Vec3 PathCurve::unit_tangent(double l) const {
    l = std::clamp(l, 0.0, length());
    return std::visit(overloaded{[&](const Line& ln) -> Vec3 { return ln.dir; },
                                 [&](const Arc& a) -> Vec3 {
                                     const double dir = a.sweep > 0.0 ? 1.0 : -1.0;
                                     const double th = a.start_angle + dir * l / a.radius;
                                     return dir * (-std::sin(th) * a.e1 + std::cos(th) * a.e2);
                                 },
                                 [&](const Spline& s) -> Vec3 {
                                     SplineEval eval{s};
                                     const auto [i, u] = eval.locate(l);
                                     return eval.derivative(i, u).normalized();
                                 }},
                      shape_);
}

TangentSample curve_tangent(const PathCurve& path, double l) {
    const bool clamped = l < 0.0 || l > path.length();
    return {path.unit_tangent(l), clamped};
}

double project_force(const PathCurve& path, double l, const Vec3& force) {
    return path.unit_tangent(l).dot(force);
}

}  // namespace vfstab
