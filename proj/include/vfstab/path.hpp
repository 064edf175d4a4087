#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace vfstab {

using Vec3 = Eigen::Vector3d;

/// Reference curve phi(l) parameterized by arc length l in [0, length()].
class PathCurve {
public:
    static PathCurve line(const Vec3& from, const Vec3& to);

    /// Arc of `radius` around `center` in the plane spanned by the orthonormal
    /// pair (e1, e2), starting at angle `start_angle` and turning by `sweep`
    /// radians (positive is counterclockwise about e1 x e2).
    static PathCurve arc(const Vec3& center, double radius, double start_angle, double sweep,
                         const Vec3& e1 = Vec3::UnitX(), const Vec3& e2 = Vec3::UnitY());

    /// Natural cubic spline through the waypoints (chord-length knots),
    /// reparameterized numerically by arc length. C^2 in space, so the unit
    /// tangent is continuous.
    static PathCurve spline(const std::vector<Vec3>& waypoints);

    double length() const;
    Vec3 position(double l) const;
    Vec3 unit_tangent(double l) const;

    struct Line {
        Vec3 from;
        Vec3 dir;
        double len;
    };
    struct Arc {
        Vec3 center;
        Vec3 e1;
        Vec3 e2;
        double radius;
        double start_angle;
        double sweep;
    };
    struct Spline {
        std::vector<double> knots;     // chord-length parameter at each waypoint
        std::vector<Vec3> points;
        std::vector<Vec3> second;      // second derivatives at the knots
        std::vector<double> cum_len;   // arc length at each knot
    };

private:
    using Shape = std::variant<Line, Arc, Spline>;
    explicit PathCurve(Shape shape) : shape_(std::move(shape)) {}

    Shape shape_;
};

struct TangentSample {
    Vec3 tangent;
    bool clamped = false;  // l was outside [0, length] and was clamped
};

TangentSample curve_tangent(const PathCurve& path, double l);

/// Tangential component of a 3D force at arc length l.
double project_force(const PathCurve& path, double l, const Vec3& force);

}  // namespace vfstab
