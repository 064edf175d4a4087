#include <doctest.h>

#include <cmath>

#include "vfstab/path.hpp"

using namespace vfstab;

namespace {

void check_unit_speed_and_tangent(const PathCurve& path) {
    const double L = path.length();
    const double h = 1e-5 * L;
    for (int i = 1; i < 50; ++i) {
        const double l = L * i / 50.0;
        const Vec3 fd = (path.position(l + h) - path.position(l - h)) / (2.0 * h);
        CHECK(fd.norm() == doctest::Approx(1.0).epsilon(1e-5));
        CHECK((path.unit_tangent(l) - fd).norm() < 1e-5);
        CHECK(path.unit_tangent(l).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

}  // namespace

TEST_CASE("line path") {
    const PathCurve line = PathCurve::line({0, 0, 0}, {3, 4, 0});
    CHECK(line.length() == doctest::Approx(5.0));
    CHECK((line.position(2.5) - Vec3(1.5, 2.0, 0.0)).norm() < 1e-14);
    CHECK((line.unit_tangent(1.0) - Vec3(0.6, 0.8, 0.0)).norm() < 1e-14);
    CHECK(project_force(line, 1.0, {1.0, 1.0, 7.0}) == doctest::Approx(1.4));
    check_unit_speed_and_tangent(line);
    CHECK_THROWS_AS(PathCurve::line({1, 1, 1}, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("arc path") {
    const PathCurve arc = PathCurve::arc({1, 0, 0}, 2.0, 0.0, M_PI / 2);
    CHECK(arc.length() == doctest::Approx(M_PI));
    CHECK((arc.position(0.0) - Vec3(3, 0, 0)).norm() < 1e-14);
    CHECK((arc.position(M_PI) - Vec3(1, 2, 0)).norm() < 1e-12);
    check_unit_speed_and_tangent(arc);
    // Clockwise sweep reverses the tangent.
    const PathCurve cw = PathCurve::arc({0, 0, 0}, 1.0, 0.0, -M_PI);
    CHECK((cw.unit_tangent(0.0) - Vec3(0, -1, 0)).norm() < 1e-12);
    CHECK_THROWS_AS(PathCurve::arc({0, 0, 0}, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PathCurve::arc({0, 0, 0}, 1.0, 0.0, 1.0, Vec3::UnitX(), Vec3::UnitX()), std::invalid_argument);
}

TEST_CASE("spline path interpolates waypoints with unit speed") {
    const std::vector<Vec3> pts{{0, 0, 0}, {0.2, 0.1, 0}, {0.4, 0.0, 0.05}, {0.6, -0.1, 0.1}, {0.8, 0.0, 0.1}};
    const PathCurve spline = PathCurve::spline(pts);
    check_unit_speed_and_tangent(spline);
    CHECK((spline.position(0.0) - pts.front()).norm() < 1e-12);
    CHECK((spline.position(spline.length()) - pts.back()).norm() < 1e-9);
    // Every interior waypoint is hit at some arc length.
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
        double best = 1e9;
        for (int i = 0; i <= 4000; ++i) best = std::min(best, (spline.position(spline.length() * i / 4000.0) - pts[k]).norm());
        CHECK(best < 1e-3);
    }
    // Arc length exceeds the chord sum only slightly and never falls below it.
    double chords = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k) chords += (pts[k] - pts[k - 1]).norm();
    CHECK(spline.length() >= chords - 1e-12);
    CHECK(spline.length() < 1.1 * chords);
    CHECK_THROWS_AS(PathCurve::spline({{0, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(PathCurve::spline({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}), std::invalid_argument);
}

TEST_CASE("tangent queries outside the path are clamped and flagged") {
    const PathCurve line = PathCurve::line({0, 0, 0}, {1, 0, 0});
    const TangentSample in = curve_tangent(line, 0.5);
    CHECK_FALSE(in.clamped);
    const TangentSample past = curve_tangent(line, 1.5);
    CHECK(past.clamped);
    CHECK((past.tangent - Vec3::UnitX()).norm() < 1e-14);
    CHECK(curve_tangent(line, -0.1).clamped);
    CHECK((line.position(2.0) - Vec3(1, 0, 0)).norm() < 1e-14);
}
