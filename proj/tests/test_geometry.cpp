#include "doctest.h"

#include <numbers>

#include "cnr/geometry.hpp"

using namespace cnr;
using namespace cnr::geometry;

TEST_CASE("convex hull drops interior and collinear points") {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}, {0.2, 0.7}};
    const auto hull = convex_hull(pts);
    CHECK(hull.size() == 4);
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point a = hull[i], b = hull[(i + 1) % hull.size()];
        area += a.real() * b.imag() - b.real() * a.imag();
    }
    CHECK(area == doctest::Approx(2.0));  // twice the area, positive for CCW
}

TEST_CASE("support and distance") {
    const std::vector<Point> square{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    CHECK(support(square, 0.0) == doctest::Approx(1.0));
    CHECK(support(square, std::numbers::pi / 4) == doctest::Approx(std::sqrt(2.0)));
    CHECK(distance_to_convex({0.2, 0.3}, square) == 0.0);
    CHECK(distance_to_convex({3, 0}, square) == doctest::Approx(2.0));
    CHECK(distance_to_convex({2, 2}, square) == doctest::Approx(std::sqrt(2.0)));
    const std::vector<Point> seg{{0, 0}, {2, 0}};
    CHECK(distance_to_convex({1, 1}, seg) == doctest::Approx(1.0));
    const std::vector<Point> dot{{1, 1}};
    CHECK(distance_to_convex({1, 2}, dot) == doctest::Approx(1.0));
}

TEST_CASE("hausdorff between nested squares") {
    const std::vector<Point> a{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    const std::vector<Point> b{{-2, -2}, {2, -2}, {2, 2}, {-2, 2}};
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, b) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("halfplane polygon of a square") {
    const std::vector<double> th{0, std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2};
    const std::vector<double> h{1, 1, 1, 1};
    const auto poly = halfplane_polygon(th, h);
    REQUIRE(poly.size() == 4);
    for (const auto& p : poly) {
        CHECK(std::abs(p.real()) == doctest::Approx(1.0));
        CHECK(std::abs(p.imag()) == doctest::Approx(1.0));
    }
}

TEST_CASE("golden section finds an interior maximum") {
    const auto [x, f] = golden_maximize([](double t) { return -(t - 0.3) * (t - 0.3) + 2.0; }, -1.0, 1.0, 1e-10);
    CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(f == doctest::Approx(2.0));
}
