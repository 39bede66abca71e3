#include "cnr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cnr::geometry {

namespace {

double cross(Point o, Point a, Point b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

double distance_to_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

}  // namespace

std::vector<Point> convex_hull(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double support(std::span<const Point> points, double theta) {
    const Point phase = std::polar(1.0, -theta);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) best = std::max(best, (phase * p).real());
    return best;
}

double distance_to_convex(Point p, std::span<const Point> polygon) {
    const std::size_t m = polygon.size();
    if (m == 0) return std::numeric_limits<double>::infinity();
    if (m == 1) return std::abs(p - polygon[0]);
    if (m == 2) return distance_to_segment(p, polygon[0], polygon[1]);

    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = polygon[i];
        const Point b = polygon[(i + 1) % m];
        if (cross(a, b, p) < 0.0) inside = false;
        best = std::min(best, distance_to_segment(p, a, b));
    }
    return inside ? 0.0 : best;
}

double hausdorff(std::span<const Point> a, std::span<const Point> b) {
    double h = 0.0;
    for (const auto& p : a) h = std::max(h, distance_to_convex(p, b));
    for (const auto& p : b) h = std::max(h, distance_to_convex(p, a));
    return h;
}

std::vector<Point> halfplane_polygon(std::span<const double> thetas, std::span<const double> offsets) {
    const std::size_t m = thetas.size();
    std::vector<Point> vertices;
    vertices.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t l = (k + 1) % m;
        // cos(t) x + sin(t) y = h for both lines.
        const double a1 = std::cos(thetas[k]), b1 = std::sin(thetas[k]);
        const double a2 = std::cos(thetas[l]), b2 = std::sin(thetas[l]);
        const double det = a1 * b2 - a2 * b1;
        if (std::abs(det) < 1e-300) continue;
        const double x = (offsets[k] * b2 - offsets[l] * b1) / det;
        const double y = (a1 * offsets[l] - a2 * offsets[k]) / det;
        vertices.emplace_back(x, y);
    }
    return vertices;
}

}  // namespace cnr::geometry
