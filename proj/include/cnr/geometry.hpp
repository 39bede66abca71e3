#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cnr/matcore.hpp"

namespace cnr::geometry {

using Point = Complex;

/// Counter-clockwise convex hull (monotone chain). Collinear points dropped.
std::vector<Point> convex_hull(std::span<const Point> points);

/// max over p of Re(e^{-i theta} p).
double support(std::span<const Point> points, double theta);

/// Distance from p to a convex CCW polygon; 0 when p lies inside.
/// Degenerate polygons (1 or 2 vertices) are treated as a point or segment.
double distance_to_convex(Point p, std::span<const Point> polygon);

/// Hausdorff distance between two convex polygons (attained at vertices).
double hausdorff(std::span<const Point> a, std::span<const Point> b);

/// Vertices of the intersection of half-planes Re(e^{-i t_k} z) <= h_k for an
/// increasing angle sequence covering the circle with gaps below pi.
std::vector<Point> halfplane_polygon(std::span<const double> thetas, std::span<const double> offsets);

/// Golden-section search for a maximum of f on [a, b].
template <class F>
std::pair<double, double> golden_maximize(F&& f, double a, double b, double xtol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace cnr::geometry
