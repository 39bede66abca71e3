#pragma once

// Independent reference computations used to check the library. Nothing here
// calls the solver; 2x2 problems are small enough to do by hand or by brute force.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
constexpr double pi = std::numbers::pi;

struct M2 {
    C a, b, c, d;  // [[a, b], [c, d]]
};

// Eigenvalues of a 2x2 Hermitian matrix [[p, q], [conj q, r]], ascending.
inline std::pair<double, double> eig2(double p, C q, double r) {
    const double mean = 0.5 * (p + r);
    const double rad = std::hypot(0.5 * (p - r), std::abs(q));
    return {mean - rad, mean + rad};
}

// Largest singular value of a 2x2 matrix from |det| and the Frobenius norm.
inline double sigma_max2(const M2& m) {
    const double f2 = std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
    const double det = std::abs(m.a * m.d - m.b * m.c);
    return std::sqrt(0.5 * (f2 + std::sqrt(std::max(0.0, f2 * f2 - 4 * det * det))));
}

// tau_2(A B) for B = [[1, z], [conj z, 1]].
inline C tau_ab(const M2& m, C z) { return 0.5 * (m.a + m.d + m.b * std::conj(z) + m.c * z); }

// Support of W_c(A) for 2x2 A, maximizing over the z-disk in closed form.
inline double support_closed(const M2& m, double theta) {
    const C r = std::polar(1.0, -theta);
    const C rb = r * m.b, rc = r * m.c;
    // Re(rb conj z + rc z) = Re((conj(rb) + rc) z); the max over |z| <= 1 is the modulus.
    return 0.5 * (r * (m.a + m.d)).real() + 0.5 * std::abs(std::conj(rb) + rc);
}

// Brute force over a polar grid of the disk (boundary included).
inline double support_grid(const M2& m, double theta, int rings = 60, int spokes = 720) {
    const C r = std::polar(1.0, -theta);
    double best = -1e300;
    for (int i = 0; i <= rings; ++i) {
        const double rho = static_cast<double>(i) / rings;
        for (int k = 0; k < spokes; ++k) {
            const C z = std::polar(rho, 2 * pi * k / spokes);
            best = std::max(best, (r * tau_ab(m, z)).real());
        }
    }
    return best;
}

// Geometric description: center (a+d)/2, semi-axes (|b| +- |c|)/2, major axis along arg sqrt(bc).
struct Ellipse {
    C center;
    double major, minor, phi;
};

inline Ellipse ellipse_of(const M2& m) {
    Ellipse e;
    e.center = 0.5 * (m.a + m.d);
    e.major = 0.5 * (std::abs(m.b) + std::abs(m.c));
    e.minor = 0.5 * std::abs(std::abs(m.b) - std::abs(m.c));
    // Major direction: where b e^{-it} and c e^{it} align, i.e. arg = (arg b + arg c)/2.
    e.phi = (std::abs(m.b) > 0 && std::abs(m.c) > 0) ? 0.5 * (std::arg(m.b) + std::arg(m.c))
            : std::abs(m.b) > 0                      ? std::arg(m.b)
                                                     : std::arg(m.c);
    return e;
}

inline double ellipse_support(const Ellipse& e, double theta) {
    const double t = theta - e.phi;
    return (std::polar(1.0, -theta) * e.center).real() +
           std::sqrt(e.major * e.major * std::cos(t) * std::cos(t) + e.minor * e.minor * std::sin(t) * std::sin(t));
}

// Distance from p to the curve center + (b e^{-is} + c e^{is})/2, s in [0, 2 pi).
inline double distance_to_boundary(const M2& m, C p) {
    auto gamma = [&](double s) { return 0.5 * (m.a + m.d) + 0.5 * (m.b * std::polar(1.0, -s) + m.c * std::polar(1.0, s)); };
    const int samples = 4096;
    int best = 0;
    double best_d = 1e300;
    for (int k = 0; k < samples; ++k) {
        const double d = std::abs(p - gamma(2 * pi * k / samples));
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    double lo = 2 * pi * (best - 1) / samples, hi = 2 * pi * (best + 1) / samples;
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (std::abs(p - gamma(m1)) < std::abs(p - gamma(m2))) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return std::min(best_d, std::abs(p - gamma(0.5 * (lo + hi))));
}

// min over d in C of sigma_max([[t11 - d, t12], [t21, t22 + d]]), by nested grid zoom.
inline double seminorm2(const M2& t) {
    auto f = [&](C d) { return sigma_max2({t.a - d, t.b, t.c, t.d + d}); };
    C center = 0.5 * (t.a - t.d);
    double half = 2.0 * (std::abs(t.a) + std::abs(t.b) + std::abs(t.c) + std::abs(t.d)) + 1.0;
    double best = f(center);
    for (int level = 0; level < 60; ++level) {
        C arg = center;
        const int g = 20;
        for (int i = -g; i <= g; ++i)
            for (int k = -g; k <= g; ++k) {
                const C d = center + C(half * i / g, half * k / g);
                const double v = f(d);
                if (v < best) {
                    best = v;
                    arg = d;
                }
            }
        center = arg;
        half *= 0.3;
    }
    return best;
}

}  // namespace oracle
