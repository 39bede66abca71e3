#pragma once

#include <cstdint>
#include <stop_token>
#include <string>
#include <vector>

#include "cnr/elliptope.hpp"
#include "cnr/matcore.hpp"

namespace cnr {

/// Settings shared by every elliptope solve.
struct SolverConfig {
    double tol = 1e-8;              // target primal-dual gap (normalized trace units)
    int restarts = 8;               // random restarts after the identity start
    int max_sweeps = 5000;          // coordinate-ascent sweeps per start
    double improvement_tol = 1e-13; // per-sweep relative improvement that ends a start
    double certificate_tol = 1e-10; // accepted lambda_min(diag(y) - H) before repair
    std::uint64_t seed = 0x5eedULL;
    unsigned threads = 1;
    std::stop_token stop;
};

/// Certified maximizer of Tr(H B) over correlation matrices B (unnormalized).
struct ElliptopeSolution {
    GramFactor factor;
    double primal = 0.0;             // Tr(H B) at the returned factor
    std::vector<double> y;           // diag(y) - H is PSD (after repair)
    double dual = 0.0;               // sum(y) >= max Tr(H B)
    double certificate_lambda_min = 0.0;
    double gap = 0.0;                // dual - primal
    bool certified = false;          // gap <= n * tol
    bool degenerate = false;         // some update direction vanished
    int attempts = 0;
    int sweeps = 0;
};

/// Maximize Tr(H B) over the elliptope by block-coordinate ascent on unit Gram
/// vectors, certified by the diagonal dual y_i = Re (H B)_ii.
ElliptopeSolution maximize_over_elliptope(const Matrix& h, const SolverConfig& cfg, std::uint64_t seed);

/// Lagrangian dual certificate for a fixed factor; repaired to be feasible.
struct DualCertificate {
    std::vector<double> y;
    double dual = 0.0;
    double lambda_min_before_repair = 0.0;
    double lambda_min = 0.0;
};
DualCertificate certify_factor(const Matrix& h, const GramFactor& factor);

/// One direction of the support function h_A(theta) = max Re(e^{-i theta} lambda).
struct SupportResult {
    double theta = 0.0;
    double value = 0.0;                 // tau_n(H_theta B) for the returned B
    GramFactor maximizer;
    Complex witness_point;              // tau_n(A B), a point of W_c(A)
    std::vector<double> dual_y;         // diag(y) - H_theta PSD
    double gap = 0.0;                   // (1/n) sum y - value
    bool certified = false;
    bool degenerate_direction = false;
    int attempts = 0;

    double upper_bound() const { return value + gap; }
};

SupportResult support_direction(const Matrix& a, double theta, const SolverConfig& cfg);

/// Support samples on the uniform grid 2 pi k / m.
struct RangeBoundary {
    std::string matrix_hash;
    std::vector<SupportResult> samples;
    double radius = 0.0;  // max sampled support value

    std::vector<Complex> inner_polygon() const;  // hull of witness points
    std::vector<Complex> outer_polygon() const;  // intersection of certified half-planes
    std::vector<std::size_t> uncertified() const;
    double max_gap() const;
};

/// FNV-1a over the entry bytes, hex encoded.
std::string matrix_hash(const Matrix& a);

RangeBoundary range_boundary(const Matrix& a, std::size_t m, const SolverConfig& cfg);

struct RadiusResult {
    double radius = 0.0;       // refined max support value (a modulus attained in W_c)
    double theta = 0.0;        // direction of the maximizer
    Complex point;             // witness with |point| close to radius
    double outer_bound = 0.0;  // max modulus over the outer polygon
    bool certified = true;
};

/// Correlation numerical radius w_c(A) = max over theta of h_A(theta).
RadiusResult wc_radius(const Matrix& a, std::size_t m, const SolverConfig& cfg);

enum class Membership { Inside, Outside, Inconclusive };
const char* to_string(Membership m);

struct MembershipResult {
    Membership verdict = Membership::Inconclusive;
    double margin = 0.0;     // min over theta of h_A(theta) - Re(e^{-i theta} lambda)
    double theta = 0.0;      // minimizing direction
    double gap_bound = 0.0;  // largest gap among the directions used

    bool inside() const { return verdict == Membership::Inside; }
};

MembershipResult contains(const Matrix& a, Complex lambda, std::size_t m, const SolverConfig& cfg);

/// Certified minimum of the real range W_c(Re A).
struct MinimumResult {
    double value = 0.0;        // tau_n(Re A * B) at the returned B (upper bound on the minimum)
    double lower_bound = 0.0;  // (1/n) sum y
    GramFactor minimizer;
    Complex witness_point;
    std::vector<double> dual_y;  // Re A - diag(y) PSD
    double gap = 0.0;
    bool certified = false;
};

/// Throws RangeNotReal unless Im A is diagonal with tau_n(Im A) = 0.
MinimumResult min_real_value(const Matrix& a, const SolverConfig& cfg);

/// True when W_c(A) is a subset of the real line: Im A diagonal, trace zero.
bool range_is_real(const Matrix& a, double tol = 1e-10);

/// Support function of the classical numerical range, lambda_max(H_theta).
double classical_support(const Matrix& a, double theta);

/// Uniform angle grid 2 pi k / m.
std::vector<double> angle_grid(std::size_t m);

}  // namespace cnr
