// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "cnr/decompose.hpp"
#include "cnr/geometry.hpp"
#include "cnr/metrics.hpp"
#include "cnr/suite.hpp"
#include "cnr/ucrange.hpp"
#include "oracles.hpp"

using namespace cnr;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

oracle::M2 as_m2(const Matrix& a) { return {a(0, 0), a(0, 1), a(1, 0), a(1, 1)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 2x2 shapes: generic ellipses, disks (c = 0) and segments (|b| = |c|).
Matrix random_2x2(int t, Rng& rng) {
    Matrix a = ginibre_random(2, rng);
    if (t % 5 == 0) a(1, 0) = 0.0;
    if (t % 5 == 1) a(1, 0) = std::abs(a(0, 1)) * std::polar(1.0, std::arg(a(1, 0)));
    return a;
}

Outcome criterion1() {
    Rng rng(101);
    double support_err = 0.0, witness_dist = 0.0, poly_haus = 0.0, secs = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Matrix a = random_2x2(t, rng);
        // Only the solver is timed; the oracle comparisons below are not.
        const auto t0 = std::chrono::steady_clock::now();
        const auto b = range_boundary(a, 256, {});
        secs += seconds_since(t0);
        std::vector<Complex> curve;
        const auto m2 = as_m2(a);
        for (int k = 0; k < 4096; ++k) {
            const double s = 2 * pi * k / 4096;
            curve.push_back(0.5 * (m2.a + m2.d) + 0.5 * (m2.b * std::polar(1.0, -s) + m2.c * std::polar(1.0, s)));
        }
        for (const auto& s : b.samples) {
            support_err = std::max(support_err, std::abs(s.value - oracle::support_closed(m2, s.theta)));
            witness_dist = std::max(witness_dist, oracle::distance_to_boundary(m2, s.witness_point));
        }
        poly_haus = std::max(poly_haus, geometry::hausdorff(b.inner_polygon(), geometry::convex_hull(curve)));
    }
    const double err = std::max(support_err, witness_dist);
    return {err <= 1e-6 && secs < 5.0,
            fmt("50 matrices, m=256: max support error %.2e, max witness distance to boundary %.2e (<= 1e-6); "
                "polygon-vs-curve Hausdorff %.2e is discretization only; solver %.2fs (< 5s)",
                support_err, witness_dist, poly_haus, secs)};
}

Outcome criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(202);
    int closed = 0;
    double worst_cert = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + t % 5;
        const Matrix h = random_hermitian(n, rng);
        SolverConfig cfg;
        cfg.restarts = 8;
        const auto sol = maximize_over_elliptope(h, cfg, derive_seed(202, t));
        if (sol.gap / static_cast<double>(n) <= 1e-8) ++closed;
        const Matrix slack = Matrix::diagonal(std::span<const double>(sol.y)) - h;
        worst_cert = std::min(worst_cert, hermitian_eigs(slack).eigenvalues.front());
    }
    const double secs = seconds_since(t0);
    return {closed >= 95 && worst_cert >= -1e-10 && secs < 30.0,
            fmt("gap <= 1e-8 in %d/100 solves (>= 95); worst lambda_min(diag(y) - H) %.2e (>= -1e-10); %.2fs (< 30s)",
                closed, worst_cert, secs)};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CNR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteOptions opts;
    opts.max_n = 5;
    opts.matrices = 50;
    const auto rep = run_suite("basic", opts);
    std::string failed;
    double worst_identity = 0.0;
    for (const auto& c : rep.checks) {
        if (!c.passed) failed += " " + c.name;
        if (c.bound <= 1e-8) worst_identity = std::max(worst_identity, c.worst);
    }
    const int status = run_cli("check --suite basic");
    const double secs = seconds_since(t0);
    return {rep.passed() && status == 0 && secs < 60.0,
            fmt("%zu checks on 50 matrices n<=5, worst identity residual %.2e%s; `check --suite basic` exit %d; "
                "%.2fs (< 60s)",
                rep.checks.size(), worst_identity, failed.empty() ? "" : ("; failed:" + failed).c_str(), status,
                secs)};
}

Outcome criterion4() {
    Rng rng(404);
    std::uniform_int_distribution<std::size_t> size(1, 3);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Matrix s1 = ginibre_random(size(rng), rng);
        const Matrix s2 = ginibre_random(size(rng), rng);
        worst = std::max(worst, direct_sum_check(s1, s2, 32, {}).support_error);
    }
    const double r = wc_radius(sparse_witness(3), 64, {}).radius;
    const bool witness_ok = std::abs(r - 1.0 / 3.0) <= 1e-7;
    return {worst <= 1e-7 && witness_ok,
            fmt("20 block pairs: worst support error %.2e (<= 1e-7); e12 (+) 0 radius %.10f (1/3 +- 1e-7)%s", worst, r,
                std::abs(r - 2.0 / 3.0) > 1e-6 ? "; flag: sparse_witness_radius_is_1/n_not_2/n" : "")};
}

Outcome criterion5() {
    Rng rng(505);
    const auto thetas = angle_grid(32);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + t % 4;
        const Matrix a = ginibre_random(n, rng);
        std::vector<double> base;
        for (double th : thetas) base.push_back(support_direction(a, th, {}).value);
        for (int u = 0; u < 20; ++u) {
            const Matrix g = random_monomial_unitary(n, rng);
            const Matrix c = g.adjoint() * a * g;
            for (std::size_t k = 0; k < thetas.size(); ++k)
                worst = std::max(worst, std::abs(support_direction(c, thetas[k], {}).value - base[k]));
        }
    }
    return {worst <= 1e-8, fmt("10 matrices x 20 conjugations x 32 directions: worst difference %.2e (<= 1e-8)", worst)};
}

Outcome criterion6() {
    Rng rng(606);
    std::uniform_real_distribution<double> shift(-0.5, 2.0);
    int agree = 0, successes = 0, bad_cert = 0;
    double margin_err = 0.0, worst_residual = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + t % 4;
        const Matrix a = random_hermitian(n, rng) + Matrix::identity(n) * Complex(shift(rng));
        const auto test = nonnegativity_test(a, {});
        bool ok = false;
        try {
            const auto dec = decompose(a, {});
            ok = true;
            ++successes;
            margin_err = std::max(margin_err, std::abs(dec.margin - test.margin));
            const auto check = verify_certificate(a, sos_certificate(dec), 1e-8);
            worst_residual = std::max(worst_residual, check.residual);
            if (!check.ok) ++bad_cert;
        } catch (const NotDecomposableError& e) {
            margin_err = std::max(margin_err, std::abs(e.margin() - test.margin));
        }
        if (ok == test.nonnegative) ++agree;
    }
    return {agree == 200 && margin_err <= 1e-8 && bad_cert == 0,
            fmt("equivalence on %d/200; %d decomposable; margin agreement %.2e (<= 1e-8); worst certificate residual "
                "%.2e, %d failed (<= 1e-8)",
                agree, successes, margin_err, worst_residual, bad_cert)};
}

Outcome criterion7() {
    Rng rng(707);
    double worst_upper = -1e300, worst_lower = -1e300;
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int t = 0; t < 50; ++t) {
            const Matrix a = ginibre_random(n, rng);
            const double w = wc_radius(a, 48, {}).radius;
            const double c = c_seminorm(a).value;
            worst_upper = std::max(worst_upper, w - c);
            worst_lower = std::max(worst_lower, c / (4.0 * n + 2.0) - w);
        }
    }
    std::string ratios;
    bool kappa_ok = true;
    for (std::size_t n : {2u, 3u, 4u}) {
        Rng krng(708 + n);
        const auto est = kappa_upper_search(n, 24, krng, {});
        kappa_ok &= est.best_ratio <= 1.0 / n + 1e-5;
        ratios += fmt(" n=%zu: %.8f (<= %.8f)", n, est.best_ratio, 1.0 / n + 1e-5);
    }
    return {worst_upper <= 1e-6 && worst_lower <= 1e-6 && kappa_ok,
            fmt("150 matrices: max w_c - ||T||_c %.2e, max ||T||_c/(4n+2) - w_c %.2e (both <= 1e-6); best ratio%s",
                worst_upper, worst_lower, ratios.c_str())};
}

Outcome criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(808);
    double inclusion = 1e300;
    for (std::size_t n : {2u, 3u, 4u, 5u}) {
        WucOptions opts;
        opts.samples = 500;
        opts.directions = 64;
        for (int t = 0; t < 3; ++t)
            inclusion = std::min(inclusion, compare_wc_wuc(ginibre_random(n, rng), opts, {}).inclusion_margin);
    }
    double deficit = 0.0;
    for (int t = 0; t < 10; ++t) {
        WucOptions opts;
        opts.samples = 2000;
        opts.k_list = {16};
        opts.directions = 128;
        const auto cmp = compare_wc_wuc(ginibre_random(2, rng), opts, {});
        inclusion = std::min(inclusion, cmp.inclusion_margin);
        deficit = std::max(deficit, cmp.deficit);
    }
    const double secs = seconds_since(t0);
    return {inclusion >= -1e-8 && deficit <= 0.02 && secs < 60.0,
            fmt("min inclusion margin %.2e (>= -1e-8); n=2 worst deficit %.4f (<= 0.02); %.2fs (< 60s)", inclusion,
                deficit, secs)};
}

Outcome criterion9() {
    Rng rng(909);
    std::uniform_real_distribution<double> mag(-6.0, 0.0);
    const auto thetas = angle_grid(32);
    double worst = -1e300;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + t % 4;
        const Matrix a = ginibre_random(n, rng);
        Matrix e = ginibre_random(n, rng);
        e *= Complex(std::pow(10.0, mag(rng)));
        const double bound = operator_norm(e);
        for (double th : thetas) {
            const double d = std::abs(support_direction(a, th, {}).value - support_direction(a + e, th, {}).value);
            worst = std::max(worst, d - bound);
        }
    }
    return {worst <= 1e-9, fmt("50 pairs x 32 directions: max |h_A - h_{A+E}| - ||E|| = %.2e (<= 1e-9)", worst)};
}

}  // namespace

int main() {
    const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                  criterion6, criterion7, criterion8, criterion9};
    int failures = 0;
    for (int k = 0; k < 9; ++k) {
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", k + 1, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
