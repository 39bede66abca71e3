#include "cnr/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cnr/decompose.hpp"
#include "cnr/geometry.hpp"
#include "cnr/metrics.hpp"

namespace cnr {

namespace {

constexpr double kPi = std::numbers::pi;

// Accumulates max(measured - bound) style checks.
struct Tally {
    Tally(std::string s, std::string n, double b) : suite(std::move(s)), name(std::move(n)), bound(b) {}

    std::string suite, name;
    double bound;
    double worst = 0.0;
    std::size_t cases = 0;
    std::string detail;

    void add(double v) {
        worst = std::max(worst, v);
        ++cases;
    }
    CheckResult done() const { return {suite, name, worst <= bound, worst, bound, cases, detail}; }
};

std::size_t grid_size(std::size_t m) { return std::max<std::size_t>(4, (m + 3) / 4 * 4); }

std::vector<double> supports(const Matrix& a, std::size_t m, const SolverConfig& cfg) {
    std::vector<double> h;
    for (const auto& s : range_boundary(a, m, cfg).samples) h.push_back(s.value);
    return h;
}

double max_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
    return d;
}

std::size_t pick_n(std::size_t s, std::size_t lo, std::size_t hi) { return lo + s % (hi - lo + 1); }

void basic_suite(const SuiteOptions& o, SuiteReport& rep) {
    const std::string S = "basic";
    Rng rng(derive_seed(o.solver.seed, 1));
    const std::size_t m = grid_size(o.directions);
    const auto thetas = angle_grid(m);
    const std::size_t hi = std::max<std::size_t>(2, o.max_n);

    Tally containment{S, "containment_in_classical_range", 1e-9};
    Tally trace_point{S, "normalized_trace_in_range", 1e-9};
    Tally translation{S, "diagonal_translation", 1e-8};
    Tally singleton{S, "singleton_iff_diagonal", 1e-9};
    Tally real_range{S, "real_iff_imaginary_part_diagonal", 0.0};
    Tally continuity{S, "support_lipschitz_in_matrix", 1e-9};
    Tally transpose{S, "transpose_invariance", 1e-8};
    Tally radius{S, "radius_below_shifted_classical_radius", 1e-8};
    singleton.detail = "diagonal: spread about tau_n(A); otherwise spread >= max|a_ij|/n";
    real_range.detail = "mismatches between support test and range_is_real";

    for (std::size_t s = 0; s < o.matrices; ++s) {
        const std::size_t n = pick_n(s, 2, hi);
        const Matrix a = ginibre_random(n, rng);
        const RangeBoundary b = range_boundary(a, m, o.solver);
        std::vector<double> h;
        for (const auto& x : b.samples) h.push_back(x.value);

        for (std::size_t k = 0; k < m; ++k) containment.add(h[k] - classical_support(a, thetas[k]));

        trace_point.add(-contains(a, normalized_trace(a), m, o.solver).margin);

        const Matrix d = Matrix::diagonal(std::vector<Complex>([&] {
            std::vector<Complex> v(n);
            for (auto& x : v) x = standard_complex_normal(rng);
            return v;
        }()));
        const Complex td = normalized_trace(d);
        const auto hd = supports(a + d, m, o.solver);
        for (std::size_t k = 0; k < m; ++k)
            translation.add(std::abs(hd[k] - h[k] - (std::polar(1.0, -thetas[k]) * td).real()));

        // Singleton: a diagonal matrix collapses to its normalized trace.
        const Matrix diag = Matrix::diagonal(d.diagonal_entries());
        const Matrix centered_diag = diag - Matrix::identity(n) * td;
        singleton.add(wc_radius(centered_diag, m, o.solver).radius);
        const Complex ta = normalized_trace(a);
        const double off = a.off_diagonal_max_abs();
        const double spread = wc_radius(a - Matrix::identity(n) * ta, m, o.solver).radius;
        singleton.add(off / static_cast<double>(n) - spread);

        // Real range: three families rotate through real, shifted-real and generic ranges.
        Matrix probe = random_hermitian(n, rng);
        if (s % 3 == 0) {
            std::vector<double> im(n);
            std::normal_distribution<double> g;
            double mean = 0.0;
            for (auto& x : im) mean += (x = g(rng));
            for (std::size_t i = 0; i < n; ++i) probe(i, i) += Complex(0.0, im[i] - mean / static_cast<double>(n));
        } else if (s % 3 == 1) {
            probe += Complex(0.0, 0.5) * Matrix::identity(n);
        } else {
            probe = a;
        }
        const double up = support_direction(probe, kPi / 2, o.solver).upper_bound();
        const double down = support_direction(probe, 3 * kPi / 2, o.solver).upper_bound();
        const bool real_by_support = std::max(up, down) <= 1e-8;
        real_range.add(real_by_support == range_is_real(probe) ? 0.0 : 1.0);

        std::uniform_real_distribution<double> expo(-6.0, 0.0);
        const Matrix e = ginibre_random(n, rng) * Complex(std::pow(10.0, expo(rng)));
        continuity.add(max_diff(h, supports(a + e, m, o.solver)) - operator_norm(e));

        transpose.add(max_diff(h, supports(a.transpose(), m, o.solver)));

        const Matrix d0 = random_trace_zero_diagonal(n, rng);
        radius.add(wc_radius(a, m, o.solver).radius - classical_radius(a + d0));
    }
    for (const Tally* t : {&containment, &trace_point, &translation, &singleton, &real_range, &continuity, &transpose,
                           &radius})
        rep.checks.push_back(t->done());
}

void duality_suite(const SuiteOptions& o, SuiteReport& rep) {
    const std::string S = "duality";
    Rng rng(derive_seed(o.solver.seed, 2));
    const std::size_t problems = 2 * o.matrices;
    std::size_t closed = 0;
    Tally cert{S, "dual_certificate_feasible", 1e-10};
    Tally sandwich{S, "primal_below_dual", 1e-12};
    cert.detail = "max of -lambda_min(diag(y) - H)";
    for (std::size_t s = 0; s < problems; ++s) {
        const std::size_t n = pick_n(s, 2, 6);
        const Matrix h = random_hermitian(n, rng);
        const SupportResult r = support_direction(h, 0.0, o.solver);
        if (r.gap <= 1e-8) ++closed;
        Matrix slack = Matrix::diagonal(std::span<const double>(r.dual_y)) - h;
        cert.add(-lambda_min(slack));
        const double dual = std::accumulate(r.dual_y.begin(), r.dual_y.end(), 0.0) / static_cast<double>(n);
        sandwich.add(r.value - dual);
    }
    const double rate = problems ? static_cast<double>(closed) / static_cast<double>(problems) : 1.0;
    std::ostringstream os;
    os << closed << "/" << problems << " solves closed the gap to 1e-8";
    rep.checks.push_back({S, "gap_closed_rate", rate >= 0.95, 1.0 - rate, 0.05, problems, os.str()});
    rep.checks.push_back(cert.done());
    rep.checks.push_back(sandwich.done());
}

void normalizer_suite(const SuiteOptions& o, SuiteReport& rep) {
    const std::string S = "normalizer";
    Rng rng(derive_seed(o.solver.seed, 3));
    const std::size_t m = grid_size(o.directions);
    const std::size_t hi = std::max<std::size_t>(2, o.max_n);
    Tally inv{S, "monomial_conjugation_invariance", 1e-8};
    inv.detail = "20 conjugations U*AU per matrix, U = diagonal unitary * permutation";
    for (std::size_t s = 0; s < std::max<std::size_t>(1, o.matrices / 5); ++s) {
        const std::size_t n = pick_n(s, 2, hi);
        const Matrix a = ginibre_random(n, rng);
        const auto h = supports(a, m, o.solver);
        for (int c = 0; c < 20; ++c) {
            const Matrix u = random_monomial_unitary(n, rng);
            inv.add(max_diff(h, supports(u.adjoint() * a * u, m, o.solver)));
        }
    }
    rep.checks.push_back(inv.done());
}

void direct_sum_suite(const SuiteOptions& o, SuiteReport& rep) {
    const std::string S = "direct-sum";
    Rng rng(derive_seed(o.solver.seed, 4));
    const std::size_t m = grid_size(o.directions);
    Tally law{S, "support_of_direct_sum", 1e-7};
    law.detail = "h_{S1+S2} = (k1/n) h_1 + (k2/n) h_2";
    for (std::size_t s = 0; s < std::max<std::size_t>(1, 2 * o.matrices / 5); ++s) {
        const std::size_t k1 = pick_n(s, 1, 3), k2 = pick_n(s / 3, 1, 3);
        const Matrix s1 = s % 2 ? random_hermitian(k1, rng) : ginibre_random(k1, rng);
        const Matrix s2 = s % 2 ? random_hermitian(k2, rng) : ginibre_random(k2, rng);
        law.add(direct_sum_check(s1, s2, m, o.solver).support_error);
    }
    rep.checks.push_back(law.done());

    const Matrix witness = direct_sum(sparse_witness(2), Matrix(1));
    const double r = wc_radius(witness, m, o.solver).radius;
    std::ostringstream os;
    os.precision(12);
    os << "w_c(e12 + 0_1) = " << r << " (expected 1/3; the stated 2/n would give 2/3)";
    const double err = std::abs(r - 1.0 / 3.0);
    rep.checks.push_back({S, "sparse_witness_radius_n3", err <= 1e-7, err, 1e-7, 1, os.str()});
    if (std::abs(r - 2.0 / 3.0) > 1e-6) rep.flags.push_back("sparse_witness_radius_is_1/n_not_2/n");
}

void decompose_suite(const SuiteOptions& o, SuiteReport& rep) {
    const std::string S = "decompose";
    Rng rng(derive_seed(o.solver.seed, 5));
    const std::size_t hi = std::max<std::size_t>(2, o.max_n);
    std::uniform_real_distribution<double> shift(-0.5, 2.0);
    Tally equiv{S, "nonnegative_iff_decomposable", 0.0};
    Tally margins{S, "margin_agreement", 1e-8};
    Tally certs{S, "certificate_residual", 1e-8};
    std::size_t positive = 0;
    for (std::size_t s = 0; s < 4 * o.matrices; ++s) {
        const std::size_t n = pick_n(s, 2, hi);
        const Matrix a = random_hermitian(n, rng) + Matrix::identity(n) * Complex(shift(rng));
        const NonnegativityResult test = nonnegativity_test(a, o.solver);
        bool decomposed = false;
        double dual_margin = 0.0;
        try {
            const Decomposition dec = decompose(a, o.solver);
            decomposed = true;
            dual_margin = dec.margin;
            const SosCertificate cert = sos_certificate(dec);
            const CertificateCheck check = verify_certificate(a, cert);
            certs.add(check.ok ? check.residual : std::max(check.residual, 1.0));
        } catch (const NotDecomposableError& e) {
            dual_margin = e.margin();
        }
        if (decomposed) ++positive;
        equiv.add(decomposed == test.nonnegative ? 0.0 : 1.0);
        margins.add(std::abs(dual_margin - test.margin));
    }
    equiv.detail = std::to_string(positive) + " of " + std::to_string(4 * o.matrices) + " inputs decomposable";
    rep.checks.push_back(equiv.done());
    rep.checks.push_back(margins.done());
    rep.checks.push_back(certs.done());
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"basic", "duality", "normalizer", "direct-sum", "decompose", "all"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
    SuiteReport rep;
    const bool all = name == "all";
    bool known = all;
    auto run = [&](const char* key, void (*fn)(const SuiteOptions&, SuiteReport&)) {
        if (all || name == key) {
            known = true;
            fn(opts, rep);
        }
    };
    run("basic", basic_suite);
    run("duality", duality_suite);
    run("normalizer", normalizer_suite);
    run("direct-sum", direct_sum_suite);
    run("decompose", decompose_suite);
    if (!known) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
    return rep;
}

double classical_radius(const Matrix& a, std::size_t m) {
    const auto thetas = angle_grid(m);
    std::size_t best = 0;
    std::vector<double> h(m);
    for (std::size_t k = 0; k < m; ++k) {
        h[k] = classical_support(a, thetas[k]);
        if (h[k] > h[best]) best = k;
    }
    const double step = 2 * kPi / static_cast<double>(m);
    const auto refined = geometry::golden_maximize([&](double t) { return classical_support(a, t); },
                                                   thetas[best] - step, thetas[best] + step, 1e-10);
    return std::max(h[best], refined.second);
}

Matrix random_monomial_unitary(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    Matrix u(n);
    for (std::size_t i = 0; i < n; ++i) u(i, perm[i]) = std::polar(1.0, angle(rng));
    return u;
}

Matrix random_trace_zero_diagonal(std::size_t n, Rng& rng) {
    std::vector<Complex> d(n);
    Complex mean{};
    for (auto& x : d) mean += (x = standard_complex_normal(rng));
    mean /= static_cast<double>(n);
    for (auto& x : d) x -= mean;
    return Matrix::diagonal(std::span<const Complex>(d));
}

}  // namespace cnr
