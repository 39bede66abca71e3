#include "doctest.h"

#include "cnr/metrics.hpp"
#include "cnr/suite.hpp"
#include "oracles.hpp"

using namespace cnr;

namespace {

oracle::M2 as_m2(const Matrix& a) { return {a(0, 0), a(0, 1), a(1, 0), a(1, 1)}; }

}  // namespace

TEST_CASE("c_seminorm examples") {
    Rng rng(61);
    CHECK(c_seminorm(random_trace_zero_diagonal(4, rng)).value < 1e-6);
    CHECK(std::abs(c_seminorm(Matrix{{0, 1}, {0, 0}}).value - 1.0) < 1e-6);
    for (std::size_t n : {1u, 2u, 3u, 5u}) CHECK(std::abs(c_seminorm(Matrix::identity(n)).value - 1.0) < 1e-6);
    CHECK(std::abs(c_seminorm(Matrix{{Complex(3, -4)}}).value - 5.0) < 1e-12);
}

TEST_CASE("c_seminorm matches the 2x2 brute-force oracle") {
    Rng rng(62);
    for (int t = 0; t < 20; ++t) {
        const Matrix m = ginibre_random(2, rng);
        const auto r = c_seminorm(m);
        CHECK(r.converged);
        CHECK(std::abs(r.value - oracle::seminorm2(as_m2(m))) < 1e-6);
        Complex tr{};
        for (const auto& d : r.d) tr += d;
        CHECK(std::abs(tr) < 1e-12);
    }
}

TEST_CASE("seminorm axioms") {
    Rng rng(63);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + t % 3;
        const Matrix a = ginibre_random(n, rng), b = ginibre_random(n, rng);
        const double na = c_seminorm(a).value, nb = c_seminorm(b).value;
        const Complex s(-1.7, 0.4);
        CHECK(std::abs(c_seminorm(a * s).value - std::abs(s) * na) <= 2e-6 * (1 + std::abs(s) * na));
        CHECK(c_seminorm(a + b).value <= na + nb + 2e-6);
        // Invariance under trace-zero diagonal shifts.
        CHECK(std::abs(c_seminorm(a + random_trace_zero_diagonal(n, rng)).value - na) <= 2e-6);
        // Bounded by the operator norm.
        CHECK(na <= operator_norm(a) + 1e-12);
    }
}

TEST_CASE("radius-seminorm bracket and shift invariance of the radius") {
    Rng rng(64);
    for (int t = 0; t < 12; ++t) {
        const std::size_t n = 2 + t % 3;
        const Matrix a = ginibre_random(n, rng);
        const double w = wc_radius(a, 32, {}).radius;
        const double c = c_seminorm(a).value;
        CHECK(w <= c + 1e-6);
        CHECK(w >= c / (4.0 * n + 2.0) - 1e-6);
        const double w_shift = wc_radius(a + random_trace_zero_diagonal(n, rng), 32, {}).radius;
        CHECK(std::abs(w_shift - w) <= 1e-7);
    }
}

TEST_CASE("sparse_witness") {
    const Matrix w = sparse_witness(4);
    CHECK(w.size() == 4);
    CHECK(w(0, 1) == Complex(1.0));
    CHECK(w.max_abs() == 1.0);
    CHECK(w.frobenius_norm() == 1.0);
    CHECK_THROWS_AS(sparse_witness(1), Error);
}

TEST_CASE("kappa search reaches the sparse witness ratio 1/n") {
    for (std::size_t n : {2u, 3u}) {
        Rng rng(65 + n);
        const auto est = kappa_upper_search(n, 12, rng, {});
        CHECK(est.n == n);
        CHECK(est.best_ratio <= 1.0 / n + 1e-6);
        CHECK(est.best_ratio >= 1.0 / (4.0 * n + 2.0) - 1e-6);
        CHECK(std::abs(est.sparse_witness_ratio - 1.0 / n) < 1e-6);
        CHECK(est.lower_bound == doctest::Approx(1.0 / (4.0 * n + 2.0)));
        CHECK(est.stated_upper == doctest::Approx(2.0 / n));
        CHECK(std::find(est.flags.begin(), est.flags.end(), "sparse_witness_ratio_is_1/n_not_2/n") != est.flags.end());
        CHECK(std::find(est.flags.begin(), est.flags.end(), "below_lower_bound_1/(4n+2)") == est.flags.end());
        CHECK(est.witness.size() == n);
        CHECK(est.evaluations >= 1);
    }
}

TEST_CASE("direct_sum_check examples") {
    SUBCASE("e12 plus a zero block is the radius-1/3 disk") {
        const auto r = direct_sum_check(Matrix{{0, 1}, {0, 0}}, Matrix(1), 32, {});
        CHECK(r.k1 == 2);
        CHECK(r.k2 == 1);
        CHECK(std::abs(r.radius - 1.0 / 3.0) < 1e-7);
        CHECK(r.support_error <= 1e-7);
    }
    SUBCASE("diagonal blocks give the weighted trace point") {
        const Matrix s1 = Matrix::diagonal(std::vector<double>{1, 2});
        const Matrix s2 = Matrix::diagonal(std::vector<double>{-3});
        const auto r = direct_sum_check(s1, s2, 16, {});
        CHECK(r.support_error <= 1e-12);
        CHECK(std::abs(r.radius - 0.0) < 1e-12);
    }
    SUBCASE("random Hermitian 2+2 blocks") {
        Rng rng(66);
        for (int t = 0; t < 3; ++t) {
            const auto r = direct_sum_check(random_hermitian(2, rng), random_hermitian(2, rng), 32, {});
            CHECK(r.certified);
            CHECK(r.support_error <= 1e-7);
        }
    }
    SUBCASE("random complex blocks") {
        Rng rng(67);
        const auto r = direct_sum_check(ginibre_random(2, rng), ginibre_random(3, rng), 32, {});
        CHECK(r.support_error <= 1e-7);
        CHECK(r.polygon_hausdorff <= 0.05);
    }
}

TEST_CASE("helpers behind the suites") {
    Rng rng(68);
    const Matrix u = random_monomial_unitary(5, rng);
    CHECK((u.adjoint() * u - Matrix::identity(5)).max_abs() < 1e-12);
    std::size_t nonzero = 0;
    for (const auto& v : u.entries()) nonzero += std::abs(v) > 0.0;
    CHECK(nonzero == 5);
    const Matrix d = random_trace_zero_diagonal(4, rng);
    CHECK(d.is_diagonal());
    CHECK(std::abs(d.trace()) < 1e-12);
    CHECK(std::abs(classical_radius(Matrix{{0, 1}, {0, 0}}) - 0.5) < 1e-9);
    CHECK(std::abs(classical_radius(Matrix{{0, 2}, {1, 0}}) - 1.5) < 1e-9);
}
