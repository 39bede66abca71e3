#include "doctest.h"

#include "cnr/decompose.hpp"

using namespace cnr;

namespace {

Matrix random_psd(std::size_t n, Rng& rng) {
    const Matrix g = ginibre_random(n, rng);
    return hermitian_parts(g * g.adjoint()).re;
}

double trace_re(const Matrix& m) { return m.trace().real(); }

Decomposition split(Matrix p) {
    Decomposition dec;
    dec.d = Matrix(p.size());
    dec.p = std::move(p);
    return dec;
}

}  // namespace

TEST_CASE("nonnegativity_test examples") {
    const auto ones = nonnegativity_test(Matrix{{1, 1}, {1, 1}}, {});
    CHECK(ones.nonnegative);
    CHECK(std::abs(ones.margin) < 1e-9);
    const auto neg = nonnegativity_test(Matrix{{1, 2}, {2, 1}}, {});
    CHECK_FALSE(neg.nonnegative);
    CHECK(std::abs(neg.margin + 1.0) < 1e-9);
    Rng rng(41);
    for (int t = 0; t < 10; ++t) CHECK(nonnegativity_test(random_psd(2 + t % 4, rng), {}).nonnegative);
    CHECK_THROWS_AS(nonnegativity_test(Matrix{{0, 1}, {0, 0}}, {}), Error);
}

TEST_CASE("decompose [[1,0.5],[0.5,1]] gives P = A and D = 0") {
    const Matrix a{{1, 0.5}, {0.5, 1}};
    const auto dec = decompose(a, {});
    CHECK(std::abs(dec.y[0] - 0.5) < 1e-8);
    CHECK(std::abs(dec.y[1] - 0.5) < 1e-8);
    CHECK((dec.p - a).max_abs() < 1e-8);
    CHECK(dec.d.max_abs() < 1e-8);
    CHECK(std::abs(dec.margin - 0.5) < 1e-9);
}

TEST_CASE("decompose [[2,1],[1,0]] gives P = all-ones and D = diag(1,-1)") {
    const Matrix a{{2, 1}, {1, 0}};
    const auto dec = decompose(a, {});
    CHECK((dec.p - Matrix{{1, 1}, {1, 1}}).max_abs() < 1e-7);
    CHECK((dec.d - Matrix{{1, 0}, {0, -1}}).max_abs() < 1e-7);
    CHECK(std::abs(lambda_min(dec.p)) < 1e-7);
    CHECK((dec.p + dec.d - a).max_abs() < 1e-12);
}

TEST_CASE("a PSD matrix is accepted with P = A and D = 0") {
    Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        const Matrix a = random_psd(2 + t % 4, rng);
        const auto dec = decompose(a, {});
        CHECK(dec.margin >= -1e-9);
        // The trivial split is itself a valid certificate.
        const auto cert = sos_certificate(split(a));
        CHECK(verify_certificate(a, cert).ok);
    }
}

TEST_CASE("decompose invariants on random inputs") {
    Rng rng(43);
    std::uniform_real_distribution<double> shift(-0.5, 2.0);
    int successes = 0;
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + t % 4;
        const Matrix a = random_hermitian(n, rng) + Matrix::identity(n) * Complex(shift(rng));
        const auto test = nonnegativity_test(a, {});
        try {
            const auto dec = decompose(a, {});
            ++successes;
            CHECK(test.nonnegative);
            CHECK(lambda_min(dec.p) >= -1e-9);
            CHECK(dec.d.is_diagonal());
            CHECK(std::abs(dec.d.trace()) < 1e-9);
            CHECK((dec.p + dec.d - a).max_abs() < 1e-9);
            CHECK(std::abs(dec.margin - test.margin) <= 1e-8);
            const auto cert = sos_certificate(dec);
            CHECK(cert.residual <= 1e-8);
            CHECK(verify_certificate(a, cert).ok);
        } catch (const NotDecomposableError& e) {
            CHECK_FALSE(test.nonnegative);
            CHECK(e.margin() < 0.0);
            // The witness attains a negative point of the range.
            const Matrix b = gram_to_correlation(e.witness()).matrix();
            CHECK(normalized_trace(a * b).real() < 0.0);
        }
    }
    CHECK(successes > 0);
    CHECK(successes < 60);
}

TEST_CASE("complex input with a trace-zero imaginary diagonal") {
    const Matrix a{{Complex(2, 0.5), 1}, {1, Complex(0, -0.5)}};
    const auto dec = decompose(a, {});
    CHECK((dec.p + dec.d - a).max_abs() < 1e-9);
    CHECK(std::abs(dec.d.trace()) < 1e-9);
    CHECK(std::abs(dec.d(0, 0).imag() - 0.5) < 1e-12);
}

TEST_CASE("NotDecomposable carries the error code") {
    try {
        decompose(Matrix{{1, 2}, {2, 1}}, {});
        FAIL("expected NotDecomposable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDecomposable);
    }
}

TEST_CASE("sos_certificate examples") {
    SUBCASE("all-ones gives one square (u1 + u2)*(u1 + u2)") {
        const auto dec = split(Matrix{{1, 1}, {1, 1}});
        const auto cert = sos_certificate(dec);
        REQUIRE(cert.q.size() == 1);
        CHECK(std::abs(cert.q[0][0] - 1.0) < 1e-12);
        CHECK(std::abs(cert.q[0][1] - 1.0) < 1e-12);
        CHECK(free_group_form(cert) == "(1 u1 + 1 u2)*(1 u1 + 1 u2)");
    }
    SUBCASE("identity gives u1*u1 + u2*u2") {
        const auto dec = split(Matrix::identity(2));
        const auto cert = sos_certificate(dec);
        REQUIRE(cert.q.size() == 2);
        double mass = 0.0;
        for (const auto& q : cert.q) {
            CHECK(std::abs(std::abs(q[0]) * std::abs(q[1])) < 1e-12);
            mass += std::norm(q[0]) + std::norm(q[1]);
        }
        CHECK(std::abs(mass - 2.0) < 1e-12);
    }
    SUBCASE("random PSD P reconstructs") {
        Rng rng(44);
        for (int t = 0; t < 20; ++t) {
            const auto dec = split(random_psd(2 + t % 5, rng));
            CHECK(sos_certificate(dec).residual <= 1e-8 * (1 + trace_re(dec.p)));
        }
    }
}

TEST_CASE("verify_certificate rejects tampered and wrong certificates") {
    const Matrix a{{1, 0.5}, {0.5, 1}};
    const auto cert = certify_nonnegative(a, {});
    CHECK(verify_certificate(a, cert).ok);
    CHECK(cert.residual <= 1e-8);

    auto tampered = cert;
    tampered.q[0][0] += 0.1;
    const auto bad = verify_certificate(a, tampered);
    CHECK_FALSE(bad.ok);
    CHECK(bad.residual > 1e-3);

    // [[1,2],[2,1]] has a negative range; this hand-built guess must fail.
    SosCertificate wrong{.n = 2, .q = {{1, 1}}, .d = {0, 0}};
    CHECK_FALSE(verify_certificate(Matrix{{1, 2}, {2, 1}}, wrong).ok);

    SosCertificate traced{.n = 2, .q = {}, .d = {1, 1}};
    const auto tr = verify_certificate(Matrix::identity(2), traced);
    CHECK_FALSE(tr.ok);
    CHECK(tr.message == "diagonal part has nonzero trace");

    SosCertificate small{.n = 3, .q = {}, .d = {0, 0, 0}};
    CHECK_FALSE(verify_certificate(a, small).ok);
}

TEST_CASE("decompose succeeds within half the margin") {
    Rng rng(45);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + t % 4;
        const Matrix a = random_psd(n, rng) + Matrix::identity(n) * Complex(0.2);
        const auto base = decompose(a, {});
        REQUIRE(base.margin > 0.0);
        Matrix e = random_hermitian(n, rng);
        e *= Complex(0.5 * base.margin / operator_norm(e));
        const auto near = decompose(a + e, {});
        CHECK(near.margin >= -1e-9);
        CHECK(std::abs(near.margin - base.margin) <= 0.5 * base.margin + 1e-9);
    }
}

TEST_CASE("a trace-zero diagonal shift moves only D") {
    Rng rng(46);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + t % 4;
        const Matrix a = random_psd(n, rng) + Matrix::identity(n) * Complex(0.1);
        std::vector<double> shift(n);
        double mean = 0.0;
        for (auto& x : shift) mean += (x = g(rng));
        for (auto& x : shift) x -= mean / static_cast<double>(n);
        const Matrix d0 = Matrix::diagonal(std::span<const double>(shift));
        const auto d1 = decompose(a, {});
        const auto d2 = decompose(a + d0, {});
        CHECK((d2.p - d1.p).max_abs() <= 1e-8);
        CHECK((d2.d - d1.d - d0).max_abs() <= 1e-8);
        CHECK(std::abs(d2.margin - d1.margin) <= 1e-8);
    }
}
