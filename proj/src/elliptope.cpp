#include "cnr/elliptope.hpp"

#include <algorithm>
#include <cmath>

namespace cnr {

namespace {
constexpr double kUnitTol = 1e-12;
}

GramFactor::GramFactor(Matrix rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (std::abs(norm(rows_.row(i)) - 1.0) > kUnitTol) {
            throw Error(ErrorCode::InvalidArgument,
                        "GramFactor: vector " + std::to_string(i) + " is not a unit vector");
        }
    }
}

GramFactor GramFactor::standard_basis(std::size_t n) { return GramFactor(Matrix::identity(n)); }

GramFactor GramFactor::normalized(Matrix rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto r = rows.row(i);
        const double len = norm(r);
        if (len > 0.0) {
            for (auto& v : r) v /= len;
        } else {
            r[i] = 1.0;
        }
    }
    return GramFactor(std::move(rows));
}

CorrelationMatrix gram_to_correlation(const GramFactor& g) {
    const std::size_t n = g.size();
    Matrix b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = inner(g.vector(i), g.vector(j));
            b(i, j) = v;
            b(j, i) = std::conj(v);
        }
    }
    return CorrelationMatrix(std::move(b));
}

CorrelationMatrix validate_correlation(const Matrix& b) {
    const CorrelationTolerance tol;
    if (!b.is_finite()) throw Error(ErrorCode::InvalidArgument, "correlation matrix has non-finite entries");
    if (hermitian_defect(b) > tol.hermitian * (1.0 + b.frobenius_norm())) {
        throw Error(ErrorCode::NotHermitian, "correlation matrix is not Hermitian");
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (std::abs(b(i, i) - 1.0) > tol.diagonal) {
            throw Error(ErrorCode::DiagonalNotOne,
                        "diagonal entry " + std::to_string(i) + " differs from 1");
        }
    }
    const double lmin = lambda_min(b);
    if (lmin < -tol.psd) {
        throw Error(ErrorCode::NotPSD, "lambda_min = " + std::to_string(lmin));
    }
    Matrix clean = hermitian_parts(b).re;
    for (std::size_t i = 0; i < b.size(); ++i) clean(i, i) = 1.0;
    return CorrelationMatrix(std::move(clean));
}

GramFactor correlation_to_gram(const CorrelationMatrix& b) {
    const std::size_t n = b.size();
    const auto eig = hermitian_eigs(b.matrix());
    Matrix rows(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
        for (std::size_t i = 0; i < n; ++i) rows(i, k) = eig.eigenvectors(i, k) * s;
    }
    return GramFactor::normalized(std::move(rows));
}

GramFactor random_gram(std::size_t n, Rng& rng) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "random_gram: n must be positive");
    return GramFactor::normalized(ginibre_random(n, rng));
}

CorrelationMatrix random_correlation(std::size_t n, Rng& rng) {
    return gram_to_correlation(random_gram(n, rng));
}

CorrelationMatrix correlation_2x2(Complex z) {
    if (std::abs(z) > 1.0 + kUnitTol) {
        throw Error(ErrorCode::OutOfDisk, "|z| = " + std::to_string(std::abs(z)) + " > 1");
    }
    return validate_correlation(Matrix{{1.0, z}, {std::conj(z), 1.0}});
}

}  // namespace cnr
