#pragma once

#include "cnr/matcore.hpp"

namespace cnr {

/// n unit vectors e_1..e_n in C^n, stored as the rows of a square matrix.
/// The correlation matrix they generate is B_ij = <e_i, e_j> = (V V*)_ij.
class GramFactor {
public:
    GramFactor() = default;
    /// Throws InvalidArgument unless every row has unit norm within 1e-12.
    explicit GramFactor(Matrix rows);

    /// Orthonormal standard basis; generates the identity correlation matrix.
    static GramFactor standard_basis(std::size_t n);
    /// Rows normalized here; zero rows become the matching basis vector.
    static GramFactor normalized(Matrix rows);

    std::size_t size() const noexcept { return rows_.size(); }
    const Matrix& rows() const noexcept { return rows_; }
    std::span<const Complex> vector(std::size_t i) const { return rows_.row(i); }

private:
    Matrix rows_;
};

/// Element of the elliptope: Hermitian, positive semidefinite, unit diagonal.
class CorrelationMatrix {
public:
    const Matrix& matrix() const noexcept { return b_; }
    std::size_t size() const noexcept { return b_.size(); }
    Complex operator()(std::size_t i, std::size_t j) const { return b_(i, j); }

private:
    friend CorrelationMatrix validate_correlation(const Matrix& b);
    friend CorrelationMatrix gram_to_correlation(const GramFactor& g);
    explicit CorrelationMatrix(Matrix b) : b_(std::move(b)) {}
    Matrix b_;
};

struct CorrelationTolerance {
    double psd = 1e-10;
    double diagonal = 1e-10;
    double hermitian = 1e-12;
};

CorrelationMatrix gram_to_correlation(const GramFactor& g);

/// Throws NotHermitian, NotPSD (lambda_min < -1e-10) or DiagonalNotOne.
CorrelationMatrix validate_correlation(const Matrix& b);

/// Spectral refactorization B = V V* with unit rows.
GramFactor correlation_to_gram(const CorrelationMatrix& b);

/// Gram matrix of n normalized complex Gaussian vectors in C^n.
CorrelationMatrix random_correlation(std::size_t n, Rng& rng);
GramFactor random_gram(std::size_t n, Rng& rng);

/// [[1, z], [conj z, 1]]; throws OutOfDisk if |z| > 1 + 1e-12.
CorrelationMatrix correlation_2x2(Complex z);

}  // namespace cnr
