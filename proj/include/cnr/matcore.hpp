#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cnr {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

enum class ErrorCode {
    NotHermitian,
    NoConvergence,
    NotPSD,
    DiagonalNotOne,
    OutOfDisk,
    RangeNotReal,
    NotDecomposable,
    NotUnitary,
    ParseError,
    DimensionMismatch,
    InvalidArgument,
    Cancelled,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Absolute-plus-relative tolerance pair used by the kernel checks.
struct Tolerance {
    double atol = 1e-12;
    double rtol = 1e-10;

    double bound(double scale) const { return atol + rtol * scale; }
};

/// Dense complex n x n matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n);
    Matrix(std::size_t n, std::vector<Complex> entries);
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Complex> d);
    static Matrix diagonal(std::span<const double> d);

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    std::span<const Complex> entries() const noexcept { return a_; }
    std::span<Complex> row(std::size_t i) { return {a_.data() + i * n_, n_}; }
    std::span<const Complex> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

    Matrix adjoint() const;
    Matrix transpose() const;
    std::vector<Complex> diagonal_entries() const;
    Complex trace() const;

    double frobenius_norm() const;
    double max_abs() const;
    double off_diagonal_max_abs() const;
    bool is_finite() const;
    bool is_diagonal(double tol = 0.0) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex s);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, Complex s) { return lhs *= s; }
    friend Matrix operator*(Complex s, Matrix rhs) { return rhs *= s; }
    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
    friend Matrix operator-(Matrix m) { return m *= Complex(-1.0); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
};

/// Block-diagonal direct sum [[a, 0], [0, b]].
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Hermitian part of exp(-i theta) A, i.e. Re(e^{-i theta} A).
Matrix rotated_hermitian_part(const Matrix& a, double theta);

/// Frobenius distance from hermiticity, ||M - M*||_F.
double hermitian_defect(const Matrix& m);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // column k pairs with eigenvalues[k]

    std::vector<Complex> eigenvector(std::size_t k) const;
};

struct EigenConfig {
    double off_tol = 1e-13;
    int max_sweeps = 100;
    double hermitian_tol = 1e-12;
};

/// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence.
SpectralDecomposition hermitian_eigs(const Matrix& m, const EigenConfig& cfg = {});

/// Smallest eigenvalue of a Hermitian matrix (Jacobi).
double lambda_min(const Matrix& m);
/// Largest eigenvalue of a Hermitian matrix (Jacobi).
double lambda_max(const Matrix& m);

struct SingularPair {
    double sigma = 0.0;
    std::vector<Complex> u;  // left
    std::vector<Complex> v;  // right, M v = sigma u
};

/// Largest singular value with its singular vectors.
SingularPair top_singular_pair(const Matrix& m);

/// Largest singular value.
double operator_norm(const Matrix& m);

/// Power iteration on M*M with random restarts. Used for large n and as a
/// cross-check of the Jacobi route.
double operator_norm_power(const Matrix& m, Rng& rng, int restarts = 10, double tol = 1e-12,
                           int max_iter = 20000);

Complex normalized_trace(const Matrix& m);

struct HermitianParts {
    Matrix re;
    Matrix im;
};

/// Re M = (M + M*)/2, Im M = (M - M*)/2i, so M = Re + i Im.
HermitianParts hermitian_parts(const Matrix& m);

Complex standard_complex_normal(Rng& rng);

/// i.i.d. standard complex Gaussian entries (E|z|^2 = 1).
Matrix ginibre_random(std::size_t n, Rng& rng);

/// Haar-distributed unitary: Ginibre followed by Gram-Schmidt with positive R diagonal.
Matrix haar_unitary(std::size_t k, Rng& rng);

/// Random Hermitian matrix (Re of a Ginibre matrix).
Matrix random_hermitian(std::size_t n, Rng& rng);

/// Deterministic seed derivation (splitmix64 of seed and stream counter).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline double inner_real(std::span<const Complex> x, std::span<const Complex> y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] * std::conj(y[k])).real();
    return s;
}

/// <x, y>, linear in x and conjugate-linear in y.
inline Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    Complex s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
    return s;
}

inline double norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace cnr
