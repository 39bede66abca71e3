#include "cnr/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cnr {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::DiagonalNotOne: return "DiagonalNotOne";
        case ErrorCode::OutOfDisk: return "OutOfDisk";
        case ErrorCode::RangeNotReal: return "RangeNotReal";
        case ErrorCode::NotDecomposable: return "NotDecomposable";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Cancelled: return "Cancelled";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t n) : n_(n), a_(n * n) {}

Matrix::Matrix(std::size_t n, std::vector<Complex> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(n * n) + " entries, got " +
                        std::to_string(a_.size()));
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix literal is not square");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const Complex> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::vector<Complex> Matrix::diagonal_entries() const {
    std::vector<Complex> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
}

Complex Matrix::trace() const {
    Complex t{};
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::off_diagonal_max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

bool Matrix::is_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](const Complex& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

bool Matrix::is_diagonal(double tol) const { return off_diagonal_max_abs() <= tol; }

Matrix& Matrix::operator+=(const Matrix& other) {
    if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (other.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.n_ != rhs.n_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    const std::size_t n = lhs.n_;
    Matrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += a * rhs(k, j);
        }
    return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    const std::size_t k1 = a.size(), k2 = b.size();
    Matrix r(k1 + k2);
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < k1; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < k2; ++i)
        for (std::size_t j = 0; j < k2; ++j) r(k1 + i, k1 + j) = b(i, j);
    return r;
}

Matrix rotated_hermitian_part(const Matrix& a, double theta) {
    const Complex phase = std::polar(1.0, -theta);
    const std::size_t n = a.size();
    Matrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (phase * a(i, j) + std::conj(phase * a(j, i)));
    return h;
}

double hermitian_defect(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

std::vector<Complex> SpectralDecomposition::eigenvector(std::size_t k) const {
    const std::size_t n = eigenvectors.size();
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = eigenvectors(i, k);
    return v;
}

namespace {

double off_diagonal_frobenius(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Annihilates a(p, q) with G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting on
// coordinates (p, q): a <- G* a G, v <- v G.
void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const std::size_t n = a.size();
    const Complex apq = a(p, q);
    const double g = std::abs(apq);
    const Complex phase = apq / g;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * g);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex gpp = c;
    const Complex gpq = s;
    const Complex gqp = -s * std::conj(phase);
    const Complex gqq = c * std::conj(phase);

    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * gpp + vkq * gqp;
        v(k, q) = vkp * gpq + vkq * gqq;
    }
}

}  // namespace

SpectralDecomposition hermitian_eigs(const Matrix& m, const EigenConfig& cfg) {
    const std::size_t n = m.size();
    if (n == 0) return {};
    const double scale = m.frobenius_norm();
    if (hermitian_defect(m) > cfg.hermitian_tol * (1.0 + scale)) {
        throw Error(ErrorCode::NotHermitian, "hermitian_eigs: ||M - M*|| exceeds tolerance");
    }

    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    Matrix v = Matrix::identity(n);

    const double threshold = cfg.off_tol * scale;
    bool converged = false;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(a) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 0.0) jacobi_rotate(a, v, p, q);
    }
    if (!converged && off_diagonal_frobenius(a) > threshold) {
        throw Error(ErrorCode::NoConvergence, "hermitian_eigs: sweep budget exhausted");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

double lambda_min(const Matrix& m) {
    if (m.empty()) return 0.0;
    return hermitian_eigs(m).eigenvalues.front();
}

double lambda_max(const Matrix& m) {
    if (m.empty()) return 0.0;
    return hermitian_eigs(m).eigenvalues.back();
}

// ---------------------------------------------------------------------------
// Norms and traces

SingularPair top_singular_pair(const Matrix& m) {
    const std::size_t n = m.size();
    SingularPair out;
    if (n == 0) return out;
    const Matrix gram = m.adjoint() * m;
    const auto eig = hermitian_eigs(gram);
    out.sigma = std::sqrt(std::max(0.0, eig.eigenvalues.back()));
    out.v = eig.eigenvector(n - 1);
    out.u.assign(n, Complex{});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.u[i] += m(i, j) * out.v[j];
    const double un = norm(out.u);
    if (un > 0.0) {
        for (auto& x : out.u) x /= un;
    } else {
        out.u = out.v;
    }
    return out;
}

double operator_norm_power(const Matrix& m, Rng& rng, int restarts, double tol, int max_iter) {
    const std::size_t n = m.size();
    if (n == 0 || m.max_abs() == 0.0) return 0.0;
    const Matrix gram = m.adjoint() * m;
    double best = 0.0;
    std::vector<Complex> x(n), y(n);
    for (int r = 0; r < std::max(1, restarts); ++r) {
        for (auto& v : x) v = standard_complex_normal(rng);
        double xn = norm(x);
        for (auto& v : x) v /= xn;
        double rayleigh = 0.0;
        for (int it = 0; it < max_iter; ++it) {
            std::fill(y.begin(), y.end(), Complex{});
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) y[i] += gram(i, j) * x[j];
            const double next = inner_real(y, x);
            const double yn = norm(y);
            if (yn == 0.0) break;
            for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / yn;
            const bool done = std::abs(next - rayleigh) <= tol * std::max(1.0, std::abs(next));
            rayleigh = next;
            if (done) break;
        }
        best = std::max(best, rayleigh);
    }
    return std::sqrt(std::max(0.0, best));
}

double operator_norm(const Matrix& m) {
    if (m.empty() || m.max_abs() == 0.0) return 0.0;
    if (m.size() <= 64) return top_singular_pair(m).sigma;
    Rng rng(derive_seed(0x6f70, m.size()));
    return operator_norm_power(m, rng);
}

Complex normalized_trace(const Matrix& m) {
    if (m.empty()) return {};
    return m.trace() / static_cast<double>(m.size());
}

HermitianParts hermitian_parts(const Matrix& m) {
    const std::size_t n = m.size();
    HermitianParts out{Matrix(n), Matrix(n)};
    const Complex half_over_i(0.0, -0.5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out.re(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out.im(i, j) = half_over_i * (m(i, j) - std::conj(m(j, i)));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Random generation

Complex standard_complex_normal(Rng& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

Matrix ginibre_random(std::size_t n, Rng& rng) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = standard_complex_normal(rng);
    return m;
}

Matrix haar_unitary(std::size_t k, Rng& rng) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "haar_unitary: k must be positive");
    const Matrix g = ginibre_random(k, rng);
    // Columns orthonormalized left to right; classical Gram-Schmidt applied twice.
    std::vector<std::vector<Complex>> q;
    q.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<Complex> col(k);
        for (std::size_t i = 0; i < k; ++i) col[i] = g(i, c);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& prev : q) {
                const Complex proj = inner(col, prev);
                for (std::size_t i = 0; i < k; ++i) col[i] -= proj * prev[i];
            }
        }
        const double cn = norm(col);
        for (auto& v : col) v /= cn;
        q.push_back(std::move(col));
    }
    Matrix u(k);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < k; ++i) u(i, c) = q[c][i];
    return u;
}

Matrix random_hermitian(std::size_t n, Rng& rng) { return hermitian_parts(ginibre_random(n, rng)).re; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace cnr
