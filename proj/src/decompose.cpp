#include "cnr/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace cnr {

namespace {

constexpr double kNonnegTol = 1e-9;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

Matrix slack_matrix(const Matrix& h, const std::vector<double>& y) {
    Matrix s = h;
    for (std::size_t i = 0; i < y.size(); ++i) s(i, i) -= y[i];
    return s;
}

std::string format_coeff(Complex c) {
    std::ostringstream os;
    os.precision(6);
    if (std::abs(c.imag()) < 1e-12) {
        os << c.real();
    } else {
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    return os.str();
}

}  // namespace

NonnegativityResult nonnegativity_test(const Matrix& a, const SolverConfig& cfg) {
    NonnegativityResult out;
    out.minimum = min_real_value(a, cfg);
    out.margin = out.minimum.value;
    out.nonnegative = out.margin >= -kNonnegTol;
    return out;
}

NotDecomposableError::NotDecomposableError(double margin, GramFactor witness)
    : Error(ErrorCode::NotDecomposable,
            "dual optimum " + std::to_string(margin) + " < 0; witness correlation matrix attains it"),
      margin_(margin),
      witness_(std::move(witness)) {}

std::vector<double> polish_dual(const Matrix& h, std::vector<double> y, double primal_bound, int iterations) {
    const std::size_t n = h.size();
    const double dn = static_cast<double>(n);

    auto evaluate = [&](const std::vector<double>& point, std::vector<double>* grad) {
        const auto eig = hermitian_eigs(slack_matrix(h, point));
        const double lmin = eig.eigenvalues.front();
        if (grad) {
            grad->resize(n);
            for (std::size_t i = 0; i < n; ++i) (*grad)[i] = 1.0 - dn * std::norm(eig.eigenvectors(i, 0));
        }
        return sum(point) + dn * lmin;
    };

    std::vector<double> grad;
    std::vector<double> best = y;
    double best_value = evaluate(y, &grad);
    double value = best_value;
    for (int it = 0; it < iterations; ++it) {
        const double g2 = std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0);
        const double distance = primal_bound - value;
        if (g2 <= 1e-30 || distance <= 1e-15 * (1.0 + std::abs(primal_bound))) break;
        const double step = distance / g2;
        for (std::size_t i = 0; i < n; ++i) y[i] += step * grad[i];
        value = evaluate(y, &grad);
        if (value > best_value) {
            best_value = value;
            best = y;
        }
    }
    // Shift onto the feasible set: H - diag(y) PSD.
    const double lmin = lambda_min(slack_matrix(h, best));
    for (auto& yi : best) yi += std::min(0.0, lmin);
    return best;
}

Decomposition decompose(const Matrix& a, const SolverConfig& cfg, const DecomposeOptions& opts) {
    const std::size_t n = a.size();
    const MinimumResult minimum = min_real_value(a, cfg);
    const auto parts = hermitian_parts(a);
    const Matrix& h = parts.re;

    std::vector<double> y = minimum.dual_y;
    // The solver's certificate is feasible; re-check and absorb rounding.
    const double lmin = lambda_min(slack_matrix(h, y));
    for (auto& yi : y) yi += std::min(0.0, lmin);
    const double dn = static_cast<double>(n);
    if (minimum.value - sum(y) / dn > cfg.tol) {
        std::vector<double> polished = polish_dual(h, y, minimum.value * dn, opts.polish_iterations);
        if (sum(polished) > sum(y)) y = std::move(polished);
    }

    const double margin = sum(y) / dn;
    if (margin < -opts.accept_tol) throw NotDecomposableError(margin, minimum.minimizer);

    Decomposition dec;
    dec.y = y;
    dec.margin = margin;
    dec.primal_margin = minimum.value;
    dec.p = slack_matrix(h, y);
    dec.d = Matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        dec.p(i, i) += margin;
        // Re part y_i - margin; imaginary part carries i Im A, diagonal with zero trace.
        dec.d(i, i) = Complex(y[i] - margin, 0.0) + Complex(0.0, 1.0) * parts.im(i, i);
    }
    // Keep P exactly Hermitian and the reconstruction exact to rounding.
    dec.p = hermitian_parts(dec.p).re;
    return dec;
}

SosCertificate sos_certificate(const Decomposition& dec, double rank_cut) {
    const std::size_t n = dec.p.size();
    SosCertificate cert;
    cert.n = n;
    cert.d = dec.d.diagonal_entries();
    const auto eig = hermitian_eigs(dec.p);
    const double scale = std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
    for (std::size_t k = n; k-- > 0;) {
        const double lambda = eig.eigenvalues[k];
        if (lambda <= rank_cut * scale || lambda <= 0.0) continue;
        std::vector<Complex> w = eig.eigenvector(k);
        // Fix the phase: largest-modulus entry real positive.
        std::size_t pivot = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(w[i]) > std::abs(w[pivot]) + 1e-12) pivot = i;
        const Complex phase = std::abs(w[pivot]) > 0.0 ? std::conj(w[pivot]) / std::abs(w[pivot]) : 1.0;
        const double root = std::sqrt(lambda);
        for (auto& x : w) x *= phase * root;
        cert.q.push_back(std::move(w));
    }
    Matrix rebuilt = dec.d;
    for (const auto& q : cert.q)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rebuilt(i, j) += q[i] * std::conj(q[j]);
    cert.residual = (dec.p + dec.d - rebuilt).max_abs();
    return cert;
}

SosCertificate certify_nonnegative(const Matrix& a, const SolverConfig& cfg) {
    const Decomposition dec = decompose(a, cfg);
    SosCertificate cert = sos_certificate(dec);
    cert.residual = verify_certificate(a, cert, std::numeric_limits<double>::infinity()).residual;
    return cert;
}

CertificateCheck verify_certificate(const Matrix& a, const SosCertificate& cert, double tol) {
    CertificateCheck out;
    const std::size_t n = a.size();
    if (cert.n != n || cert.d.size() != n) {
        out.message = "dimension mismatch";
        out.residual = std::numeric_limits<double>::infinity();
        return out;
    }
    Matrix r = a;
    for (const auto& q : cert.q) {
        if (q.size() != n) {
            out.message = "coefficient vector of wrong length";
            out.residual = std::numeric_limits<double>::infinity();
            return out;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j) -= q[i] * std::conj(q[j]);
    }
    Complex trace{};
    for (std::size_t i = 0; i < n; ++i) {
        r(i, i) -= cert.d[i];
        trace += cert.d[i];
    }
    out.residual = r.max_abs();
    out.trace_defect = std::abs(trace);
    const bool trace_ok = out.trace_defect <= 1e-9 * (1.0 + a.max_abs());
    out.ok = out.residual <= tol && trace_ok;
    if (!trace_ok) {
        out.message = "diagonal part has nonzero trace";
    } else if (out.residual > tol) {
        out.message = "A - sum q q* - D does not vanish";
    } else {
        out.message = "ok";
    }
    return out;
}

std::string free_group_form(const SosCertificate& cert) {
    if (cert.q.empty()) return "0";
    std::ostringstream os;
    for (std::size_t k = 0; k < cert.q.size(); ++k) {
        std::ostringstream term;
        bool first = true;
        for (std::size_t i = 0; i < cert.n; ++i) {
            const Complex c = std::conj(cert.q[k][i]);
            if (std::abs(c) < 1e-12) continue;
            if (!first) term << " + ";
            term << format_coeff(c) << " u" << (i + 1);
            first = false;
        }
        if (k > 0) os << " + ";
        os << "(" << term.str() << ")*(" << term.str() << ")";
    }
    return os.str();
}

}  // namespace cnr
