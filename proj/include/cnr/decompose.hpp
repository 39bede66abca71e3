#pragma once

#include <string>
#include <vector>

#include "cnr/range.hpp"

namespace cnr {

struct NonnegativityResult {
    bool nonnegative = false;
    double margin = 0.0;  // certified minimum of W_c(A) (primal value)
    MinimumResult minimum;
};

/// Decides W_c(A) ⊆ [0, inf) with a dual certificate. Throws RangeNotReal.
NonnegativityResult nonnegativity_test(const Matrix& a, const SolverConfig& cfg);

/// A = P + D with P Hermitian PSD and D diagonal with zero trace.
struct Decomposition {
    Matrix p;
    Matrix d;
    std::vector<double> y;  // dual point: Re A - diag(y) PSD
    double margin = 0.0;    // (1/n) sum y, the dual value of min W_c(A)
    double primal_margin = 0.0;
};

/// Thrown when the dual optimum is negative; carries the violating correlation matrix.
class NotDecomposableError : public Error {
public:
    NotDecomposableError(double margin, GramFactor witness);
    double margin() const noexcept { return margin_; }
    const GramFactor& witness() const noexcept { return witness_; }

private:
    double margin_;
    GramFactor witness_;
};

struct DecomposeOptions {
    int polish_iterations = 5000;
    double accept_tol = 1e-9;  // accepts a dual value down to -accept_tol
};

Decomposition decompose(const Matrix& a, const SolverConfig& cfg, const DecomposeOptions& opts = {});

/// Dual polish: projected supergradient ascent on sum(y) + n lambda_min(H - diag y)
/// with Polyak steps toward the primal bound. Returns a feasible y.
std::vector<double> polish_dual(const Matrix& h, std::vector<double> y, double primal_bound, int iterations);

/// Hermitian-square certificate p_A = sum_k q_k* q_k (mod trace-zero diagonals).
/// Vector q_k holds coefficients of the rank-one term q_k q_k*; as an element of the
/// group algebra it is sum_i conj(q_k[i]) u_i.
struct SosCertificate {
    std::size_t n = 0;
    std::vector<std::vector<Complex>> q;
    std::vector<Complex> d;  // the trace-zero diagonal part
    double residual = 0.0;   // max |A - sum q q* - diag(d)| when built
};

SosCertificate sos_certificate(const Decomposition& dec, double rank_cut = 1e-10);

/// sos_certificate for a matrix, with residual measured against it.
SosCertificate certify_nonnegative(const Matrix& a, const SolverConfig& cfg);

struct CertificateCheck {
    bool ok = false;
    double residual = 0.0;        // max entry of |A - sum q q* - D|
    double trace_defect = 0.0;    // |Tr D|
    std::string message;
};

CertificateCheck verify_certificate(const Matrix& a, const SosCertificate& cert, double tol = 1e-8);

/// Human-readable form, e.g. "(u1 + u2)*(u1 + u2)".
std::string free_group_form(const SosCertificate& cert);

}  // namespace cnr
