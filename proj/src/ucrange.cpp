#include "cnr/ucrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "cnr/geometry.hpp"

namespace cnr {

namespace {
constexpr double kUnitaryTol = 1e-10;
}

UnitaryTuple::UnitaryTuple(std::vector<Matrix> unitaries) : unitaries_(std::move(unitaries)) {
    if (unitaries_.empty()) throw Error(ErrorCode::InvalidArgument, "empty unitary tuple");
    k_ = unitaries_.front().size();
    for (std::size_t i = 0; i < unitaries_.size(); ++i) {
        const Matrix& u = unitaries_[i];
        if (u.size() != k_) throw Error(ErrorCode::DimensionMismatch, "unitaries of different sizes");
        const Matrix defect = u.adjoint() * u - Matrix::identity(k_);
        if (defect.frobenius_norm() > kUnitaryTol) {
            throw Error(ErrorCode::NotUnitary, "U_" + std::to_string(i + 1) + " is not unitary");
        }
    }
}

CorrelationMatrix induced_correlation(const UnitaryTuple& t) {
    const std::size_t n = t.size();
    const double inv_k = 1.0 / static_cast<double>(t.k());
    // <U_i, U_j> = tau_k(U_j* U_i) = (1/k) sum_ab (U_i)_ab conj((U_j)_ab).
    Matrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = inner(t[i].entries(), t[j].entries()) * inv_k;
    return validate_correlation(b);
}

const char* to_string(TupleKind kind) {
    switch (kind) {
        case TupleKind::Haar: return "haar";
        case TupleKind::DiagonalPhase: return "diagonal_phase";
        case TupleKind::Permutation: return "permutation";
    }
    return "unknown";
}

UnitaryTuple sample_tuple(std::size_t n, std::size_t k, TupleKind kind, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Matrix> us;
    us.reserve(n);
    switch (kind) {
        case TupleKind::Haar:
            for (std::size_t i = 0; i < n; ++i) us.push_back(haar_unitary(k, rng));
            break;
        case TupleKind::DiagonalPhase: {
            // Concentration biased toward 0 so that nearly rank-one (extreme) matrices are common.
            const double u = unit(rng);
            const double spread = u * u * u;
            for (std::size_t i = 0; i < n; ++i) {
                const double base = 2.0 * std::numbers::pi * unit(rng);
                Matrix d(k);
                for (std::size_t l = 0; l < k; ++l) {
                    const double jitter = std::numbers::pi * spread * (2.0 * unit(rng) - 1.0);
                    d(l, l) = std::polar(1.0, base + jitter);
                }
                us.push_back(std::move(d));
            }
            break;
        }
        case TupleKind::Permutation:
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<std::size_t> perm(k);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));
                Matrix p(k);
                for (std::size_t l = 0; l < k; ++l) p(l, perm[l]) = phase;
                us.push_back(std::move(p));
            }
            break;
    }
    return UnitaryTuple(std::move(us));
}

WucApproximation wuc_inner(const Matrix& t, std::span<const std::size_t> k_list, std::size_t samples, Rng& rng) {
    if (samples == 0) throw Error(ErrorCode::InvalidArgument, "wuc_inner needs at least one sample");
    if (k_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty k list");
    const std::size_t n = t.size();
    constexpr TupleKind kinds[] = {TupleKind::Haar, TupleKind::DiagonalPhase, TupleKind::Permutation};

    WucApproximation out;
    out.meta.k_values.assign(k_list.begin(), k_list.end());
    out.meta.counts_per_k.assign(k_list.size(), 0);
    out.points.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t ki = s % k_list.size();
        const TupleKind kind = kinds[(s / k_list.size()) % 3];
        const UnitaryTuple tuple = sample_tuple(n, k_list[ki], kind, rng);
        const CorrelationMatrix b = induced_correlation(tuple);
        out.points.push_back(normalized_trace(t * b.matrix()));
        ++out.meta.counts_per_k[ki];
        switch (kind) {
            case TupleKind::Haar: ++out.meta.haar; break;
            case TupleKind::DiagonalPhase: ++out.meta.diagonal_phase; break;
            case TupleKind::Permutation: ++out.meta.permutation; break;
        }
    }
    out.hull = geometry::convex_hull(out.points);
    return out;
}

WucComparison compare_wc_wuc(const Matrix& t, const WucOptions& opts, const SolverConfig& cfg) {
    WucComparison out;
    out.boundary = range_boundary(t, opts.directions, cfg);
    Rng rng(derive_seed(cfg.seed, 0x77756321ULL));
    out.approximation = wuc_inner(t, opts.k_list, opts.samples, rng);
    out.points = out.approximation.points.size();
    out.equality_expected = t.size() <= 3;

    out.inclusion_margin = std::numeric_limits<double>::infinity();
    for (const auto& s : out.boundary.samples) {
        const Complex phase = std::polar(1.0, -s.theta);
        for (const auto& p : out.approximation.points)
            out.inclusion_margin = std::min(out.inclusion_margin, s.upper_bound() - (phase * p).real());
    }

    out.deficit = 0.0;
    for (const auto& v : out.boundary.inner_polygon())
        out.deficit = std::max(out.deficit, geometry::distance_to_convex(v, out.approximation.hull));
    return out;
}

}  // namespace cnr
