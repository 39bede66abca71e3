#pragma once

#include <span>
#include <vector>

#include "cnr/range.hpp"

namespace cnr {

/// n unitaries of a common size k.
class UnitaryTuple {
public:
    /// Throws NotUnitary if some ||U_i* U_i - I|| exceeds 1e-10, DimensionMismatch on mixed sizes.
    explicit UnitaryTuple(std::vector<Matrix> unitaries);

    std::size_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return unitaries_.size(); }
    const Matrix& operator[](std::size_t i) const { return unitaries_[i]; }

private:
    std::size_t k_ = 0;
    std::vector<Matrix> unitaries_;
};

/// B_ij = tau_k(U_j* U_i): the Gram matrix of the unitaries in the trace inner product.
CorrelationMatrix induced_correlation(const UnitaryTuple& t);

enum class TupleKind { Haar, DiagonalPhase, Permutation };
const char* to_string(TupleKind kind);

/// Diagonal-phase tuples draw a concentration s in [0, 1]; s = 0 gives equal phases
/// on each diagonal (a rank-one correlation matrix).
UnitaryTuple sample_tuple(std::size_t n, std::size_t k, TupleKind kind, Rng& rng);

struct WucSampleMeta {
    std::vector<std::size_t> k_values;
    std::vector<std::size_t> counts_per_k;
    std::size_t haar = 0;
    std::size_t diagonal_phase = 0;
    std::size_t permutation = 0;
};

/// Sampled points tau_n(T B), B unitarily induced. The hull lies in co F_n images;
/// no averaged matrix is ever reported as an element of F_n.
struct WucApproximation {
    std::vector<Complex> points;
    std::vector<Complex> hull;
    WucSampleMeta meta;
};

WucApproximation wuc_inner(const Matrix& t, std::span<const std::size_t> k_list, std::size_t samples, Rng& rng);

inline const std::vector<std::size_t>& default_k_list() {
    static const std::vector<std::size_t> ks{1, 2, 4, 8, 16};
    return ks;
}

struct WucOptions {
    std::vector<std::size_t> k_list = default_k_list();
    std::size_t samples = 2000;
    std::size_t directions = 128;
};

struct WucComparison {
    double inclusion_margin = 0.0;  // min over points and certified half-planes (>= -1e-8 expected)
    double deficit = 0.0;           // max distance from W_c inner polygon to the W_uc hull
    bool equality_expected = false; // n <= 3: co F_n is the whole elliptope
    std::size_t points = 0;
    RangeBoundary boundary;
    WucApproximation approximation;
};

WucComparison compare_wc_wuc(const Matrix& t, const WucOptions& opts, const SolverConfig& cfg);

}  // namespace cnr
