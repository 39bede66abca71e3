#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cnr/range.hpp"

namespace cnr {

struct SeminormConfig {
    int restarts = 10;
    int subgradient_iterations = 600;
    int polish_iterations = 150;   // BFGS iterations per smoothing level
    double tol = 1e-6;
    std::uint64_t seed = 0x5e1f;
};

/// ||T||_c = min over complex trace-zero diagonal D of ||T - D||.
struct SeminormResult {
    double value = 0.0;
    std::vector<Complex> d;       // the minimizing diagonal (trace zero)
    double restart_spread = 0.0;  // max - min of restart optima
    bool converged = true;        // restarts agree within tol
};

SeminormResult c_seminorm(const Matrix& t, const SeminormConfig& cfg = {});

/// Search result for the best constant in kappa ||T||_c <= w_c(T).
struct KappaEstimate {
    std::size_t n = 0;
    double best_ratio = 0.0;
    Matrix witness;
    double witness_radius = 0.0;
    double witness_seminorm = 0.0;
    double lower_bound = 0.0;   // 1/(4n+2)
    double stated_upper = 0.0;   // 2/n, the constant usually quoted for e12 (+) 0
    double sparse_witness_ratio = 0.0;  // computed ratio for e12 (+) 0, expected 1/n
    std::size_t evaluations = 0;
    std::vector<std::string> flags;
};

struct KappaOptions {
    std::size_t directions = 48;
    SeminormConfig seminorm{.restarts = 4};
};

KappaEstimate kappa_upper_search(std::size_t n, std::size_t budget, Rng& rng, const SolverConfig& cfg,
                                 const KappaOptions& opts = {});

/// e_12 in the top-left 2 x 2 block, zero elsewhere.
Matrix sparse_witness(std::size_t n);

struct DirectSumReport {
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    double support_error = 0.0;        // max over grid of |h_A - (k1/n) h_1 - (k2/n) h_2|
    double polygon_hausdorff = 0.0;    // inner polygon of A vs hull of combined witness points
    double radius = 0.0;               // sampled radius of the direct sum
    bool certified = true;
};

DirectSumReport direct_sum_check(const Matrix& s1, const Matrix& s2, std::size_t m, const SolverConfig& cfg);

}  // namespace cnr
