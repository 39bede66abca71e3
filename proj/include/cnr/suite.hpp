#pragma once

#include <string>
#include <vector>

#include "cnr/range.hpp"

namespace cnr {

struct SuiteOptions {
    std::size_t max_n = 5;       // matrices of size 2..max_n
    std::size_t matrices = 50;   // base sample count; other suites scale from it
    std::size_t directions = 32; // angle grid for boundary comparisons (rounded up to a multiple of 4)
    SolverConfig solver;
};

/// One invariant: passes when worst <= bound.
struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double worst = 0.0;
    double bound = 0.0;
    std::size_t cases = 0;
    std::string detail;
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> flags;

    bool passed() const;
};

/// basic | duality | normalizer | direct-sum | decompose | all. Throws InvalidArgument otherwise.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

const std::vector<std::string>& suite_names();

/// max over theta of lambda_max(H_theta), grid plus golden refinement.
double classical_radius(const Matrix& a, std::size_t m = 64);

/// (random diagonal unitary) * (random permutation).
Matrix random_monomial_unitary(std::size_t n, Rng& rng);

/// Random diagonal with complex entries summing to zero.
Matrix random_trace_zero_diagonal(std::size_t n, Rng& rng);

}  // namespace cnr
