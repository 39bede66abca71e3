#include "cnr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cnr/geometry.hpp"

namespace cnr {

namespace {

// Trace-zero complex diagonals parameterized by 2(n-1) reals:
// d_i = x_{2i} + i x_{2i+1} for i < n-1, d_{n-1} = -sum.
struct DiagonalChart {
    std::size_t n;

    std::size_t dim() const { return n == 0 ? 0 : 2 * (n - 1); }

    std::vector<Complex> to_diagonal(const std::vector<double>& x) const {
        std::vector<Complex> d(n);
        Complex total{};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            d[i] = {x[2 * i], x[2 * i + 1]};
            total += d[i];
        }
        if (n > 0) d[n - 1] = -total;
        return d;
    }

    std::vector<double> from_diagonal(const std::vector<Complex>& d) const {
        std::vector<double> x(dim());
        const Complex mean = std::accumulate(d.begin(), d.end(), Complex{}) / static_cast<double>(n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            x[2 * i] = (d[i] - mean).real();
            x[2 * i + 1] = (d[i] - mean).imag();
        }
        return x;
    }

    // Pulls back a complex gradient G (dF = Re sum conj(G_i) dd_i) to x.
    std::vector<double> pull_back(const std::vector<Complex>& g) const {
        std::vector<double> out(dim());
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const Complex a = g[i] - g[n - 1];
            out[2 * i] = a.real();
            out[2 * i + 1] = a.imag();
        }
        return out;
    }
};

Matrix shifted(const Matrix& t, const std::vector<Complex>& d) {
    Matrix m = t;
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) -= d[i];
    return m;
}

double spectral_norm_at(const Matrix& t, const std::vector<Complex>& d) { return operator_norm(shifted(t, d)); }

// Log-sum-exp smoothing of the singular values, with its gradient in d.
double smoothed_norm(const Matrix& t, const std::vector<Complex>& d, double mu, std::vector<Complex>& grad) {
    const std::size_t n = t.size();
    const Matrix m = shifted(t, d);
    const auto eig = hermitian_eigs(m.adjoint() * m);
    std::vector<double> sigma(n);
    for (std::size_t k = 0; k < n; ++k) sigma[k] = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
    const double top = sigma[n - 1];
    std::vector<double> w(n);
    double z = 0.0;
    for (std::size_t k = 0; k < n; ++k) z += (w[k] = std::exp((sigma[k] - top) / mu));
    grad.assign(n, Complex{});
    for (std::size_t k = 0; k < n; ++k) {
        const double wk = w[k] / z;
        if (wk < 1e-18 || sigma[k] <= 1e-14 * (1.0 + top)) continue;
        const auto v = eig.eigenvector(k);
        for (std::size_t i = 0; i < n; ++i) {
            Complex ui{};
            for (std::size_t j = 0; j < n; ++j) ui += m(i, j) * v[j];
            ui /= sigma[k];
            grad[i] -= wk * ui * std::conj(v[i]);
        }
    }
    return top + mu * std::log(z);
}

// Subgradient descent with Polyak steps toward an adaptive level f_best - delta.
std::vector<Complex> subgradient_phase(const Matrix& t, std::vector<Complex> d, int iterations) {
    const std::size_t n = t.size();
    double f = spectral_norm_at(t, d);
    double f_best = f;
    std::vector<Complex> best = d;
    double delta = 0.1 * (f + 1e-12);
    int stall = 0;
    for (int it = 0; it < iterations; ++it) {
        const auto pair = top_singular_pair(shifted(t, d));
        std::vector<Complex> g(n);
        Complex mean{};
        for (std::size_t i = 0; i < n; ++i) mean += (g[i] = -pair.u[i] * std::conj(pair.v[i]));
        mean /= static_cast<double>(n);
        double g2 = 0.0;
        for (auto& gi : g) g2 += std::norm(gi -= mean);
        if (g2 <= 1e-28) break;
        const double step = (f - (f_best - delta)) / g2;
        for (std::size_t i = 0; i < n; ++i) d[i] -= step * g[i];
        f = spectral_norm_at(t, d);
        if (f < f_best - 0.5 * delta) {
            f_best = f;
            best = d;
            stall = 0;
        } else if (++stall > 15) {
            delta *= 0.5;
            stall = 0;
            d = best;
            f = f_best;
        }
        if (f < f_best) {
            f_best = f;
            best = d;
        }
        if (delta <= 1e-14 * (1.0 + f_best)) break;
    }
    return best;
}

// BFGS on the smoothed norm with decreasing smoothing width.
std::vector<Complex> smoothing_phase(const Matrix& t, std::vector<Complex> d, int iterations) {
    const DiagonalChart chart{t.size()};
    const std::size_t p = chart.dim();
    const double scale = std::max(1e-300, spectral_norm_at(t, d));
    std::vector<double> x = chart.from_diagonal(d);
    std::vector<Complex> cg;

    auto eval = [&](const std::vector<double>& at, double mu, std::vector<double>& g) {
        const double f = smoothed_norm(t, chart.to_diagonal(at), mu, cg);
        g = chart.pull_back(cg);
        return f;
    };

    for (double mu = 1e-2 * scale; mu >= 1e-11 * scale; mu *= 0.1) {
        std::vector<double> g, g_new, x_new(p);
        double f = eval(x, mu, g);
        std::vector<double> hinv(p * p, 0.0);
        for (std::size_t i = 0; i < p; ++i) hinv[i * p + i] = mu / scale;
        for (int it = 0; it < iterations; ++it) {
            const double gnorm = std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
            if (gnorm <= 1e-15) break;
            std::vector<double> dir(p, 0.0);
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < p; ++j) dir[i] -= hinv[i * p + j] * g[j];
            double slope = std::inner_product(dir.begin(), dir.end(), g.begin(), 0.0);
            if (slope >= 0.0) {
                for (std::size_t i = 0; i < p; ++i) dir[i] = -g[i] * mu / scale;
                std::fill(hinv.begin(), hinv.end(), 0.0);
                for (std::size_t i = 0; i < p; ++i) hinv[i * p + i] = mu / scale;
                slope = std::inner_product(dir.begin(), dir.end(), g.begin(), 0.0);
            }
            double step = 1.0;
            double f_new = f;
            bool accepted = false;
            for (int ls = 0; ls < 40; ++ls) {
                for (std::size_t i = 0; i < p; ++i) x_new[i] = x[i] + step * dir[i];
                f_new = eval(x_new, mu, g_new);
                if (f_new <= f + 1e-4 * step * slope) {
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
            std::vector<double> s(p), yv(p);
            for (std::size_t i = 0; i < p; ++i) {
                s[i] = x_new[i] - x[i];
                yv[i] = g_new[i] - g[i];
            }
            const double sy = std::inner_product(s.begin(), s.end(), yv.begin(), 0.0);
            if (sy > 1e-300) {
                std::vector<double> hy(p, 0.0);
                for (std::size_t i = 0; i < p; ++i)
                    for (std::size_t j = 0; j < p; ++j) hy[i] += hinv[i * p + j] * yv[j];
                const double yhy = std::inner_product(yv.begin(), yv.end(), hy.begin(), 0.0);
                const double rho = 1.0 / sy;
                for (std::size_t i = 0; i < p; ++i)
                    for (std::size_t j = 0; j < p; ++j)
                        hinv[i * p + j] += (1.0 + yhy * rho) * rho * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
            }
            const bool tiny = f - f_new <= 1e-16 * (1.0 + std::abs(f));
            x = x_new;
            g = g_new;
            f = f_new;
            if (tiny) break;
        }
    }
    return chart.to_diagonal(x);
}

}  // namespace

SeminormResult c_seminorm(const Matrix& t, const SeminormConfig& cfg) {
    const std::size_t n = t.size();
    SeminormResult out;
    if (n == 0) return out;
    out.d.assign(n, Complex{});
    if (n == 1) {
        out.value = std::abs(t(0, 0));
        return out;
    }
    const double scale = std::max(t.max_abs(), 1e-300);
    Rng rng(cfg.seed);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
        std::vector<Complex> start(n, Complex{});
        if (r > 0) {
            Complex mean{};
            for (auto& v : start) mean += (v = scale * standard_complex_normal(rng));
            for (auto& v : start) v -= mean / static_cast<double>(n);
        }
        std::vector<Complex> d = subgradient_phase(t, std::move(start), cfg.subgradient_iterations);
        const double f_sub = spectral_norm_at(t, d);
        std::vector<Complex> polished = smoothing_phase(t, d, cfg.polish_iterations);
        const double f_pol = spectral_norm_at(t, polished);
        if (f_pol < f_sub) d = std::move(polished);
        const double f = std::min(f_sub, f_pol);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
        if (f <= lo) {
            out.value = f;
            out.d = d;
        }
    }
    // Subgradient steps drift off the trace-zero plane by rounding; project back.
    const Complex drift = std::accumulate(out.d.begin(), out.d.end(), Complex{}) / static_cast<double>(n);
    for (auto& v : out.d) v -= drift;
    out.value = spectral_norm_at(t, out.d);
    out.restart_spread = hi - lo;
    out.converged = out.restart_spread <= cfg.tol * (1.0 + out.value);
    return out;
}

Matrix sparse_witness(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "sparse witness needs n >= 2");
    Matrix a(n);
    a(0, 1) = 1.0;
    return a;
}

KappaEstimate kappa_upper_search(std::size_t n, std::size_t budget, Rng& rng, const SolverConfig& cfg,
                                 const KappaOptions& opts) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "kappa search needs n >= 2");
    KappaEstimate est;
    est.n = n;
    est.lower_bound = 1.0 / (4.0 * static_cast<double>(n) + 2.0);
    est.stated_upper = 2.0 / static_cast<double>(n);

    struct Eval {
        double ratio, radius, seminorm;
    };
    auto evaluate = [&](const Matrix& t) -> Eval {
        ++est.evaluations;
        SeminormConfig sc = opts.seminorm;
        sc.seed = derive_seed(cfg.seed, est.evaluations);
        const double cn = c_seminorm(t, sc).value;
        if (cn <= 1e-12) return {std::numeric_limits<double>::infinity(), 0.0, cn};
        const double w = wc_radius(t, opts.directions, cfg).radius;
        return {w / cn, w, cn};
    };
    auto consider = [&](const Matrix& t, const Eval& e) {
        if (est.witness.empty() || e.ratio < est.best_ratio) {
            est.best_ratio = e.ratio;
            est.witness = t;
            est.witness_radius = e.radius;
            est.witness_seminorm = e.seminorm;
        }
    };

    const Matrix sparse = sparse_witness(n);
    const Eval sparse_eval = evaluate(sparse);
    est.sparse_witness_ratio = sparse_eval.ratio;
    consider(sparse, sparse_eval);

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t used = 1;
    // Structured sparse starts, then normalized Ginibre starts, then local perturbation.
    while (used < budget) {
        Matrix t;
        if (used % 3 == 0) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) j = (i + 1) % n;
            t = Matrix(n);
            t(i, j) = standard_complex_normal(rng);
            const std::size_t k = pick(rng), l = pick(rng);
            if (k != l) t(k, l) += 0.2 * standard_complex_normal(rng);
        } else if (used % 3 == 1) {
            t = ginibre_random(n, rng);
        } else {
            t = est.witness;
            const double eps = 0.05 * std::max(est.witness.max_abs(), 1e-3);
            t += ginibre_random(n, rng) * Complex(eps);
        }
        const Eval e = evaluate(t);
        if (std::isfinite(e.ratio)) {
            // Normalize so that ||T||_c = 1; the ratio is scale invariant.
            t *= Complex(1.0 / e.seminorm);
            consider(t, {e.ratio, e.radius / e.seminorm, 1.0});
        }
        ++used;
    }

    const double expected_sparse = 1.0 / static_cast<double>(n);
    if (std::abs(est.sparse_witness_ratio - expected_sparse) <= 1e-6 &&
        std::abs(est.sparse_witness_ratio - est.stated_upper) > 1e-6) {
        est.flags.push_back("sparse_witness_ratio_is_1/n_not_2/n");
    }
    if (est.best_ratio < est.lower_bound - 1e-6) est.flags.push_back("below_lower_bound_1/(4n+2)");
    return est;
}

DirectSumReport direct_sum_check(const Matrix& s1, const Matrix& s2, std::size_t m, const SolverConfig& cfg) {
    DirectSumReport out;
    out.k1 = s1.size();
    out.k2 = s2.size();
    const double n = static_cast<double>(out.k1 + out.k2);
    const double w1 = static_cast<double>(out.k1) / n;
    const double w2 = static_cast<double>(out.k2) / n;

    const RangeBoundary whole = range_boundary(direct_sum(s1, s2), m, cfg);
    const RangeBoundary b1 = range_boundary(s1, m, cfg);
    const RangeBoundary b2 = range_boundary(s2, m, cfg);
    out.certified = whole.uncertified().empty() && b1.uncertified().empty() && b2.uncertified().empty();

    std::vector<Complex> combined;
    for (std::size_t k = 0; k < m; ++k) {
        const double expected = w1 * b1.samples[k].value + w2 * b2.samples[k].value;
        out.support_error = std::max(out.support_error, std::abs(whole.samples[k].value - expected));
        combined.push_back(w1 * b1.samples[k].witness_point + w2 * b2.samples[k].witness_point);
    }
    out.polygon_hausdorff = geometry::hausdorff(whole.inner_polygon(), geometry::convex_hull(combined));
    out.radius = whole.radius;
    return out;
}

}  // namespace cnr
