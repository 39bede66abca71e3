#include "cnr/range.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numbers>
#include <thread>

#include "cnr/geometry.hpp"

namespace cnr {

namespace {

void check_stop(const SolverConfig& cfg) {
    if (cfg.stop.stop_requested()) throw Error(ErrorCode::Cancelled, "solve cancelled");
}

// Tr(H B) for B = V V*, i.e. sum_ij H_ij <e_j, e_i>.
double trace_objective(const Matrix& h, const Matrix& v) {
    const std::size_t n = h.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += h(i, i).real() * inner_real(v.row(i), v.row(i));
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * (h(i, j) * inner(v.row(j), v.row(i))).real();
    }
    return s;
}

struct AscentResult {
    Matrix v;
    int sweeps = 0;
    bool degenerate = false;
};

AscentResult coordinate_ascent(const Matrix& h, Matrix v, const SolverConfig& cfg) {
    const std::size_t n = h.size();
    const double zero_dir = 1e-300;
    constexpr double kStationaryStep = 1e-11;
    AscentResult out;
    std::vector<Complex> c(n);
    double obj = trace_objective(h, v);
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        if ((sweep & 63) == 0) check_stop(cfg);
        double step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // c_i = sum_{j != i} H_ij e_j maximizes Re <e_i, c_i> over unit e_i.
            std::fill(c.begin(), c.end(), Complex{});
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const Complex hij = h(i, j);
                if (hij == Complex{}) continue;
                const auto ej = v.row(j);
                for (std::size_t k = 0; k < n; ++k) c[k] += hij * ej[k];
            }
            const double len = norm(c);
            if (len <= zero_dir) {
                out.degenerate = true;
                continue;
            }
            auto ei = v.row(i);
            double moved = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const Complex next = c[k] / len;
                moved += std::norm(next - ei[k]);
                ei[k] = next;
            }
            step = std::max(step, moved);
        }
        out.sweeps = sweep + 1;
        const double next = trace_objective(h, v);
        const bool stalled = next - obj <= cfg.improvement_tol * (1.0 + std::abs(next)) &&
                             std::sqrt(step) <= kStationaryStep;
        obj = next;
        if (stalled) break;
    }
    out.v = std::move(v);
    return out;
}

// Rows of the best rank-r approximation of V V*, renormalized. Ascent keeps the
// span of the rows, so this restricts the next run to rank <= r.
Matrix truncated_rows(const Matrix& v, std::size_t r) {
    const std::size_t n = v.size();
    const auto eig = hermitian_eigs(hermitian_parts(v * v.adjoint()).re);
    Matrix out(n);
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t col = n - 1 - k;
        const double root = std::sqrt(std::max(0.0, eig.eigenvalues[col]));
        for (std::size_t i = 0; i < n; ++i) out(i, k) = root * eig.eigenvectors(i, col);
    }
    return GramFactor::normalized(std::move(out)).rows();
}

}  // namespace

DualCertificate certify_factor(const Matrix& h, const GramFactor& factor) {
    const std::size_t n = h.size();
    const Matrix& v = factor.rows();
    DualCertificate cert;
    cert.y.resize(n);
    // y_i = Re (H B)_ii = Re <sum_j H_ij e_j, e_i>.
    for (std::size_t i = 0; i < n; ++i) {
        Complex s{};
        for (std::size_t j = 0; j < n; ++j) s += h(i, j) * inner(v.row(j), v.row(i));
        cert.y[i] = s.real();
    }
    Matrix slack = -h;
    for (std::size_t i = 0; i < n; ++i) slack(i, i) += cert.y[i];
    cert.lambda_min_before_repair = lambda_min(slack);
    cert.lambda_min = cert.lambda_min_before_repair;
    if (cert.lambda_min < 0.0) {
        const double shift = -cert.lambda_min;
        for (auto& yi : cert.y) yi += shift;
        cert.lambda_min = 0.0;
    }
    cert.dual = 0.0;
    for (double yi : cert.y) cert.dual += yi;
    return cert;
}

ElliptopeSolution maximize_over_elliptope(const Matrix& h, const SolverConfig& cfg, std::uint64_t seed) {
    const std::size_t n = h.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    if (!h.is_finite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
    if (hermitian_defect(h) > 1e-12 * (1.0 + h.frobenius_norm())) {
        throw Error(ErrorCode::NotHermitian, "elliptope objective must be Hermitian");
    }

    ElliptopeSolution best;
    bool have_primal = false;
    bool have_dual = false;
    const double target = cfg.tol * static_cast<double>(n);
    const int attempts = 1 + std::max(0, cfg.restarts);

    for (int attempt = 0; attempt < attempts; ++attempt) {
        check_stop(cfg);
        Matrix start;
        if (attempt == 0) {
            start = Matrix::identity(n);
        } else {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
            start = random_gram(n, rng).rows();
        }
        auto run = coordinate_ascent(h, std::move(start), cfg);
        GramFactor factor = GramFactor::normalized(std::move(run.v));
        double primal = trace_objective(h, factor.rows());
        DualCertificate cert = certify_factor(h, factor);

        // Ascent crawls when the optimum has lower rank than the iterate; jump there.
        for (std::size_t r = 1; r < n && cert.dual - primal > target; ++r) {
            auto low = coordinate_ascent(h, truncated_rows(factor.rows(), r), cfg);
            run.sweeps += low.sweeps;
            GramFactor f = GramFactor::normalized(std::move(low.v));
            const double p = trace_objective(h, f.rows());
            if (p <= primal) continue;
            DualCertificate c = certify_factor(h, f);
            primal = p;
            factor = std::move(f);
            if (c.dual < cert.dual) cert = std::move(c);
        }

        best.attempts = attempt + 1;
        best.sweeps += run.sweeps;
        best.degenerate = best.degenerate || run.degenerate;
        if (!have_primal || primal > best.primal) {
            best.primal = primal;
            best.factor = std::move(factor);
            have_primal = true;
        }
        if (!have_dual || cert.dual < best.dual) {
            best.dual = cert.dual;
            best.y = std::move(cert.y);
            best.certificate_lambda_min = cert.lambda_min;
            have_dual = true;
        }
        best.gap = std::max(0.0, best.dual - best.primal);
        if (best.gap <= target) {
            best.certified = true;
            break;
        }
    }
    return best;
}

SupportResult support_direction(const Matrix& a, double theta, const SolverConfig& cfg) {
    const std::size_t n = a.size();
    if (!a.is_finite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
    const Matrix h = rotated_hermitian_part(a, theta);
    ElliptopeSolution sol = maximize_over_elliptope(h, cfg, cfg.seed);

    const double inv_n = 1.0 / static_cast<double>(n);
    SupportResult r;
    r.theta = theta;
    r.value = sol.primal * inv_n;
    r.gap = sol.gap * inv_n;
    r.dual_y = std::move(sol.y);
    r.certified = sol.certified;
    r.degenerate_direction = sol.degenerate;
    r.attempts = sol.attempts;
    const CorrelationMatrix b = gram_to_correlation(sol.factor);
    r.witness_point = normalized_trace(a * b.matrix());
    r.maximizer = std::move(sol.factor);
    return r;
}

std::string matrix_hash(const Matrix& a) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ULL;
        }
    };
    const std::uint64_t n = a.size();
    mix(&n, sizeof n);
    for (const auto& v : a.entries()) {
        const double parts[2] = {v.real(), v.imag()};
        mix(parts, sizeof parts);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<double> angle_grid(std::size_t m) {
    std::vector<double> t(m);
    for (std::size_t k = 0; k < m; ++k) t[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    return t;
}

RangeBoundary range_boundary(const Matrix& a, std::size_t m, const SolverConfig& cfg) {
    if (m < 3) throw Error(ErrorCode::InvalidArgument, "range_boundary needs at least 3 directions");
    const auto thetas = angle_grid(m);
    RangeBoundary out;
    out.matrix_hash = matrix_hash(a);
    out.samples.resize(m);

    auto solve_range = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t k = begin; k < m; k += stride) {
            SolverConfig local = cfg;
            local.seed = derive_seed(cfg.seed, k);
            out.samples[k] = support_direction(a, thetas[k], local);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(m)));
    if (threads == 1) {
        solve_range(0, 1);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&, t] {
                    try {
                        solve_range(t, threads);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    out.radius = -std::numeric_limits<double>::infinity();
    for (const auto& s : out.samples) out.radius = std::max(out.radius, s.value);
    return out;
}

std::vector<Complex> RangeBoundary::inner_polygon() const {
    std::vector<Complex> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples) pts.push_back(s.witness_point);
    return geometry::convex_hull(pts);
}

std::vector<Complex> RangeBoundary::outer_polygon() const {
    std::vector<double> thetas, offsets;
    for (const auto& s : samples) {
        thetas.push_back(s.theta);
        offsets.push_back(s.upper_bound());
    }
    return geometry::halfplane_polygon(thetas, offsets);
}

std::vector<std::size_t> RangeBoundary::uncertified() const {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < samples.size(); ++k)
        if (!samples[k].certified) idx.push_back(k);
    return idx;
}

double RangeBoundary::max_gap() const {
    double g = 0.0;
    for (const auto& s : samples) g = std::max(g, s.gap);
    return g;
}

RadiusResult wc_radius(const Matrix& a, std::size_t m, const SolverConfig& cfg) {
    const RangeBoundary boundary = range_boundary(a, m, cfg);
    const auto& s = boundary.samples;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m);

    RadiusResult out;
    out.certified = boundary.uncertified().empty();
    std::size_t best = 0;
    for (std::size_t k = 1; k < m; ++k)
        if (s[k].value > s[best].value) best = k;
    out.radius = s[best].value;
    out.theta = s[best].theta;
    out.point = s[best].witness_point;

    // Local maxima of the sampled support function, best two refined by golden section.
    std::vector<std::size_t> peaks;
    for (std::size_t k = 0; k < m; ++k) {
        const double prev = s[(k + m - 1) % m].value, next = s[(k + 1) % m].value;
        if (s[k].value >= prev && s[k].value >= next) peaks.push_back(k);
    }
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t x, std::size_t y) { return s[x].value > s[y].value; });
    if (peaks.size() > 2) peaks.resize(2);

    const double spread = s[best].value - std::min_element(s.begin(), s.end(), [](const auto& x, const auto& y) {
                                              return x.value < y.value;
                                          })->value;
    if (spread > 1e-12) {
        for (std::size_t k : peaks) {
            SupportResult best_eval = s[k];
            auto f = [&](double theta) {
                SupportResult r = support_direction(a, theta, cfg);
                out.certified = out.certified && r.certified;
                const double v = r.value;
                if (v > best_eval.value) best_eval = std::move(r);
                return v;
            };
            geometry::golden_maximize(f, s[k].theta - step, s[k].theta + step, 1e-6);
            if (best_eval.value > out.radius) {
                out.radius = best_eval.value;
                out.theta = best_eval.theta;
                out.point = best_eval.witness_point;
            }
        }
    }

    out.outer_bound = 0.0;
    for (const auto& v : boundary.outer_polygon()) out.outer_bound = std::max(out.outer_bound, std::abs(v));
    return out;
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::Inside: return "inside";
        case Membership::Outside: return "outside";
        case Membership::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

MembershipResult contains(const Matrix& a, Complex lambda, std::size_t m, const SolverConfig& cfg) {
    constexpr double kSlack = 1e-9;
    const RangeBoundary boundary = range_boundary(a, m, cfg);
    const auto& s = boundary.samples;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m);

    auto projection = [&](double theta) { return (std::polar(1.0, -theta) * lambda).real(); };

    MembershipResult out;
    std::size_t worst = 0;
    double worst_upper_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
        const double margin = s[k].value - projection(s[k].theta);
        if (k == 0 || margin < out.margin) {
            out.margin = margin;
            worst = k;
        }
        worst_upper_margin = std::min(worst_upper_margin, s[k].upper_bound() - projection(s[k].theta));
        out.gap_bound = std::max(out.gap_bound, s[k].gap);
    }
    out.theta = s[worst].theta;

    if (worst_upper_margin >= -kSlack) {
        auto neg_margin = [&](double theta) {
            const SupportResult r = support_direction(a, theta, cfg);
            const double margin = r.value - projection(theta);
            if (margin < out.margin) {
                out.margin = margin;
                out.theta = theta;
            }
            out.gap_bound = std::max(out.gap_bound, r.gap);
            worst_upper_margin = std::min(worst_upper_margin, r.upper_bound() - projection(theta));
            return -margin;
        };
        geometry::golden_maximize(neg_margin, s[worst].theta - step, s[worst].theta + step, 1e-7);
    }

    if (out.margin >= -kSlack) {
        out.verdict = Membership::Inside;
    } else if (worst_upper_margin < -kSlack) {
        out.verdict = Membership::Outside;
    } else {
        out.verdict = Membership::Inconclusive;
    }
    return out;
}

bool range_is_real(const Matrix& a, double tol) {
    const Matrix im = hermitian_parts(a).im;
    const double scale = 1.0 + a.max_abs();
    return im.off_diagonal_max_abs() <= tol * scale && std::abs(normalized_trace(im)) <= tol * scale;
}

MinimumResult min_real_value(const Matrix& a, const SolverConfig& cfg) {
    if (!range_is_real(a)) {
        throw Error(ErrorCode::RangeNotReal,
                    "W_c(A) is real only when Im A is diagonal with zero trace");
    }
    const std::size_t n = a.size();
    const Matrix re = hermitian_parts(a).re;
    ElliptopeSolution sol = maximize_over_elliptope(-re, cfg, cfg.seed);
    const double inv_n = 1.0 / static_cast<double>(n);

    MinimumResult out;
    out.value = -sol.primal * inv_n;
    out.lower_bound = -sol.dual * inv_n;
    out.gap = sol.gap * inv_n;
    out.certified = sol.certified;
    out.dual_y.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.dual_y[i] = -sol.y[i];
    const CorrelationMatrix b = gram_to_correlation(sol.factor);
    out.witness_point = normalized_trace(a * b.matrix());
    out.minimizer = std::move(sol.factor);
    return out;
}

double classical_support(const Matrix& a, double theta) { return lambda_max(rotated_hermitian_part(a, theta)); }

}  // namespace cnr
