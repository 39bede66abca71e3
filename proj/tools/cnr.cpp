// cnr: command-line front end for the correlation numerical range library.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cnr/decompose.hpp"
#include "cnr/io.hpp"
#include "cnr/metrics.hpp"
#include "cnr/range.hpp"
#include "cnr/suite.hpp"
#include "cnr/ucrange.hpp"

namespace {

using cnr::io::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kUncertified = 3;

struct Common {
    std::string input;
    std::string out;
    std::string svg;
    std::string csv;
    std::optional<std::uint64_t> seed;
    double tol = 1e-8;
    int restarts = 8;
    std::size_t directions = 256;
    unsigned threads = 1;
    bool strict = false;
};

struct Outcome {
    json result;
    std::vector<std::string> flags;
    bool uncertified = false;
    bool failed = false;
};

std::uint64_t resolve_seed(const Common& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("CNR_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const std::uint64_t v = std::stoull(env, &used, 0);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw cnr::Error(cnr::ErrorCode::InvalidArgument, std::string("CNR_SEED is not an integer: ") + env);
    }
    return cnr::SolverConfig{}.seed;
}

cnr::SolverConfig solver_config(const Common& c) {
    if (!(c.tol > 0.0)) throw cnr::Error(cnr::ErrorCode::InvalidArgument, "--tol must be positive");
    if (c.directions < 3) throw cnr::Error(cnr::ErrorCode::InvalidArgument, "--directions must be at least 3");
    cnr::SolverConfig cfg;
    cfg.tol = c.tol;
    cfg.restarts = c.restarts;
    cfg.seed = resolve_seed(c);
    cfg.threads = std::max(1u, c.threads);
    return cfg;
}

json config_json(const Common& c, const cnr::SolverConfig& cfg) {
    json j{{"seed", cfg.seed}, {"tol", cfg.tol}, {"restarts", cfg.restarts}, {"directions", c.directions}};
    if (!c.input.empty()) j["input"] = c.input;
    return j;
}

void add_common(CLI::App* sub, Common& c, bool needs_input) {
    auto* in = sub->add_option("-i,--input", c.input, "matrix file (JSON)");
    if (needs_input) in->required();
    sub->add_option("-o,--out", c.out, "write the results JSON here instead of stdout");
    sub->add_option("--seed", c.seed, "master seed (overrides CNR_SEED)");
    sub->add_option("--tol", c.tol, "primal-dual gap target")->capture_default_str();
    sub->add_option("--restarts", c.restarts, "random restarts per direction")->capture_default_str();
    sub->add_option("-m,--directions", c.directions, "angle grid size")->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads for boundary sweeps")->capture_default_str();
    sub->add_flag("--strict", c.strict, "exit 3 when a result is not certified");
}

// Every inner vertex must satisfy every certified half-plane.
double outer_contains_inner(const cnr::RangeBoundary& b) {
    double worst = 0.0;
    for (const auto& p : b.inner_polygon())
        for (const auto& s : b.samples)
            if (s.certified)
                worst = std::max(worst, (std::polar(1.0, -s.theta) * p).real() - s.upper_bound());
    return worst;
}

Outcome cmd_range(const Common& c, const cnr::SolverConfig& cfg) {
    const cnr::Matrix a = cnr::io::parse_matrix(c.input);
    const cnr::RangeBoundary b = cnr::range_boundary(a, c.directions, cfg);
    Outcome o;
    o.result = cnr::io::to_json(b);
    const double violation = outer_contains_inner(b);
    o.result["self_check"] = json{{"outer_contains_inner", violation <= 1e-9}, {"max_violation", violation}};
    if (!b.uncertified().empty()) {
        o.uncertified = true;
        o.flags.push_back("uncertified_directions:" + std::to_string(b.uncertified().size()));
    }
    if (violation > 1e-9) o.flags.push_back("outer_polygon_misses_inner_hull");
    if (!c.svg.empty()) cnr::io::write_text_file(c.svg, cnr::io::boundary_svg(b));
    if (!c.csv.empty()) cnr::io::write_text_file(c.csv, cnr::io::boundary_csv(b));
    return o;
}

Outcome cmd_radius(const Common& c, const cnr::SolverConfig& cfg) {
    const cnr::Matrix a = cnr::io::parse_matrix(c.input);
    const cnr::RadiusResult r = cnr::wc_radius(a, c.directions, cfg);
    Outcome o;
    o.result = json{{"radius", r.radius},
                    {"theta", r.theta},
                    {"point", cnr::io::to_json(r.point)},
                    {"outer_bound", r.outer_bound},
                    {"certified", r.certified}};
    if (!r.certified) {
        o.uncertified = true;
        o.flags.push_back("uncertified_radius");
    }
    return o;
}

Outcome cmd_contains(const Common& c, const cnr::SolverConfig& cfg, double re, double im) {
    const cnr::Matrix a = cnr::io::parse_matrix(c.input);
    const cnr::MembershipResult m = cnr::contains(a, {re, im}, c.directions, cfg);
    Outcome o;
    o.result = json{{"lambda", cnr::io::to_json(cnr::Complex(re, im))},
                    {"verdict", cnr::to_string(m.verdict)},
                    {"inside", m.inside()},
                    {"margin", m.margin},
                    {"theta", m.theta},
                    {"gap_bound", m.gap_bound}};
    if (m.verdict == cnr::Membership::Inconclusive) {
        o.uncertified = true;
        o.flags.push_back("inconclusive");
    }
    return o;
}

json not_decomposable_json(const cnr::NotDecomposableError& e) {
    const cnr::CorrelationMatrix b = cnr::gram_to_correlation(e.witness());
    return json{{"decomposable", false}, {"margin", e.margin()}, {"witness", cnr::io::to_json(b.matrix())}};
}

Outcome cmd_decompose(const Common& c, const cnr::SolverConfig& cfg) {
    const cnr::Matrix a = cnr::io::parse_matrix(c.input);
    Outcome o;
    try {
        const cnr::Decomposition dec = cnr::decompose(a, cfg);
        cnr::SosCertificate cert = cnr::sos_certificate(dec);
        const cnr::CertificateCheck check = cnr::verify_certificate(a, cert);
        cert.residual = check.residual;
        o.result = json{{"decomposable", true},
                        {"margin", dec.margin},
                        {"decomposition", cnr::io::to_json(dec)},
                        {"certificate", cnr::io::to_json(cert)},
                        {"free_group_form", cnr::free_group_form(cert)},
                        {"verified", check.ok}};
        if (!check.ok) {
            o.uncertified = true;
            o.flags.push_back("certificate_residual_too_large");
        }
    } catch (const cnr::NotDecomposableError& e) {
        o.result = not_decomposable_json(e);
        o.flags.push_back("not_decomposable");
    }
    return o;
}

Outcome cmd_certify(const Common& c, const cnr::SolverConfig& cfg) {
    const cnr::Matrix a = cnr::io::parse_matrix(c.input);
    const cnr::NonnegativityResult t = cnr::nonnegativity_test(a, cfg);
    Outcome o;
    o.result = json{{"nonnegative", t.nonnegative},
                    {"margin", t.margin},
                    {"lower_bound", t.minimum.lower_bound},
                    {"gap", t.minimum.gap},
                    {"certified", t.minimum.certified},
                    {"dual_y", t.minimum.dual_y},
                    {"minimizer_point", cnr::io::to_json(t.minimum.witness_point)}};
    if (!t.minimum.certified) {
        o.uncertified = true;
        o.flags.push_back("gap_not_closed");
    }
    if (t.nonnegative) {
        try {
            const cnr::SosCertificate cert = cnr::certify_nonnegative(a, cfg);
            o.result["certificate"] = cnr::io::to_json(cert);
            o.result["free_group_form"] = cnr::free_group_form(cert);
        } catch (const cnr::NotDecomposableError& e) {
            o.flags.push_back("nonnegative_but_not_decomposed");
            o.result["decomposition_failure"] = not_decomposable_json(e);
        }
    }
    return o;
}

Outcome cmd_verify(const Common& c, const std::string& cert_path) {
    const cnr::Matrix a = cnr::io::parse_matrix(c.input);
    const cnr::SosCertificate cert = cnr::io::certificate_from_json(cnr::io::read_json_file(cert_path));
    const cnr::CertificateCheck check = cnr::verify_certificate(a, cert);
    Outcome o;
    o.result = json{{"ok", check.ok},
                    {"residual", check.residual},
                    {"trace_defect", check.trace_defect},
                    {"message", check.message},
                    {"certificate", cert_path}};
    o.failed = !check.ok;
    return o;
}

Outcome cmd_wuc(const Common& c, const cnr::SolverConfig& cfg, std::size_t samples, std::vector<std::size_t> ks) {
    const cnr::Matrix a = cnr::io::parse_matrix(c.input);
    cnr::WucOptions opts;
    opts.samples = samples;
    opts.directions = c.directions;
    if (!ks.empty()) opts.k_list = std::move(ks);
    const cnr::WucComparison w = cnr::compare_wc_wuc(a, opts, cfg);
    json pts = json::array();
    for (const auto& p : w.approximation.hull) pts.push_back(cnr::io::to_json(p));
    Outcome o;
    o.result = json{{"samples", w.points},
                    {"k_values", w.approximation.meta.k_values},
                    {"counts_per_k", w.approximation.meta.counts_per_k},
                    {"tuple_kinds",
                     json{{"haar", w.approximation.meta.haar},
                          {"diagonal_phase", w.approximation.meta.diagonal_phase},
                          {"permutation", w.approximation.meta.permutation}}},
                    {"inclusion_margin", w.inclusion_margin},
                    {"deficit", w.deficit},
                    {"equality_expected", w.equality_expected},
                    {"hull", std::move(pts)},
                    {"hull_label", "convex hull of sampled points (co F_n image)"}};
    if (w.inclusion_margin < -1e-8) o.flags.push_back("sample_outside_wc");
    if (!w.boundary.uncertified().empty()) {
        o.uncertified = true;
        o.flags.push_back("uncertified_directions:" + std::to_string(w.boundary.uncertified().size()));
    }
    if (!c.svg.empty()) cnr::io::write_text_file(c.svg, cnr::io::boundary_svg(w.boundary, w.approximation.points));
    return o;
}

Outcome cmd_kappa(const Common& c, const cnr::SolverConfig& cfg, std::size_t n, std::size_t budget) {
    cnr::Rng rng(cnr::derive_seed(cfg.seed, 0x6b617070ULL));
    cnr::KappaOptions opts;
    opts.directions = std::min<std::size_t>(c.directions, 64);
    const cnr::KappaEstimate k = cnr::kappa_upper_search(n, budget, rng, cfg, opts);
    Outcome o;
    o.result = json{{"n", k.n},
                    {"best_ratio", k.best_ratio},
                    {"lower_bound", k.lower_bound},
                    {"stated_upper_bound", k.stated_upper},
                    {"sparse_witness_ratio", k.sparse_witness_ratio},
                    {"witness", cnr::io::to_json(k.witness)},
                    {"witness_radius", k.witness_radius},
                    {"witness_seminorm", k.witness_seminorm},
                    {"evaluations", k.evaluations}};
    o.flags = k.flags;
    return o;
}

Outcome cmd_cnorm(const Common& c) {
    const cnr::Matrix a = cnr::io::parse_matrix(c.input);
    cnr::SeminormConfig sc;
    sc.seed = resolve_seed(c);
    const cnr::SeminormResult r = cnr::c_seminorm(a, sc);
    Outcome o;
    json d = json::array();
    for (const auto& x : r.d) d.push_back(cnr::io::to_json(x));
    o.result = json{{"seminorm", r.value}, {"diagonal", std::move(d)}, {"restart_spread", r.restart_spread},
                    {"converged", r.converged}};
    if (!r.converged) {
        o.uncertified = true;
        o.flags.push_back("restarts_disagree");
    }
    return o;
}

Outcome cmd_check(const cnr::SolverConfig& cfg, const std::string& suite, std::size_t n, std::size_t matrices,
                  std::size_t directions) {
    cnr::SuiteOptions opts;
    opts.max_n = n;
    opts.matrices = matrices;
    opts.directions = directions;
    opts.solver = cfg;
    const cnr::SuiteReport rep = cnr::run_suite(suite, opts);
    Outcome o;
    json checks = json::array();
    for (const auto& ch : rep.checks) {
        checks.push_back(json{{"suite", ch.suite},
                              {"name", ch.name},
                              {"passed", ch.passed},
                              {"worst", ch.worst},
                              {"bound", ch.bound},
                              {"cases", ch.cases},
                              {"detail", ch.detail}});
        std::cerr << (ch.passed ? "PASS " : "FAIL ") << ch.suite << "/" << ch.name << " worst=" << ch.worst
                  << " bound=" << ch.bound << "\n";
    }
    o.result = json{{"suite", suite}, {"passed", rep.passed()}, {"checks", std::move(checks)}};
    o.flags = rep.flags;
    o.failed = !rep.passed();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlation numerical range: boundaries, radii, decompositions and certificates"};
    app.require_subcommand(1);
    Common c;

    auto* range = app.add_subcommand("range", "support function on an angle grid, inner and outer polygons");
    add_common(range, c, true);
    range->add_option("--svg", c.svg, "write an 800x800 SVG plot");
    range->add_option("--csv", c.csv, "write theta,support,re,im lines");

    auto* radius = app.add_subcommand("radius", "correlation numerical radius");
    add_common(radius, c, true);

    double re = 0.0, im = 0.0;
    auto* contains = app.add_subcommand("contains", "membership of a complex number");
    add_common(contains, c, true);
    contains->add_option("--re", re, "real part")->required();
    contains->add_option("--im", im, "imaginary part");

    auto* decompose = app.add_subcommand("decompose", "A = P + D with P PSD and D trace-zero diagonal");
    add_common(decompose, c, true);

    auto* certify = app.add_subcommand("certify", "nonnegativity test with a sum-of-squares certificate");
    add_common(certify, c, true);

    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "check a certificate (raw or a decompose results file)");
    add_common(verify, c, true);
    verify->add_option("--cert", cert_path, "certificate JSON")->required();

    std::size_t samples = 2000;
    std::vector<std::size_t> ks;
    auto* wuc = app.add_subcommand("wuc", "sampled inner approximation of the unitarily induced range");
    add_common(wuc, c, true);
    wuc->add_option("--samples", samples, "sampled unitary tuples")->capture_default_str();
    wuc->add_option("--k", ks, "unitary sizes (default 1 2 4 8 16)");
    wuc->add_option("--svg", c.svg, "write an 800x800 SVG plot with the samples");

    std::size_t kn = 3, budget = 60;
    auto* kappa = app.add_subcommand("kappa", "search for small w_c(T) / ||T||_c");
    add_common(kappa, c, false);
    kappa->add_option("--n", kn, "dimension")->capture_default_str()->check(CLI::Range(2, 64));
    kappa->add_option("--budget", budget, "matrices evaluated")->capture_default_str();

    auto* cnorm = app.add_subcommand("cnorm", "quotient seminorm modulo trace-zero diagonals");
    add_common(cnorm, c, true);

    std::string suite = "all";
    std::size_t max_n = 5, matrices = 50, check_dirs = 32;
    auto* check = app.add_subcommand("check", "run the invariant suite; exit 1 on any failure");
    add_common(check, c, false);
    check->add_option("--suite", suite, "basic | duality | normalizer | direct-sum | decompose | all")
        ->capture_default_str()
        ->check(CLI::IsMember(cnr::suite_names()));
    check->add_option("--n", max_n, "largest matrix size")->capture_default_str()->check(CLI::Range(2, 16));
    check->add_option("--matrices", matrices, "random matrices per check")->capture_default_str();
    check->add_option("--grid", check_dirs, "angle grid for boundary comparisons")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    std::string command;
    Outcome o;
    json config;
    try {
        const cnr::SolverConfig cfg = solver_config(c);
        config = config_json(c, cfg);
        if (*range) {
            command = "range";
            o = cmd_range(c, cfg);
        } else if (*radius) {
            command = "radius";
            o = cmd_radius(c, cfg);
        } else if (*contains) {
            command = "contains";
            o = cmd_contains(c, cfg, re, im);
        } else if (*decompose) {
            command = "decompose";
            o = cmd_decompose(c, cfg);
        } else if (*certify) {
            command = "certify";
            o = cmd_certify(c, cfg);
        } else if (*verify) {
            command = "verify";
            o = cmd_verify(c, cert_path);
        } else if (*wuc) {
            command = "wuc";
            config["samples"] = samples;
            o = cmd_wuc(c, cfg, samples, ks);
        } else if (*kappa) {
            command = "kappa";
            config["n"] = kn;
            config["budget"] = budget;
            o = cmd_kappa(c, cfg, kn, budget);
        } else if (*cnorm) {
            command = "cnorm";
            o = cmd_cnorm(c);
        } else {
            command = "check";
            config["suite"] = suite;
            config["n"] = max_n;
            config["matrices"] = matrices;
            o = cmd_check(cfg, suite, max_n, matrices, check_dirs);
        }
    } catch (const cnr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    const std::string text = cnr::io::dump(cnr::io::envelope(command, config, o.result, o.flags));
    try {
        if (c.out.empty()) {
            std::cout << text;
        } else {
            cnr::io::write_text_file(c.out, text);
        }
    } catch (const cnr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    if (o.failed) return kFailed;
    if (c.strict && o.uncertified) return kUncertified;
    return kOk;
}
