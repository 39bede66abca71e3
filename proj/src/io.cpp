#include "cnr/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cnr/geometry.hpp"

namespace cnr::io {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::string number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write(std::ostringstream& os, const json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    const std::string inner(static_cast<std::size_t>(2 * depth + 2), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << inner << json(key).dump() << ": ";
                write(os, value, depth + 1);
            }
            os << "\n" << pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << inner;
                write(os, j[i], depth + 1);
            }
            os << "\n" << pad << "]";
            return;
        }
        case json::value_t::number_float:
            os << number(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

double finite_number(const json& j, const std::string& field) {
    if (!j.is_number()) parse_fail(field + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) parse_fail(field + ": value is not finite");
    return x;
}

std::string line_context(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::vector<Complex> vector_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) parse_fail(field + ": expected an array");
    std::vector<Complex> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

json vector_to_json(const std::vector<Complex>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(to_json(z));
    return out;
}

}  // namespace

Complex complex_from_json(const json& j, const std::string& field) {
    if (j.is_number()) return {finite_number(j, field), 0.0};
    if (!j.is_object()) parse_fail(field + ": expected {\"re\", \"im\"}");
    if (!j.contains("re")) parse_fail(field + ".re: missing");
    const double re = finite_number(j["re"], field + ".re");
    const double im = j.contains("im") ? finite_number(j["im"], field + ".im") : 0.0;
    return {re, im};
}

Matrix matrix_from_json(const json& j, const std::string& field) {
    const std::string prefix = field.empty() ? "" : field + ".";
    if (!j.is_object()) parse_fail((field.empty() ? "matrix" : field) + ": expected an object");
    if (!j.contains("n")) parse_fail(prefix + "n: missing");
    if (!j["n"].is_number_integer()) parse_fail(prefix + "n: expected an integer");
    const long long n = j["n"].get<long long>();
    if (n < 1) parse_fail(prefix + "n: must be at least 1");
    if (!j.contains("rows")) parse_fail(prefix + "rows: missing");
    const json& rows = j["rows"];
    if (!rows.is_array()) parse_fail(prefix + "rows: expected an array");
    const auto un = static_cast<std::size_t>(n);
    if (rows.size() != un) {
        throw Error(ErrorCode::DimensionMismatch,
                    prefix + "rows: " + std::to_string(rows.size()) + " rows for n = " + std::to_string(n));
    }
    Matrix m(un);
    for (std::size_t i = 0; i < un; ++i) {
        const std::string rf = prefix + "rows[" + std::to_string(i) + "]";
        if (!rows[i].is_array()) parse_fail(rf + ": expected an array");
        if (rows[i].size() != un) {
            throw Error(ErrorCode::DimensionMismatch,
                        rf + ": " + std::to_string(rows[i].size()) + " entries for n = " + std::to_string(n));
        }
        for (std::size_t k = 0; k < un; ++k) m(i, k) = complex_from_json(rows[i][k], rf + "[" + std::to_string(k) + "]");
    }
    return m;
}

Matrix parse_matrix_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(origin + ": " + line_context(text, e.byte) + ": malformed JSON");
    } catch (const json::exception& e) {
        // e.g. a number literal that overflows a double
        parse_fail(origin + ": " + e.what());
    }
    try {
        return matrix_from_json(j);
    } catch (const Error& e) {
        throw Error(e.code(), origin + ": " + e.what());
    }
}

Matrix parse_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_fail(path.string() + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix_text(ss.str(), path.string());
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_fail(path.string() + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(path.string() + ": " + line_context(text, e.byte) + ": malformed JSON");
    } catch (const json::exception& e) {
        parse_fail(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, path.string() + ": cannot write");
    out << text;
}

json to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.size()}, {"rows", std::move(rows)}};
}

json to_json(const SupportResult& s) {
    return json{{"theta", s.theta},
                {"support", s.value},
                {"upper_bound", s.upper_bound()},
                {"gap", s.gap},
                {"witness", to_json(s.witness_point)},
                {"dual_y", s.dual_y},
                {"certified", s.certified},
                {"degenerate", s.degenerate_direction}};
}

json to_json(const RangeBoundary& b) {
    json samples = json::array();
    for (const auto& s : b.samples) samples.push_back(to_json(s));
    json inner = json::array();
    for (const auto& p : b.inner_polygon()) inner.push_back(to_json(p));
    json outer = json::array();
    for (const auto& p : b.outer_polygon()) outer.push_back(to_json(p));
    return json{{"matrix_hash", b.matrix_hash},
                {"directions", b.samples.size()},
                {"radius", b.radius},
                {"max_gap", b.max_gap()},
                {"uncertified", b.uncertified()},
                {"samples", std::move(samples)},
                {"inner_polygon", std::move(inner)},
                {"outer_polygon", std::move(outer)}};
}

json to_json(const SosCertificate& c) {
    json q = json::array();
    for (const auto& v : c.q) q.push_back(vector_to_json(v));
    return json{{"n", c.n}, {"q", std::move(q)}, {"D", vector_to_json(c.d)}, {"residual", c.residual}};
}

json to_json(const Decomposition& d) {
    return json{{"margin", d.margin}, {"primal_margin", d.primal_margin}, {"y", d.y}, {"P", to_json(d.p)},
                {"D", vector_to_json(d.d.diagonal_entries())}};
}

SosCertificate certificate_from_json(const json& j) {
    const json* node = &j;
    std::string where = "certificate";
    if (j.is_object() && j.contains("result")) {
        if (!j["result"].is_object() || !j["result"].contains("certificate"))
            parse_fail("result.certificate: missing");
        node = &j["result"]["certificate"];
        where = "result.certificate";
    }
    const json& c = *node;
    if (!c.is_object()) parse_fail(where + ": expected an object");
    for (const char* key : {"n", "q", "D"})
        if (!c.contains(key)) parse_fail(where + "." + key + ": missing");
    if (!c["n"].is_number_integer() || c["n"].get<long long>() < 1) parse_fail(where + ".n: expected a positive integer");
    SosCertificate cert;
    cert.n = c["n"].get<std::size_t>();
    if (!c["q"].is_array()) parse_fail(where + ".q: expected an array");
    for (std::size_t k = 0; k < c["q"].size(); ++k)
        cert.q.push_back(vector_from_json(c["q"][k], where + ".q[" + std::to_string(k) + "]"));
    cert.d = vector_from_json(c["D"], where + ".D");
    if (c.contains("residual") && c["residual"].is_number()) cert.residual = c["residual"].get<double>();
    return cert;
}

json envelope(const std::string& command, json config, json result, const std::vector<std::string>& flags) {
    return json{{"command", command}, {"config", std::move(config)}, {"result", std::move(result)}, {"flags", flags}};
}

std::string dump(const json& j) {
    std::ostringstream os;
    write(os, j, 0);
    os << "\n";
    return os.str();
}

std::string boundary_csv(const RangeBoundary& b) {
    std::string out = "theta,support,re,im\n";
    for (const auto& s : b.samples) {
        out += number(s.theta) + "," + number(s.value) + "," + number(s.witness_point.real()) + "," +
               number(s.witness_point.imag()) + "\n";
    }
    return out;
}

std::string boundary_svg(const RangeBoundary& b, const std::vector<Complex>& extra_points) {
    constexpr double size = 800.0;
    constexpr double margin = 40.0;
    const auto inner = b.inner_polygon();
    const auto outer = b.outer_polygon();

    std::vector<Complex> all = inner;
    all.insert(all.end(), outer.begin(), outer.end());
    all.insert(all.end(), extra_points.begin(), extra_points.end());
    for (const auto& s : b.samples) all.push_back(s.witness_point);
    double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
    if (!all.empty()) {
        lo_x = hi_x = all.front().real();
        lo_y = hi_y = all.front().imag();
    }
    for (const auto& p : all) {
        lo_x = std::min(lo_x, p.real());
        hi_x = std::max(hi_x, p.real());
        lo_y = std::min(lo_y, p.imag());
        hi_y = std::max(hi_y, p.imag());
    }
    // Square viewport around the data; singletons get a unit window.
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9}) * 1.1 + (all.size() < 2 ? 1.0 : 0.0);
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    const double scale = (size - 2 * margin) / span;
    auto px = [&](Complex p) { return size / 2 + (p.real() - cx) * scale; };
    auto py = [&](Complex p) { return size / 2 - (p.imag() - cy) * scale; };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };
    auto points_attr = [&](const std::vector<Complex>& poly) {
        std::string s;
        for (std::size_t i = 0; i < poly.size(); ++i) s += (i ? " " : "") + fmt(px(poly[i])) + "," + fmt(py(poly[i]));
        return s;
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    const Complex origin{0.0, 0.0};
    os << "<line x1=\"0\" y1=\"" << fmt(py(origin)) << "\" x2=\"800\" y2=\"" << fmt(py(origin))
       << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt(px(origin)) << "\" y1=\"0\" x2=\"" << fmt(px(origin))
       << "\" y2=\"800\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    if (outer.size() >= 2)
        os << "<polygon points=\"" << points_attr(outer)
           << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    if (inner.size() >= 2)
        os << "<polygon points=\"" << points_attr(inner)
           << "\" fill=\"#1f77b4\" fill-opacity=\"0.15\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    for (const auto& s : b.samples)
        os << "<circle cx=\"" << fmt(px(s.witness_point)) << "\" cy=\"" << fmt(py(s.witness_point))
           << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    for (const auto& p : extra_points)
        os << "<circle cx=\"" << fmt(px(p)) << "\" cy=\"" << fmt(py(p)) << "\" r=\"1.5\" fill=\"#2ca02c\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace cnr::io
