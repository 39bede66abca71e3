#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cnr/decompose.hpp"
#include "cnr/range.hpp"

namespace cnr::io {

using json = nlohmann::ordered_json;

/// Reads {"n": int, "rows": [[{"re":..,"im":..}, ..], ..]}.
/// ParseError names the line or field; DimensionMismatch on ragged rows.
Matrix parse_matrix(const std::filesystem::path& path);
Matrix parse_matrix_text(const std::string& text, const std::string& origin = "<input>");
Matrix matrix_from_json(const json& j, const std::string& field = "");

json to_json(Complex z);
json to_json(const Matrix& m);  // MatrixFile layout
json to_json(const SupportResult& s);
json to_json(const RangeBoundary& b);
json to_json(const SosCertificate& c);
json to_json(const Decomposition& d);

Complex complex_from_json(const json& j, const std::string& field);

/// Accepts a bare certificate or a results envelope holding one under result.certificate.
SosCertificate certificate_from_json(const json& j);

/// {"command", "config", "result", "flags"}.
json envelope(const std::string& command, json config, json result, const std::vector<std::string>& flags);

/// Deterministic text: two-space indent, doubles as %.17g, trailing newline.
std::string dump(const json& j);

/// theta,support,re,im per sample.
std::string boundary_csv(const RangeBoundary& b);

/// 800x800 plot: inner hull solid, outer polygon dashed, witness points (and extras) as dots.
std::string boundary_svg(const RangeBoundary& b, const std::vector<Complex>& extra_points = {});

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cnr::io
