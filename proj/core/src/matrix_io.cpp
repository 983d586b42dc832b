#include "pfaff/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "pfaff/errors.hpp"

namespace pfaff {

namespace {

using nlohmann::json;
// Writers keep keys in schema order.
using nlohmann::ordered_json;

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
            ++j;
        }
        if (j > i) {
            tokens.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return tokens;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

struct Line {
    std::string_view text;
    std::size_t number;
    std::size_t offset;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t start = 0;
    std::size_t number = 1;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back({line, number++, start});
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    return lines;
}

double parse_double(std::string_view token, const Line& line) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("line " + std::to_string(line.number) + ": cannot parse number '" + std::string(token) + "'",
                         line.number, line.offset);
    }
    if (!std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line.number) + ": non-finite value '" + std::string(token) + "'",
                         line.number, line.offset);
    }
    return value;
}

std::size_t parse_count(std::string_view token, const Line& line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
        throw ParseError("line " + std::to_string(line.number) + ": invalid dimension '" + std::string(token) + "'",
                         line.number, line.offset);
    }
    return value;
}

MatrixDocument parse_matrix_market(std::string_view text) {
    const std::vector<Line> lines = split_lines(text);
    const Line& header = lines.front();
    const auto head = split_ws(header.text);
    auto header_error = [&](const std::string& why) {
        return ParseError("line 1: malformed Matrix Market header: " + why, 1, 0);
    };
    if (head.size() != 5 || lower(head[0]) != "%%matrixmarket") {
        throw header_error("expected '%%MatrixMarket matrix array <field> <symmetry>'");
    }
    if (lower(head[1]) != "matrix") {
        throw header_error("object must be 'matrix', got '" + std::string(head[1]) + "'");
    }
    if (lower(head[2]) != "array") {
        throw header_error("only the dense 'array' format is supported, got '" + std::string(head[2]) + "'");
    }
    const std::string field = lower(head[3]);
    if (field != "complex" && field != "real" && field != "integer") {
        throw header_error("unsupported field '" + std::string(head[3]) + "'");
    }
    const std::string symmetry = lower(head[4]);
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" && symmetry != "hermitian") {
        throw header_error("unsupported symmetry '" + std::string(head[4]) + "'");
    }
    if (symmetry == "hermitian" && field != "complex") {
        throw header_error("hermitian symmetry requires the complex field");
    }
    const bool is_complex = field == "complex";

    std::map<std::string, std::string> metadata;
    std::size_t k = 1;
    for (; k < lines.size(); ++k) {
        const std::string_view t = lines[k].text;
        if (!t.empty() && t.front() == '%') {
            const std::string body = trim(t.substr(1));
            const auto colon = body.find(':');
            if (colon != std::string::npos && colon > 0) {
                metadata[trim(std::string_view(body).substr(0, colon))] = trim(std::string_view(body).substr(colon + 1));
            }
            continue;
        }
        if (!split_ws(t).empty()) {
            break;
        }
    }
    if (k == lines.size()) {
        throw ParseError("missing size line after header", lines.back().number, lines.back().offset);
    }
    const Line& size_line = lines[k];
    const auto dims = split_ws(size_line.text);
    if (dims.size() != 2) {
        throw ParseError("line " + std::to_string(size_line.number) + ": size line must hold 'rows cols'",
                         size_line.number, size_line.offset);
    }
    const std::size_t rows = parse_count(dims[0], size_line);
    const std::size_t cols = parse_count(dims[1], size_line);
    if (symmetry != "general" && rows != cols) {
        throw ParseError("line " + std::to_string(size_line.number) + ": symmetric storage requires a square matrix",
                         size_line.number, size_line.offset);
    }

    // Positions (i, j) in file order.
    std::vector<std::pair<std::size_t, std::size_t>> positions;
    for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t first = symmetry == "general" ? 0 : (symmetry == "skew-symmetric" ? j + 1 : j);
        for (std::size_t i = first; i < rows; ++i) {
            positions.emplace_back(i, j);
        }
    }

    std::vector<Complex> entries(rows * cols);
    std::size_t found = 0;
    const Line* last_line = &size_line;
    for (++k; k < lines.size(); ++k) {
        const Line& line = lines[k];
        const auto tokens = split_ws(line.text);
        if (tokens.empty() || line.text.front() == '%') {
            continue;
        }
        last_line = &line;
        const std::size_t expected_tokens = is_complex ? 2 : 1;
        if (tokens.size() != expected_tokens) {
            throw ParseError("line " + std::to_string(line.number) + ": expected " + std::to_string(expected_tokens) +
                                 " value(s) per entry, found " + std::to_string(tokens.size()),
                             line.number, line.offset);
        }
        const Complex value{parse_double(tokens[0], line), is_complex ? parse_double(tokens[1], line) : 0.0};
        if (found < positions.size()) {
            const auto [i, j] = positions[found];
            entries[i * cols + j] = value;
            if (i != j) {
                if (symmetry == "symmetric") {
                    entries[j * cols + i] = value;
                } else if (symmetry == "skew-symmetric") {
                    entries[j * cols + i] = -value;
                } else if (symmetry == "hermitian") {
                    entries[j * cols + i] = std::conj(value);
                }
            } else if (symmetry == "hermitian" && value.imag() != 0.0) {
                throw ParseError("line " + std::to_string(line.number) + ": hermitian diagonal must be real",
                                 line.number, line.offset);
            }
        }
        ++found;
    }
    if (found != positions.size()) {
        throw ParseError("entry count mismatch: expected " + std::to_string(positions.size()) + " entries, found " +
                             std::to_string(found),
                         last_line->number, last_line->offset);
    }
    return {MatrixFormat::MatrixMarket, ComplexMatrix(rows, cols, std::move(entries)), std::move(metadata)};
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        throw ParseError(std::string("invalid JSON: ") + e.what(), line_of_offset(text, offset), offset);
    }
}

[[noreturn]] void schema_error(const std::string& why) { throw ParseError("JSON schema error: " + why, 0, 0); }

double json_number(const json& j, const std::string& where) {
    if (!j.is_number()) {
        schema_error(where + " must be a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        schema_error(where + " is not finite");
    }
    return v;
}

std::size_t json_count(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned() || doc[key].get<std::size_t>() == 0) {
        schema_error(std::string("'") + key + "' must be a positive integer");
    }
    return doc[key].get<std::size_t>();
}

Complex json_complex(const json& j, const std::string& where) {
    if (j.is_number()) {
        return {json_number(j, where), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        schema_error(where + " must be [re, im]");
    }
    return {json_number(j[0], where + "[0]"), json_number(j[1], where + "[1]")};
}

MatrixDocument parse_matrix_json(std::string_view text) {
    const json doc = parse_json_text(text);
    if (!doc.is_object()) {
        schema_error("top level must be an object");
    }
    const std::size_t rows = json_count(doc, "rows");
    const std::size_t cols = json_count(doc, "cols");
    if (!doc.contains("entries") || !doc["entries"].is_array()) {
        schema_error("'entries' must be an array of [re, im] pairs");
    }
    const json& raw = doc["entries"];
    if (raw.size() != rows * cols) {
        schema_error("entry count mismatch: expected " + std::to_string(rows * cols) + " entries, found " +
                     std::to_string(raw.size()));
    }
    std::vector<Complex> entries;
    entries.reserve(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        entries.push_back(json_complex(raw[k], "entries[" + std::to_string(k) + "]"));
    }
    std::map<std::string, std::string> metadata;
    if (doc.contains("metadata")) {
        if (!doc["metadata"].is_object()) {
            schema_error("'metadata' must be an object of strings");
        }
        for (const auto& [key, value] : doc["metadata"].items()) {
            if (!value.is_string()) {
                schema_error("metadata value for '" + key + "' must be a string");
            }
            metadata[key] = value.get<std::string>();
        }
    }
    return {MatrixFormat::Json, ComplexMatrix(rows, cols, std::move(entries)), std::move(metadata)};
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::optional<MatrixFormat> matrix_format_from_string(std::string_view name) noexcept {
    if (name == "mm" || name == "mtx" || name == "matrix-market") {
        return MatrixFormat::MatrixMarket;
    }
    if (name == "json") {
        return MatrixFormat::Json;
    }
    return std::nullopt;
}

MatrixDocument parse_matrix(std::string_view text, MatrixFormat format) {
    return format == MatrixFormat::Json ? parse_matrix_json(text) : parse_matrix_market(text);
}

MatrixDocument parse_matrix(std::istream& in, MatrixFormat format) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix(std::string_view(buffer.str()), format);
}

MatrixDocument read_matrix_file(const std::filesystem::path& path, std::optional<MatrixFormat> format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'", 0, 0);
    }
    if (!format) {
        format = lower(path.extension().string()) == ".json" ? MatrixFormat::Json : MatrixFormat::MatrixMarket;
    }
    return parse_matrix(in, *format);
}

std::string to_matrix_market(const MatrixDocument& doc) {
    std::string out = "%%MatrixMarket matrix array complex general\n";
    for (const auto& [key, value] : doc.metadata) {
        out += "% " + key + ": " + value + "\n";
    }
    const ComplexMatrix& m = doc.matrix;
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out += format_double(m(i, j).real()) + " " + format_double(m(i, j).imag()) + "\n";
        }
    }
    return out;
}

std::string to_json(const MatrixDocument& doc) {
    ordered_json entries = ordered_json::array();
    for (const auto& z : doc.matrix.entries()) {
        entries.push_back({z.real(), z.imag()});
    }
    ordered_json out{{"rows", doc.matrix.rows()}, {"cols", doc.matrix.cols()}, {"entries", std::move(entries)}};
    if (!doc.metadata.empty()) {
        out["metadata"] = doc.metadata;
    }
    return out.dump() + "\n";
}

std::string write_matrix(const MatrixDocument& doc) {
    return doc.format == MatrixFormat::Json ? to_json(doc) : to_matrix_market(doc);
}

SpectrumSpec parse_spectrum_spec(std::string_view text) {
    const json doc = parse_json_text(text);
    if (!doc.is_object()) {
        schema_error("spectrum spec must be an object");
    }
    SpectrumSpec spec;
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            schema_error("'seed' must be a non-negative integer");
        }
        spec.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("dim")) {
        spec.dim = json_count(doc, "dim");
    }
    if (!doc.contains("spectrum") || !doc["spectrum"].is_array()) {
        schema_error("'spectrum' must be an array");
    }
    for (std::size_t k = 0; k < doc["spectrum"].size(); ++k) {
        const json& e = doc["spectrum"][k];
        const std::string where = "spectrum[" + std::to_string(k) + "]";
        if (!e.is_object() || !e.contains("class") || !e["class"].is_string()) {
            schema_error(where + " needs a string 'class'");
        }
        const auto kind = spectrum_class_from_string(e["class"].get<std::string>());
        if (!kind) {
            schema_error(where + ": unknown class '" + e["class"].get<std::string>() + "'");
        }
        SpectrumEntry entry{*kind, Complex{}, 1};
        if (e.contains("omega")) {
            entry.omega = json_complex(e["omega"], where + ".omega");
        } else if (*kind != SpectrumClass::Zero) {
            schema_error(where + " needs 'omega'");
        }
        if (e.contains("multiplicity")) {
            if (!e["multiplicity"].is_number_unsigned()) {
                schema_error(where + ".multiplicity must be a positive integer");
            }
            entry.multiplicity = e["multiplicity"].get<std::size_t>();
        }
        spec.entries.push_back(entry);
    }
    spec.validate();
    return spec;
}

std::string to_json(const SpectrumSpec& spec) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : spec.entries) {
        entries.push_back({{"class", std::string(to_string(e.kind))},
                           {"omega", {e.omega.real(), e.omega.imag()}},
                           {"multiplicity", e.multiplicity}});
    }
    ordered_json out{{"seed", spec.seed}};
    if (spec.dim) {
        out["dim"] = *spec.dim;
    }
    out["spectrum"] = std::move(entries);
    return out.dump() + "\n";
}

}  // namespace pfaff
