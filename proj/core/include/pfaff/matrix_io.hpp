#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "pfaff/generators.hpp"
#include "pfaff/matrix.hpp"

namespace pfaff {

enum class MatrixFormat { MatrixMarket, Json };

std::optional<MatrixFormat> matrix_format_from_string(std::string_view name) noexcept;

struct MatrixDocument {
    MatrixFormat format;
    ComplexMatrix matrix;
    std::map<std::string, std::string> metadata;
};

/// Matrix Market `matrix array {complex|real|integer} {general|symmetric|skew-symmetric|hermitian}`.
/// Values are column-major; the symmetric variants list only the lower
/// triangle (without the diagonal for skew-symmetric). Comment lines of the
/// form `% key: value` become metadata.
///
/// JSON: {"rows": R, "cols": C, "entries": [[re, im], ...], "metadata": {...}}
/// with entries row-major and metadata optional.
///
/// Every failure is a ParseError carrying the 1-based line and byte offset.
MatrixDocument parse_matrix(std::istream& in, MatrixFormat format);
MatrixDocument parse_matrix(std::string_view text, MatrixFormat format);

/// Format from the extension when not given: .json is JSON, anything else Matrix Market.
MatrixDocument read_matrix_file(const std::filesystem::path& path, std::optional<MatrixFormat> format = {});

/// `array complex general` with 17 significant digits per value.
std::string to_matrix_market(const MatrixDocument& doc);
/// Shortest round-trip representation of every double.
std::string to_json(const MatrixDocument& doc);
std::string write_matrix(const MatrixDocument& doc);

/// {"seed": S, "dim": D, "spectrum": [{"class": "complex_pair", "omega": [re, im], "multiplicity": k}, ...]}
/// "dim" and "seed" are optional, "omega" may be a bare number for real
/// classes and is ignored for "zero". The result is validated.
SpectrumSpec parse_spectrum_spec(std::string_view text);
std::string to_json(const SpectrumSpec& spec);

}  // namespace pfaff
