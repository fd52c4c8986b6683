#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "relosc/jacobi.hpp"
#include "relosc/scalar.hpp"

namespace relosc {

/// Matrix file contents before a numeric mode is chosen:
///   {"N": 5, "a": [-1, "-3/2", -1], "b": [0, 0, "1/7", 0]}
/// Entries are JSON numbers or rational strings "p" / "p/q".
struct MatrixText {
  int N = 0;
  std::vector<std::string> a;
  std::vector<std::string> b;
  bool has_rational_strings = false;
};

enum class ModeRequest { Auto, Exact, Float };

/// Parses the JSON text; throws ParseError naming the offending field.
MatrixText parse_matrix_text(std::string_view json_text, std::string_view origin = "<input>");
/// Reads and parses a matrix file; throws ParseError on I/O or syntax errors.
MatrixText read_matrix_file(const std::filesystem::path& path);

/// RELOSC_MODE in {auto, exact, float}; unset means auto. Throws ParseError
/// for other values.
ModeRequest mode_request_from_env();

/// Exact if requested, or if auto and any input carries a rational string.
NumericMode resolve_mode(const std::vector<MatrixText>& inputs, ModeRequest request);

/// Scalar from entry text: rational grammar or decimal literal. Exact mode
/// keeps the exact decimal value; float mode rounds to nearest.
template <Scalar T>
T parse_scalar(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);
template <>
double parse_scalar<double>(std::string_view text);

/// Builds and validates the matrix (DimensionMismatch, NonNegativeOffDiagonal).
template <Scalar T>
JacobiMatrix<T> build_matrix(const MatrixText& text);

/// Matrix file object; exact entries are written as rational strings,
/// float entries as numbers.
template <Scalar T>
nlohmann::json matrix_to_json(const JacobiMatrix<T>& H);

template <Scalar T>
nlohmann::json scalar_to_json(const T& x) {
  if constexpr (is_exact_v<T>) {
    return format_rational(x);
  } else {
    return x;
  }
}

}  // namespace relosc
