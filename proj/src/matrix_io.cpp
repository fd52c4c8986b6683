#include "relosc/matrix_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "relosc/error.hpp"

namespace relosc {

namespace {

std::vector<std::string> read_entries(const nlohmann::json& doc, const char* field, std::string_view origin,
                                      bool& has_rational) {
  if (!doc.contains(field)) {
    throw Error(ErrorCode::ParseError, std::string(origin) + ": missing field '" + field + "'");
  }
  const auto& arr = doc.at(field);
  if (!arr.is_array()) {
    throw Error(ErrorCode::ParseError, std::string(origin) + ": field '" + field + "' must be an array");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& item = arr[i];
    const std::string where = std::string(origin) + ": " + field + "[" + std::to_string(i) + "]";
    if (item.is_number()) {
      out.push_back(item.dump());
    } else if (item.is_string()) {
      const auto s = item.get<std::string>();
      if (!parse_rational(s)) {
        throw Error(ErrorCode::ParseError, where + ": \"" + s + "\" is not of the form p or p/q");
      }
      has_rational = true;
      out.push_back(s);
    } else {
      throw Error(ErrorCode::ParseError, where + ": expected a number or a rational string");
    }
  }
  return out;
}

}  // namespace

MatrixText parse_matrix_text(std::string_view json_text, std::string_view origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string(origin) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, std::string(origin) + ": top level must be an object");
  if (!doc.contains("N") || !doc.at("N").is_number_integer()) {
    throw Error(ErrorCode::ParseError, std::string(origin) + ": field 'N' must be an integer");
  }
  MatrixText text;
  text.N = doc.at("N").get<int>();
  text.a = read_entries(doc, "a", origin, text.has_rational_strings);
  text.b = read_entries(doc, "b", origin, text.has_rational_strings);
  return text;
}

MatrixText read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str(), path.string());
}

ModeRequest mode_request_from_env() {
  const char* raw = std::getenv("RELOSC_MODE");
  if (raw == nullptr) return ModeRequest::Auto;
  const std::string_view v(raw);
  if (v.empty() || v == "auto") return ModeRequest::Auto;
  if (v == "exact") return ModeRequest::Exact;
  if (v == "float") return ModeRequest::Float;
  throw Error(ErrorCode::ParseError, "RELOSC_MODE must be auto, exact or float, got '" + std::string(v) + "'");
}

NumericMode resolve_mode(const std::vector<MatrixText>& inputs, ModeRequest request) {
  if (request == ModeRequest::Exact) return NumericMode::Exact;
  if (request == ModeRequest::Float) return NumericMode::Float;
  for (const auto& t : inputs)
    if (t.has_rational_strings) return NumericMode::Exact;
  return NumericMode::Float;
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  if (auto r = parse_rational(text)) return *r;
  if (auto r = parse_decimal_exact(text)) return *r;
  throw Error(ErrorCode::ParseError, "'" + std::string(text) + "' is not a number");
}

template <>
double parse_scalar<double>(std::string_view text) {
  if (auto r = parse_rational(text)) {
    const mpz_class& p = r->get_num();
    const mpz_class& q = r->get_den();
    // Both operands exact in binary64, so the quotient is correctly rounded.
    if (mpz_sizeinbase(p.get_mpz_t(), 2) <= 53 && mpz_sizeinbase(q.get_mpz_t(), 2) <= 53) {
      return p.get_d() / q.get_d();
    }
    return r->get_d();
  }
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !parse_decimal_exact(text)) {
    throw Error(ErrorCode::ParseError, "'" + s + "' is not a number");
  }
  return v;
}

template <Scalar T>
JacobiMatrix<T> build_matrix(const MatrixText& text) {
  std::vector<T> a, b;
  for (const auto& s : text.a) a.push_back(parse_scalar<T>(s));
  for (const auto& s : text.b) b.push_back(parse_scalar<T>(s));
  return JacobiMatrix<T>(text.N, std::move(a), std::move(b));
}

template <Scalar T>
nlohmann::json matrix_to_json(const JacobiMatrix<T>& H) {
  nlohmann::json a = nlohmann::json::array();
  nlohmann::json b = nlohmann::json::array();
  for (const auto& x : H.off_diagonal()) a.push_back(scalar_to_json(x));
  for (const auto& x : H.diagonal()) b.push_back(scalar_to_json(x));
  return {{"N", H.grid()}, {"a", std::move(a)}, {"b", std::move(b)}};
}

template JacobiMatrix<double> build_matrix(const MatrixText&);
template JacobiMatrix<Rational> build_matrix(const MatrixText&);
template nlohmann::json matrix_to_json(const JacobiMatrix<double>&);
template nlohmann::json matrix_to_json(const JacobiMatrix<Rational>&);

}  // namespace relosc
