#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>

namespace relosc {

/// Arbitrary-precision rational; every comparison and sign test is exact.
using Rational = mpq_class;

enum class NumericMode { Exact, Float };

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <Scalar T>
inline constexpr NumericMode mode_of_v = is_exact_v<T> ? NumericMode::Exact : NumericMode::Float;

std::string_view to_string(NumericMode mode) noexcept;

/// Float zero test: x counts as zero iff |x| <= abs + rel * scale.
struct ZeroTolerance {
  double abs = 1e-300;
  double rel = 1e-12;

  [[nodiscard]] double threshold(double scale) const noexcept { return abs + rel * scale; }
};

inline double to_double(double x) noexcept { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

/// Exact conversion; every finite binary64 value is a dyadic rational.
inline Rational to_rational(double x) { return Rational(x); }
inline const Rational& to_rational(const Rational& x) { return x; }

template <Scalar T>
T scalar_cast(const Rational& x) {
  if constexpr (is_exact_v<T>) {
    return x;
  } else {
    return x.get_d();
  }
}

template <Scalar T>
T scalar_abs(const T& x) {
  if constexpr (is_exact_v<T>) {
    return Rational(abs(x));
  } else {
    return std::abs(x);
  }
}

/// Largest absolute value in a sequence, as a double (0 for empty input).
template <Scalar T>
double max_abs(std::span<const T> values) {
  double m = 0.0;
  for (const T& v : values) m = std::max(m, std::abs(to_double(v)));
  return m;
}

/// Three-way sign classification under the module tolerance policy.
///
/// Exact scalars are classified without error. Floats within
/// `tol.threshold(scale)` of zero are reported as zero; such values are
/// "in band" unless they are exactly 0.0, which is unambiguous.
template <Scalar T>
class SignTest {
 public:
  SignTest() = default;
  explicit SignTest(double scale, ZeroTolerance tol = {}) : scale_(scale), tol_(tol) {}
  explicit SignTest(std::span<const T> values, ZeroTolerance tol = {})
      : scale_(max_abs(values)), tol_(tol) {}

  [[nodiscard]] int sign(const T& x) const {
    if constexpr (is_exact_v<T>) {
      return sgn(x);
    } else {
      if (std::abs(x) <= tol_.threshold(scale_)) return 0;
      return x > 0 ? 1 : -1;
    }
  }

  [[nodiscard]] bool in_band(const T& x) const {
    if constexpr (is_exact_v<T>) {
      return false;
    } else {
      return x != 0.0 && std::abs(x) <= tol_.threshold(scale_);
    }
  }

  [[nodiscard]] double scale() const noexcept { return scale_; }
  [[nodiscard]] const ZeroTolerance& tolerance() const noexcept { return tol_; }

 private:
  double scale_ = 0.0;
  ZeroTolerance tol_{};
};

/// Parses "p" or "p/q" (optional leading sign, q != 0) into a canonical rational.
std::optional<Rational> parse_rational(std::string_view text);

/// Parses a decimal literal such as "-1.25e-3" into its exact rational value.
std::optional<Rational> parse_decimal_exact(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& x);

/// Shortest decimal that round-trips to the same binary64 value.
std::string format_double(double x);

inline std::string format_scalar(const Rational& x) { return format_rational(x); }
inline std::string format_scalar(double x) { return format_double(x); }

}  // namespace relosc
