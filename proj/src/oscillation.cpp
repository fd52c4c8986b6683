#include "relosc/oscillation.hpp"

#include <algorithm>
#include <numeric>

#include "relosc/error.hpp"

namespace relosc {

std::string_view to_string(CountMethod method) noexcept {
  return method == CountMethod::DirectSigns ? "direct-signs" : "pruefer-angles";
}

namespace {

template <Scalar T>
SignTest<T> sequence_signs(const SolutionSequence<T>& u, ZeroTolerance tol) {
  return SignTest<T>(u.values(), tol);
}

template <Scalar T>
bool node_at(const SolutionSequence<T>& u, int n, const SignTest<T>& signs, int& ambiguous) {
  const int here = signs.sign(u[n]);
  const int next = signs.sign(u[n + 1]);
  ambiguous += static_cast<int>(signs.in_band(u[n])) + static_cast<int>(signs.in_band(u[n + 1]));
  return here == 0 || here * next < 0;
}

}  // namespace

template <Scalar T>
bool is_node(const SolutionSequence<T>& u, int n, ZeroTolerance tol) {
  if (n < 0 || n > u.grid()) {
    throw Error(ErrorCode::IndexOutOfRange, "node index " + std::to_string(n) + " outside 0.." + std::to_string(u.grid()));
  }
  int ignored = 0;
  return node_at(u, n, sequence_signs(u, tol), ignored);
}

template <Scalar T>
CountReport count_nodes(const SolutionSequence<T>& u, int m, int n, ZeroTolerance tol) {
  if (m < 0 || n > u.grid() || m >= n) {
    throw Error(ErrorCode::IndexOutOfRange, "node range (" + std::to_string(m) + ", " + std::to_string(n) +
                                                ") invalid for N=" + std::to_string(u.grid()));
  }
  const auto signs = sequence_signs(u, tol);
  CountReport report;
  report.first_index = m;
  for (int k = m; k < n; ++k) {
    const bool node = node_at(u, k, signs, report.ambiguous_signs);
    const bool counted = node && (k > m || signs.sign(u[m]) != 0);
    report.indicators.push_back(counted ? 1 : 0);
  }
  report.count = std::accumulate(report.indicators.begin(), report.indicators.end(), 0);
  if (report.ambiguous_signs > 0) report.warnings.emplace_back("AmbiguousSign");
  return report;
}

template <Scalar T>
CountReport count_below(const JacobiMatrix<T>& H, const T& lambda, ZeroTolerance tol) {
  const auto s = solve_minus(H, lambda);
  auto report = count_nodes(s, 0, H.grid(), tol);
  if constexpr (!is_exact_v<T>) {
    if (sequence_signs(s, tol).sign(s[H.grid()]) == 0) report.warnings.emplace_back("NearEigenvalue");
  }
  return report;
}

template <Scalar T>
EigenvalueCheck is_eigenvalue(const JacobiMatrix<T>& H, const T& lambda, ZeroTolerance tol) {
  const auto s = solve_minus(H, lambda);
  const auto signs = sequence_signs(s, tol);
  const T& end = s[H.grid()];
  if constexpr (is_exact_v<T>) {
    return {end == 0, false};
  } else {
    return {signs.sign(end) == 0, signs.in_band(end)};
  }
}

namespace {

template <Scalar T>
int indicator_with(const WronskianSequence<T>& w, int n, const SignTest<T>& wsigns, const SignTest<T>& dsigns) {
  if (n < 0 || n >= w.grid()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "indicator index " + std::to_string(n) + " outside 0.." + std::to_string(w.grid() - 1));
  }
  const int here = wsigns.sign(w[n]);
  const int next = wsigns.sign(w[n + 1]);
  const int weight = dsigns.sign(w.b_diff(n + 1));
  const bool flip = here * next < 0;
  const bool leaves_zero = here == 0 && next != 0;
  const bool hits_zero = here != 0 && next == 0;

  if (weight == 0) {
    if (flip || leaves_zero || hits_zero) {
      throw Error(ErrorCode::InconsistentSigns,
                  "Wronskian changes sign at n=" + std::to_string(n) + " while b_diff(n+1) = 0");
    }
    return 0;
  }
  if (weight > 0) return (flip || leaves_zero) ? 1 : 0;
  return (flip || hits_zero) ? -1 : 0;
}

template <Scalar T>
SignTest<T> weight_signs(const WronskianSequence<T>& w, ZeroTolerance tol) {
  return SignTest<T>(w.b_diffs(), tol);
}

}  // namespace

template <Scalar T>
int weighted_node_indicator(const WronskianSequence<T>& w, int n, ZeroTolerance tol) {
  return indicator_with(w, n, w.sign_test(tol), weight_signs(w, tol));
}

template <Scalar T>
CountReport weighted_node_count(const WronskianSequence<T>& w, ZeroTolerance tol) {
  const auto wsigns = w.sign_test(tol);
  const auto dsigns = weight_signs(w, tol);
  CountReport report;
  for (int j = 0; j < w.grid(); ++j) report.indicators.push_back(indicator_with(w, j, wsigns, dsigns));
  report.boundary_correction = wsigns.sign(w[0]) == 0 ? -1 : 0;
  report.count = std::accumulate(report.indicators.begin(), report.indicators.end(), report.boundary_correction);
  if constexpr (!is_exact_v<T>) {
    for (int n = 0; n <= w.grid(); ++n) report.ambiguous_signs += static_cast<int>(wsigns.in_band(w[n]));
    for (int n = 1; n <= w.grid(); ++n) report.ambiguous_signs += static_cast<int>(dsigns.in_band(w.b_diff(n)));
    if (report.ambiguous_signs > 0) report.warnings.emplace_back("NearEigenvalue");
  }
  return report;
}

template <Scalar T>
RelativeCountReport relative_count(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& lambda0,
                                   const T& lambda1, ZeroTolerance tol) {
  if (!H0.shares_off_diagonal(H1)) {
    throw Error(ErrorCode::CoefficientMismatch, "relative count needs equal N and off-diagonals");
  }
  const auto weights = spectral_b_diff(H0, lambda0, H1, lambda1);

  RelativeCountReport report;
  report.minus_plus =
      weighted_node_count(wronskian_sequence(H0, solve_minus(H0, lambda0), solve_plus(H1, lambda1), weights), tol);
  report.plus_minus =
      weighted_node_count(wronskian_sequence(H0, solve_plus(H0, lambda0), solve_minus(H1, lambda1), weights), tol);
  if (report.minus_plus.count != report.plus_minus.count) {
    throw Error(ErrorCode::PairingDisagreement, "#(s0-, s1+) = " + std::to_string(report.minus_plus.count) +
                                                    " but #(s0+, s1-) = " + std::to_string(report.plus_minus.count));
  }
  report.count = report.minus_plus.count;
  for (const auto* part : {&report.minus_plus, &report.plus_minus}) {
    for (const auto& warning : part->warnings) {
      if (std::find(report.warnings.begin(), report.warnings.end(), warning) == report.warnings.end()) {
        report.warnings.push_back(warning);
      }
    }
  }
  return report;
}

#define RELOSC_INSTANTIATE(T)                                                                                  \
  template bool is_node(const SolutionSequence<T>&, int, ZeroTolerance);                                     \
  template CountReport count_nodes(const SolutionSequence<T>&, int, int, ZeroTolerance);                     \
  template CountReport count_below(const JacobiMatrix<T>&, const T&, ZeroTolerance);                         \
  template EigenvalueCheck is_eigenvalue(const JacobiMatrix<T>&, const T&, ZeroTolerance);                   \
  template int weighted_node_indicator(const WronskianSequence<T>&, int, ZeroTolerance);                     \
  template CountReport weighted_node_count(const WronskianSequence<T>&, ZeroTolerance);                      \
  template RelativeCountReport relative_count(const JacobiMatrix<T>&, const JacobiMatrix<T>&, const T&,      \
                                              const T&, ZeroTolerance);

RELOSC_INSTANTIATE(double)
RELOSC_INSTANTIATE(Rational)

#undef RELOSC_INSTANTIATE

}  // namespace relosc
