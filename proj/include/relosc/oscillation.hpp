#pragma once

#include <string>
#include <vector>

#include "relosc/jacobi.hpp"
#include "relosc/recurrence.hpp"
#include "relosc/scalar.hpp"

namespace relosc {

enum class CountMethod { DirectSigns, PrueferAngles };

std::string_view to_string(CountMethod method) noexcept;

/// Integer count with the per-index data it was assembled from:
/// count == sum(indicators) + boundary_correction.
struct CountReport {
  int count = 0;
  CountMethod method = CountMethod::DirectSigns;
  /// First index the indicator list refers to.
  int first_index = 0;
  std::vector<int> indicators;
  int boundary_correction = 0;
  /// Float mode: number of sign decisions that fell inside the tolerance band.
  int ambiguous_signs = 0;
  std::vector<std::string> warnings;
};

/// n is a node of u iff u(n) = 0 or u(n) u(n+1) < 0, for 0 <= n <= N.
template <Scalar T>
bool is_node(const SolutionSequence<T>& u, int n, ZeroTolerance tol = {});

/// Nodes n0 of u lying between m and n: m < n0 < n, or n0 = m with u(m) != 0.
/// Requires 0 <= m < n <= N.
template <Scalar T>
CountReport count_nodes(const SolutionSequence<T>& u, int m, int n, ZeroTolerance tol = {});

/// Number of eigenvalues of H strictly below lambda, as the node count of
/// s_-(lambda) between 0 and N. Float mode attaches a NearEigenvalue warning
/// when s_-(lambda, N) is classified as zero.
template <Scalar T>
CountReport count_below(const JacobiMatrix<T>& H, const T& lambda, ZeroTolerance tol = {});

struct EigenvalueCheck {
  bool value = false;
  /// Float mode: |s_-(lambda, N)| fell inside the tolerance band.
  bool unreliable = false;

  explicit operator bool() const noexcept { return value; }
};

/// lambda is an eigenvalue iff s_-(lambda, N) = 0.
template <Scalar T>
EigenvalueCheck is_eigenvalue(const JacobiMatrix<T>& H, const T& lambda, ZeroTolerance tol = {});

/// Weighted node indicator #_n(u0,u1) in {-1, 0, +1}, 0 <= n <= N-1:
///
///   +1  if b_diff(n+1) > 0 and (W_n W_{n+1} < 0, or W_n = 0 and W_{n+1} != 0)
///   -1  if b_diff(n+1) < 0 and (W_n W_{n+1} < 0, or W_n != 0 and W_{n+1} = 0)
///    0  otherwise.
///
/// The zero clauses are deliberately asymmetric between the two branches.
/// Throws InconsistentSigns when the Wronskian changes sign (or hits zero on
/// one side) across a step with b_diff(n+1) = 0, which cannot happen for
/// genuine solutions.
template <Scalar T>
int weighted_node_indicator(const WronskianSequence<T>& w, int n, ZeroTolerance tol = {});

/// #(u0,u1) = sum_{j=0}^{N-1} #_j(u0,u1) - [W_0 = 0].
template <Scalar T>
CountReport weighted_node_count(const WronskianSequence<T>& w, ZeroTolerance tol = {});

struct RelativeCountReport {
  int count = 0;
  /// #(s_{0,-}(lambda0), s_{1,+}(lambda1))
  CountReport minus_plus;
  /// #(s_{0,+}(lambda0), s_{1,-}(lambda1))
  CountReport plus_minus;
  std::vector<std::string> warnings;
};

/// #{E in sigma(H1) : E < lambda1} - #{E in sigma(H0) : E <= lambda0}, from
/// the weighted node counts of both solution pairings. Throws
/// CoefficientMismatch if the off-diagonals differ and PairingDisagreement if
/// the two pairings disagree.
template <Scalar T>
RelativeCountReport relative_count(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& lambda0,
                                   const T& lambda1, ZeroTolerance tol = {});

}  // namespace relosc
