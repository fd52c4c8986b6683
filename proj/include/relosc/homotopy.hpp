#pragma once

#include <vector>

#include "relosc/jacobi.hpp"
#include "relosc/recurrence.hpp"
#include "relosc/scalar.hpp"
#include "relosc/spectrum_oracle.hpp"

namespace relosc {

/// b0 - b1 = b_plus - b_minus with b_plus, b_minus >= 0 and
/// b_plus(n) b_minus(n) = 0. Entry n-1 holds index n = 1..N-1.
template <Scalar T>
struct PerturbationSplit {
  std::vector<T> b_plus;
  std::vector<T> b_minus;
};

/// Throws CoefficientMismatch unless H0 and H1 share N and a.
template <Scalar T>
PerturbationSplit<T> split_perturbation(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1);

/// H0 - b_plus, the entrywise minimum of the two diagonals. It lies below
/// both H0 and H1, so each leg of the two-phase path is sign-definite.
template <Scalar T>
JacobiMatrix<T> lower_envelope(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1);

/// eps in [0, 1/2]: H0 + 2 eps (H_lo - H0); eps in [1/2, 1]:
/// H_lo + 2 (eps - 1/2) (H1 - H_lo), with H_lo = lower_envelope(H0, H1).
/// Throws EpsOutOfRange outside [0, 1].
template <Scalar T>
JacobiMatrix<T> two_phase_path(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps);

enum class PathKind { Linear, TwoPhase };

template <Scalar T>
JacobiMatrix<T> path_point(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps, PathKind kind);

/// Sorted oracle spectra along a path, one row per grid point.
struct BranchTable {
  std::vector<double> grid;
  std::vector<std::vector<double>> branches;
};

/// Grid must be increasing within [0, 1].
template <Scalar T>
BranchTable eigenvalue_branches(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1,
                                const std::vector<double>& grid, PathKind kind);

/// Uniform grid k/steps, k = 0..steps.
std::vector<double> uniform_grid(int steps);

/// W_n(s_eps, d/d eps s_eps) along the linear path, from the closed sums
///   plus:  -sum_{m=n+1}^{N} (b0(m) - b1(m)) s_{eps,+}(z,m)^2
///   minus:  sum_{m=1}^{n}   (b0(m) - b1(m)) s_{eps,-}(z,m)^2
template <Scalar T>
T wronskian_eps_derivative(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps, const T& z,
                           Side side, int n);

/// d/d eps theta_eps(n) = -W_n(s_eps, d/d eps s_eps) / (a(n) rho_eps(n)^2).
template <Scalar T>
T pruefer_eps_derivative(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps, const T& z,
                         Side side, int n);

/// One eigenvalue branch passing through lambda between two grid points.
struct Crossing {
  int branch = 0;
  /// Bracket [lo, hi] in eps containing the crossing.
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  /// +1 when the branch moves below lambda, -1 when it moves above.
  int direction = 0;
};

struct CrossingReport {
  std::vector<Crossing> crossings;
  /// Sum of directions: change of #{E < lambda} from H0 to H1.
  int signed_count = 0;
};

/// Signed crossings of the oracle eigenvalue branches through lambda along
/// the two-phase path, sampled with `steps_per_phase` intervals per phase
/// and each crossing bisected down to `bracket`.
template <Scalar T>
CrossingReport spectral_flow_crossings(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, double lambda,
                                       int steps_per_phase = 50, double bracket = 1e-10);

}  // namespace relosc
