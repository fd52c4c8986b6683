#pragma once

#include <string>
#include <vector>

#include "relosc/jacobi.hpp"

namespace relosc {

/// Eigenvalues of a Jacobi matrix from dense plane-rotation diagonalization.
///
/// This is the ground truth for the counting theorems, so it deliberately
/// shares nothing with them: no node counts, no Sturm sequences, no inertia
/// of shifted factorizations.
struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  std::string method = "cyclic-jacobi";
  /// Off-diagonal Frobenius mass left when the sweep loop stopped.
  double max_offdiag_residual = 0.0;
  int sweeps = 0;
};

struct OracleOptions {
  /// Stop once the off-diagonal mass is <= rel_tolerance * ||H||_F.
  double rel_tolerance = 1e-14;
  int max_sweeps = 100;
};

/// Throws NoConvergence if the tolerance is not met within max_sweeps.
SpectrumReport eigenvalues_dense(const JacobiMatrix<double>& H, OracleOptions opts = {});
SpectrumReport eigenvalues_dense(const JacobiMatrix<Rational>& H, OracleOptions opts = {});

/// Eigenvalues < lambda (strict) or <= lambda. Throws MarginViolation when
/// some eigenvalue lies within `margin` of lambda.
int count_below_oracle(const SpectrumReport& s, double lambda, bool strict, double margin);

/// Non-strict count at a lambda known (exactly) to be an eigenvalue: requires
/// exactly one computed eigenvalue within `margin` of lambda, which is
/// counted, and throws MarginViolation otherwise.
int count_at_eigenvalue_oracle(const SpectrumReport& s, double lambda, double margin);

/// -2 cos(k pi / N), k = 1..N-1, ascending: the spectrum of b = 0, a = -1.
std::vector<double> free_matrix_spectrum(int N);

/// ||H||_F over the (N-1)x(N-1) matrix (interior coefficients only).
double frobenius_norm(const JacobiMatrix<double>& H);

}  // namespace relosc
