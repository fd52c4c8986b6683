#pragma once

#include <span>
#include <vector>

#include "relosc/scalar.hpp"

namespace relosc {

/// Finite Jacobi matrix of dimension N-1 in the grid indexing of the
/// three-term recurrence
///
///   a(n) u(n+1) + b(n) u(n) + a(n-1) u(n-1) = z u(n),   n = 1..N.
///
/// Only the interior coefficients are stored: a(1..N-2) (all < 0) and
/// b(1..N-1). The extension a(0) = a(N-1) = a(N) = -1 and b(N) = 0 is
/// supplied by `a(n)` / `b(n)` and never materialized.
template <Scalar T>
class JacobiMatrix {
 public:
  using scalar_type = T;

  /// Throws DimensionMismatch unless N >= 2, |a| = N-2 and |b| = N-1;
  /// throws NonNegativeOffDiagonal if some a(j) >= 0.
  JacobiMatrix(int N, std::vector<T> a, std::vector<T> b);

  /// The constant matrix with b = 0 and a = -1.
  static JacobiMatrix free(int N);

  [[nodiscard]] int grid() const noexcept { return grid_; }
  [[nodiscard]] int dimension() const noexcept { return grid_ - 1; }

  /// Extended off-diagonal, 0 <= n <= N.
  [[nodiscard]] T a(int n) const;
  /// Extended diagonal, 1 <= n <= N.
  [[nodiscard]] T b(int n) const;

  [[nodiscard]] std::span<const T> off_diagonal() const noexcept { return a_; }
  [[nodiscard]] std::span<const T> diagonal() const noexcept { return b_; }

  /// Matrix-vector product on C^{N-1}; v(i) is stored at v[i-1].
  [[nodiscard]] std::vector<T> apply(std::span<const T> v) const;

  /// True iff N and every interior off-diagonal coincide.
  [[nodiscard]] bool shares_off_diagonal(const JacobiMatrix& other) const;

  friend bool operator==(const JacobiMatrix&, const JacobiMatrix&) = default;

 private:
  int grid_;
  std::vector<T> a_;
  std::vector<T> b_;
};

/// H_eps = (1 - eps) H0 + eps H1 on the diagonal, shared off-diagonal.
/// Throws CoefficientMismatch if N or a differ.
template <Scalar T>
JacobiMatrix<T> interpolate(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps);

template <Scalar T>
T inner(std::span<const T> v, std::span<const T> w);

JacobiMatrix<double> to_float(const JacobiMatrix<Rational>& H);
JacobiMatrix<Rational> to_exact(const JacobiMatrix<double>& H);

extern template class JacobiMatrix<double>;
extern template class JacobiMatrix<Rational>;

}  // namespace relosc
