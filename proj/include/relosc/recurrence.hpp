#pragma once

#include <span>
#include <vector>

#include "relosc/jacobi.hpp"
#include "relosc/scalar.hpp"

namespace relosc {

enum class Side { Minus, Plus, Custom };

std::string_view to_string(Side side) noexcept;

/// Two consecutive entries brought to a common power-of-two scale:
/// true values are (first, second) * 2^exponent.
template <Scalar T>
struct ScaledPair {
  T first;
  T second;
  int exponent = 0;
};

/// Values u(0..N+1) of a solution of the three-term recurrence at spectral
/// parameter z. No two consecutive entries vanish.
///
/// Float sequences produced with renormalization carry a per-index
/// power-of-two exponent: u(n) = value(n) * 2^exponent(n). Without
/// renormalization every exponent is zero.
template <Scalar T>
class SolutionSequence {
 public:
  /// Throws DimensionMismatch unless |values| = N+2 (and |exponents| is 0 or
  /// N+2); throws DegenerateSolution on two consecutive zeros.
  SolutionSequence(int N, T z, Side side, std::vector<T> values, std::vector<int> exponents = {});

  [[nodiscard]] int grid() const noexcept { return grid_; }
  [[nodiscard]] const T& z() const noexcept { return z_; }
  [[nodiscard]] Side side() const noexcept { return side_; }

  /// Stored value at 0 <= n <= N+1; throws IndexOutOfRange otherwise.
  [[nodiscard]] const T& operator[](int n) const;
  [[nodiscard]] int exponent(int n) const;
  [[nodiscard]] bool renormalized() const noexcept { return !exponents_.empty(); }
  [[nodiscard]] std::span<const T> values() const noexcept { return values_; }

  /// (u(n), u(n+1)) at a common scale, 0 <= n <= N.
  [[nodiscard]] ScaledPair<T> pair(int n) const;

  /// u(k) expressed at scale 2^exponent, i.e. u(k) * 2^-exponent.
  [[nodiscard]] T scaled(int k, int exponent) const;

 private:
  int grid_;
  T z_;
  Side side_;
  std::vector<T> values_;
  std::vector<int> exponents_;
};

struct RecurrenceOptions {
  /// Float only: rescale the running pair by an exact power of two once its
  /// magnitude exceeds 2^512. Ignored for exact scalars.
  bool renormalize = false;
};

/// s_-(z): u(0) = 0, u(1) = 1, forward recurrence for n = 1..N.
template <Scalar T>
SolutionSequence<T> solve_minus(const JacobiMatrix<T>& H, const T& z, RecurrenceOptions opts = {});

/// s_+(z): u(N) = 0, u(N+1) = 1, backward recurrence for n = N..1.
template <Scalar T>
SolutionSequence<T> solve_plus(const JacobiMatrix<T>& H, const T& z, RecurrenceOptions opts = {});

/// Forward solution with arbitrary initial values u(0), u(1) (not both zero).
template <Scalar T>
SolutionSequence<T> solve_initial(const JacobiMatrix<T>& H, const T& z, const T& u0, const T& u1,
                                  RecurrenceOptions opts = {});

/// Largest |a(n)u(n+1) + b(n)u(n) + a(n-1)u(n-1) - z u(n)| over n = 1..N,
/// each term measured at the scale of u(n).
template <Scalar T>
T recurrence_residual(const JacobiMatrix<T>& H, const SolutionSequence<T>& u);

/// W_n(u0,u1) for n = 0..N together with the diagonal weights used by the
/// weighted node count.
///
/// `b_diff(n)` (n = 1..N) is the difference of the spectrally shifted
/// diagonals, (b0(n) - z0) - (b1(n) - z1); with z0 = z1 this is b0(n) - b1(n).
/// With that choice W_{n+1} - W_n = b_diff(n+1) u0(n+1) u1(n+1) holds for
/// every pair of solutions.
template <Scalar T>
class WronskianSequence {
 public:
  WronskianSequence(std::vector<T> values, std::vector<T> b_diff, std::vector<int> exponents = {});

  [[nodiscard]] int grid() const noexcept { return static_cast<int>(values_.size()) - 1; }
  /// W_n for 0 <= n <= N.
  [[nodiscard]] const T& operator[](int n) const;
  /// Power-of-two exponent of W_n (non-zero only for renormalized inputs).
  [[nodiscard]] int exponent(int n) const;
  /// b_diff(n) for 1 <= n <= N.
  [[nodiscard]] const T& b_diff(int n) const;

  [[nodiscard]] std::span<const T> values() const noexcept { return values_; }
  [[nodiscard]] std::span<const T> b_diffs() const noexcept { return b_diff_; }
  [[nodiscard]] bool renormalized() const noexcept { return !exponents_.empty(); }

  /// Sign classifier for the entries: exact, or the float policy with scale
  /// max |W_n| (exponents aligned).
  [[nodiscard]] SignTest<T> sign_test(ZeroTolerance tol = {}) const;

 private:
  std::vector<T> values_;
  std::vector<T> b_diff_;
  std::vector<int> exponents_;
};

/// (b0(n) - z0) - (b1(n) - z1) for n = 1..N, extended coefficients.
/// Throws CoefficientMismatch unless H0 and H1 share N and a.
template <Scalar T>
std::vector<T> spectral_b_diff(const JacobiMatrix<T>& H0, const T& z0, const JacobiMatrix<T>& H1, const T& z1);

/// W_n = a(n)(u0(n)u1(n+1) - u0(n+1)u1(n)) with the extended a of `H`.
/// Throws LengthMismatch if grids or |b_diff| disagree.
template <Scalar T>
WronskianSequence<T> wronskian_sequence(const JacobiMatrix<T>& H, const SolutionSequence<T>& u0,
                                        const SolutionSequence<T>& u1, std::vector<T> b_diff);

/// Wronskian of u0 (a solution for H0) and u1 (for H1); weights from
/// spectral_b_diff with z0 = u0.z(), z1 = u1.z().
template <Scalar T>
WronskianSequence<T> wronskian_sequence(const JacobiMatrix<T>& H0, const SolutionSequence<T>& u0,
                                        const JacobiMatrix<T>& H1, const SolutionSequence<T>& u1);

/// max_n |W_{n+1} - W_n - b_diff(n+1) u0(n+1) u1(n+1)|; zero in exact mode.
/// For renormalized inputs each step is measured at the scale of W_n.
template <Scalar T>
T check_wronskian_step(const WronskianSequence<T>& w, const SolutionSequence<T>& u0,
                       const SolutionSequence<T>& u1);

SolutionSequence<double> to_float(const SolutionSequence<Rational>& u);

extern template class SolutionSequence<double>;
extern template class SolutionSequence<Rational>;
extern template class WronskianSequence<double>;
extern template class WronskianSequence<Rational>;

}  // namespace relosc
