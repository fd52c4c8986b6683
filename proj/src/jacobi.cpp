#include "relosc/jacobi.hpp"

#include <string>

#include "relosc/error.hpp"

namespace relosc {

template <Scalar T>
JacobiMatrix<T>::JacobiMatrix(int N, std::vector<T> a, std::vector<T> b)
    : grid_(N), a_(std::move(a)), b_(std::move(b)) {
  if (N < 2) throw Error(ErrorCode::DimensionMismatch, "N must be at least 2, got " + std::to_string(N));
  if (a_.size() != static_cast<std::size_t>(N - 2)) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(N - 2) + " off-diagonal entries, got " +
                                                  std::to_string(a_.size()));
  }
  if (b_.size() != static_cast<std::size_t>(N - 1)) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(N - 1) + " diagonal entries, got " + std::to_string(b_.size()));
  }
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if (!(a_[j] < 0)) {
      throw Error(ErrorCode::NonNegativeOffDiagonal,
                  "a(" + std::to_string(j + 1) + ") = " + format_scalar(a_[j]) + " is not negative");
    }
  }
}

template <Scalar T>
JacobiMatrix<T> JacobiMatrix<T>::free(int N) {
  const auto interior = static_cast<std::size_t>(N > 2 ? N - 2 : 0);
  const auto dim = static_cast<std::size_t>(N > 1 ? N - 1 : 0);
  return JacobiMatrix(N, std::vector<T>(interior, T(-1)), std::vector<T>(dim, T(0)));
}

template <Scalar T>
T JacobiMatrix<T>::a(int n) const {
  if (n < 0 || n > grid_) {
    throw Error(ErrorCode::IndexOutOfRange, "a(" + std::to_string(n) + ") outside 0.." + std::to_string(grid_));
  }
  if (n == 0 || n >= grid_ - 1) return T(-1);
  return a_[static_cast<std::size_t>(n - 1)];
}

template <Scalar T>
T JacobiMatrix<T>::b(int n) const {
  if (n < 1 || n > grid_) {
    throw Error(ErrorCode::IndexOutOfRange, "b(" + std::to_string(n) + ") outside 1.." + std::to_string(grid_));
  }
  if (n == grid_) return T(0);
  return b_[static_cast<std::size_t>(n - 1)];
}

template <Scalar T>
std::vector<T> JacobiMatrix<T>::apply(std::span<const T> v) const {
  const auto dim = b_.size();
  if (v.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " for dimension " + std::to_string(dim));
  }
  std::vector<T> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    T acc = b_[i] * v[i];
    if (i > 0) acc += a_[i - 1] * v[i - 1];
    if (i + 1 < dim) acc += a_[i] * v[i + 1];
    out[i] = acc;
  }
  return out;
}

template <Scalar T>
bool JacobiMatrix<T>::shares_off_diagonal(const JacobiMatrix& other) const {
  return grid_ == other.grid_ && a_ == other.a_;
}

template <Scalar T>
JacobiMatrix<T> interpolate(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps) {
  if (!H0.shares_off_diagonal(H1)) {
    throw Error(ErrorCode::CoefficientMismatch, "interpolation needs equal N and off-diagonals");
  }
  const auto b0 = H0.diagonal();
  const auto b1 = H1.diagonal();
  std::vector<T> b(b0.size());
  const T keep = T(1) - eps;
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = keep * b0[i] + eps * b1[i];
  const auto a = H0.off_diagonal();
  return JacobiMatrix<T>(H0.grid(), std::vector<T>(a.begin(), a.end()), std::move(b));
}

template <Scalar T>
T inner(std::span<const T> v, std::span<const T> w) {
  if (v.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "inner product of unequal lengths");
  T acc(0);
  for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * w[i];
  return acc;
}

JacobiMatrix<double> to_float(const JacobiMatrix<Rational>& H) {
  std::vector<double> a, b;
  for (const auto& x : H.off_diagonal()) a.push_back(x.get_d());
  for (const auto& x : H.diagonal()) b.push_back(x.get_d());
  return {H.grid(), std::move(a), std::move(b)};
}

JacobiMatrix<Rational> to_exact(const JacobiMatrix<double>& H) {
  std::vector<Rational> a, b;
  for (double x : H.off_diagonal()) a.push_back(to_rational(x));
  for (double x : H.diagonal()) b.push_back(to_rational(x));
  return {H.grid(), std::move(a), std::move(b)};
}

template class JacobiMatrix<double>;
template class JacobiMatrix<Rational>;
template JacobiMatrix<double> interpolate(const JacobiMatrix<double>&, const JacobiMatrix<double>&, const double&);
template JacobiMatrix<Rational> interpolate(const JacobiMatrix<Rational>&, const JacobiMatrix<Rational>&,
                                            const Rational&);
template double inner(std::span<const double>, std::span<const double>);
template Rational inner(std::span<const Rational>, std::span<const Rational>);

}  // namespace relosc
