#include "relosc/recurrence.hpp"

#include <cmath>
#include <string>

#include "relosc/error.hpp"

namespace relosc {

std::string_view to_string(Side side) noexcept {
  switch (side) {
    case Side::Minus: return "minus";
    case Side::Plus: return "plus";
    case Side::Custom: return "custom";
  }
  return "custom";
}

namespace {

constexpr int kRenormalizeLog2 = 512;

template <Scalar T>
T shift(const T& x, int log2) {
  if constexpr (is_exact_v<T>) {
    return x;
  } else {
    return log2 == 0 ? x : std::ldexp(x, log2);
  }
}

// Rescales entries i and j (the running pair) by a power of two when their
// magnitude exceeds 2^512. Returns the new running exponent.
int maybe_renormalize(std::vector<double>& v, std::vector<int>& ex, int i, int j, int e) {
  const double m = std::max(std::abs(v[i]), std::abs(v[j]));
  if (!(m > std::ldexp(1.0, kRenormalizeLog2))) return e;
  int k = 0;
  std::frexp(m, &k);
  v[i] = std::ldexp(v[i], -k);
  v[j] = std::ldexp(v[j], -k);
  e += k;
  ex[i] = ex[j] = e;
  return e;
}

template <Scalar T>
SolutionSequence<T> run_forward(const JacobiMatrix<T>& H, const T& z, const T& first, const T& second, Side side,
                                RecurrenceOptions opts) {
  const int N = H.grid();
  std::vector<T> v(static_cast<std::size_t>(N + 2));
  std::vector<int> ex;
  v[0] = first;
  v[1] = second;
  [[maybe_unused]] int e = 0;
  const bool renorm = !is_exact_v<T> && opts.renormalize;
  if (renorm) ex.assign(v.size(), 0);
  for (int n = 1; n <= N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    v[k + 1] = ((z - H.b(n)) * v[k] - H.a(n - 1) * v[k - 1]) / H.a(n);
    if constexpr (!is_exact_v<T>) {
      if (renorm) {
        ex[k + 1] = e;
        e = maybe_renormalize(v, ex, n, n + 1, e);
      }
    }
  }
  return SolutionSequence<T>(N, z, side, std::move(v), std::move(ex));
}

}  // namespace

template <Scalar T>
SolutionSequence<T>::SolutionSequence(int N, T z, Side side, std::vector<T> values, std::vector<int> exponents)
    : grid_(N), z_(std::move(z)), side_(side), values_(std::move(values)), exponents_(std::move(exponents)) {
  const auto expected = static_cast<std::size_t>(N + 2);
  if (N < 2 || values_.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch,
                "solution on grid N=" + std::to_string(N) + " needs " + std::to_string(expected) + " values");
  }
  if (!exponents_.empty() && exponents_.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "exponent log length does not match values");
  }
  for (std::size_t n = 0; n + 1 < values_.size(); ++n) {
    if (values_[n] == 0 && values_[n + 1] == 0) {
      throw Error(ErrorCode::DegenerateSolution, "u(" + std::to_string(n) + ") = u(" + std::to_string(n + 1) + ") = 0");
    }
  }
}

template <Scalar T>
const T& SolutionSequence<T>::operator[](int n) const {
  if (n < 0 || n > grid_ + 1) {
    throw Error(ErrorCode::IndexOutOfRange, "u(" + std::to_string(n) + ") outside 0.." + std::to_string(grid_ + 1));
  }
  return values_[static_cast<std::size_t>(n)];
}

template <Scalar T>
int SolutionSequence<T>::exponent(int n) const {
  if (n < 0 || n > grid_ + 1) {
    throw Error(ErrorCode::IndexOutOfRange, "u(" + std::to_string(n) + ") outside 0.." + std::to_string(grid_ + 1));
  }
  return exponents_.empty() ? 0 : exponents_[static_cast<std::size_t>(n)];
}

template <Scalar T>
T SolutionSequence<T>::scaled(int k, int e) const {
  return shift((*this)[k], exponent(k) - e);
}

template <Scalar T>
ScaledPair<T> SolutionSequence<T>::pair(int n) const {
  if (n < 0 || n > grid_) {
    throw Error(ErrorCode::IndexOutOfRange, "pair(" + std::to_string(n) + ") outside 0.." + std::to_string(grid_));
  }
  const int e = std::max(exponent(n), exponent(n + 1));
  return {scaled(n, e), scaled(n + 1, e), e};
}

template <Scalar T>
SolutionSequence<T> solve_minus(const JacobiMatrix<T>& H, const T& z, RecurrenceOptions opts) {
  return run_forward(H, z, T(0), T(1), Side::Minus, opts);
}

template <Scalar T>
SolutionSequence<T> solve_initial(const JacobiMatrix<T>& H, const T& z, const T& u0, const T& u1,
                                  RecurrenceOptions opts) {
  return run_forward(H, z, u0, u1, Side::Custom, opts);
}

template <Scalar T>
SolutionSequence<T> solve_plus(const JacobiMatrix<T>& H, const T& z, RecurrenceOptions opts) {
  const int N = H.grid();
  std::vector<T> v(static_cast<std::size_t>(N + 2));
  std::vector<int> ex;
  v[static_cast<std::size_t>(N)] = T(0);
  v[static_cast<std::size_t>(N + 1)] = T(1);
  [[maybe_unused]] int e = 0;
  const bool renorm = !is_exact_v<T> && opts.renormalize;
  if (renorm) ex.assign(v.size(), 0);
  for (int n = N; n >= 1; --n) {
    const auto k = static_cast<std::size_t>(n);
    v[k - 1] = ((z - H.b(n)) * v[k] - H.a(n) * v[k + 1]) / H.a(n - 1);
    if constexpr (!is_exact_v<T>) {
      if (renorm) {
        ex[k - 1] = e;
        e = maybe_renormalize(v, ex, n - 1, n, e);
      }
    }
  }
  return SolutionSequence<T>(N, z, Side::Plus, std::move(v), std::move(ex));
}

template <Scalar T>
T recurrence_residual(const JacobiMatrix<T>& H, const SolutionSequence<T>& u) {
  if (H.grid() != u.grid()) throw Error(ErrorCode::LengthMismatch, "solution and matrix grids differ");
  T worst(0);
  for (int n = 1; n <= H.grid(); ++n) {
    const int e = u.exponent(n);
    T r = H.a(n) * u.scaled(n + 1, e) + (H.b(n) - u.z()) * u.scaled(n, e) + H.a(n - 1) * u.scaled(n - 1, e);
    r = scalar_abs(r);
    if (r > worst) worst = r;
  }
  return worst;
}

template <Scalar T>
WronskianSequence<T>::WronskianSequence(std::vector<T> values, std::vector<T> b_diff, std::vector<int> exponents)
    : values_(std::move(values)), b_diff_(std::move(b_diff)), exponents_(std::move(exponents)) {
  if (values_.size() < 2 || b_diff_.size() + 1 != values_.size()) {
    throw Error(ErrorCode::LengthMismatch, "Wronskian needs N+1 values and N weights");
  }
  if (!exponents_.empty() && exponents_.size() != values_.size()) {
    throw Error(ErrorCode::LengthMismatch, "exponent log length does not match values");
  }
}

template <Scalar T>
const T& WronskianSequence<T>::operator[](int n) const {
  if (n < 0 || n > grid()) {
    throw Error(ErrorCode::IndexOutOfRange, "W(" + std::to_string(n) + ") outside 0.." + std::to_string(grid()));
  }
  return values_[static_cast<std::size_t>(n)];
}

template <Scalar T>
int WronskianSequence<T>::exponent(int n) const {
  (void)(*this)[n];
  return exponents_.empty() ? 0 : exponents_[static_cast<std::size_t>(n)];
}

template <Scalar T>
const T& WronskianSequence<T>::b_diff(int n) const {
  if (n < 1 || n > grid()) {
    throw Error(ErrorCode::IndexOutOfRange, "b_diff(" + std::to_string(n) + ") outside 1.." + std::to_string(grid()));
  }
  return b_diff_[static_cast<std::size_t>(n - 1)];
}

template <Scalar T>
SignTest<T> WronskianSequence<T>::sign_test(ZeroTolerance tol) const {
  return SignTest<T>(std::span<const T>(values_), tol);
}

template <Scalar T>
std::vector<T> spectral_b_diff(const JacobiMatrix<T>& H0, const T& z0, const JacobiMatrix<T>& H1, const T& z1) {
  if (!H0.shares_off_diagonal(H1)) {
    throw Error(ErrorCode::CoefficientMismatch, "matrices must share N and the off-diagonal a");
  }
  std::vector<T> d(static_cast<std::size_t>(H0.grid()));
  for (int n = 1; n <= H0.grid(); ++n) d[static_cast<std::size_t>(n - 1)] = (H0.b(n) - z0) - (H1.b(n) - z1);
  return d;
}

template <Scalar T>
WronskianSequence<T> wronskian_sequence(const JacobiMatrix<T>& H, const SolutionSequence<T>& u0,
                                        const SolutionSequence<T>& u1, std::vector<T> b_diff) {
  const int N = u0.grid();
  if (u1.grid() != N || H.grid() != N) throw Error(ErrorCode::LengthMismatch, "solutions live on different grids");
  if (b_diff.size() != static_cast<std::size_t>(N)) throw Error(ErrorCode::LengthMismatch, "b_diff needs N entries");

  const bool scaled = u0.renormalized() || u1.renormalized();
  std::vector<T> w(static_cast<std::size_t>(N + 1));
  std::vector<int> ex;
  if (scaled) ex.resize(w.size());
  for (int n = 0; n <= N; ++n) {
    const auto p0 = u0.pair(n);
    const auto p1 = u1.pair(n);
    w[static_cast<std::size_t>(n)] = H.a(n) * (p0.first * p1.second - p0.second * p1.first);
    if (scaled) ex[static_cast<std::size_t>(n)] = p0.exponent + p1.exponent;
  }
  return WronskianSequence<T>(std::move(w), std::move(b_diff), std::move(ex));
}

template <Scalar T>
WronskianSequence<T> wronskian_sequence(const JacobiMatrix<T>& H0, const SolutionSequence<T>& u0,
                                        const JacobiMatrix<T>& H1, const SolutionSequence<T>& u1) {
  return wronskian_sequence(H0, u0, u1, spectral_b_diff(H0, u0.z(), H1, u1.z()));
}

template <Scalar T>
T check_wronskian_step(const WronskianSequence<T>& w, const SolutionSequence<T>& u0, const SolutionSequence<T>& u1) {
  const int N = w.grid();
  if (u0.grid() != N || u1.grid() != N) throw Error(ErrorCode::LengthMismatch, "solutions live on different grids");
  T worst(0);
  for (int n = 0; n < N; ++n) {
    const int e = w.exponent(n);
    const T next = shift(w[n + 1], w.exponent(n + 1) - e);
    const T step = shift(T(u0[n + 1] * u1[n + 1]), u0.exponent(n + 1) + u1.exponent(n + 1) - e);
    T r = next - w[n] - w.b_diff(n + 1) * step;
    r = scalar_abs(r);
    if (r > worst) worst = r;
  }
  return worst;
}

SolutionSequence<double> to_float(const SolutionSequence<Rational>& u) {
  std::vector<double> v;
  v.reserve(u.values().size());
  for (const auto& x : u.values()) v.push_back(x.get_d());
  return {u.grid(), u.z().get_d(), u.side(), std::move(v)};
}

template class SolutionSequence<double>;
template class SolutionSequence<Rational>;
template class WronskianSequence<double>;
template class WronskianSequence<Rational>;

#define RELOSC_INSTANTIATE(T)                                                                                   \
  template SolutionSequence<T> solve_minus(const JacobiMatrix<T>&, const T&, RecurrenceOptions);              \
  template SolutionSequence<T> solve_plus(const JacobiMatrix<T>&, const T&, RecurrenceOptions);               \
  template SolutionSequence<T> solve_initial(const JacobiMatrix<T>&, const T&, const T&, const T&,            \
                                             RecurrenceOptions);                                              \
  template T recurrence_residual(const JacobiMatrix<T>&, const SolutionSequence<T>&);                         \
  template std::vector<T> spectral_b_diff(const JacobiMatrix<T>&, const T&, const JacobiMatrix<T>&, const T&); \
  template WronskianSequence<T> wronskian_sequence(const JacobiMatrix<T>&, const SolutionSequence<T>&,        \
                                                   const SolutionSequence<T>&, std::vector<T>);               \
  template WronskianSequence<T> wronskian_sequence(const JacobiMatrix<T>&, const SolutionSequence<T>&,        \
                                                   const JacobiMatrix<T>&, const SolutionSequence<T>&);       \
  template T check_wronskian_step(const WronskianSequence<T>&, const SolutionSequence<T>&,                    \
                                  const SolutionSequence<T>&);

RELOSC_INSTANTIATE(double)
RELOSC_INSTANTIATE(Rational)

#undef RELOSC_INSTANTIATE

}  // namespace relosc
