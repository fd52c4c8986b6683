#include "relosc/homotopy.hpp"

#include <string>

#include "relosc/error.hpp"

namespace relosc {

namespace {

template <Scalar T>
void require_shared(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1) {
  if (!H0.shares_off_diagonal(H1)) {
    throw Error(ErrorCode::CoefficientMismatch, "homotopy needs equal N and off-diagonals");
  }
}

template <Scalar T>
JacobiMatrix<T> with_diagonal(const JacobiMatrix<T>& H, std::vector<T> b) {
  const auto a = H.off_diagonal();
  return JacobiMatrix<T>(H.grid(), std::vector<T>(a.begin(), a.end()), std::move(b));
}

template <Scalar T>
T from_double(double x) {
  if constexpr (is_exact_v<T>) {
    return to_rational(x);
  } else {
    return x;
  }
}

}  // namespace

template <Scalar T>
PerturbationSplit<T> split_perturbation(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1) {
  require_shared(H0, H1);
  PerturbationSplit<T> split;
  const auto b0 = H0.diagonal();
  const auto b1 = H1.diagonal();
  for (std::size_t i = 0; i < b0.size(); ++i) {
    T d = b0[i] - b1[i];
    if (d > 0) {
      split.b_plus.push_back(d);
      split.b_minus.push_back(T(0));
    } else {
      split.b_plus.push_back(T(0));
      split.b_minus.push_back(T(-d));
    }
  }
  return split;
}

template <Scalar T>
JacobiMatrix<T> lower_envelope(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1) {
  const auto split = split_perturbation(H0, H1);
  const auto b0 = H0.diagonal();
  std::vector<T> b(b0.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = b0[i] - split.b_plus[i];
  return with_diagonal(H0, std::move(b));
}

template <Scalar T>
JacobiMatrix<T> two_phase_path(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps) {
  if (eps < 0 || eps > 1) {
    throw Error(ErrorCode::EpsOutOfRange, "eps = " + format_scalar(eps) + " outside [0, 1]");
  }
  const auto lower = lower_envelope(H0, H1);
  const T half = T(1) / T(2);
  if (eps <= half) return interpolate(H0, lower, T(2 * eps));
  return interpolate(lower, H1, T(2 * (eps - half)));
}

template <Scalar T>
JacobiMatrix<T> path_point(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps, PathKind kind) {
  if (kind == PathKind::TwoPhase) return two_phase_path(H0, H1, eps);
  return interpolate(H0, H1, eps);
}

std::vector<double> uniform_grid(int steps) {
  std::vector<double> grid;
  for (int k = 0; k <= steps; ++k) grid.push_back(static_cast<double>(k) / steps);
  return grid;
}

template <Scalar T>
BranchTable eigenvalue_branches(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1,
                                const std::vector<double>& grid, PathKind kind) {
  require_shared(H0, H1);
  BranchTable table;
  table.grid = grid;
  for (double eps : grid) {
    table.branches.push_back(eigenvalues_dense(path_point(H0, H1, from_double<T>(eps), kind)).eigenvalues);
  }
  return table;
}

template <Scalar T>
T wronskian_eps_derivative(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps, const T& z,
                           Side side, int n) {
  require_shared(H0, H1);
  const int N = H0.grid();
  if (n < 0 || n > N) throw Error(ErrorCode::IndexOutOfRange, "n = " + std::to_string(n));
  const auto H = interpolate(H0, H1, eps);
  T acc(0);
  if (side == Side::Plus) {
    const auto s = solve_plus(H, z);
    for (int m = n + 1; m <= N; ++m) acc -= (H0.b(m) - H1.b(m)) * s[m] * s[m];
  } else {
    const auto s = solve_minus(H, z);
    for (int m = 1; m <= n; ++m) acc += (H0.b(m) - H1.b(m)) * s[m] * s[m];
  }
  return acc;
}

template <Scalar T>
T pruefer_eps_derivative(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& eps, const T& z,
                         Side side, int n) {
  const T w = wronskian_eps_derivative(H0, H1, eps, z, side, n);
  const auto H = interpolate(H0, H1, eps);
  const auto s = side == Side::Plus ? solve_plus(H, z) : solve_minus(H, z);
  const T rho2 = s[n] * s[n] + s[n + 1] * s[n + 1];
  return T(-w / (H0.a(n) * rho2));
}

template <Scalar T>
CrossingReport spectral_flow_crossings(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, double lambda,
                                       int steps_per_phase, double bracket) {
  require_shared(H0, H1);
  const auto branch_side = [&](double eps, int k) {
    const auto ev = eigenvalues_dense(two_phase_path(H0, H1, from_double<T>(eps))).eigenvalues;
    return ev[static_cast<std::size_t>(k)] < lambda ? -1 : 1;
  };

  CrossingReport report;
  const auto grid = uniform_grid(2 * steps_per_phase);
  const auto table = eigenvalue_branches(H0, H1, grid, PathKind::TwoPhase);
  const auto dim = table.branches.front().size();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const int before = table.branches[i][k] < lambda ? -1 : 1;
      const int after = table.branches[i + 1][k] < lambda ? -1 : 1;
      if (before == after) continue;
      double lo = grid[i];
      double hi = grid[i + 1];
      while (hi - lo > bracket) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (branch_side(mid, static_cast<int>(k)) == before ? lo : hi) = mid;
      }
      const int direction = before > after ? 1 : -1;
      report.crossings.push_back({static_cast<int>(k), lo, hi, direction});
      report.signed_count += direction;
    }
  }
  return report;
}

#define RELOSC_INSTANTIATE(T)                                                                                   \
  template PerturbationSplit<T> split_perturbation(const JacobiMatrix<T>&, const JacobiMatrix<T>&);           \
  template JacobiMatrix<T> lower_envelope(const JacobiMatrix<T>&, const JacobiMatrix<T>&);                    \
  template JacobiMatrix<T> two_phase_path(const JacobiMatrix<T>&, const JacobiMatrix<T>&, const T&);          \
  template JacobiMatrix<T> path_point(const JacobiMatrix<T>&, const JacobiMatrix<T>&, const T&, PathKind);    \
  template BranchTable eigenvalue_branches(const JacobiMatrix<T>&, const JacobiMatrix<T>&,                    \
                                           const std::vector<double>&, PathKind);                             \
  template T wronskian_eps_derivative(const JacobiMatrix<T>&, const JacobiMatrix<T>&, const T&, const T&,     \
                                      Side, int);                                                             \
  template T pruefer_eps_derivative(const JacobiMatrix<T>&, const JacobiMatrix<T>&, const T&, const T&, Side, \
                                    int);                                                                     \
  template CrossingReport spectral_flow_crossings(const JacobiMatrix<T>&, const JacobiMatrix<T>&, double, int, \
                                                  double);

RELOSC_INSTANTIATE(double)
RELOSC_INSTANTIATE(Rational)

#undef RELOSC_INSTANTIATE

}  // namespace relosc
