#include "relosc/pruefer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relosc/error.hpp"

namespace relosc {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_integer(double x) { return std::abs(x - std::nearbyint(x)) <= kAngleBand; }

std::string at(int n) { return " at n=" + std::to_string(n); }

}  // namespace

PrueferSequence pruefer_sequence(const SolutionSequence<double>& u, ZeroTolerance tol) {
  PrueferSequence p(u, tol);
  const int N = u.grid();
  const SignTest<double> signs(u.values(), tol);

  int previous = 0;
  for (int n = 0; n <= N; ++n) {
    const auto [x, y, e] = u.pair(n);
    const int sx = signs.sign(x);
    const int sy = signs.sign(y);
    if (sx == 0 && sy == 0) {
      throw Error(ErrorCode::DegenerateSolution, "consecutive zeros" + at(n));
    }
    // Base angle in (-pi, pi]; a vanishing sine component sits exactly on the axis.
    const double base = sx == 0 ? (sy > 0 ? 0.0 : kPi) : std::atan2(x, y);
    const int base_branch = (sx > 0 || (sx == 0 && sy < 0)) ? 1 : 0;

    int branch = base_branch;
    if (n > 0) branch = ((previous - base_branch) % 2 == 0) ? previous : previous + 1;
    const int turns = (branch - base_branch) / 2;

    p.theta_.push_back(base + 2.0 * kPi * turns);
    p.rho_.push_back(std::ldexp(std::hypot(x, y), e));
    p.branch_.push_back(branch);
    p.on_axis_.push_back(sx == 0);
    p.ambiguous_.push_back(signs.in_band(x));
    previous = branch;
  }
  return p;
}

PrueferSequence pruefer_sequence(const SolutionSequence<Rational>& u, ZeroTolerance tol) {
  return pruefer_sequence(to_float(u), tol);
}

double PrueferSequence::theta(int n) const {
  if (n < 0 || n > grid()) throw Error(ErrorCode::IndexOutOfRange, "theta" + at(n));
  return theta_[static_cast<std::size_t>(n)];
}

double PrueferSequence::rho(int n) const {
  if (n < 0 || n > grid()) throw Error(ErrorCode::IndexOutOfRange, "rho" + at(n));
  return rho_[static_cast<std::size_t>(n)];
}

int PrueferSequence::branch(int n) const {
  if (n < 0 || n > grid()) throw Error(ErrorCode::IndexOutOfRange, "branch" + at(n));
  return branch_[static_cast<std::size_t>(n)];
}

bool PrueferSequence::on_axis(int n) const {
  if (n < 0 || n > grid()) throw Error(ErrorCode::IndexOutOfRange, "on_axis" + at(n));
  return on_axis_[static_cast<std::size_t>(n)];
}

int PrueferSequence::ceil_over_pi(int n) const {
  const double x = theta(n) / kPi;
  const int bookkept = branch(n);
  if (near_integer(x)) {
    if (ambiguous_[static_cast<std::size_t>(n)]) {
      throw Error(ErrorCode::BranchAmbiguity, "theta/pi near an integer with an in-band sign" + at(n));
    }
    return bookkept;
  }
  const int rounded = static_cast<int>(std::ceil(x));
  if (rounded != bookkept) {
    throw Error(ErrorCode::BranchAmbiguity, "float ceil " + std::to_string(rounded) + " vs branch " +
                                                std::to_string(bookkept) + at(n));
  }
  return rounded;
}

int PrueferSequence::floor_over_pi(int n) const {
  const int c = ceil_over_pi(n);
  const double x = theta(n) / kPi;
  if (near_integer(x)) return on_axis(n) ? c : c - 1;
  return static_cast<int>(std::floor(x));
}

PrueferSequence PrueferSequence::shifted(int turns) const {
  PrueferSequence copy = *this;
  for (auto& t : copy.theta_) t += 2.0 * kPi * turns;
  for (auto& b : copy.branch_) b += 2 * turns;
  return copy;
}

int node_count_via_angles(const PrueferSequence& p) {
  return p.ceil_over_pi(p.grid()) - p.floor_over_pi(0) - 1;
}

RelativeAngleSequence relative_angle_sequence(const PrueferSequence& p0, const PrueferSequence& p1) {
  if (p0.grid() != p1.grid()) throw Error(ErrorCode::LengthMismatch, "Pruefer sequences on different grids");
  const int N = p0.grid();
  RelativeAngleSequence d;

  std::vector<double> cross(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) {
    const auto q0 = p0.source().pair(n);
    const auto q1 = p1.source().pair(n);
    cross[static_cast<std::size_t>(n)] = q0.first * q1.second - q0.second * q1.first;
  }
  const SignTest<double> signs(std::span<const double>(cross), p0.tolerance());

  for (int n = 0; n <= N; ++n) {
    d.delta_.push_back(p1.theta(n) - p0.theta(n));
    d.branch_diff_.push_back(p1.branch(n) - p0.branch(n));
    d.cross_sign_.push_back(signs.sign(cross[static_cast<std::size_t>(n)]));
    d.cross_in_band_.push_back(signs.in_band(cross[static_cast<std::size_t>(n)]));
  }
  return d;
}

double RelativeAngleSequence::delta(int n) const {
  if (n < 0 || n > grid()) throw Error(ErrorCode::IndexOutOfRange, "delta" + at(n));
  return delta_[static_cast<std::size_t>(n)];
}

int RelativeAngleSequence::cross_sign(int n) const {
  if (n < 0 || n > grid()) throw Error(ErrorCode::IndexOutOfRange, "cross" + at(n));
  return cross_sign_[static_cast<std::size_t>(n)];
}

bool RelativeAngleSequence::cross_in_band(int n) const {
  if (n < 0 || n > grid()) throw Error(ErrorCode::IndexOutOfRange, "cross" + at(n));
  return cross_in_band_[static_cast<std::size_t>(n)];
}

// delta = (c1 - c0) pi + (g1 - g0) with reduced angles g in (0, pi], and
// sign(g1 - g0) = sign(W_n) * (-1)^(c1 - c0) = -cross * (-1)^(c1 - c0).
int RelativeAngleSequence::ceil_over_pi(int n) const {
  const double x = delta(n) / kPi;
  const int k = branch_diff_[static_cast<std::size_t>(n)];
  const int reduced_sign = -cross_sign(n) * (k % 2 == 0 ? 1 : -1);
  const int bookkept = k + (reduced_sign > 0 ? 1 : 0);
  if (near_integer(x)) {
    if (cross_in_band(n)) {
      throw Error(ErrorCode::BranchAmbiguity, "delta/pi near an integer with an in-band Wronskian" + at(n));
    }
    return bookkept;
  }
  const int rounded = static_cast<int>(std::ceil(x));
  if (rounded != bookkept) {
    throw Error(ErrorCode::BranchAmbiguity, "float ceil " + std::to_string(rounded) + " vs bookkeeping " +
                                                std::to_string(bookkept) + at(n));
  }
  return rounded;
}

int RelativeAngleSequence::floor_over_pi(int n) const {
  const int c = ceil_over_pi(n);
  const double x = delta(n) / kPi;
  if (near_integer(x)) return cross_sign(n) == 0 ? c : c - 1;
  return static_cast<int>(std::floor(x));
}

int weighted_count_via_angles(const RelativeAngleSequence& d) {
  return d.ceil_over_pi(d.grid()) - d.floor_over_pi(0) - 1;
}

}  // namespace relosc
