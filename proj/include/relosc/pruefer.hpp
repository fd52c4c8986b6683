#pragma once

#include <span>
#include <vector>

#include "relosc/recurrence.hpp"
#include "relosc/scalar.hpp"

namespace relosc {

/// Half-width of the band around integers in which theta/pi (or delta/pi)
/// is resolved from exact branch bookkeeping instead of float ceil/floor.
inline constexpr double kAngleBand = 1e-9;

/// Normalized Pruefer angles and radii of a solution,
///
///   u(n) = rho(n) sin theta(n),   u(n+1) = rho(n) cos theta(n),
///
/// with theta(0) in (-pi, pi] and the chain
///   ceil(theta(n)/pi) <= ceil(theta(n+1)/pi) <= ceil(theta(n)/pi) + 1.
///
/// Next to the float angles the sequence keeps the integer branch
/// ceil(theta(n)/pi), derived from signs of u only; ceil/floor queries near
/// integers fall back to it.
class PrueferSequence {
 public:
  [[nodiscard]] int grid() const noexcept { return source_.grid(); }
  [[nodiscard]] double theta(int n) const;
  [[nodiscard]] double rho(int n) const;
  /// ceil(theta(n)/pi) from sign bookkeeping.
  [[nodiscard]] int branch(int n) const;
  /// u(n) classified as zero, i.e. theta(n) is a multiple of pi.
  [[nodiscard]] bool on_axis(int n) const;
  [[nodiscard]] std::span<const double> thetas() const noexcept { return theta_; }
  [[nodiscard]] const SolutionSequence<double>& source() const noexcept { return source_; }
  [[nodiscard]] const ZeroTolerance& tolerance() const noexcept { return tol_; }

  /// ceil(theta(n)/pi) and floor(theta(n)/pi), band-resolved. Throw
  /// BranchAmbiguity when float angle and sign data cannot be reconciled.
  [[nodiscard]] int ceil_over_pi(int n) const;
  [[nodiscard]] int floor_over_pi(int n) const;

  /// Same solution with every angle moved by 2 pi * turns.
  [[nodiscard]] PrueferSequence shifted(int turns) const;

 private:
  friend PrueferSequence pruefer_sequence(const SolutionSequence<double>& u, ZeroTolerance tol);

  PrueferSequence(SolutionSequence<double> source, ZeroTolerance tol)
      : source_(std::move(source)), tol_(tol) {}

  SolutionSequence<double> source_;
  ZeroTolerance tol_;
  std::vector<double> theta_;
  std::vector<double> rho_;
  std::vector<int> branch_;
  std::vector<bool> on_axis_;
  std::vector<bool> ambiguous_;
};

/// Throws DegenerateSolution for two consecutive zeros (classified under tol).
PrueferSequence pruefer_sequence(const SolutionSequence<double>& u, ZeroTolerance tol = {});
PrueferSequence pruefer_sequence(const SolutionSequence<Rational>& u, ZeroTolerance tol = {});

/// ceil(theta(N)/pi) - floor(theta(0)/pi) - 1.
int node_count_via_angles(const PrueferSequence& p);

/// delta(n) = theta_{u1}(n) - theta_{u0}(n), n = 0..N.
class RelativeAngleSequence {
 public:
  [[nodiscard]] int grid() const noexcept { return static_cast<int>(delta_.size()) - 1; }
  [[nodiscard]] double delta(int n) const;
  [[nodiscard]] std::span<const double> deltas() const noexcept { return delta_; }

  /// Band-resolved ceil/floor of delta(n)/pi; near integers the side is
  /// taken from the sign of W_n(u0,u1) and the branch parities.
  [[nodiscard]] int ceil_over_pi(int n) const;
  [[nodiscard]] int floor_over_pi(int n) const;

  /// Sign of u0(n)u1(n+1) - u0(n+1)u1(n) (= -sign W_n) under the tolerance
  /// policy; `in_band` reports whether that decision was ambiguous.
  [[nodiscard]] int cross_sign(int n) const;
  [[nodiscard]] bool cross_in_band(int n) const;

 private:
  friend RelativeAngleSequence relative_angle_sequence(const PrueferSequence& p0, const PrueferSequence& p1);

  std::vector<double> delta_;
  std::vector<int> branch_diff_;
  std::vector<int> cross_sign_;
  std::vector<bool> cross_in_band_;
};

/// Throws LengthMismatch if the grids differ.
RelativeAngleSequence relative_angle_sequence(const PrueferSequence& p0, const PrueferSequence& p1);

/// ceil(delta(N)/pi) - floor(delta(0)/pi) - 1.
int weighted_count_via_angles(const RelativeAngleSequence& d);

}  // namespace relosc
