#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "relosc/error.hpp"
#include "relosc/oscillation.hpp"
#include "relosc/pruefer.hpp"

using namespace relosc;

namespace {

constexpr double pi = std::numbers::pi;

SolutionSequence<double> seq(std::vector<double> v) {
  const int N = static_cast<int>(v.size()) - 2;
  return SolutionSequence<double>(N, 0.0, Side::Custom, std::move(v));
}

JacobiMatrix<double> single(double b) { return JacobiMatrix<double>(2, {}, {b}); }

}  // namespace

TEST_CASE("angles of the free solution at zero") {
  const auto p = pruefer_sequence(solve_minus(JacobiMatrix<double>::free(5), 0.0));
  const double expected[] = {0, pi / 2, pi, 3 * pi / 2, 2 * pi, 5 * pi / 2};
  for (int n = 0; n <= 5; ++n) {
    CHECK(p.theta(n) == doctest::Approx(expected[n]).epsilon(1e-15));
    CHECK(p.rho(n) == doctest::Approx(1.0));
  }
  CHECK(p.ceil_over_pi(5) == 3);
  CHECK(p.floor_over_pi(0) == 0);
  CHECK(node_count_via_angles(p) == 2);
}

TEST_CASE("constant-sign solution has no branch jump") {
  const auto p = pruefer_sequence(seq({0, 1, 1, 1}));
  CHECK(p.theta(0) == 0.0);
  CHECK(p.theta(1) == doctest::Approx(pi / 4));
  CHECK(p.theta(2) == doctest::Approx(pi / 4));
  CHECK(node_count_via_angles(p) == 0);
}

TEST_CASE("angles are invariant under positive scaling") {
  const auto p = pruefer_sequence(seq({0.3, -1.2, 0.7, 2.5, -0.1}));
  const auto p2 = pruefer_sequence(seq({0.6, -2.4, 1.4, 5.0, -0.2}));
  for (int n = 0; n <= 3; ++n) {
    CHECK(p2.theta(n) == p.theta(n));
    CHECK(p2.rho(n) == doctest::Approx(2 * p.rho(n)));
  }
}

TEST_CASE("exact sequences are converted before angle tracking") {
  const auto exact = solve_minus(JacobiMatrix<Rational>::free(5), Rational(0));
  CHECK(node_count_via_angles(pruefer_sequence(exact)) == 2);
}

TEST_CASE("relative angles of the worked pair") {
  const auto p0 = pruefer_sequence(solve_minus(single(1), 0.0));
  const auto p1 = pruefer_sequence(solve_plus(single(-1), 0.0));
  const auto d = relative_angle_sequence(p0, p1);
  CHECK(d.delta(0) == doctest::Approx(3 * pi / 4));
  CHECK(d.delta(1) == doctest::Approx(5 * pi / 4));
  CHECK(d.delta(2) == doctest::Approx(5 * pi / 4));
  CHECK(weighted_count_via_angles(d) == 1);

  const auto self = relative_angle_sequence(p0, p0);
  for (double x : self.deltas()) CHECK(x == 0.0);

  const auto moved = relative_angle_sequence(p0, p1.shifted(1));
  for (int n = 0; n <= 2; ++n) CHECK(moved.delta(n) == doctest::Approx(d.delta(n) + 2 * pi));
  CHECK(weighted_count_via_angles(moved) == 1);

  const auto other = pruefer_sequence(solve_minus(JacobiMatrix<double>::free(5), 0.0));
  CHECK_THROWS_AS((void)relative_angle_sequence(p0, other), Error);
}

TEST_CASE("identical operators away from the spectrum give zero") {
  const auto F = JacobiMatrix<double>::free(6);
  const auto p0 = pruefer_sequence(solve_minus(F, 0.3));
  const auto p1 = pruefer_sequence(solve_plus(F, 0.3));
  CHECK(weighted_count_via_angles(relative_angle_sequence(p0, p1)) == 0);
}

TEST_CASE("band resolution uses the sign bookkeeping") {
  // theta(0) = 0 exactly and u(2) = 0 puts theta(1) on pi/2 and theta(2) on pi.
  const auto p = pruefer_sequence(seq({0.0, 1.0, 0.0, -1.0}));
  CHECK(p.on_axis(0));
  CHECK(p.on_axis(2));
  CHECK(p.branch(2) == 1);
  CHECK(p.ceil_over_pi(2) == 1);
  CHECK(p.floor_over_pi(2) == 1);

  // u(0) tiny compared to the rest of the sequence: classified as zero, but
  // the classification itself is in band, so the branch cannot be trusted.
  const auto q = pruefer_sequence(seq({1e-20, 1.0, 2.0, 3.0}));
  CHECK(q.on_axis(0));
  CHECK(q.theta(0) == 0.0);
  try {
    (void)q.floor_over_pi(0);
    FAIL("expected BranchAmbiguity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BranchAmbiguity);
  }
  // Exact zeros are never ambiguous.
  const auto r = pruefer_sequence(seq({0.0, 1.0, 2.0, 3.0}));
  CHECK(node_count_via_angles(r) == count_nodes(r.source(), 0, 2).count);
}

TEST_CASE("property: angle counts agree with sign counts on random float instances") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-5, 5);
  std::uniform_real_distribution<double> A(-5, -0.125);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<double> a;
    std::vector<double> b0;
    std::vector<double> b1;
    for (int i = 0; i + 1 < dim; ++i) a.push_back(A(rng));
    for (int i = 0; i < dim; ++i) {
      b0.push_back(U(rng));
      b1.push_back(U(rng));
    }
    const JacobiMatrix<double> H0(dim + 1, a, b0);
    const JacobiMatrix<double> H1(dim + 1, a, b1);
    const double l0 = U(rng);
    const double l1 = U(rng);
    const auto u0 = solve_minus(H0, l0);
    const auto u1 = solve_plus(H1, l1);
    const auto p0 = pruefer_sequence(u0);
    const auto p1 = pruefer_sequence(u1);
    for (int n = 0; n < dim + 1; ++n) {
      CHECK(p0.ceil_over_pi(n) <= p0.ceil_over_pi(n + 1));
      CHECK(p0.ceil_over_pi(n + 1) <= p0.ceil_over_pi(n) + 1);
    }
    CHECK(node_count_via_angles(p0) == count_nodes(u0, 0, dim + 1).count);
    const auto w = wronskian_sequence(H0, u0, H1, u1);
    CHECK(weighted_count_via_angles(relative_angle_sequence(p0, p1)) == weighted_node_count(w).count);
  }
}
