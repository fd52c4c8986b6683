#include <doctest.h>

#include <cmath>
#include <random>

#include "relosc/error.hpp"
#include "relosc/recurrence.hpp"

using namespace relosc;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

std::vector<Rational> values_of(const SolutionSequence<Rational>& u) { return {u.values().begin(), u.values().end()}; }

std::vector<Rational> qs(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.push_back(q(x));
  return out;
}

JacobiMatrix<Rational> single(long b) { return JacobiMatrix<Rational>(2, {}, {q(b)}); }

struct RandomExact {
  std::mt19937_64 rng;
  explicit RandomExact(std::uint64_t seed) : rng(seed) {}
  Rational draw(long lo, long hi) {
    const long d = std::uniform_int_distribution<long>(1, 8)(rng);
    return q(std::uniform_int_distribution<long>(lo * d, hi * d)(rng), d);
  }
  JacobiMatrix<Rational> matrix(int dim) {
    std::vector<Rational> a;
    std::vector<Rational> b;
    for (int i = 0; i + 1 < dim; ++i) a.push_back(draw(-5, 0) - q(1, 8));
    for (int i = 0; i < dim; ++i) b.push_back(draw(-5, 5));
    return JacobiMatrix<Rational>(dim + 1, a, b);
  }
  JacobiMatrix<Rational> partner(const JacobiMatrix<Rational>& H) {
    std::vector<Rational> b;
    for (int i = 0; i < H.dimension(); ++i) b.push_back(draw(-5, 5));
    return JacobiMatrix<Rational>(H.grid(), {H.off_diagonal().begin(), H.off_diagonal().end()}, b);
  }
};

}  // namespace

TEST_CASE("fundamental solutions of small matrices") {
  const auto F5 = JacobiMatrix<Rational>::free(5);
  CHECK(values_of(solve_minus(F5, q(0))) == qs({0, 1, 0, -1, 0, 1, 0}));
  CHECK(values_of(solve_minus(single(0), q(0))) == qs({0, 1, 0, -1}));
  CHECK(values_of(solve_plus(single(0), q(0))) == qs({0, -1, 0, 1}));
  // u(0) = (z - b(1)) u(1) - a(1) u(2) with u(1) = -1, u(2) = 0.
  CHECK(values_of(solve_plus(single(1), q(0))) == qs({-1, -1, 0, 1}));
  CHECK(values_of(solve_plus(single(-1), q(0))) == qs({1, -1, 0, 1}));
  CHECK(solve_plus(F5, q(0))[0] != 0);

  // One forward step: a(1) u(2) = (z - b) u(1) with the convention a(1) = -1.
  for (long b : {-3L, 0L, 2L}) {
    for (long z : {-1L, 4L}) CHECK(solve_minus(single(b), q(z))[2] == b - z);
  }

  const auto u = solve_minus(F5, q(0));
  CHECK(u.grid() == 5);
  CHECK(u.side() == Side::Minus);
  CHECK(u.z() == 0);
  CHECK_THROWS_AS((void)u[7], Error);
  CHECK_THROWS_AS((void)u[-1], Error);
}

TEST_CASE("solution sequences reject degenerate and mis-sized data") {
  CHECK_THROWS_AS(SolutionSequence<Rational>(2, q(0), Side::Custom, qs({0, 0, 1, 2})), Error);
  CHECK_THROWS_AS(SolutionSequence<Rational>(2, q(0), Side::Custom, qs({0, 1, 2})), Error);
  CHECK_THROWS_AS((void)solve_initial(single(0), q(0), q(0), q(0)), Error);
}

TEST_CASE("property: exact solutions have zero residual and detect eigenvalues") {
  RandomExact gen(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto H = gen.matrix(std::uniform_int_distribution<int>(1, 10)(gen.rng));
    const Rational z = gen.draw(-5, 5);
    CHECK(recurrence_residual(H, solve_minus(H, z)) == 0);
    CHECK(recurrence_residual(H, solve_plus(H, z)) == 0);
    CHECK(recurrence_residual(H, solve_initial(H, z, gen.draw(-2, 2), q(1))) == 0);
    const bool minus_zero = solve_minus(H, z)[H.grid()] == 0;
    const bool plus_zero = solve_plus(H, z)[0] == 0;
    CHECK(minus_zero == plus_zero);
  }
  // Eigenvalue of a 1x1 matrix: both characterizations fire.
  CHECK(solve_minus(single(3), q(3))[2] == 0);
  CHECK(solve_plus(single(3), q(3))[0] == 0);
}

TEST_CASE("Wronskian of small pairs") {
  const auto Z = single(0);
  const auto zm = solve_minus(Z, q(0));
  const auto zp = solve_plus(Z, q(0));
  const auto w0 = wronskian_sequence(Z, zm, Z, zp);
  CHECK(std::vector<Rational>(w0.values().begin(), w0.values().end()) == qs({0, 0, 0}));

  const auto w1 = wronskian_sequence(single(1), solve_minus(single(1), q(0)), single(-1), solve_plus(single(-1), q(0)));
  CHECK(w1[0] == 1);
  CHECK(w1[1] == -1);
  CHECK(w1.b_diff(1) == 2);
  CHECK(w1.b_diff(2) == 0);

  const auto self = wronskian_sequence(Z, zm, Z, zm);
  for (int n = 0; n <= 2; ++n) CHECK(self[n] == 0);
}

TEST_CASE("spectral weights shift with the parameters") {
  const auto H0 = single(1);
  const auto H1 = single(-1);
  const auto d = spectral_b_diff(H0, q(1, 2), H1, q(3));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == (1 - q(1, 2)) - (-1 - q(3)));
  CHECK(d[1] == q(3) - q(1, 2));
  CHECK_THROWS_AS((void)spectral_b_diff(H0, q(0), JacobiMatrix<Rational>::free(3), q(0)), Error);
}

TEST_CASE("property: Wronskian steps, antisymmetry and constancy") {
  RandomExact gen(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto H0 = gen.matrix(std::uniform_int_distribution<int>(1, 10)(gen.rng));
    const auto H1 = gen.partner(H0);
    const Rational z0 = gen.draw(-5, 5);
    const Rational z1 = gen.draw(-5, 5);
    const auto u0 = solve_minus(H0, z0);
    const auto u1 = solve_plus(H1, z1);
    const auto w = wronskian_sequence(H0, u0, H1, u1);
    CHECK(check_wronskian_step(w, u0, u1) == 0);

    const auto back = wronskian_sequence(H1, u1, H0, u0);
    for (int n = 0; n <= w.grid(); ++n) CHECK(back[n] == -w[n]);

    // Same operator, same parameter: zero weights and a constant Wronskian.
    const auto v = solve_initial(H0, z0, gen.draw(-3, 3), gen.draw(1, 3));
    const auto c = wronskian_sequence(H0, u0, H0, v);
    for (int n = 1; n <= c.grid(); ++n) {
      CHECK(c.b_diff(n) == 0);
      CHECK(c[n] == c[0]);
    }
  }
}

TEST_CASE("float Wronskian step residual on a long free grid") {
  const auto F = JacobiMatrix<double>::free(50);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u0 = solve_initial(F, U(rng), U(rng), U(rng));
    const auto u1 = solve_initial(F, U(rng), U(rng), U(rng));
    const auto w = wronskian_sequence(F, u0, F, u1);
    double scale = 0.0;
    for (int n = 0; n <= 51; ++n) scale = std::max({scale, std::abs(u0[n]), std::abs(u1[n])});
    CHECK(check_wronskian_step(w, u0, u1) <= 1e-10 * scale * scale);
  }
}

TEST_CASE("renormalized float solutions keep signs and rescale exactly") {
  // |z - b| / |a| = 1e3 per step: raw values overflow after ~100 steps.
  const int N = 200;
  const JacobiMatrix<double> H(N, std::vector<double>(N - 2, -1.0), std::vector<double>(N - 1, 0.0));
  const double z = 1e3;
  const auto raw = solve_minus(H, z);
  const auto scaled = solve_minus(H, z, {.renormalize = true});
  CHECK(scaled.renormalized());
  CHECK_FALSE(std::isfinite(raw[N]));
  for (int n = 0; n <= N + 1; ++n) {
    CHECK(std::isfinite(scaled[n]));
    if (std::isfinite(raw[n]) && raw[n] != 0.0) {
      CHECK((raw[n] > 0) == (scaled[n] > 0));
      CHECK(std::ldexp(scaled[n], scaled.exponent(n)) == doctest::Approx(raw[n]).epsilon(1e-12));
    }
  }
  const auto p = scaled.pair(N);
  CHECK(p.first == doctest::Approx(scaled.scaled(N, p.exponent)));
  double largest = 0.0;
  for (int n = 0; n <= N + 1; ++n) largest = std::max(largest, std::abs(scaled[n]));
  CHECK(recurrence_residual(H, scaled) <= 1e-12 * z * largest);
}
