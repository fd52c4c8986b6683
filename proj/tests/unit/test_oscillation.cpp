#include <doctest.h>

#include <random>

#include "relosc/error.hpp"
#include "relosc/oscillation.hpp"
#include "relosc/spectrum_oracle.hpp"

using namespace relosc;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

SolutionSequence<Rational> seq(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.push_back(q(x));
  return SolutionSequence<Rational>(static_cast<int>(v.size()) - 2, q(0), Side::Custom, v);
}

JacobiMatrix<Rational> single(long b) { return JacobiMatrix<Rational>(2, {}, {q(b)}); }

WronskianSequence<Rational> wseq(std::initializer_list<long> w, std::initializer_list<long> d) {
  std::vector<Rational> wv;
  std::vector<Rational> dv;
  for (long x : w) wv.push_back(q(x));
  for (long x : d) dv.push_back(q(x));
  return WronskianSequence<Rational>(wv, dv);
}

}  // namespace

TEST_CASE("nodes follow the sign definition") {
  const auto u = seq({0, 1, 0, -1, 0, 1, 0});
  CHECK(is_node(u, 2));
  CHECK_FALSE(is_node(u, 3));
  CHECK(is_node(u, 0));
  CHECK(is_node(seq({0, 1, -1, 1}), 1));
  CHECK_THROWS_AS((void)is_node(u, 6), Error);
}

TEST_CASE("node counts between two indices") {
  const auto u = seq({0, 1, 0, -1, 0, 1, 0});
  const auto r = count_nodes(u, 0, 5);
  CHECK(r.count == 2);
  CHECK(r.first_index == 0);
  CHECK(r.indicators == std::vector<int>{0, 0, 1, 0, 1});

  CHECK(count_nodes(seq({1, -1, 1, 1}), 0, 2).count == 2);
  CHECK(count_nodes(seq({2, 1, 3, 1, 5}), 0, 3).count == 0);
  CHECK_THROWS_AS((void)count_nodes(u, 3, 3), Error);
  CHECK_THROWS_AS((void)count_nodes(u, 0, 6), Error);
}

TEST_CASE("count below and eigenvalue detection") {
  const auto F5 = JacobiMatrix<Rational>::free(5);
  CHECK(count_below(F5, q(0)).count == 2);
  CHECK(count_below(F5, q(-2)).count == 0);
  CHECK(count_below(F5, q(2)).count == 4);
  CHECK(count_below(single(3), q(4)).count == 1);
  CHECK(count_below(single(3), q(3)).count == 0);

  CHECK(is_eigenvalue(single(0), q(0)).value);
  CHECK_FALSE(is_eigenvalue(single(0), q(1)).value);
  CHECK_FALSE(is_eigenvalue(F5, q(0)).value);
  CHECK(solve_minus(F5, q(0))[5] == 1);

  // 2x2 with eigenvalues 1 and 3: b = (2, 2), a = -1.
  const JacobiMatrix<Rational> H(3, {q(-1)}, {q(2), q(2)});
  CHECK(is_eigenvalue(H, q(1)));
  CHECK(is_eigenvalue(H, q(3)));
  CHECK(count_below(H, q(3)).count == 1);
  CHECK(count_below(H, q(301, 100)).count == 2);
}

TEST_CASE("float count carries a warning next to an eigenvalue") {
  const JacobiMatrix<double> H(3, {-1.0}, {2.0, 2.0});
  const auto at = count_below(H, 1.0 + 1e-14);
  CHECK_FALSE(at.warnings.empty());
  const auto away = count_below(H, 2.0);
  CHECK(away.count == 1);
  CHECK(away.warnings.empty());
  const auto check = is_eigenvalue(H, 1.0 + 1e-14);
  CHECK(check.unreliable);
}

TEST_CASE("weighted node indicators") {
  // [[1]] vs [[-1]] at 0: W = (1, -1, -1), weight +2 at n = 1.
  const auto w1 = wronskian_sequence(single(1), solve_minus(single(1), q(0)), single(-1), solve_plus(single(-1), q(0)));
  CHECK(weighted_node_indicator(w1, 0) == 1);
  CHECK(weighted_node_indicator(w1, 1) == 0);
  CHECK(weighted_node_count(w1).count == 1);

  // [[0]] vs [[1]] at 0: W = (-1, 0, 0), weight -1.
  const auto w2 = wronskian_sequence(single(0), solve_minus(single(0), q(0)), single(1), solve_plus(single(1), q(0)));
  CHECK(w2[0] == -1);
  CHECK(w2[1] == 0);
  CHECK(weighted_node_indicator(w2, 0) == -1);

  // Zero weight and a constant Wronskian.
  CHECK(weighted_node_indicator(wseq({3, 3, 3}, {0, 0}), 0) == 0);
  CHECK_THROWS_AS((void)weighted_node_indicator(wseq({3, -3, -3}, {0, 0}), 0), Error);
  CHECK_THROWS_AS((void)weighted_node_indicator(wseq({3, 0, 0}, {0, 0}), 0), Error);
}

TEST_CASE("the zero clauses are asymmetric") {
  // W_n = 0 -> W_{n+1} != 0 counts only for a positive weight.
  CHECK(weighted_node_indicator(wseq({0, 2, 2}, {1, 0}), 0) == 1);
  CHECK(weighted_node_indicator(wseq({0, -2, -2}, {-1, 0}), 0) == 0);
  // W_n != 0 -> W_{n+1} = 0 counts only for a negative weight.
  CHECK(weighted_node_indicator(wseq({2, 0, 0}, {-1, 0}), 0) == -1);
  CHECK(weighted_node_indicator(wseq({-2, 0, 0}, {1, 0}), 0) == 0);
  // Sign change.
  CHECK(weighted_node_indicator(wseq({2, -1, -1}, {1, 0}), 0) == 1);
  CHECK(weighted_node_indicator(wseq({-1, 2, 2}, {-1, 0}), 0) == -1);
}

TEST_CASE("weighted count boundary correction") {
  const auto Z = single(0);
  const auto w = wronskian_sequence(Z, solve_minus(Z, q(0)), Z, solve_plus(Z, q(0)));
  const auto r = weighted_node_count(w);
  CHECK(r.count == -1);
  CHECK(r.boundary_correction == -1);
  CHECK(r.indicators == std::vector<int>{0, 0});
}

TEST_CASE("relative counts of the worked examples") {
  CHECK(relative_count(single(0), single(0), q(0), q(0)).count == -1);
  CHECK(relative_count(single(1), single(-1), q(0), q(0)).count == 1);
  const auto F5 = JacobiMatrix<Rational>::free(5);
  const auto same = relative_count(F5, F5, q(0), q(0));
  CHECK(same.count == 0);
  CHECK(same.minus_plus.boundary_correction == 0);
  for (int x : same.minus_plus.indicators) CHECK(x == 0);

  // Different parameters on the same operator.
  CHECK(relative_count(single(0), single(0), q(-1), q(1)).count == 1);
  CHECK(relative_count(F5, F5, q(-3), q(3)).count == 4);
  CHECK(relative_count(F5, F5, q(3), q(-3)).count == -4);

  CHECK_THROWS_AS((void)relative_count(F5, single(0), q(0), q(0)), Error);
}

TEST_CASE("property: relative counts against the oracle with both pairings") {
  std::mt19937_64 rng(2024);
  const auto draw = [&](long lo, long hi) {
    const long d = std::uniform_int_distribution<long>(1, 8)(rng);
    return q(std::uniform_int_distribution<long>(lo * d, hi * d)(rng), d);
  };
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int dim = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<Rational> a;
    std::vector<Rational> b0;
    std::vector<Rational> b1;
    for (int i = 0; i + 1 < dim; ++i) a.push_back(draw(-5, 0) - q(1, 8));
    for (int i = 0; i < dim; ++i) {
      b0.push_back(draw(-5, 5));
      b1.push_back(draw(-5, 5));
    }
    const JacobiMatrix<Rational> H0(dim + 1, a, b0);
    const JacobiMatrix<Rational> H1(dim + 1, a, b1);
    const Rational l0 = draw(-5, 5);
    const Rational l1 = draw(-5, 5);
    const auto r = relative_count(H0, H1, l0, l1);
    CHECK(r.minus_plus.count == r.plus_minus.count);
    CHECK(r.minus_plus.indicators.back() == 0);
    CHECK(r.plus_minus.indicators.back() == 0);

    // Self comparison: -1 exactly at eigenvalues, else 0.
    CHECK(relative_count(H0, H0, l0, l0).count == (is_eigenvalue(H0, l0) ? -1 : 0));

    try {
      const int expected = count_below_oracle(eigenvalues_dense(H1), l1.get_d(), true, 1e-6) -
                           count_below_oracle(eigenvalues_dense(H0), l0.get_d(), false, 1e-6);
      CHECK(r.count == expected);
      CHECK(count_below(H0, l0).count == count_below_oracle(eigenvalues_dense(H0), l0.get_d(), true, 1e-6));
      ++compared;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MarginViolation);
    }
  }
  CHECK(compared > 100);
}
