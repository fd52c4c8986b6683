#include <doctest.h>

#include "relosc/error.hpp"
#include "relosc/homotopy.hpp"
#include "relosc/oscillation.hpp"
#include "relosc/verify.hpp"

using namespace relosc;

TEST_CASE("instance generator is a function of seed, suite and trial") {
  InstanceGenerator a(42, "thm11", 3);
  InstanceGenerator b(42, "thm11", 3);
  InstanceGenerator c(42, "thm12", 3);
  InstanceGenerator d(43, "thm11", 3);
  const auto Ha = a.exact_matrix(6);
  CHECK(Ha == b.exact_matrix(6));
  CHECK_FALSE(Ha == c.exact_matrix(6));
  CHECK_FALSE(Ha == d.exact_matrix(6));
}

TEST_CASE("exact draws follow the campaign policy") {
  InstanceGenerator gen(1, "policy", 0);
  for (int i = 0; i < 500; ++i) {
    const Rational x = gen.rational();
    CHECK(x.get_den() <= 8);
    CHECK(abs(x) <= 5);
    const Rational y = gen.negative_rational();
    CHECK(y < 0);
    CHECK(y >= -5);
    const int dim = gen.dimension(1, 12);
    CHECK(dim >= 1);
    CHECK(dim <= 12);
  }
  const auto H = gen.exact_matrix(4);
  const auto P = gen.exact_partner(H);
  CHECK(P.shares_off_diagonal(H));
}

TEST_CASE("small campaigns pass and reports are reproducible") {
  const CampaignConfig cfg{.seed = 5, .trials = 12, .min_dim = 1, .max_dim = 6};
  for (const auto& name : {"thm11", "thm12", "pruefer", "homotopy", "oracle"}) {
    const auto first = run_suite(name, cfg);
    const auto second = run_suite(name, cfg);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      INFO(first[i].to_json().dump());
      CHECK(first[i].passed());
      CHECK(first[i].to_json() == second[i].to_json());
      CHECK(first[i].trials >= cfg.trials);
    }
  }
  CHECK(run_suite("all", cfg).size() == 7);
  CHECK_THROWS_AS((void)run_suite("nope", cfg), Error);
}

TEST_CASE("central differences of a 1x1 path") {
  // s_- = (0, 1, b_eps - z, ...) is linear in eps, so the difference quotient
  // is exact: d/deps u(2) = b1 - b0 and W_1 = a(1) (b1 - b0) = 2.
  const JacobiMatrix<Rational> H0(2, {}, {Rational(3)});
  const JacobiMatrix<Rational> H1(2, {}, {Rational(1)});
  const auto fd = central_difference_wronskian_derivative(H0, H1, Rational(1, 2), Rational(0), Side::Minus,
                                                          Rational(1, 1000000));
  REQUIRE(fd.size() == 3);
  CHECK(fd[0] == 0);
  CHECK(fd[1] == 2);
  CHECK(fd[1] == wronskian_eps_derivative(H0, H1, Rational(1, 2), Rational(0), Side::Minus, 1));
}
