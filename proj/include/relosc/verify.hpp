#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "relosc/jacobi.hpp"
#include "relosc/recurrence.hpp"
#include "relosc/scalar.hpp"

namespace relosc {

/// Seeded randomized verification campaigns. Every trial draws from its own
/// generator seeded with (seed, suite, trial), so reports do not depend on
/// evaluation order.
struct CampaignConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  int min_dim = 1;
  int max_dim = 12;
};

struct SuiteReport {
  std::string suite;
  NumericMode mode = NumericMode::Exact;
  int trials = 0;
  /// Instances redrawn because the float oracle could not decide (margin guard).
  int redraws = 0;
  /// Float instances skipped because a sign decision fell in the tolerance band.
  int rejected = 0;
  /// Individual property evaluations.
  long checks = 0;
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json extra = nlohmann::json::object();

  [[nodiscard]] bool passed() const { return failures.empty() && extra.value("gate_ok", true); }
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Margin for comparing rational lambda against float eigenvalues.
inline constexpr double kOracleMargin = 1e-6;

/// Random instances following the campaign policy: exact entries p/D with
/// D uniform in [1, 8] and p uniform in [-5D, 5D] (off-diagonals: [-5D, -1]).
class InstanceGenerator {
 public:
  InstanceGenerator(std::uint64_t seed, std::string_view suite, int trial);

  int dimension(int lo, int hi);
  Rational rational();
  Rational negative_rational();
  double uniform(double lo, double hi);
  bool coin();

  JacobiMatrix<Rational> exact_matrix(int dim);
  /// Same N and a as H, fresh diagonal.
  JacobiMatrix<Rational> exact_partner(const JacobiMatrix<Rational>& H);
  /// b uniform in [-range, range], a uniform in [-range, -a_floor].
  JacobiMatrix<double> float_matrix(int dim, double range, double a_floor);
  JacobiMatrix<double> float_partner(const JacobiMatrix<double>& H, double range);

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Independent oracle for the eps-derivative of the Wronskian:
/// W_n(s_eps, (s_{eps+h} - s_{eps-h}) / (2h)) for n = 0..N, in exact arithmetic.
std::vector<Rational> central_difference_wronskian_derivative(const JacobiMatrix<Rational>& H0,
                                                              const JacobiMatrix<Rational>& H1, const Rational& eps,
                                                              const Rational& z, Side side, const Rational& h);

/// count_below vs the strict oracle count (exact mode).
SuiteReport verify_count_below(const CampaignConfig& cfg);
/// Both relative-count pairings vs the oracle difference; cfg.trials random
/// pairs plus cfg.trials / 5 pairs whose lambda0 is an exact eigenvalue of H0.
SuiteReport verify_relative_count(const CampaignConfig& cfg);
/// Pruefer angle identities and angle-vs-sign count agreement (float mode).
SuiteReport verify_pruefer(const CampaignConfig& cfg);
/// Closed-sum eps-derivative of the Wronskian vs central differences.
SuiteReport verify_wronskian_derivative(const CampaignConfig& cfg);
/// Monotone eigenvalue branches and theta-dot signs for sign-definite pairs.
SuiteReport verify_monotone_flow(const CampaignConfig& cfg);
/// Signed branch crossings along the two-phase path vs relative_count.
SuiteReport verify_crossings(const CampaignConfig& cfg);
/// Oracle quality: free closed form, trace and Frobenius identities, simple spectrum.
SuiteReport verify_oracle(const CampaignConfig& cfg);

/// Suite names accepted by run_suite: thm11, thm12, pruefer, homotopy
/// (Wronskian derivative + monotone flow + crossings), oracle, all.
std::vector<std::string> suite_names();
std::vector<SuiteReport> run_suite(std::string_view name, const CampaignConfig& cfg);

}  // namespace relosc
