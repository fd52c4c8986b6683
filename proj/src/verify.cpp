#include "relosc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "relosc/error.hpp"
#include "relosc/homotopy.hpp"
#include "relosc/matrix_io.hpp"
#include "relosc/oscillation.hpp"
#include "relosc/pruefer.hpp"
#include "relosc/spectrum_oracle.hpp"

namespace relosc {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

// Instance policies. Exact draws follow InstanceGenerator::rational(); the
// float suites use continuous draws with |a| bounded away from zero so that
// solutions stay within a dynamic range the zero-tolerance policy can resolve.
constexpr double kFloatRange = 5.0;
constexpr double kFloatOffDiagonalFloor = 0.125;
constexpr double kDerivativeRange = 3.0;
constexpr double kDerivativeOffDiagonalFloor = 0.5;
constexpr int kDerivativeMaxDim = 10;
constexpr int kCrossingMaxDim = 8;
constexpr int kMaxRedraws = 1000;
constexpr double kAngleSlack = 4 * kAngleBand;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Reject {
  std::string reason;
};

json error_json(const Error& e) { return json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}}; }

json indicator_json(const CountReport& r) {
  return json{{"count", r.count},
              {"first_index", r.first_index},
              {"indicators", r.indicators},
              {"boundary_correction", r.boundary_correction}};
}

template <Scalar T>
json pair_instance(const JacobiMatrix<T>& H0, const JacobiMatrix<T>& H1, const T& l0, const T& l1) {
  return json{{"h0", matrix_to_json(H0)},
              {"h1", matrix_to_json(H1)},
              {"lambda0", scalar_to_json(l0)},
              {"lambda1", scalar_to_json(l1)}};
}

JacobiMatrix<Rational> replace_last_diagonal(const JacobiMatrix<Rational>& H, const Rational& value) {
  std::vector<Rational> b(H.diagonal().begin(), H.diagonal().end());
  b.back() = value;
  return JacobiMatrix<Rational>(H.grid(), {H.off_diagonal().begin(), H.off_diagonal().end()}, std::move(b));
}

// Forces lambda into the spectrum by choosing b(N-1) so that s_-(lambda, N) = 0.
// s_-(lambda, n) for n <= N-1 does not depend on b(N-1).
std::optional<JacobiMatrix<Rational>> with_eigenvalue(const JacobiMatrix<Rational>& H, const Rational& lambda) {
  const int N = H.grid();
  const auto s = solve_minus(H, lambda);
  if (sgn(s[N - 1]) == 0) return std::nullopt;
  return replace_last_diagonal(H, Rational(lambda - H.a(N - 2) * s[N - 2] / s[N - 1]));
}

// Strict oracle count at a lambda that is known to be an eigenvalue.
int strict_count_at_eigenvalue(const SpectrumReport& s, double lambda) {
  return count_at_eigenvalue_oracle(s, lambda, kOracleMargin) - 1;
}

bool within(double x, double lo, double hi) { return x >= lo - kAngleSlack && x <= hi + kAngleSlack; }

// Collects the first failed property of a single Pruefer instance.
class PrueferChecker {
 public:
  explicit PrueferChecker(long& checks) : checks_(checks) {}

  void expect(bool ok, const std::string& what, json detail = json::object()) {
    ++checks_;
    if (!ok && !failure_) failure_ = json{{"check", what}, {"detail", std::move(detail)}};
  }
  [[nodiscard]] const std::optional<json>& failure() const noexcept { return failure_; }

  void single(const PrueferSequence& p, const std::string& label) {
    const auto& u = p.source();
    const int N = u.grid();
    const SignTest<double> signs(u.values(), p.tolerance());
    for (int n = 0; n <= N + 1; ++n) {
      if (signs.in_band(u[n])) throw Reject{label + ": u in tolerance band"};
    }
    for (int n = 0; n <= N; ++n) {
      const double r = p.rho(n);
      expect(std::abs(u[n] - r * std::sin(p.theta(n))) <= 1e-10 * r &&
                 std::abs(u[n + 1] - r * std::cos(p.theta(n))) <= 1e-10 * r,
             label + ": polar representation", {{"n", n}});
    }
    for (int n = 0; n < N; ++n) {
      const int c0 = p.ceil_over_pi(n);
      const int c1 = p.ceil_over_pi(n + 1);
      const bool node = is_node(u, n, p.tolerance());
      expect(c0 <= c1 && c1 <= c0 + 1, label + ": normalization chain", {{"n", n}, {"ceil", {c0, c1}}});
      expect(c1 == c0 + (node ? 1 : 0), label + ": branch step equals node indicator",
             {{"n", n}, {"ceil", {c0, c1}}, {"node", node}});

      const double k_pi = (c0 - 1) * kPi;
      const double gamma = p.theta(n) - k_pi;
      const double Gamma = p.theta(n + 1) - k_pi;
      const json where{{"n", n}, {"gamma", gamma}, {"big_gamma", Gamma}, {"node", node}};
      if (node) {
        expect(within(gamma, kPi / 2, kPi) && within(Gamma, kPi, 2 * kPi), label + ": node angle ranges", where);
      } else {
        expect(within(gamma, 0, kPi / 2) && within(Gamma, 0, kPi), label + ": non-node angle ranges", where);
      }
      const bool quarter = std::abs(gamma - kPi / 2) <= kAngleSlack;
      if (quarter != p.on_axis(n + 1)) {
        if (quarter) throw Reject{label + ": angle within band of pi/2"};
        expect(false, label + ": u(n+1) = 0 iff gamma = pi/2", where);
      }
      if (p.on_axis(n + 1)) {
        expect(std::abs(Gamma - kPi) <= kAngleSlack, label + ": u(n+1) = 0 puts theta(n+1) on (k+1) pi", where);
      }
    }
    const int direct = count_nodes(u, 0, N, p.tolerance()).count;
    const int angles = node_count_via_angles(p);
    expect(direct == angles, label + ": node count via angles", {{"direct", direct}, {"angles", angles}});
    const auto moved = p.shifted(1);
    expect(node_count_via_angles(moved) == angles && moved.ceil_over_pi(N) == p.ceil_over_pi(N) + 2,
           label + ": 2 pi shift invariance");
  }

  void pair(const PrueferSequence& p0, const PrueferSequence& p1, const WronskianSequence<double>& w,
            const JacobiMatrix<double>& H, const std::string& label) {
    const int N = w.grid();
    const auto d = relative_angle_sequence(p0, p1);
    const auto wsigns = w.sign_test(p0.tolerance());
    const SignTest<double> dsigns(w.b_diffs(), p0.tolerance());
    for (int n = 0; n <= N; ++n) {
      if (wsigns.in_band(w[n]) || d.cross_in_band(n)) throw Reject{label + ": Wronskian in tolerance band"};
      if (n >= 1 && dsigns.in_band(w.b_diff(n))) throw Reject{label + ": weight in tolerance band"};
    }
    for (int n = 0; n <= N; ++n) {
      const double scale = -H.a(n) * p0.rho(n) * p1.rho(n);
      const double s = std::sin(d.delta(n));
      expect(std::abs(w[n] - scale * s) <= 1e-9 * scale, label + ": Wronskian from angle difference",
             {{"n", n}, {"w", w[n]}, {"from_angles", scale * s}});
      const int ws = wsigns.sign(w[n]);
      if (ws != 0 && std::abs(s) > kAngleSlack) {
        expect((s > 0 ? 1 : -1) == ws, label + ": sign of sin(delta) matches W", {{"n", n}});
      }
    }
    for (int n = 0; n < N; ++n) {
      const int e0 = d.ceil_over_pi(n);
      const int e1 = d.ceil_over_pi(n + 1);
      const int bd = dsigns.sign(w.b_diff(n + 1));
      const json where{{"n", n}, {"ceil", {e0, e1}}, {"weight_sign", bd}};

      const bool node0 = is_node(p0.source(), n, p0.tolerance());
      const bool node1 = is_node(p1.source(), n, p1.tolerance());
      const double base0 = (p0.ceil_over_pi(n) - 1) * kPi;
      const double base1 = (p1.ceil_over_pi(n) - 1) * kPi;
      const double dg = (p1.theta(n) - base1) - (p0.theta(n) - base0);
      const double dG = (p1.theta(n + 1) - base1) - (p0.theta(n + 1) - base0);
      const json angles{{"n", n}, {"node0", node0}, {"node1", node1}, {"dgamma", dg}, {"dbig_gamma", dG}};
      if (node0 == node1) {
        expect(within(dg, -kPi / 2, kPi / 2) && within(dG, -kPi, kPi), label + ": paired angle ranges (same)",
               angles);
      } else if (node0) {
        expect(within(dg, -kPi, 0) && within(dG, -2 * kPi, 0), label + ": paired angle ranges (u0 node)", angles);
      } else {
        expect(within(dg, 0, kPi) && within(dG, 0, 2 * kPi), label + ": paired angle ranges (u1 node)", angles);
      }

      if (bd >= 0) expect(e0 <= e1 && e1 <= e0 + 1, label + ": relative chain for b0 >= b1", where);
      if (bd <= 0) expect(e0 - 1 <= e1 && e1 <= e0, label + ": relative chain for b0 <= b1", where);

      const int w0 = wsigns.sign(w[n]);
      const int w1 = wsigns.sign(w[n + 1]);
      std::optional<int> step;
      if ((w0 == 0 && w1 == 0) || w0 * w1 > 0) {
        step = 0;
      } else if (bd == 0) {
        expect(false, label + ": Wronskian changes across a zero weight", where);
      } else if (w0 * w1 < 0) {
        step = bd;
      } else if (w0 == 0) {
        step = bd > 0 ? 1 : 0;
      } else {
        step = bd > 0 ? 0 : -1;
      }
      if (step) expect(e1 == e0 + *step, label + ": relative branch case table", where);
    }
    const int direct = weighted_node_count(w, p0.tolerance()).count;
    const int angles = weighted_count_via_angles(d);
    expect(direct == angles, label + ": weighted count via angles", {{"direct", direct}, {"angles", angles}});
    const int shifted = weighted_count_via_angles(relative_angle_sequence(p0.shifted(1), p1.shifted(2)));
    expect(shifted == angles, label + ": weighted count 2 pi shift invariance");
  }

 private:
  long& checks_;
  std::optional<json> failure_;
};

template <class Trial>
void run_trials(SuiteReport& report, const CampaignConfig& cfg, int trials, Trial&& trial) {
  for (int t = 0; t < trials; ++t) {
    InstanceGenerator gen(cfg.seed, report.suite, t);
    trial(gen, t);
  }
  report.trials += trials;
}

void add_failure(SuiteReport& report, int trial, json body) {
  body["trial"] = trial;
  report.failures.push_back(std::move(body));
}

}  // namespace

json SuiteReport::to_json() const {
  return json{{"suite", suite},       {"mode", std::string(relosc::to_string(mode))},
              {"trials", trials},     {"redraws", redraws},
              {"rejected", rejected}, {"checks", checks},
              {"passed", passed()},   {"summary", extra},
              {"failures", failures}};
}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, std::string_view suite, int trial) {
  const std::uint64_t tag = fnv1a(suite);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32),
                    static_cast<std::uint32_t>(trial)};
  rng_.seed(seq);
}

int InstanceGenerator::dimension(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rational InstanceGenerator::rational() {
  const long D = std::uniform_int_distribution<long>(1, 8)(rng_);
  const long p = std::uniform_int_distribution<long>(-5 * D, 5 * D)(rng_);
  Rational q(p, D);
  q.canonicalize();
  return q;
}

Rational InstanceGenerator::negative_rational() {
  const long D = std::uniform_int_distribution<long>(1, 8)(rng_);
  const long p = std::uniform_int_distribution<long>(-5 * D, -1)(rng_);
  Rational q(p, D);
  q.canonicalize();
  return q;
}

double InstanceGenerator::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

bool InstanceGenerator::coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }

JacobiMatrix<Rational> InstanceGenerator::exact_matrix(int dim) {
  std::vector<Rational> a;
  std::vector<Rational> b;
  for (int i = 0; i + 1 < dim; ++i) a.push_back(negative_rational());
  for (int i = 0; i < dim; ++i) b.push_back(rational());
  return JacobiMatrix<Rational>(dim + 1, std::move(a), std::move(b));
}

JacobiMatrix<Rational> InstanceGenerator::exact_partner(const JacobiMatrix<Rational>& H) {
  std::vector<Rational> b;
  for (int i = 0; i < H.dimension(); ++i) b.push_back(rational());
  return JacobiMatrix<Rational>(H.grid(), {H.off_diagonal().begin(), H.off_diagonal().end()}, std::move(b));
}

JacobiMatrix<double> InstanceGenerator::float_matrix(int dim, double range, double a_floor) {
  std::vector<double> a;
  std::vector<double> b;
  for (int i = 0; i + 1 < dim; ++i) a.push_back(uniform(-range, -a_floor));
  for (int i = 0; i < dim; ++i) b.push_back(uniform(-range, range));
  return JacobiMatrix<double>(dim + 1, std::move(a), std::move(b));
}

JacobiMatrix<double> InstanceGenerator::float_partner(const JacobiMatrix<double>& H, double range) {
  std::vector<double> b;
  for (int i = 0; i < H.dimension(); ++i) b.push_back(uniform(-range, range));
  return JacobiMatrix<double>(H.grid(), {H.off_diagonal().begin(), H.off_diagonal().end()}, std::move(b));
}

std::vector<Rational> central_difference_wronskian_derivative(const JacobiMatrix<Rational>& H0,
                                                              const JacobiMatrix<Rational>& H1, const Rational& eps,
                                                              const Rational& z, Side side, const Rational& h) {
  if (side == Side::Custom) throw Error(ErrorCode::ParseError, "finite differences need side minus or plus");
  const auto solve = [&](const Rational& e) {
    const auto H = interpolate(H0, H1, e);
    return side == Side::Plus ? solve_plus(H, z) : solve_minus(H, z);
  };
  const auto s = solve(eps);
  const auto up = solve(Rational(eps + h));
  const auto down = solve(Rational(eps - h));
  const Rational two_h = 2 * h;
  const auto ds = [&](int k) { return Rational((up[k] - down[k]) / two_h); };
  std::vector<Rational> out;
  for (int n = 0; n <= H0.grid(); ++n) {
    out.emplace_back(H0.a(n) * (s[n] * ds(n + 1) - s[n + 1] * ds(n)));
  }
  return out;
}

SuiteReport verify_count_below(const CampaignConfig& cfg) {
  SuiteReport report{.suite = "thm11", .mode = NumericMode::Exact};
  run_trials(report, cfg, cfg.trials, [&](InstanceGenerator& gen, int t) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      const auto H = gen.exact_matrix(gen.dimension(cfg.min_dim, cfg.max_dim));
      const Rational lambda = gen.rational();
      int expected = 0;
      try {
        expected = count_below_oracle(eigenvalues_dense(H), to_double(lambda), true, kOracleMargin);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MarginViolation) throw;
        ++report.redraws;
        continue;
      }
      const json instance{{"h", matrix_to_json(H)}, {"lambda", format_rational(lambda)}};
      ++report.checks;
      try {
        const auto got = count_below(H, lambda);
        if (got.count != expected) {
          add_failure(report, t,
                      {{"check", "count_below vs oracle"},
                       {"instance", instance},
                       {"expected", expected},
                       {"actual", got.count},
                       {"details", indicator_json(got)}});
        }
      } catch (const Error& e) {
        add_failure(report, t, {{"check", "count_below raised"}, {"instance", instance}, {"error", error_json(e)}});
      }
      return;
    }
    add_failure(report, t, {{"check", "redraw limit"}});
  });
  return report;
}

namespace {

void check_relative(SuiteReport& report, int t, const JacobiMatrix<Rational>& H0, const JacobiMatrix<Rational>& H1,
                    const Rational& l0, const Rational& l1, int expected, const char* kind) {
  const json instance = pair_instance(H0, H1, l0, l1);
  report.checks += 3;
  try {
    const auto got = relative_count(H0, H1, l0, l1);
    const bool terminal_ok =
        got.minus_plus.indicators.back() == 0 && got.plus_minus.indicators.back() == 0;
    if (got.count != expected || !terminal_ok) {
      add_failure(report, t,
                  {{"check", std::string("relative_count vs oracle (") + kind + ")"},
                   {"instance", instance},
                   {"expected", expected},
                   {"actual", got.count},
                   {"terminal_indicators_zero", terminal_ok},
                   {"details", {{"minus_plus", indicator_json(got.minus_plus)},
                                {"plus_minus", indicator_json(got.plus_minus)}}}});
    }
  } catch (const Error& e) {
    add_failure(report, t, {{"check", "relative_count raised"}, {"instance", instance}, {"error", error_json(e)}});
  }
}

}  // namespace

SuiteReport verify_relative_count(const CampaignConfig& cfg) {
  SuiteReport report{.suite = "thm12", .mode = NumericMode::Exact};
  run_trials(report, cfg, cfg.trials, [&](InstanceGenerator& gen, int t) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      const auto H0 = gen.exact_matrix(gen.dimension(cfg.min_dim, cfg.max_dim));
      const auto H1 = gen.exact_partner(H0);
      const Rational l0 = gen.rational();
      const Rational l1 = gen.rational();
      int expected = 0;
      try {
        expected = count_below_oracle(eigenvalues_dense(H1), to_double(l1), true, kOracleMargin) -
                   count_below_oracle(eigenvalues_dense(H0), to_double(l0), false, kOracleMargin);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MarginViolation) throw;
        ++report.redraws;
        continue;
      }
      check_relative(report, t, H0, H1, l0, l1, expected, "random");
      return;
    }
    add_failure(report, t, {{"check", "redraw limit"}});
  });

  // lambda0 forced into sigma(H0), exercising the non-strict side exactly.
  // Variant 0 compares H0 with itself, variant 2 also puts lambda1 into sigma(H1).
  const int constructed = cfg.trials / 5;
  SuiteReport eigen{.suite = "thm12-eigenvalue", .mode = NumericMode::Exact};
  run_trials(eigen, cfg, constructed, [&](InstanceGenerator& gen, int t) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      const auto base = gen.exact_matrix(gen.dimension(cfg.min_dim, cfg.max_dim));
      const Rational l0 = gen.rational();
      const auto H0 = with_eigenvalue(base, l0);
      const int variant = std::uniform_int_distribution<int>(0, 2)(gen.engine());
      std::optional<JacobiMatrix<Rational>> H1 = H0;
      if (variant != 0) H1 = gen.exact_partner(base);
      const Rational l1 = variant == 0 ? l0 : gen.rational();
      if (variant == 2 && H1) H1 = with_eigenvalue(*H1, l1);
      if (!H0 || !H1) {
        ++report.redraws;
        continue;
      }
      report.checks += 2;
      if (!is_eigenvalue(*H0, l0) || (variant != 1 && !is_eigenvalue(*H1, l1))) {
        add_failure(report, t,
                    {{"check", "constructed eigenvalue"}, {"instance", pair_instance(*H0, *H1, l0, l1)}});
        return;
      }
      int expected = 0;
      try {
        const auto s0 = eigenvalues_dense(*H0);
        const auto s1 = eigenvalues_dense(*H1);
        const int below1 = variant == 1 ? count_below_oracle(s1, to_double(l1), true, kOracleMargin)
                                        : strict_count_at_eigenvalue(s1, to_double(l1));
        expected = below1 - count_at_eigenvalue_oracle(s0, to_double(l0), kOracleMargin);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MarginViolation) throw;
        ++report.redraws;
        continue;
      }
      check_relative(report, cfg.trials + t, *H0, *H1, l0, l1, expected, "eigenvalue");
      return;
    }
    add_failure(report, cfg.trials + t, {{"check", "redraw limit"}});
  });
  report.trials += eigen.trials;
  report.extra = json{{"random_pairs", cfg.trials}, {"eigenvalue_pairs", constructed}};
  return report;
}

SuiteReport verify_pruefer(const CampaignConfig& cfg) {
  SuiteReport report{.suite = "pruefer", .mode = NumericMode::Float};
  run_trials(report, cfg, cfg.trials, [&](InstanceGenerator& gen, int t) {
    const auto H0 = gen.float_matrix(gen.dimension(cfg.min_dim, cfg.max_dim), kFloatRange, kFloatOffDiagonalFloor);
    const auto H1 = gen.float_partner(H0, kFloatRange);
    const double l0 = gen.uniform(-kFloatRange, kFloatRange);
    const double l1 = gen.uniform(-kFloatRange, kFloatRange);
    const double alpha = gen.uniform(-1, 1);
    const double beta = gen.uniform(-1, 1);
    const double gamma = gen.uniform(-1, 1);
    const double delta = gen.uniform(-1, 1);
    json instance = pair_instance(H0, H1, l0, l1);
    instance["custom0"] = {alpha, beta};
    instance["custom1"] = {gamma, delta};

    PrueferChecker check(report.checks);
    try {
      const struct {
        SolutionSequence<double> u0;
        SolutionSequence<double> u1;
        const char* label;
      } pairs[] = {
          {solve_minus(H0, l0), solve_plus(H1, l1), "minus-plus"},
          {solve_plus(H0, l0), solve_minus(H1, l1), "plus-minus"},
          {solve_initial(H0, l0, alpha, beta), solve_initial(H1, l1, gamma, delta), "custom"},
      };
      for (const auto& pr : pairs) {
        const auto p0 = pruefer_sequence(pr.u0);
        const auto p1 = pruefer_sequence(pr.u1);
        check.single(p0, std::string(pr.label) + "/u0");
        check.single(p1, std::string(pr.label) + "/u1");
        check.pair(p0, p1, wronskian_sequence(H0, pr.u0, H1, pr.u1), H0, pr.label);
      }
    } catch (const Reject&) {
      ++report.rejected;
      return;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BranchAmbiguity) {
        ++report.rejected;
        return;
      }
      add_failure(report, t, {{"check", "raised"}, {"instance", instance}, {"error", error_json(e)}});
      return;
    }
    if (check.failure()) {
      json body = *check.failure();
      body["instance"] = instance;
      add_failure(report, t, std::move(body));
    }
  });
  const double rate = report.trials == 0 ? 0.0 : static_cast<double>(report.rejected) / report.trials;
  report.extra = json{{"rejection_rate", rate}, {"rejection_gate", 0.01}, {"gate_ok", rate < 0.01}};
  return report;
}

SuiteReport verify_wronskian_derivative(const CampaignConfig& cfg) {
  SuiteReport report{.suite = "wronskian_derivative", .mode = NumericMode::Float};
  const Rational h(1, 1000000);
  const double eps_values[] = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  double worst = 0.0;
  run_trials(report, cfg, cfg.trials, [&](InstanceGenerator& gen, int t) {
    const int dim = gen.dimension(cfg.min_dim, std::max(cfg.min_dim, std::min(cfg.max_dim, kDerivativeMaxDim)));
    const auto H0 = gen.float_matrix(dim, kDerivativeRange, kDerivativeOffDiagonalFloor);
    const auto H1 = gen.float_partner(H0, kDerivativeRange);
    const double z = gen.uniform(-kDerivativeRange, kDerivativeRange);
    const auto E0 = to_exact(H0);
    const auto E1 = to_exact(H1);
    bool failed = false;
    for (double eps : eps_values) {
      for (Side side : {Side::Minus, Side::Plus}) {
        const auto fd = central_difference_wronskian_derivative(E0, E1, to_rational(eps), to_rational(z), side, h);
        for (int n = 0; n <= H0.grid(); ++n) {
          const double closed = wronskian_eps_derivative(H0, H1, eps, z, side, n);
          const double oracle = to_double(fd[static_cast<std::size_t>(n)]);
          const double diff = std::abs(closed - oracle);
          ++report.checks;
          if (std::abs(oracle) > 1e-9) worst = std::max(worst, diff / std::abs(oracle));
          if (!failed && diff > std::max(1e-9, 1e-6 * std::abs(oracle))) {
            failed = true;
            add_failure(report, t,
                        {{"check", "closed sum vs central difference"},
                         {"instance", {{"h0", matrix_to_json(H0)}, {"h1", matrix_to_json(H1)}, {"z", z}}},
                         {"eps", eps},
                         {"side", std::string(to_string(side))},
                         {"n", n},
                         {"expected", oracle},
                         {"actual", closed}});
          }
        }
      }
    }
  });
  report.extra = json{{"max_relative_error", worst}};
  return report;
}

SuiteReport verify_monotone_flow(const CampaignConfig& cfg) {
  SuiteReport report{.suite = "monotone_flow", .mode = NumericMode::Float};
  const auto grid = uniform_grid(100);
  const double eps_samples[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  run_trials(report, cfg, cfg.trials, [&](InstanceGenerator& gen, int t) {
    const auto H0 = gen.float_matrix(gen.dimension(cfg.min_dim, cfg.max_dim), kFloatRange, kFloatOffDiagonalFloor);
    // direction = sign of b0 - b1 (entrywise, some entries left equal).
    const int direction = gen.coin() ? 1 : -1;
    std::vector<double> b1;
    for (double b : H0.diagonal()) b1.push_back(gen.coin() ? b : b - direction * gen.uniform(0, 3));
    const JacobiMatrix<double> H1(H0.grid(), {H0.off_diagonal().begin(), H0.off_diagonal().end()}, b1);
    const double z = gen.uniform(-kFloatRange, kFloatRange);
    const json instance{{"h0", matrix_to_json(H0)}, {"h1", matrix_to_json(H1)}, {"z", z}, {"direction", direction}};

    const auto table = eigenvalue_branches(H0, H1, grid, PathKind::Linear);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      for (std::size_t k = 0; k < table.branches[i].size(); ++k) {
        const double step = table.branches[i + 1][k] - table.branches[i][k];
        ++report.checks;
        if (direction * step > 1e-10) {
          add_failure(report, t,
                      {{"check", "branch monotonicity"},
                       {"instance", instance},
                       {"branch", k},
                       {"eps", grid[i]},
                       {"step", step}});
          return;
        }
      }
    }
    for (double eps : eps_samples) {
      for (Side side : {Side::Minus, Side::Plus}) {
        // Minus side moves with the sign of b0 - b1, plus side against it.
        const int expected = side == Side::Minus ? direction : -direction;
        for (int n = 0; n <= H0.grid(); ++n) {
          const double v = pruefer_eps_derivative(H0, H1, eps, z, side, n);
          ++report.checks;
          if (expected * v < 0) {
            add_failure(report, t,
                        {{"check", "theta-dot sign"},
                         {"instance", instance},
                         {"eps", eps},
                         {"side", std::string(to_string(side))},
                         {"n", n},
                         {"value", v}});
            return;
          }
        }
      }
    }
  });
  return report;
}

SuiteReport verify_crossings(const CampaignConfig& cfg) {
  SuiteReport report{.suite = "crossings", .mode = NumericMode::Float};
  int total = 0;
  run_trials(report, cfg, cfg.trials, [&](InstanceGenerator& gen, int t) {
    const int hi = std::max(cfg.min_dim, std::min(cfg.max_dim, kCrossingMaxDim));
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      const auto H0 = gen.float_matrix(gen.dimension(cfg.min_dim, hi), kFloatRange, kFloatOffDiagonalFloor);
      const auto H1 = gen.float_partner(H0, kFloatRange);
      const double lambda = gen.uniform(-kFloatRange, kFloatRange);
      try {
        count_below_oracle(eigenvalues_dense(H0), lambda, true, kOracleMargin);
        count_below_oracle(eigenvalues_dense(H1), lambda, true, kOracleMargin);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MarginViolation) throw;
        ++report.redraws;
        continue;
      }
      const json instance = pair_instance(H0, H1, lambda, lambda);
      const auto flow = spectral_flow_crossings(H0, H1, lambda);
      const Rational exact_lambda = to_rational(lambda);
      const int expected = relative_count(to_exact(H0), to_exact(H1), exact_lambda, exact_lambda).count;
      total += static_cast<int>(flow.crossings.size());

      json crossings = json::array();
      bool phases_ok = true;
      std::vector<int> seen(2 * static_cast<std::size_t>(H0.dimension()), 0);
      for (const auto& c : flow.crossings) {
        crossings.push_back({{"branch", c.branch}, {"eps", {c.eps_lo, c.eps_hi}}, {"direction", c.direction}});
        const int phase = c.eps_hi <= 0.5 ? 0 : 1;
        // Phase one lowers the diagonal, phase two raises it.
        if (c.direction != (phase == 0 ? 1 : -1)) phases_ok = false;
        if (++seen[static_cast<std::size_t>(2 * c.branch + phase)] > 1) phases_ok = false;
      }
      report.checks += 2;
      if (flow.signed_count != expected || !phases_ok) {
        add_failure(report, t,
                    {{"check", flow.signed_count != expected ? "signed crossings vs relative_count"
                                                              : "crossing direction per phase"},
                     {"instance", instance},
                     {"expected", expected},
                     {"actual", flow.signed_count},
                     {"crossings", crossings}});
      }
      return;
    }
    add_failure(report, t, {{"check", "redraw limit"}});
  });
  report.extra = json{{"crossings", total}};
  return report;
}

SuiteReport verify_oracle(const CampaignConfig& cfg) {
  SuiteReport report{.suite = "oracle", .mode = NumericMode::Float};
  double free_error = 0.0;
  for (int N = 2; N <= 50; ++N) {
    const auto got = eigenvalues_dense(JacobiMatrix<double>::free(N)).eigenvalues;
    const auto want = free_matrix_spectrum(N);
    for (std::size_t k = 0; k < want.size(); ++k) free_error = std::max(free_error, std::abs(got[k] - want[k]));
    ++report.checks;
  }
  if (free_error > 1e-10) {
    add_failure(report, -1, {{"check", "free spectrum closed form"}, {"max_error", free_error}});
  }
  run_trials(report, cfg, cfg.trials, [&](InstanceGenerator& gen, int t) {
    const auto H = gen.float_matrix(gen.dimension(cfg.min_dim, cfg.max_dim), kFloatRange, kFloatOffDiagonalFloor);
    const auto ev = eigenvalues_dense(H).eigenvalues;
    const double norm = frobenius_norm(H);
    double trace = 0.0;
    double squares = 0.0;
    for (double b : H.diagonal()) trace += b;
    for (double e : ev) {
      trace -= e;
      squares += e * e;
    }
    bool simple = ev.size() == static_cast<std::size_t>(H.dimension());
    for (std::size_t k = 0; k + 1 < ev.size(); ++k) simple = simple && ev[k + 1] > ev[k];
    const bool trace_ok = std::abs(trace) <= 1e-10 * norm;
    const bool frob_ok = std::abs(squares - norm * norm) <= 1e-10 * norm * norm;
    report.checks += 3;
    if (!trace_ok || !frob_ok || !simple) {
      add_failure(report, t,
                  {{"check", !trace_ok ? "trace identity" : !frob_ok ? "frobenius identity" : "simple spectrum"},
                   {"instance", {{"h", matrix_to_json(H)}}},
                   {"eigenvalues", ev}});
    }
  });
  report.extra = json{{"free_max_error", free_error}};
  return report;
}

std::vector<std::string> suite_names() { return {"thm11", "thm12", "pruefer", "homotopy", "oracle", "all"}; }

std::vector<SuiteReport> run_suite(std::string_view name, const CampaignConfig& cfg) {
  std::vector<SuiteReport> out;
  const bool all = name == "all";
  bool known = all;
  if (all || name == "thm11") {
    out.push_back(verify_count_below(cfg));
    known = true;
  }
  if (all || name == "thm12") {
    out.push_back(verify_relative_count(cfg));
    known = true;
  }
  if (all || name == "pruefer") {
    out.push_back(verify_pruefer(cfg));
    known = true;
  }
  if (all || name == "homotopy") {
    out.push_back(verify_wronskian_derivative(cfg));
    out.push_back(verify_monotone_flow(cfg));
    out.push_back(verify_crossings(cfg));
    known = true;
  }
  if (all || name == "oracle") {
    out.push_back(verify_oracle(cfg));
    known = true;
  }
  if (!known) throw Error(ErrorCode::ParseError, "unknown suite '" + std::string(name) + "'");
  return out;
}

}  // namespace relosc
