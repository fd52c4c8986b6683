// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Tolerances live in the suites themselves; this file only fixes the campaign
// sizes, seeds and wall-clock budgets.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "relosc/oscillation.hpp"
#include "relosc/verify.hpp"

using namespace relosc;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string brief(const SuiteReport& r) {
  std::ostringstream os;
  os << r.trials << " trials, " << r.checks << " checks, " << r.failures.size() << " failures";
  if (r.redraws) os << ", " << r.redraws << " redraws";
  if (r.rejected) os << ", " << r.rejected << " rejected";
  if (!r.failures.empty()) os << "; first: " << r.failures.front().dump();
  return os.str();
}

Outcome suite_outcome(const SuiteReport& r) { return {r.passed(), brief(r)}; }

int failed = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed <= budget_s;
  const bool pass = out.ok && in_time;
  if (!pass) ++failed;
  std::printf("%s %d %s (%.2fs / %.0fs budget%s) %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), elapsed, budget_s,
              in_time ? "" : ", over budget", out.detail.c_str());
  std::fflush(stdout);
}

CampaignConfig campaign(std::uint64_t seed, int trials, int max_dim = 12) { return {seed, trials, 1, max_dim}; }

Rational q(long p) { return Rational(p); }

JacobiMatrix<Rational> single(long b) { return JacobiMatrix<Rational>(2, {}, {q(b)}); }

struct Captured {
  int status = -1;
  std::string out;
};

Captured capture(const std::string& cmd) {
  Captured c;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return c;
  std::array<char, 1 << 14> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

}  // namespace

int main() {
  criterion(1, "eigenvalue count equals node count (500 exact instances)", 10,
            [] { return suite_outcome(verify_count_below(campaign(42, 500))); });

  criterion(2, "relative count equals weighted node count (500 exact pairs + 100 constructed)", 20,
            [] { return suite_outcome(verify_relative_count(campaign(42, 500))); });

  criterion(3, "hand-worked fixtures", 1, [] {
    const int zero = relative_count(single(0), single(0), q(0), q(0)).count;
    const int flip = relative_count(single(1), single(-1), q(0), q(0)).count;
    const int free5 = count_below(JacobiMatrix<Rational>::free(5), q(0)).count;
    std::ostringstream os;
    os << "relative([[0]],[[0]]) = " << zero << ", relative([[1]],[[-1]]) = " << flip << ", count(F5, 0) = " << free5;
    return Outcome{zero == -1 && flip == 1 && free5 == 2, os.str()};
  });

  criterion(4, "Pruefer angle consistency (500 float instances)", 10, [] {
    const auto r = verify_pruefer(campaign(42, 500));
    auto out = suite_outcome(r);
    out.detail += ", rejection rate " + r.extra.value("rejection_rate", nlohmann::json(nullptr)).dump();
    return out;
  });

  criterion(5, "Wronskian eps-derivative vs central differences (100 float instances)", 10, [] {
    const auto r = verify_wronskian_derivative(campaign(42, 100, 10));
    auto out = suite_outcome(r);
    out.detail += ", max relative error " + r.extra.value("max_relative_error", nlohmann::json(nullptr)).dump();
    return out;
  });

  criterion(6, "monotone eigenvalue flow (50 sign-definite pairs)", 30,
            [] { return suite_outcome(verify_monotone_flow(campaign(42, 50))); });

  criterion(7, "oracle quality gates (free N <= 50, 200 random instances)", 5,
            [] { return suite_outcome(verify_oracle(campaign(42, 200))); });

  criterion(8, "CLI verify determinism (--suite all --trials 100 --seed 7)", 60, [] {
    const std::string cmd = std::string(RELOSC_CLI) + " verify --suite all --trials 100 --seed 7 2>/dev/null";
    const auto first = capture(cmd);
    const auto second = capture(cmd);
    std::ostringstream os;
    os << "exit " << first.status << "/" << second.status << ", " << first.out.size() << " bytes, "
       << (first.out == second.out ? "identical" : "DIFFERENT");
    const bool ok = first.status == 0 && second.status == 0 && !first.out.empty() && first.out == second.out;
    return Outcome{ok, os.str()};
  });

  std::printf("%s: %d criteria failed\n", failed == 0 ? "ACCEPTED" : "REJECTED", failed);
  return failed == 0 ? 0 : 1;
}
