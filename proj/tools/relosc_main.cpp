// relosc: eigenvalue counting for Jacobi matrices via (relative) node counts.
//
//   relosc spectrum FILE
//   relosc count FILE --lambda V
//   relosc relative FILE0 FILE1 --lambda0 V --lambda1 V
//   relosc flow FILE0 FILE1 --steps K [--two-phase] [--csv] [--lambda V]
//   relosc verify --suite NAME --trials K --seed S [--min-dim D] [--max-dim D]
//
// One JSON report goes to stdout, a short human summary to stderr.
// Exit status: 0 success, 1 verification disagreement, 2 usage or input error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relosc/error.hpp"
#include "relosc/homotopy.hpp"
#include "relosc/matrix_io.hpp"
#include "relosc/oscillation.hpp"
#include "relosc/spectrum_oracle.hpp"
#include "relosc/verify.hpp"

namespace {

using nlohmann::json;
using namespace relosc;

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitInput = 2;

void emit(const json& report) { std::cout << report.dump(2) << '\n'; }

// Oracle value for a count, or null when lambda sits within the margin of
// an eigenvalue (the float comparison would be meaningless there).
json oracle_count(const SpectrumReport& s, double lambda, bool strict) {
  try {
    return count_below_oracle(s, lambda, strict, kOracleMargin);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MarginViolation) throw;
    return nullptr;
  }
}

json count_json(const CountReport& r) {
  return json{{"count", r.count},
              {"first_index", r.first_index},
              {"indicators", r.indicators},
              {"boundary_correction", r.boundary_correction},
              {"ambiguous_signs", r.ambiguous_signs},
              {"warnings", r.warnings}};
}

json spectrum_json(const SpectrumReport& s) {
  return json{{"eigenvalues", s.eigenvalues},
              {"method", s.method},
              {"max_offdiag_residual", s.max_offdiag_residual},
              {"sweeps", s.sweeps}};
}

NumericMode mode_for(const std::vector<MatrixText>& inputs) { return resolve_mode(inputs, mode_request_from_env()); }

struct SpectrumArgs {
  std::string file;
};

int run_spectrum(const SpectrumArgs& args) {
  const auto text = read_matrix_file(args.file);
  const auto mode = mode_for({text});
  const auto s = mode == NumericMode::Exact ? eigenvalues_dense(build_matrix<Rational>(text))
                                            : eigenvalues_dense(build_matrix<double>(text));
  json report{{"command", "spectrum"}, {"mode", std::string(to_string(mode))}, {"n", text.N}};
  report.update(spectrum_json(s));
  emit(report);
  std::cerr << "spectrum: " << s.eigenvalues.size() << " eigenvalues, " << s.sweeps << " sweeps\n";
  return kExitOk;
}

struct CountArgs {
  std::string file;
  std::string lambda;
};

template <Scalar T>
int count_in(const MatrixText& text, const std::string& lambda_text) {
  const auto H = build_matrix<T>(text);
  const T lambda = parse_scalar<T>(lambda_text);
  const auto got = count_below(H, lambda);
  const json oracle = oracle_count(eigenvalues_dense(H), to_double(lambda), true);
  const bool agree = oracle.is_null() || oracle.get<int>() == got.count;
  json report{{"command", "count"},
              {"mode", std::string(to_string(mode_of_v<T>))},
              {"lambda", scalar_to_json(lambda)},
              {"count", got.count},
              {"oracle", oracle},
              {"agree", oracle.is_null() ? json(nullptr) : json(agree)},
              {"details", count_json(got)}};
  emit(report);
  std::cerr << "count below " << lambda_text << ": " << got.count;
  if (oracle.is_null()) std::cerr << " (oracle skipped: eigenvalue within margin)";
  std::cerr << (agree ? "" : "  ORACLE DISAGREES") << '\n';
  return agree ? kExitOk : kExitDisagree;
}

int run_count(const CountArgs& args) {
  const auto text = read_matrix_file(args.file);
  return mode_for({text}) == NumericMode::Exact ? count_in<Rational>(text, args.lambda)
                                                : count_in<double>(text, args.lambda);
}

struct RelativeArgs {
  std::string file0;
  std::string file1;
  std::string lambda0;
  std::string lambda1;
};

template <Scalar T>
int relative_in(const MatrixText& t0, const MatrixText& t1, const RelativeArgs& args) {
  const auto H0 = build_matrix<T>(t0);
  const auto H1 = build_matrix<T>(t1);
  const T l0 = parse_scalar<T>(args.lambda0);
  const T l1 = parse_scalar<T>(args.lambda1);
  const auto got = relative_count(H0, H1, l0, l1);

  const json below1 = oracle_count(eigenvalues_dense(H1), to_double(l1), true);
  const json upto0 = oracle_count(eigenvalues_dense(H0), to_double(l0), false);
  json oracle = nullptr;
  if (!below1.is_null() && !upto0.is_null()) oracle = below1.get<int>() - upto0.get<int>();
  const bool agree = oracle.is_null() || oracle.get<int>() == got.count;

  json report{{"command", "relative"},
              {"mode", std::string(to_string(mode_of_v<T>))},
              {"lambda0", scalar_to_json(l0)},
              {"lambda1", scalar_to_json(l1)},
              {"relative_count", got.count},
              {"pairings_agree", got.minus_plus.count == got.plus_minus.count},
              {"oracle", oracle},
              {"agree", oracle.is_null() ? json(nullptr) : json(agree)},
              {"minus_plus", count_json(got.minus_plus)},
              {"plus_minus", count_json(got.plus_minus)},
              {"warnings", got.warnings}};
  emit(report);
  std::cerr << "relative count: " << got.count;
  if (oracle.is_null()) std::cerr << " (oracle skipped: eigenvalue within margin)";
  std::cerr << (agree ? "" : "  ORACLE DISAGREES") << '\n';
  return agree ? kExitOk : kExitDisagree;
}

int run_relative(const RelativeArgs& args) {
  const auto t0 = read_matrix_file(args.file0);
  const auto t1 = read_matrix_file(args.file1);
  return mode_for({t0, t1}) == NumericMode::Exact ? relative_in<Rational>(t0, t1, args)
                                                  : relative_in<double>(t0, t1, args);
}

struct FlowArgs {
  std::string file0;
  std::string file1;
  int steps = 100;
  bool two_phase = false;
  bool csv = false;
  std::string lambda;
};

const JacobiMatrix<double>& as_float(const JacobiMatrix<double>& H) { return H; }
JacobiMatrix<double> as_float(const JacobiMatrix<Rational>& H) { return to_float(H); }
JacobiMatrix<Rational> as_exact(const JacobiMatrix<double>& H) { return to_exact(H); }
const JacobiMatrix<Rational>& as_exact(const JacobiMatrix<Rational>& H) { return H; }

template <Scalar T>
int flow_in(const MatrixText& t0, const MatrixText& t1, const FlowArgs& args) {
  const auto H0 = build_matrix<T>(t0);
  const auto H1 = build_matrix<T>(t1);
  const auto kind = args.two_phase ? PathKind::TwoPhase : PathKind::Linear;
  const auto table = eigenvalue_branches(H0, H1, uniform_grid(args.steps), kind);

  if (args.csv) {
    std::cout << "eps";
    for (std::size_t k = 0; k < table.branches.front().size(); ++k) std::cout << ",e" << k;
    std::cout << '\n';
    for (std::size_t i = 0; i < table.grid.size(); ++i) {
      std::cout << format_double(table.grid[i]);
      for (double e : table.branches[i]) std::cout << ',' << format_double(e);
      std::cout << '\n';
    }
    std::cerr << "flow: " << table.grid.size() << " rows\n";
    return kExitOk;
  }

  json report{{"command", "flow"},
              {"mode", std::string(to_string(mode_of_v<T>))},
              {"path", args.two_phase ? "two-phase" : "linear"},
              {"grid", table.grid},
              {"branches", table.branches}};
  int status = kExitOk;
  if (!args.lambda.empty()) {
    const double lambda = parse_scalar<double>(args.lambda);
    const auto flow = spectral_flow_crossings(as_float(H0), as_float(H1), lambda);
    json crossings = json::array();
    for (const auto& c : flow.crossings) {
      crossings.push_back(
          {{"branch", c.branch}, {"eps_lo", c.eps_lo}, {"eps_hi", c.eps_hi}, {"direction", c.direction}});
    }
    // The reference count is exact even in float mode: the float input is
    // converted without rounding.
    const Rational exact = mode_of_v<T> == NumericMode::Exact ? parse_scalar<Rational>(args.lambda) : to_rational(lambda);
    const int relative = relative_count(as_exact(H0), as_exact(H1), exact, exact).count;
    report["lambda"] = lambda;
    report["crossings"] = crossings;
    report["signed_crossings"] = flow.signed_count;
    report["relative_count"] = relative;
    report["agree"] = relative == flow.signed_count;
    if (relative != flow.signed_count) status = kExitDisagree;
    std::cerr << "flow: " << flow.crossings.size() << " crossings, signed " << flow.signed_count
              << ", relative count " << relative << '\n';
  } else {
    std::cerr << "flow: " << table.grid.size() << " grid points\n";
  }
  emit(report);
  return status;
}

int run_flow(const FlowArgs& args) {
  const auto t0 = read_matrix_file(args.file0);
  const auto t1 = read_matrix_file(args.file1);
  return mode_for({t0, t1}) == NumericMode::Exact ? flow_in<Rational>(t0, t1, args) : flow_in<double>(t0, t1, args);
}

struct VerifyArgs {
  std::string suite = "all";
  int trials = 100;
  std::uint64_t seed = 0;
  int min_dim = 1;
  int max_dim = 12;
};

int run_verify(const VerifyArgs& args) {
  if (args.min_dim < 1 || args.max_dim < args.min_dim) {
    throw Error(ErrorCode::ParseError, "dimension range must satisfy 1 <= min-dim <= max-dim");
  }
  const CampaignConfig cfg{args.seed, args.trials, args.min_dim, args.max_dim};
  const auto reports = run_suite(args.suite, cfg);
  bool passed = true;
  json suites = json::array();
  for (const auto& r : reports) {
    passed = passed && r.passed();
    suites.push_back(r.to_json());
    std::cerr << r.suite << " [" << to_string(r.mode) << "]: " << r.trials << " trials, " << r.checks << " checks, "
              << r.failures.size() << " failures";
    if (r.redraws) std::cerr << ", " << r.redraws << " redraws";
    if (r.rejected) std::cerr << ", " << r.rejected << " rejected";
    std::cerr << (r.passed() ? "" : "  FAILED") << '\n';
  }
  emit(json{{"command", "verify"},
            {"suite", args.suite},
            {"seed", args.seed},
            {"trials", args.trials},
            {"min_dim", args.min_dim},
            {"max_dim", args.max_dim},
            {"passed", passed},
            {"suites", suites}});
  return passed ? kExitOk : kExitDisagree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue counting for Jacobi matrices via node and weighted node counts"};
  app.require_subcommand(1);

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Oracle spectrum of a matrix file");
  spectrum_cmd->add_option("file", spectrum.file, "Matrix file")->required();

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "Number of eigenvalues strictly below lambda");
  count_cmd->add_option("file", count.file, "Matrix file")->required();
  count_cmd->add_option("--lambda", count.lambda, "Spectral parameter (p/q or decimal)")->required();

  RelativeArgs relative;
  auto* relative_cmd =
      app.add_subcommand("relative", "#{E < lambda1 in sigma(H1)} - #{E <= lambda0 in sigma(H0)}");
  relative_cmd->add_option("file0", relative.file0, "Matrix file for H0")->required();
  relative_cmd->add_option("file1", relative.file1, "Matrix file for H1")->required();
  relative_cmd->add_option("--lambda0", relative.lambda0, "Spectral parameter for H0")->required();
  relative_cmd->add_option("--lambda1", relative.lambda1, "Spectral parameter for H1")->required();

  FlowArgs flow;
  auto* flow_cmd = app.add_subcommand("flow", "Eigenvalue branches along the path from H0 to H1");
  flow_cmd->add_option("file0", flow.file0, "Matrix file for H0")->required();
  flow_cmd->add_option("file1", flow.file1, "Matrix file for H1")->required();
  flow_cmd->add_option("--steps", flow.steps, "Grid intervals")->required()->check(CLI::Range(1, 100000));
  flow_cmd->add_flag("--two-phase", flow.two_phase, "Use the path through the lower envelope");
  flow_cmd->add_flag("--csv", flow.csv, "Write eps,e0,e1,... rows instead of JSON");
  flow_cmd->add_option("--lambda", flow.lambda, "Also count signed branch crossings through lambda");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Seeded randomized verification campaign");
  verify_cmd->add_option("--suite", verify.suite, "Suite name")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Trials per suite")->check(CLI::Range(0, 1000000));
  verify_cmd->add_option("--seed", verify.seed, "Campaign seed");
  verify_cmd->add_option("--min-dim", verify.min_dim, "Smallest matrix dimension")->check(CLI::Range(1, 200));
  verify_cmd->add_option("--max-dim", verify.max_dim, "Largest matrix dimension")->check(CLI::Range(1, 200));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*spectrum_cmd) return run_spectrum(spectrum);
    if (*count_cmd) return run_count(count);
    if (*relative_cmd) return run_relative(relative);
    if (*flow_cmd) return run_flow(flow);
    return run_verify(verify);
  } catch (const relosc::Error& e) {
    std::cerr << "relosc: " << e.what() << '\n';
    // Internal consistency failures are disagreements, not input errors.
    const bool disagreement =
        e.code() == ErrorCode::PairingDisagreement || e.code() == ErrorCode::InconsistentSigns;
    return disagreement ? kExitDisagree : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "relosc: " << e.what() << '\n';
    return kExitInput;
  }
}
