// Command-line surface: closed-form protocol analysis, figure-data emission,
// fair-protocol optimization, and seeded Monte Carlo experiments.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "csqbc/bounds.hpp"
#include "csqbc/format.hpp"
#include "csqbc/protocol.hpp"
#include "csqbc/simulation.hpp"

namespace {

using namespace csqbc;

sim::ProtocolSpec resolve_protocol(const std::string& name_or_path,
                                   std::optional<double> zeta_override) {
  sim::ProtocolSpec spec = [&] {
    try {
      return sim::builtin_protocol(name_or_path);
    } catch (const UnknownProtocol&) {
      if (!std::filesystem::exists(name_or_path)) {
        throw UnknownProtocol("\"" + name_or_path +
                              "\" is neither a built-in protocol nor a readable file");
      }
      return sim::load_protocol_file(name_or_path);
    }
  }();
  if (zeta_override) {
    spec = sim::with_zeta(std::move(spec), *zeta_override);
  }
  return spec;
}

sim::Strategy parse_strategy(const std::string& text) {
  if (text == "honest") return sim::Strategy::Honest;
  if (text == "cheat") return sim::Strategy::Cheating;
  throw OutOfRange("strategy must be \"honest\" or \"cheat\", got \"" + text + "\"");
}

int cmd_analyze(const std::string& protocol_arg, std::optional<double> zeta) {
  const sim::ProtocolSpec spec = resolve_protocol(protocol_arg, zeta);
  const sim::AnalysisReport report = sim::analyze(spec);
  std::cout << "protocol: " << spec.name << " (dim " << spec.dim << ", zeta "
            << fmt::num(spec.zeta) << ")\n"
            << "trace distance D:      " << fmt::num(report.d) << "\n"
            << "fidelity F:            " << fmt::num(report.f) << "\n"
            << "decode reliability:    " << fmt::num(report.reliability) << "\n"
            << "receiver pass prob:    " << fmt::num(report.p_b) << "\n"
            << "sender pass prob:      " << fmt::num(report.p_a) << "\n"
            << "effective (checked):   P_A* = " << fmt::num(report.p_a_star)
            << ", P_B* = " << fmt::num(report.p_b_star) << "\n"
            << fmt::analysis_json(report, spec.name, spec.zeta) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cheat-sensitive quantum bit commitment security analysis"};
  app.require_subcommand(1);

  std::string protocol_arg;
  std::optional<double> zeta;
  double step = 0.01;
  std::string out_path;
  double tolerance = 1e-6;
  std::string alice_arg = "honest";
  std::string bob_arg = "honest";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  auto* analyze = app.add_subcommand("analyze", "closed-form analysis of a protocol");
  analyze->add_option("--protocol", protocol_arg, "built-in name or JSON file")->required();
  analyze->add_option("--zeta", zeta, "override the protocol's check probability");

  auto* fig1 = app.add_subcommand("fig1", "receiver pass probability and mutual information vs alpha (CSV)");
  fig1->add_option("--step", step, "grid step in (0, 0.1]")->capture_default_str();
  fig1->add_option("--out", out_path, "output CSV path")->required();

  auto* fig2 = app.add_subcommand("fig2", "combined cheating bound over the (d, zeta) unit square (CSV)");
  fig2->add_option("--step", step, "grid step in (0, 0.1]")->capture_default_str();
  fig2->add_option("--out", out_path, "output CSV path")->required();

  auto* fair = app.add_subcommand("fair", "minimize the fair-protocol cheating probability");
  fair->add_option("--tolerance", tolerance, "bracket width stop")->capture_default_str();

  auto* mc = app.add_subcommand("montecarlo", "seeded protocol simulation");
  mc->add_option("--protocol", protocol_arg, "built-in name or JSON file")->required();
  mc->add_option("--alice", alice_arg, "honest|cheat")->capture_default_str();
  mc->add_option("--bob", bob_arg, "honest|cheat")->capture_default_str();
  mc->add_option("--trials", trials, "number of runs")->capture_default_str();
  mc->add_option("--seed", seed, "64-bit seed")->capture_default_str();
  mc->add_option("--zeta", zeta, "override the protocol's check probability");
  mc->add_option("--workers", workers, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*analyze) {
      return cmd_analyze(protocol_arg, zeta);
    }
    if (*fig1) {
      fmt::atomic_write_file(out_path, fmt::fig1_csv(step));
      return 0;
    }
    if (*fig2) {
      fmt::atomic_write_file(out_path, fmt::fig2_csv(step));
      return 0;
    }
    if (*fair) {
      std::cout << fmt::fair_json(bounds::fair_optimize(tolerance)) << "\n";
      return 0;
    }
    if (*mc) {
      if (trials < 1) throw OutOfRange("--trials must be at least 1");
      const sim::ProtocolSpec spec = resolve_protocol(protocol_arg, zeta);
      const sim::MonteCarloStats stats =
          sim::monte_carlo(spec, parse_strategy(alice_arg), parse_strategy(bob_arg), trials,
                           seed, workers);
      std::cout << fmt::stats_json(stats) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
