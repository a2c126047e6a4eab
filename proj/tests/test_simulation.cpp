#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csqbc/format.hpp"
#include "csqbc/simulation.hpp"

using namespace csqbc;
using namespace csqbc::sim;

namespace {

double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

ProtocolSpec orthogonal_protocol(double zeta) {
  Vector v0(2), v1(2);
  v0 << 1.0, 0.0;
  v1 << 0.0, 1.0;
  std::vector<WeightedState> zero = {{PureState(std::move(v0)), 1.0}};
  std::vector<WeightedState> one = {{PureState(std::move(v1)), 1.0}};
  return make_protocol("orthogonal", 2, std::move(zero), std::move(one), zeta);
}

// Three skewed states per ensemble; exercises the multi-announcement path
// and the ensemble-average bound away from the built-ins.
ProtocolSpec lopsided_protocol() {
  auto ket = [](double angle) {
    Vector v(2);
    v << std::cos(angle), std::sin(angle);
    return PureState(std::move(v));
  };
  std::vector<WeightedState> zero = {{ket(0.1), 0.5}, {ket(-0.2), 0.3}, {ket(0.35), 0.2}};
  std::vector<WeightedState> one = {{ket(1.3), 0.6}, {ket(1.7), 0.3}, {ket(1.05), 0.1}};
  return make_protocol("lopsided", 2, std::move(zero), std::move(one), 0.7);
}

// A three-level protocol; nothing in the machinery is qubit-specific.
ProtocolSpec qutrit_protocol() {
  auto ket3 = [](double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return PureState(Vector(v / v.norm()));
  };
  std::vector<WeightedState> zero = {{ket3(1.0, 0.2, 0.0), 0.5}, {ket3(1.0, -0.2, 0.1), 0.5}};
  std::vector<WeightedState> one = {{ket3(0.1, 1.0, 0.4), 0.5}, {ket3(0.0, 0.3, 1.0), 0.5}};
  return make_protocol("qutrit", 3, std::move(zero), std::move(one), 0.4);
}

constexpr std::uint64_t kTrials = 100000;

}  // namespace

TEST_CASE("analyze hbc2000: the published closed forms") {
  const AnalysisReport report = analyze(builtin_protocol("hbc2000"));
  CHECK(report.d == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK(report.reliability == doctest::Approx(0.853553).epsilon(1e-6));
  CHECK(std::abs(report.p_b - 0.75) <= 1e-12);
  CHECK(report.p_a == doctest::Approx((1.0 + report.f) / 2.0).epsilon(1e-9));
}

TEST_CASE("analyze: identical ensembles leave the receiver blind") {
  const ProtocolSpec base = builtin_protocol("hbc2000");
  ProtocolSpec mirrored = base;
  mirrored.ensembles[1] = mirrored.ensembles[0];
  const AnalysisReport report = analyze(mirrored);
  CHECK(report.d == doctest::Approx(0.0));
  CHECK(report.reliability == doctest::Approx(0.5));
  CHECK(report.p_a == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("analyze fair_angle: both effective probabilities near the optimum") {
  const AnalysisReport report = analyze(builtin_protocol("fair_angle"));
  CHECK(report.p_a_star == doctest::Approx(0.904).epsilon(2e-3));
  CHECK(report.p_b_star == doctest::Approx(0.904).epsilon(2e-3));
}

TEST_CASE("analyze: report invariants hold for every protocol here") {
  for (const ProtocolSpec& protocol :
       {builtin_protocol("hbc2000"), builtin_protocol("fair_angle"), lopsided_protocol(),
        orthogonal_protocol(0.3)}) {
    const AnalysisReport report = analyze(protocol);
    CHECK(report.reliability == doctest::Approx((1.0 + report.d) / 2.0).epsilon(1e-12));
    CHECK(report.p_b >= bounds::pb_lower(report.d) - 1e-9);
    CHECK(report.p_a >= bounds::pa_lower(report.d) - 1e-9);
  }
}

TEST_CASE("run_once: honest parties always pass the check") {
  for (const char* name : {"hbc2000", "fair_angle"}) {
    const ProtocolSpec protocol = builtin_protocol(name, 0.5);
    for (std::uint64_t i = 0; i < 2000; ++i) {
      SplitRng rng = SplitRng::substream(321, i);
      const RunTranscript t = run_once(protocol, Strategy::Honest, Strategy::Honest, rng);
      CHECK(t.check_passed);
      CHECK_FALSE(t.bob_measured);
      CHECK_FALSE(t.bob_decoded_bit.has_value());
    }
  }
}

TEST_CASE("run_once: transcript bookkeeping for a cheating receiver") {
  const ProtocolSpec protocol = builtin_protocol("hbc2000");
  SplitRng rng(9);
  const RunTranscript t = run_once(protocol, Strategy::Honest, Strategy::Cheating, rng);
  CHECK(t.bob_measured);
  CHECK(t.bob_decoded_bit.has_value());
  CHECK(t.check_branch == CheckBranch::AliceChecks);  // zeta = 1
}

TEST_CASE("monte_carlo: cheating receiver against hbc2000 at zeta 1") {
  const MonteCarloStats stats = monte_carlo(builtin_protocol("hbc2000"), Strategy::Honest,
                                            Strategy::Cheating, kTrials, 7);
  CHECK(std::abs(stats.pass_rate - 0.75) <= 4.0 * binomial_sigma(0.75, kTrials));
  CHECK(std::abs(stats.decode_accuracy - 0.853553) <=
        4.0 * binomial_sigma(0.853553, kTrials));
}

TEST_CASE("monte_carlo: honest runs pass with probability one, exactly") {
  const MonteCarloStats stats = monte_carlo(builtin_protocol("fair_angle"), Strategy::Honest,
                                            Strategy::Honest, 20000, 13);
  CHECK(stats.pass_rate == 1.0);
}

TEST_CASE("monte_carlo: cheating sender against orthogonal states, never checked herself") {
  const MonteCarloStats stats = monte_carlo(orthogonal_protocol(0.0), Strategy::Cheating,
                                            Strategy::Honest, kTrials, 29);
  CHECK(std::abs(stats.pass_rate - 0.5) <= 4.0 * binomial_sigma(0.5, kTrials));
}

TEST_CASE("monte_carlo: cheating sender against fair_angle hits the closed form") {
  const ProtocolSpec protocol = builtin_protocol("fair_angle");
  const double theta = 19.85 * std::numbers::pi / 180.0;
  const double alpha = std::cos(theta) * std::cos(theta);
  const double f = 2.0 * std::sqrt(alpha * (1.0 - alpha));
  const double expected = protocol.zeta + (1.0 - protocol.zeta) * (1.0 + f) / 2.0;

  const MonteCarloStats stats =
      monte_carlo(protocol, Strategy::Cheating, Strategy::Honest, kTrials, 11);
  CHECK(std::abs(stats.pass_rate - expected) <= 4.0 * binomial_sigma(expected, kTrials));
}

TEST_CASE("monte_carlo agrees with analyze for both built-ins and single cheaters") {
  for (const char* name : {"hbc2000", "fair_angle"}) {
    const ProtocolSpec protocol = builtin_protocol(name);
    const AnalysisReport report = analyze(protocol);

    const MonteCarloStats bob_cheats =
        monte_carlo(protocol, Strategy::Honest, Strategy::Cheating, kTrials, 101);
    CHECK(std::abs(bob_cheats.pass_rate - report.p_b_star) <=
          4.0 * binomial_sigma(report.p_b_star, kTrials));

    const MonteCarloStats alice_cheats =
        monte_carlo(protocol, Strategy::Cheating, Strategy::Honest, kTrials, 102);
    CHECK(std::abs(alice_cheats.pass_rate - report.p_a_star) <=
          4.0 * binomial_sigma(report.p_a_star, kTrials));
  }
}

TEST_CASE("monte_carlo agrees with the exact expectation for every strategy pair") {
  for (const ProtocolSpec& protocol :
       {builtin_protocol("hbc2000", 0.6), builtin_protocol("fair_angle"),
        lopsided_protocol(), qutrit_protocol()}) {
    for (Strategy alice : {Strategy::Honest, Strategy::Cheating}) {
      for (Strategy bob : {Strategy::Honest, Strategy::Cheating}) {
        const double expected = expected_pass_rate(protocol, alice, bob);
        const MonteCarloStats stats = monte_carlo(protocol, alice, bob, kTrials, 55);
        const double sigma = binomial_sigma(expected, kTrials);
        if (sigma == 0.0) {
          CHECK(stats.pass_rate == expected);
        } else {
          CHECK(std::abs(stats.pass_rate - expected) <= 4.0 * sigma);
        }
      }
    }
  }
}

TEST_CASE("expected_pass_rate matches the closed forms for single cheaters") {
  for (const char* name : {"hbc2000", "fair_angle"}) {
    for (double zeta : {0.0, 0.25, 0.469, 1.0}) {
      const ProtocolSpec protocol = builtin_protocol(name, zeta);
      const AnalysisReport report = analyze(protocol);
      CHECK(expected_pass_rate(protocol, Strategy::Honest, Strategy::Honest) ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(expected_pass_rate(protocol, Strategy::Honest, Strategy::Cheating) ==
            doctest::Approx(report.p_b_star).epsilon(1e-9));
      CHECK(expected_pass_rate(protocol, Strategy::Cheating, Strategy::Honest) ==
            doctest::Approx(report.p_a_star).epsilon(1e-9));
    }
  }
}

TEST_CASE("ensemble-average bound: measured receiver advantage respects the floor") {
  const ProtocolSpec protocol = with_zeta(lopsided_protocol(), 1.0);
  const AnalysisReport report = analyze(protocol);
  const MonteCarloStats stats =
      monte_carlo(protocol, Strategy::Honest, Strategy::Cheating, kTrials, 77);
  const double floor = bounds::pb_lower(report.d);
  CHECK(stats.pass_rate >= floor - 4.0 * binomial_sigma(floor, kTrials));
}

TEST_CASE("monte_carlo: deterministic and worker-count independent") {
  const ProtocolSpec protocol = builtin_protocol("fair_angle");
  const MonteCarloStats a =
      monte_carlo(protocol, Strategy::Cheating, Strategy::Cheating, 20000, 91, 1);
  const MonteCarloStats b =
      monte_carlo(protocol, Strategy::Cheating, Strategy::Cheating, 20000, 91, 1);
  const MonteCarloStats c =
      monte_carlo(protocol, Strategy::Cheating, Strategy::Cheating, 20000, 91, 4);

  CHECK(fmt::stats_json(a) == fmt::stats_json(b));
  CHECK(fmt::stats_json(a) == fmt::stats_json(c));

  const MonteCarloStats other_seed =
      monte_carlo(protocol, Strategy::Cheating, Strategy::Cheating, 20000, 92, 1);
  CHECK(fmt::stats_json(a) != fmt::stats_json(other_seed));
}

TEST_CASE("monte_carlo: standard error and trivial guards") {
  const MonteCarloStats stats = monte_carlo(builtin_protocol("hbc2000"), Strategy::Honest,
                                            Strategy::Cheating, 5000, 3);
  CHECK(stats.standard_error ==
        doctest::Approx(std::sqrt(stats.pass_rate * (1.0 - stats.pass_rate) / 5000.0)));
  CHECK(stats.trials == 5000);
  CHECK(stats.seed == 3);
  CHECK_THROWS_AS(
      monte_carlo(builtin_protocol("hbc2000"), Strategy::Honest, Strategy::Honest, 0, 1),
      OutOfRange);
}
