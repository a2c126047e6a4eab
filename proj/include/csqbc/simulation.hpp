#pragma once

#include <cstdint>
#include <optional>

#include "csqbc/protocol.hpp"
#include "csqbc/rng.hpp"

// The commit/hold/unveil state machine with honest and cheating strategies,
// closed-form analysis, an exact-expectation evaluator, and a seeded Monte
// Carlo engine with order-independent parallel trials.

namespace csqbc::sim {

enum class Strategy { Honest, Cheating };
enum class CheckBranch { AliceChecks, BobChecks };

/// One simulated protocol run.
struct RunTranscript {
  int committed_bit = 0;       // honest: fixed at commit; cheating sender: the unveiled bit
  int chosen_state_index = 0;  // honest: sampled at commit; cheating sender: announced
  bool bob_measured = false;
  std::optional<int> bob_decoded_bit;  // present iff bob_measured
  CheckBranch check_branch = CheckBranch::AliceChecks;
  bool check_passed = false;  // outcome of the check that ran this round
};

struct MonteCarloStats {
  std::uint64_t trials = 0;
  double pass_rate = 0.0;        // fraction of runs where no cheater was detected
  double decode_accuracy = 0.0;  // over trials where the receiver measured; 0 if none
  double standard_error = 0.0;   // sqrt(p (1-p) / n) with p = pass_rate
  std::uint64_t seed = 0;
};

/// Closed-form protocol analysis.
struct AnalysisReport {
  double d;            // trace distance of the two ensemble density matrices
  double f;            // fidelity of the same pair
  double reliability;  // (1 + d)/2
  double p_b;          // ensemble average of the receiver's pass probability
  double p_a;          // (1 + f)/2
  double p_a_star;     // zeta-weighted effective probabilities
  double p_b_star;
};

AnalysisReport analyze(const ProtocolSpec& protocol);

/// Simulates one full commit/hold/unveil round. All randomness comes from rng.
RunTranscript run_once(const ProtocolSpec& protocol, Strategy alice, Strategy bob,
                       SplitRng& rng);

/// Aggregates run_once over `trials` rounds. Trial i draws only from the
/// substream (seed, i), so results are bit-identical for any worker count.
MonteCarloStats monte_carlo(const ProtocolSpec& protocol, Strategy alice, Strategy bob,
                            std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

/// Exact pass probability of the simulated game, computed by enumerating
/// every branch with its weight instead of sampling. Serves as the
/// sampling-free cross-check for monte_carlo.
double expected_pass_rate(const ProtocolSpec& protocol, Strategy alice, Strategy bob);

}  // namespace csqbc::sim
