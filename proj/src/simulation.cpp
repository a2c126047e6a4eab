#include "csqbc/simulation.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "csqbc/attacks.hpp"
#include "csqbc/bounds.hpp"

namespace csqbc::sim {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// <a|_sys applied to a global (anc x sys) state; returns the ancilla-space
// remainder. Its squared norm is the probability that a projective check of
// the system against |a> passes.
Vector contract_system(const Vector& sys_state, const Vector& global, Eigen::Index anc,
                       Eigen::Index d) {
  Vector out = Vector::Zero(anc);
  for (Eigen::Index a = 0; a < anc; ++a) {
    Complex acc = 0.0;
    for (Eigen::Index s = 0; s < d; ++s) {
      acc += std::conj(sys_state(s)) * global(a * d + s);
    }
    out(a) = acc;
  }
  return out;
}

// Read-only per-run machinery, built once and shared across trials.
struct SimContext {
  Eigen::Index d = 0;    // system dimension
  Eigen::Index anc = 1;  // ancilla dimension (1 when the sender is honest)
  Strategy alice = Strategy::Honest;
  Strategy bob = Strategy::Honest;
  double zeta = 0.0;

  std::array<std::vector<double>, 2> selection_probs;
  ProjectorPair helstrom{Matrix(), Matrix()};  // built when the receiver cheats

  // Delayed-choice cheat apparatus (built when the sender cheats).
  Vector cheat_state;
  // Per unveil bit: measurement Kraus operators on the ancilla whose outcome
  // steers the receiver's share toward one admissible announcement.
  std::array<std::vector<Matrix>, 2> steer_kraus;
  // Best announcement if no steering is performed (used when the sender's
  // own check branch makes the announcement irrelevant).
  std::array<int, 2> apriori_announcement{0, 0};
};

// Steering measurement for a set of announcement targets. For one target no
// measurement is needed. For two targets the optimal discrimination of the
// steered ancilla operators w_i w_i^dag is projective onto the +/- eigenspaces
// of their difference. For more targets we use the square-root measurement.
std::vector<Matrix> build_steering(const std::vector<Vector>& residues, Eigen::Index anc) {
  const std::size_t m = residues.size();
  std::vector<Matrix> kraus;
  if (m <= 1) {
    kraus.push_back(Matrix::Identity(anc, anc));
    return kraus;
  }
  if (m == 2) {
    Matrix diff = residues[0] * residues[0].adjoint() - residues[1] * residues[1].adjoint();
    diff = ((diff + diff.adjoint()) / 2.0).eval();
    const qmath::EigResult eig = qmath::eig_hermitian(diff);
    Matrix plus = Matrix::Zero(anc, anc);
    for (Eigen::Index i = 0; i < anc; ++i) {
      if (eig.values(i) >= -qmath::kPsdClamp) {
        plus += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
      }
    }
    plus = ((plus + plus.adjoint()) / 2.0).eval();
    kraus.push_back(plus);
    kraus.push_back(Matrix::Identity(anc, anc) - plus);
    return kraus;
  }

  Matrix total = Matrix::Zero(anc, anc);
  for (const Vector& w : residues) total += w * w.adjoint();
  total = ((total + total.adjoint()) / 2.0).eval();
  const qmath::EigResult eig = qmath::eig_hermitian(total);
  Matrix inv_root = Matrix::Zero(anc, anc);
  for (Eigen::Index i = 0; i < anc; ++i) {
    if (eig.values(i) > 1e-12) {
      inv_root += eig.vectors.col(i) * eig.vectors.col(i).adjoint() / std::sqrt(eig.values(i));
    }
  }
  Matrix assigned = Matrix::Zero(anc, anc);
  for (const Vector& w : residues) {
    Matrix element = inv_root * w * w.adjoint() * inv_root;
    element = ((element + element.adjoint()) / 2.0).eval();
    assigned += element;
    kraus.push_back(qmath::sqrtm_psd(element));
  }
  Matrix rest = Matrix::Identity(anc, anc) - assigned;
  rest = ((rest + rest.adjoint()) / 2.0).eval();
  if (rest.trace().real() > 1e-9) {
    kraus.push_back(qmath::sqrtm_psd(rest));
  }
  return kraus;
}

SimContext build_context(const ProtocolSpec& protocol, Strategy alice, Strategy bob) {
  SimContext ctx;
  ctx.d = protocol.dim;
  ctx.alice = alice;
  ctx.bob = bob;
  ctx.zeta = protocol.zeta;
  for (int bit = 0; bit < 2; ++bit) {
    for (const auto& entry : protocol.ensembles[static_cast<std::size_t>(bit)]) {
      ctx.selection_probs[static_cast<std::size_t>(bit)].push_back(entry.prob);
    }
  }

  if (bob == Strategy::Cheating) {
    ctx.helstrom = helstrom_projectors(protocol.rho(0), protocol.rho(1));
  }

  if (alice == Strategy::Cheating) {
    ctx.anc = ctx.d;
    const attacks::AliceAttackState attack =
        attacks::alice_cheat_prepare(protocol.rho(0), protocol.rho(1));
    ctx.cheat_state = attack.cheat_state.vector();
    for (int bit = 0; bit < 2; ++bit) {
      const auto& ensemble = protocol.ensembles[static_cast<std::size_t>(bit)];
      std::vector<Vector> residues;
      residues.reserve(ensemble.size());
      for (const auto& entry : ensemble) {
        residues.push_back(
            contract_system(entry.state.vector(), ctx.cheat_state, ctx.anc, ctx.d));
      }
      ctx.steer_kraus[static_cast<std::size_t>(bit)] = build_steering(residues, ctx.anc);

      int best = 0;
      double best_prob = -1.0;
      for (std::size_t i = 0; i < residues.size(); ++i) {
        const double prob = residues[i].squaredNorm();
        if (prob > best_prob) {
          best_prob = prob;
          best = static_cast<int>(i);
        }
      }
      ctx.apriori_announcement[static_cast<std::size_t>(bit)] = best;
    }
  }
  return ctx;
}

int best_announcement(const SimContext& ctx, const ProtocolSpec& protocol, int bit,
                      const Vector& global) {
  const auto& ensemble = protocol.ensembles[static_cast<std::size_t>(bit)];
  int best = 0;
  double best_prob = -1.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const double prob =
        contract_system(ensemble[i].state.vector(), global, ctx.anc, ctx.d).squaredNorm();
    if (prob > best_prob) {
      best_prob = prob;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double announcement_pass_probability(const SimContext& ctx, const ProtocolSpec& protocol,
                                     int bit, int index, const Vector& global) {
  const Vector& announced =
      protocol.ensembles[static_cast<std::size_t>(bit)][static_cast<std::size_t>(index)]
          .state.vector();
  return clamp01(contract_system(announced, global, ctx.anc, ctx.d).squaredNorm());
}

RunTranscript run_once_ctx(const SimContext& ctx, const ProtocolSpec& protocol, SplitRng& rng) {
  RunTranscript t;

  // Commit phase. The honest sender fixes the bit and samples a commit
  // state; the cheating sender defers the choice and commits the
  // superposed purification pair instead.
  Vector state;
  Vector reference;  // what the sender's intactness check compares against
  if (ctx.alice == Strategy::Honest) {
    t.committed_bit = rng.uniform() < 0.5 ? 0 : 1;
    t.chosen_state_index = static_cast<int>(rng.categorical(
        std::span<const double>(ctx.selection_probs[static_cast<std::size_t>(t.committed_bit)])));
    state = protocol.ensembles[static_cast<std::size_t>(t.committed_bit)]
                [static_cast<std::size_t>(t.chosen_state_index)]
                    .state.vector();
  } else {
    state = ctx.cheat_state;
  }
  reference = state;

  // Holding phase. The cheating receiver decodes with the optimal binary
  // measurement on his share; the honest receiver stores the state.
  if (ctx.bob == Strategy::Cheating) {
    const Vector projected0 = apply_to_factor(ctx.helstrom.p0, state, ctx.anc, ctx.d,
                                              Factor::Second);
    const double prob0 = clamp01(projected0.squaredNorm());
    const int outcome = rng.bernoulli(prob0) ? 0 : 1;
    const Vector projected =
        outcome == 0 ? projected0
                     : apply_to_factor(ctx.helstrom.p1, state, ctx.anc, ctx.d, Factor::Second);
    const double norm = projected.norm();
    if (norm < 1e-12) {
      throw DegenerateOutcome("decode projection has vanishing norm");
    }
    state = projected / norm;
    t.bob_measured = true;
    t.bob_decoded_bit = outcome;
  }

  // Unveil phase. A protocol-level coin decides which party is checked.
  const bool alice_checks = rng.bernoulli(ctx.zeta);
  if (ctx.alice == Strategy::Cheating) {
    t.committed_bit = rng.uniform() < 0.5 ? 0 : 1;  // the unveiled bit
  }

  if (alice_checks) {
    t.check_branch = CheckBranch::AliceChecks;
    // The receiver returns the system; the sender projects the full state
    // onto what she originally held.
    const double pass = clamp01(std::norm(reference.dot(state)));
    t.check_passed = rng.bernoulli(pass);
    if (ctx.alice == Strategy::Cheating) {
      t.chosen_state_index =
          ctx.apriori_announcement[static_cast<std::size_t>(t.committed_bit)];
    }
  } else {
    t.check_branch = CheckBranch::BobChecks;
    if (ctx.alice == Strategy::Cheating) {
      // Steer: measure the kept ancilla, then announce the admissible state
      // the collapsed share overlaps most with.
      const auto& kraus = ctx.steer_kraus[static_cast<std::size_t>(t.committed_bit)];
      std::vector<double> probs(kraus.size());
      std::vector<Vector> collapsed(kraus.size());
      for (std::size_t k = 0; k < kraus.size(); ++k) {
        collapsed[k] = apply_to_factor(kraus[k], state, ctx.anc, ctx.d, Factor::First);
        probs[k] = clamp01(collapsed[k].squaredNorm());
      }
      const std::size_t k = rng.categorical(probs);
      const double norm = collapsed[k].norm();
      if (norm < 1e-12) {
        throw DegenerateOutcome("steering projection has vanishing norm");
      }
      state = collapsed[k] / norm;
      t.chosen_state_index = best_announcement(ctx, protocol, t.committed_bit, state);
    }
    const double pass = announcement_pass_probability(ctx, protocol, t.committed_bit,
                                                      t.chosen_state_index, state);
    t.check_passed = rng.bernoulli(pass);
  }
  return t;
}

bool run_passed(const SimContext& ctx, const RunTranscript& t) {
  // A run fails only when the check that actually ran caught a cheater.
  const Strategy checked =
      t.check_branch == CheckBranch::AliceChecks ? ctx.bob : ctx.alice;
  return !(checked == Strategy::Cheating && !t.check_passed);
}

}  // namespace

AnalysisReport analyze(const ProtocolSpec& protocol) {
  const DensityMatrix rho0 = protocol.rho(0);
  const DensityMatrix rho1 = protocol.rho(1);

  AnalysisReport report;
  report.d = trace_distance(rho0, rho1);
  report.f = fidelity(rho0, rho1);
  report.reliability = (1.0 + report.d) / 2.0;

  double p_b = 0.0;
  for (int bit = 0; bit < 2; ++bit) {
    for (const auto& entry : protocol.ensembles[static_cast<std::size_t>(bit)]) {
      const attacks::BobAttackReport state_report =
          attacks::bob_attack_analyze(rho0, rho1, entry.state, 1, protocol.dim);
      p_b += 0.5 * entry.prob * state_report.pass_probability;
    }
  }
  report.p_b = p_b;
  report.p_a = attacks::alice_cheat_prepare(rho0, rho1).pass_probability;

  const auto [pa_star, pb_star] =
      bounds::effective_probabilities(report.p_a, report.p_b, bounds::CheckPolicy{protocol.zeta});
  report.p_a_star = pa_star;
  report.p_b_star = pb_star;
  return report;
}

RunTranscript run_once(const ProtocolSpec& protocol, Strategy alice, Strategy bob,
                       SplitRng& rng) {
  const SimContext ctx = build_context(protocol, alice, bob);
  return run_once_ctx(ctx, protocol, rng);
}

MonteCarloStats monte_carlo(const ProtocolSpec& protocol, Strategy alice, Strategy bob,
                            std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (trials < 1) {
    throw OutOfRange("trials must be at least 1");
  }
  const SimContext ctx = build_context(protocol, alice, bob);

  struct Counters {
    std::uint64_t passed = 0;
    std::uint64_t measured = 0;
    std::uint64_t decoded_correctly = 0;
  };

  auto run_range = [&](std::uint64_t begin, std::uint64_t end, Counters& c) {
    for (std::uint64_t i = begin; i < end; ++i) {
      SplitRng rng = SplitRng::substream(seed, i);
      const RunTranscript t = run_once_ctx(ctx, protocol, rng);
      if (run_passed(ctx, t)) ++c.passed;
      if (t.bob_measured) {
        ++c.measured;
        if (t.bob_decoded_bit && *t.bob_decoded_bit == t.committed_bit) {
          ++c.decoded_correctly;
        }
      }
    }
  };

  if (workers < 1) workers = 1;
  if (workers > trials) workers = static_cast<unsigned>(trials);

  std::vector<Counters> partial(workers);
  if (workers == 1) {
    run_range(0, trials, partial[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(trials, begin + chunk);
      pool.emplace_back(run_range, begin, end, std::ref(partial[w]));
    }
    for (auto& thread : pool) thread.join();
  }

  Counters total;
  for (const Counters& c : partial) {
    total.passed += c.passed;
    total.measured += c.measured;
    total.decoded_correctly += c.decoded_correctly;
  }

  MonteCarloStats stats;
  stats.trials = trials;
  stats.seed = seed;
  stats.pass_rate = static_cast<double>(total.passed) / static_cast<double>(trials);
  stats.decode_accuracy =
      total.measured == 0
          ? 0.0
          : static_cast<double>(total.decoded_correctly) / static_cast<double>(total.measured);
  stats.standard_error =
      std::sqrt(stats.pass_rate * (1.0 - stats.pass_rate) / static_cast<double>(trials));
  return stats;
}

double expected_pass_rate(const ProtocolSpec& protocol, Strategy alice, Strategy bob) {
  const SimContext ctx = build_context(protocol, alice, bob);

  // Enumerate initial states with their weights.
  std::vector<std::pair<Vector, double>> initial;
  if (alice == Strategy::Honest) {
    for (int bit = 0; bit < 2; ++bit) {
      const auto& ensemble = protocol.ensembles[static_cast<std::size_t>(bit)];
      for (const auto& entry : ensemble) {
        initial.emplace_back(entry.state.vector(), 0.5 * entry.prob);
      }
    }
  } else {
    initial.emplace_back(ctx.cheat_state, 1.0);
  }

  double total = 0.0;
  for (const auto& [start, weight] : initial) {
    // Receiver's holding-phase action.
    std::vector<std::pair<Vector, double>> held;
    if (bob == Strategy::Cheating) {
      for (int j = 0; j < 2; ++j) {
        const Matrix& projector = j == 0 ? ctx.helstrom.p0 : ctx.helstrom.p1;
        const Vector projected = apply_to_factor(projector, start, ctx.anc, ctx.d,
                                                 Factor::Second);
        const double prob = projected.squaredNorm();
        if (prob < 1e-15) continue;
        held.emplace_back(projected / std::sqrt(prob), prob);
      }
    } else {
      held.emplace_back(start, 1.0);
    }

    for (const auto& [state, hold_weight] : held) {
      const double branch_weight = weight * hold_weight;

      // Branch where the sender checks the returned state: only a cheating
      // receiver can be caught here.
      double alice_checks_pass = 1.0;
      if (bob == Strategy::Cheating) {
        alice_checks_pass = clamp01(std::norm(start.dot(state)));
      }
      total += branch_weight * ctx.zeta * alice_checks_pass;

      // Branch where the receiver verifies the announcement: only a cheating
      // sender can be caught here.
      double bob_checks_pass = 1.0;
      if (alice == Strategy::Cheating) {
        bob_checks_pass = 0.0;
        for (int bit = 0; bit < 2; ++bit) {
          const auto& kraus = ctx.steer_kraus[static_cast<std::size_t>(bit)];
          double bit_pass = 0.0;
          for (const Matrix& k : kraus) {
            const Vector steered = apply_to_factor(k, state, ctx.anc, ctx.d, Factor::First);
            const double prob = steered.squaredNorm();
            if (prob < 1e-15) continue;
            const Vector collapsed = steered / std::sqrt(prob);
            const int announced = best_announcement(ctx, protocol, bit, collapsed);
            bit_pass += prob * announcement_pass_probability(ctx, protocol, bit, announced,
                                                             collapsed);
          }
          bob_checks_pass += 0.5 * bit_pass;
        }
      }
      total += branch_weight * (1.0 - ctx.zeta) * bob_checks_pass;
    }
  }
  return clamp01(total);
}

}  // namespace csqbc::sim
