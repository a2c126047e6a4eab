#pragma once

#include <array>
#include <string>
#include <vector>

#include "csqbc/quantum.hpp"

namespace csqbc::sim {

struct WeightedState {
  PureState state;
  double prob;
};

/// A commitment protocol description: per-bit ensembles of pure commit
/// states with selection probabilities, and the check policy zeta.
struct ProtocolSpec {
  std::string name;
  Eigen::Index dim = 0;
  std::array<std::vector<WeightedState>, 2> ensembles;
  double zeta = 0.0;

  /// Mixture density matrix of the ensemble for the given bit.
  DensityMatrix rho(int bit) const;
};

/// Validates ensembles (norms, probability sums, dimension coherence, zeta
/// range) and returns the spec. Throws ValidationError naming the offending
/// field.
ProtocolSpec make_protocol(std::string name, Eigen::Index dim,
                           std::vector<WeightedState> ensemble0,
                           std::vector<WeightedState> ensemble1, double zeta);

/// Built-in protocols: "hbc2000" (states |0>,|-> vs |1>,|+>, zeta 1) and
/// "fair_angle" (states cos(19.85deg)|0> +- sin(19.85deg)|1> vs the swapped
/// pair, zeta 0.469). Throws UnknownProtocol otherwise.
ProtocolSpec builtin_protocol(const std::string& name);

/// Same, with the check probability overridden.
ProtocolSpec builtin_protocol(const std::string& name, double zeta);

/// Returns a copy with zeta replaced.
ProtocolSpec with_zeta(ProtocolSpec spec, double zeta);

/// Parses the protocol JSON document:
///   { "name": str, "dim": int, "zeta": num,
///     "commit": { "0": [ { "prob": num, "amplitudes": [[re,im],...] }, ... ],
///                 "1": [ ... ] } }
/// Amplitudes are listed in computational-basis order.
ProtocolSpec load_protocol(const std::string& json_text);

/// Reads and parses a protocol file. Throws IoError if unreadable.
ProtocolSpec load_protocol_file(const std::string& path);

/// Serializes a spec to the schema above (12 significant digits).
std::string protocol_to_json(const ProtocolSpec& spec);

}  // namespace csqbc::sim
