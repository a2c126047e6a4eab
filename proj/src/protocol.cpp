#include "csqbc/protocol.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "csqbc/format.hpp"

namespace csqbc::sim {

namespace {

using nlohmann::json;

constexpr Eigen::Index kMaxDim = 64;

void validate_ensemble(const std::vector<WeightedState>& ensemble, Eigen::Index dim,
                       const std::string& path) {
  if (ensemble.empty()) {
    throw ValidationError(path + ": ensemble must contain at least one state");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const auto& entry = ensemble[i];
    if (entry.state.dim() != dim) {
      throw ValidationError(path + "[" + std::to_string(i) + "].amplitudes: dimension " +
                            std::to_string(entry.state.dim()) + " does not match dim " +
                            std::to_string(dim));
    }
    if (!(entry.prob >= 0.0 && entry.prob <= 1.0)) {
      throw ValidationError(path + "[" + std::to_string(i) + "].prob: must lie in [0, 1]");
    }
    total += entry.prob;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError(path + ": selection probabilities sum to " + std::to_string(total) +
                          ", expected 1");
  }
}

Vector qubit(double a0, double a1) {
  Vector v(2);
  v << Complex(a0, 0.0), Complex(a1, 0.0);
  return v;
}

PureState parse_state(const json& node, const std::string& path, Eigen::Index dim) {
  if (!node.is_array()) {
    throw ValidationError(path + ": amplitudes must be an array");
  }
  if (static_cast<Eigen::Index>(node.size()) != dim) {
    throw ValidationError(path + ": expected " + std::to_string(dim) + " amplitudes, got " +
                          std::to_string(node.size()));
  }
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const json& amp = node[static_cast<std::size_t>(i)];
    if (!amp.is_array() || amp.size() != 2 || !amp[0].is_number() || !amp[1].is_number()) {
      throw ValidationError(path + "[" + std::to_string(i) + "]: expected [re, im]");
    }
    v(i) = Complex(amp[0].get<double>(), amp[1].get<double>());
  }
  try {
    return PureState(std::move(v));
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::vector<WeightedState> parse_ensemble(const json& node, const std::string& path,
                                          Eigen::Index dim) {
  if (!node.is_array()) {
    throw ValidationError(path + ": expected an array of weighted states");
  }
  std::vector<WeightedState> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string entry_path = path + "[" + std::to_string(i) + "]";
    const json& entry = node[i];
    if (!entry.is_object() || !entry.contains("prob") || !entry.contains("amplitudes")) {
      throw ValidationError(entry_path + ": expected {prob, amplitudes}");
    }
    if (!entry["prob"].is_number()) {
      throw ValidationError(entry_path + ".prob: expected a number");
    }
    out.push_back(WeightedState{parse_state(entry["amplitudes"], entry_path + ".amplitudes", dim),
                                entry["prob"].get<double>()});
  }
  return out;
}

}  // namespace

DensityMatrix ProtocolSpec::rho(int bit) const {
  if (bit != 0 && bit != 1) {
    throw OutOfRange("bit must be 0 or 1");
  }
  Matrix mix = Matrix::Zero(dim, dim);
  for (const auto& entry : ensembles[static_cast<std::size_t>(bit)]) {
    mix += entry.prob * (entry.state.vector() * entry.state.vector().adjoint());
  }
  return DensityMatrix(std::move(mix));
}

ProtocolSpec make_protocol(std::string name, Eigen::Index dim,
                           std::vector<WeightedState> ensemble0,
                           std::vector<WeightedState> ensemble1, double zeta) {
  if (dim < 1 || dim > kMaxDim) {
    throw ValidationError("dim: must lie in [1, " + std::to_string(kMaxDim) + "], got " +
                          std::to_string(dim));
  }
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw ValidationError("zeta: must lie in [0, 1]");
  }
  validate_ensemble(ensemble0, dim, "commit.0");
  validate_ensemble(ensemble1, dim, "commit.1");

  ProtocolSpec spec;
  spec.name = std::move(name);
  spec.dim = dim;
  spec.ensembles[0] = std::move(ensemble0);
  spec.ensembles[1] = std::move(ensemble1);
  spec.zeta = zeta;
  spec.rho(0);  // both mixtures must form valid density matrices
  spec.rho(1);
  return spec;
}

ProtocolSpec builtin_protocol(const std::string& name) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (name == "hbc2000") {
    std::vector<WeightedState> zero = {{PureState(qubit(1.0, 0.0)), 0.5},
                                       {PureState(qubit(inv_sqrt2, -inv_sqrt2)), 0.5}};
    std::vector<WeightedState> one = {{PureState(qubit(0.0, 1.0)), 0.5},
                                      {PureState(qubit(inv_sqrt2, inv_sqrt2)), 0.5}};
    return make_protocol("hbc2000", 2, std::move(zero), std::move(one), 1.0);
  }
  if (name == "fair_angle") {
    const double theta = 19.85 * std::numbers::pi / 180.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<WeightedState> zero = {{PureState(qubit(c, s)), 0.5},
                                       {PureState(qubit(c, -s)), 0.5}};
    std::vector<WeightedState> one = {{PureState(qubit(s, c)), 0.5},
                                      {PureState(qubit(s, -c)), 0.5}};
    return make_protocol("fair_angle", 2, std::move(zero), std::move(one), 0.469);
  }
  throw UnknownProtocol("unknown protocol \"" + name + "\"");
}

ProtocolSpec builtin_protocol(const std::string& name, double zeta) {
  return with_zeta(builtin_protocol(name), zeta);
}

ProtocolSpec with_zeta(ProtocolSpec spec, double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw ValidationError("zeta: must lie in [0, 1]");
  }
  spec.zeta = zeta;
  return spec;
}

ProtocolSpec load_protocol(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("protocol JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("document: expected a JSON object");
  for (const char* key : {"name", "dim", "zeta", "commit"}) {
    if (!doc.contains(key)) {
      throw ValidationError(std::string(key) + ": missing required field");
    }
  }
  if (!doc["name"].is_string()) throw ValidationError("name: expected a string");
  if (!doc["dim"].is_number_integer()) throw ValidationError("dim: expected an integer");
  if (!doc["zeta"].is_number()) throw ValidationError("zeta: expected a number");
  const json& commit = doc["commit"];
  if (!commit.is_object() || !commit.contains("0") || !commit.contains("1")) {
    throw ValidationError("commit: expected an object with ensembles \"0\" and \"1\"");
  }

  const auto dim = doc["dim"].get<Eigen::Index>();
  if (dim < 1 || dim > kMaxDim) {
    throw ValidationError("dim: must lie in [1, " + std::to_string(kMaxDim) + "]");
  }
  return make_protocol(doc["name"].get<std::string>(), dim,
                       parse_ensemble(commit["0"], "commit.0", dim),
                       parse_ensemble(commit["1"], "commit.1", dim),
                       doc["zeta"].get<double>());
}

ProtocolSpec load_protocol_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open protocol file \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_protocol(buffer.str());
}

std::string protocol_to_json(const ProtocolSpec& spec) {
  std::string out = "{\"name\":\"" + spec.name + "\",\"dim\":" + std::to_string(spec.dim) +
                    ",\"zeta\":" + fmt::num(spec.zeta) + ",\"commit\":{";
  for (int bit = 0; bit < 2; ++bit) {
    out += "\"" + std::to_string(bit) + "\":[";
    const auto& ensemble = spec.ensembles[static_cast<std::size_t>(bit)];
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
      out += "{\"prob\":" + fmt::num(ensemble[i].prob) + ",\"amplitudes\":[";
      const Vector& v = ensemble[i].state.vector();
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        out += "[" + fmt::num(v(k).real()) + "," + fmt::num(v(k).imag()) + "]";
        if (k + 1 < v.size()) out += ",";
      }
      out += "]}";
      if (i + 1 < ensemble.size()) out += ",";
    }
    out += "]";
    if (bit == 0) out += ",";
  }
  out += "}}";
  return out;
}

}  // namespace csqbc::sim
