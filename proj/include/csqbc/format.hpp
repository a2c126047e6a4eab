#pragma once

#include <string>

#include "csqbc/bounds.hpp"
#include "csqbc/simulation.hpp"

// Locale-independent text output: 12 significant digits, '.' decimal
// separator, '\n' newlines.

namespace csqbc::fmt {

/// Shortest representation with at most 12 significant digits.
std::string num(double v);

std::string fig1_csv(double step);
std::string fig2_csv(double step);

std::string stats_json(const sim::MonteCarloStats& stats);
std::string fair_json(const bounds::FairOptimum& opt);
std::string analysis_json(const sim::AnalysisReport& report, const std::string& name,
                          double zeta);

/// Writes content to path via a temporary file and rename, so a failure
/// never leaves a partial output file behind. Throws IoError.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace csqbc::fmt
