#include "csqbc/format.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace csqbc::fmt {

std::string num(double v) {
  if (v == 0.0) return "0";  // avoids "-0"
  char buf[64];
  const auto result =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, result.ptr);
}

std::string fig1_csv(double step) {
  std::string out = "alpha,p_b,i_m\n";
  for (const auto& row : bounds::figure1_scan(step)) {
    out += num(row.alpha) + "," + num(row.p_b) + "," + num(row.i_m) + "\n";
  }
  return out;
}

std::string fig2_csv(double step) {
  std::string out = "d,zeta,bound\n";
  for (const auto& row : bounds::figure2_scan(step)) {
    out += num(row.d) + "," + num(row.zeta) + "," + num(row.bound) + "\n";
  }
  return out;
}

std::string stats_json(const sim::MonteCarloStats& stats) {
  return "{\"trials\":" + std::to_string(stats.trials) +
         ",\"pass_rate\":" + num(stats.pass_rate) +
         ",\"decode_accuracy\":" + num(stats.decode_accuracy) +
         ",\"standard_error\":" + num(stats.standard_error) +
         ",\"seed\":" + std::to_string(stats.seed) + "}";
}

std::string fair_json(const bounds::FairOptimum& opt) {
  return "{\"alpha\":" + num(opt.alpha_star) + ",\"zeta\":" + num(opt.zeta_star) +
         ",\"p_star\":" + num(opt.p_star) + "}";
}

std::string analysis_json(const sim::AnalysisReport& report, const std::string& name,
                          double zeta) {
  return "{\"protocol\":\"" + name + "\",\"zeta\":" + num(zeta) + ",\"d\":" + num(report.d) +
         ",\"f\":" + num(report.f) + ",\"reliability\":" + num(report.reliability) +
         ",\"p_b\":" + num(report.p_b) + ",\"p_a\":" + num(report.p_a) +
         ",\"p_a_star\":" + num(report.p_a_star) + ",\"p_b_star\":" + num(report.p_b_star) +
         "}";
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open \"" + tmp + "\" for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw IoError("write to \"" + tmp + "\" failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename \"" + tmp + "\" to \"" + path + "\": " + ec.message());
  }
}

}  // namespace csqbc::fmt
