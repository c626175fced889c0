#include "smc/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "smc/error.hpp"

namespace smc {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string linear_verdicts_csv(std::span<const Characterization> rows) {
  std::ostringstream out;
  out << kCsvSchemaLine << '\n' << "input_id,sigma1,sigma2,significant_count,invariant_angle_rad\n";
  for (const auto& c : rows) {
    out << c.input_id << ',' << format_number(c.uniformity) << ','
        << format_number(c.edgeness_sigma.value_or(0.0)) << ',' << c.significant_count << ',';
    if (c.invariant_angle) out << format_number(*c.invariant_angle);
    out << '\n';
  }
  return out.str();
}

std::string nonlinear_verdicts_csv(std::span<const Characterization> rows, int max_p) {
  std::ostringstream out;
  out << kCsvSchemaLine << '\n' << "input_id";
  for (int p = 0; p <= max_p; ++p) out << ",err" << p;
  out << ",p_star,invariant_angle_rad\n";
  for (const auto& c : rows) {
    out << c.input_id;
    for (int p = 0; p <= max_p; ++p) {
      out << ',';
      for (const auto& e : c.err_curve) {
        if (e.p == p) out << format_number(e.err);
      }
    }
    out << ',';
    if (c.p_star) out << *c.p_star;
    out << ',';
    if (c.invariant_angle) out << format_number(*c.invariant_angle);
    out << '\n';
  }
  return out.str();
}

void write_text_file(const std::filesystem::path& file, const std::string& content) {
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) throw IoError("cannot create " + file.parent_path().string() + ": " + ec.message());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + file.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("write failed for " + file.string());
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace smc
