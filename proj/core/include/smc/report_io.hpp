#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "smc/characterize.hpp"

namespace smc {

/// First line of every CSV written by the library.
inline constexpr const char* kCsvSchemaLine = "# smc-invariants v1";

/// Shortest-exact formatting used in CSV cells ("%.17g").
std::string format_number(double v);

/// input_id,sigma1,sigma2,significant_count,invariant_angle_rad
std::string linear_verdicts_csv(std::span<const Characterization> rows);

/// input_id,err0,...,err{max_p},p_star,invariant_angle_rad. Missing values
/// (uniform short-circuit, no angle) are left empty.
std::string nonlinear_verdicts_csv(std::span<const Characterization> rows, int max_p);

/// Writes `content` to `file`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& file, const std::string& content);
std::string read_text_file(const std::filesystem::path& file);

}  // namespace smc
