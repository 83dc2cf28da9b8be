#pragma once

#include <jcqt/sweep.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace jcqt {

/// CSV layout: "# " comment lines, one header row, then data rows.
/// Values carry 17 significant digits, LF line endings, no trailing
/// delimiter.
void write_csv(const SweepResult& result, std::ostream& os);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

/// Inverse of write_csv for comments, columns and rows. Plot metadata is
/// not stored in the file and comes back empty.
SweepResult parse_csv(std::istream& is);
SweepResult read_csv(const std::filesystem::path& path);

/// gnuplot script drawing one curve per series from `csv_path`, which is
/// referenced relative to the script's directory. Curves cycle through
/// solid, dash, dot and dash-dot.
void write_plot_script(const SweepResult& result, const std::string& csv_ref,
                       const std::string& title, std::ostream& os);
void emit_plot_script(const SweepResult& result, const std::filesystem::path& script_path,
                      const std::filesystem::path& csv_path, const std::string& title = "");

}  // namespace jcqt
