#pragma once

// Deterministic CSV emission. Numbers use the shortest round-trip decimal
// form, `.` separator, LF line endings.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "piep/experiments.hpp"

namespace piep {

inline constexpr const char* kTraceHeader = "z,re_u1,im_u1,re_u2,im_u2,energy,re_dE,im_E1,im_E2,cos_phase";
inline constexpr const char* kGridHeader = "delta_z,period_ratio,ratio,log10_ratio,cos_phase_f";

void write_trace_csv(const ScenarioResult& result, std::ostream& os);
void write_trace_csv(const ScenarioResult& result, const std::filesystem::path& path);

/// Rows are emitted sorted by (period_ratio, delta_z); ties keep input order.
void write_grid_csv(const std::vector<SweepRow>& rows, std::ostream& os);
void write_grid_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

std::string format_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV written by the functions above.
CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace piep
