#include "piep/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "piep/errors.hpp"

namespace piep {

namespace {

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    writer(os);
    os.flush();
    if (!os) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_trace_csv(const ScenarioResult& result, std::ostream& os) {
    const Trajectory& t = result.trajectory;
    const std::size_t n = t.size();
    if (result.re_dE.size() != n || result.im_e1.size() != n || result.im_e2.size() != n ||
        result.cos_phase.size() != n)
        throw InvalidParameterError("trace columns differ in length from the trajectory");
    os << kTraceHeader << '\n';
    for (std::size_t k = 0; k < n; ++k) {
        const State& u = t.states[k];
        const double cols[] = {t.z[k],         u[0].real(),      u[0].imag(),      u[1].real(),
                               u[1].imag(),    t.energies[k],    result.re_dE[k],  result.im_e1[k],
                               result.im_e2[k], result.cos_phase[k]};
        for (std::size_t c = 0; c < std::size(cols); ++c) os << (c ? "," : "") << format_number(cols[c]);
        os << '\n';
    }
}

void write_trace_csv(const ScenarioResult& result, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& os) { write_trace_csv(result, os); });
}

void write_grid_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a].period_ratio != rows[b].period_ratio) return rows[a].period_ratio < rows[b].period_ratio;
        return rows[a].delta_z < rows[b].delta_z;
    });
    os << kGridHeader << '\n';
    for (std::size_t i : order) {
        const SweepRow& r = rows[i];
        os << format_number(r.delta_z) << ',' << format_number(r.period_ratio) << ',' << format_number(r.ratio) << ','
           << format_number(r.log10_ratio) << ',' << format_number(r.cos_phase_f) << '\n';
    }
}

void write_grid_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& os) { write_grid_csv(rows, os); });
}

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty CSV");
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) table.header.push_back(cell);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const auto comma = std::min(line.find(',', pos), line.size());
            double v = 0.0;
            const auto res = std::from_chars(line.data() + pos, line.data() + comma, v);
            if (res.ec != std::errc{} || res.ptr != line.data() + comma)
                throw IoError("malformed CSV cell '" + line.substr(pos, comma - pos) + "'");
            row.push_back(v);
            pos = comma + 1;
        }
        if (row.size() != table.header.size()) throw IoError("CSV row width differs from header");
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_csv(is);
}

}  // namespace piep
