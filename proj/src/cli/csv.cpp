#include "hamflow/cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hamflow/errors.hpp"

namespace hamflow::cli {

std::string format_g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record,
                          const ErrorReport& report, const HamiltonianSystem& sys) {
    if (!record.reference) throw capability_error("trajectory CSV needs reference states");
    std::ofstream out(path);
    if (!out) throw domain_error("cannot write " + path);

    const int n = record.seed.dim();
    out << "step,t";
    for (int j = 1; j <= n; ++j) out << ",q" << j;
    for (int j = 1; j <= n; ++j) out << ",p" << j;
    out << ",H";
    for (int j = 1; j <= n; ++j) out << ",ref_q" << j;
    for (int j = 1; j <= n; ++j) out << ",ref_p" << j;
    out << ",sigma_phase";
    for (const SigmaSeries& series : report.functionals) out << ",sigma_" << series.name;
    out << "\n";

    for (std::size_t i = 0; i < record.states.size(); ++i) {
        const PhaseState& s = record.states[i];
        const PhaseState& r = (*record.reference)[i];
        out << i << ',' << format_g17(s.t);
        for (int j = 0; j < n; ++j) out << ',' << format_g17(s.q[j]);
        for (int j = 0; j < n; ++j) out << ',' << format_g17(s.p[j]);
        out << ',' << format_g17(sys.h(s));
        for (int j = 0; j < n; ++j) out << ',' << format_g17(r.q[j]);
        for (int j = 0; j < n; ++j) out << ',' << format_g17(r.p[j]);
        out << ',' << format_g17(report.sigma_phase[i]);
        for (const SigmaSeries& series : report.functionals) {
            out << ',';
            if (!series.excluded[i]) out << format_g17(series.values[i]);
        }
        out << "\n";
    }
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot read " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<std::optional<double>> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) {
            if (c.empty())
                row.push_back(std::nullopt);
            else
                row.push_back(std::stod(c));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace hamflow::cli
