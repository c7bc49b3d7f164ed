// CSV output with lossless double round-tripping (17 significant digits).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamflow/diagnostics.hpp"

namespace hamflow::cli {

std::string format_g17(double value);

// Header: step,t,q1,...,p1,...,H,ref_q1,...,ref_p1,...,sigma_phase[,sigma_<name>...]
// Excluded sigma samples are written as empty cells.
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record,
                          const ErrorReport& report, const HamiltonianSystem& sys);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

}  // namespace hamflow::cli
