#pragma once

#include <string>
#include <vector>

#include "cpmcmc/estimator.hpp"

namespace cpmcmc {

// Writes runs as a JSON-lines store, one run per line with fields
// {replicate, tau, wall_time_s, completed, H, H_bar}, sorted by replicate.
// tau is null for runs that never met. H and H_bar are the weighted-cloud
// statistic matrices indexed [statistic][step - 1]. zero_timing writes 0
// for every wall time so reruns are byte-identical.
void write_run_store(const std::string& path, std::vector<CoupledRun> runs,
                     bool zero_timing = false);

// Reads a store back. Single-path statistic matrices are not persisted, so
// loaded runs only support the weighted-cloud readout.
std::vector<CoupledRun> read_run_store(const std::string& path);

// Dense real matrix in CSV form, rows = observations. No header row.
void write_csv_matrix(const std::string& path, const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> read_csv_matrix(const std::string& path);

}  // namespace cpmcmc
