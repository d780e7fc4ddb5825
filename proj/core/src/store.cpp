#include "cpmcmc/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cpmcmc/errors.hpp"

namespace cpmcmc {

using nlohmann::json;

void write_run_store(const std::string& path, std::vector<CoupledRun> runs, bool zero_timing) {
  std::sort(runs.begin(), runs.end(),
            [](const CoupledRun& a, const CoupledRun& b) { return a.replicate < b.replicate; });
  std::ofstream out(path);
  if (!out) throw config_error("run store: cannot open for writing: " + path);
  for (const CoupledRun& run : runs) {
    json row;
    row["replicate"] = run.replicate;
    if (run.met)
      row["tau"] = run.tau;
    else
      row["tau"] = nullptr;
    row["wall_time_s"] = zero_timing ? 0.0 : run.wall_time_s;
    row["completed"] = run.completed;
    row["H"] = run.h;
    row["H_bar"] = run.h_bar;
    out << row.dump() << "\n";
  }
  if (!out) throw config_error("run store: write failed: " + path);
}

std::vector<CoupledRun> read_run_store(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("run store: cannot open: " + path);
  std::vector<CoupledRun> runs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::parse_error& e) {
      throw config_error("run store: " + path + " line " + std::to_string(lineno) + ": " +
                         e.what());
    }
    try {
      CoupledRun run;
      run.replicate = row.at("replicate").get<std::size_t>();
      if (!row.at("tau").is_null()) {
        run.met = true;
        run.tau = row.at("tau").get<std::size_t>();
      }
      run.wall_time_s = row.at("wall_time_s").get<double>();
      run.completed = row.at("completed").get<bool>();
      run.h = row.at("H").get<std::vector<std::vector<double>>>();
      run.h_bar = row.at("H_bar").get<std::vector<std::vector<double>>>();
      run.steps = run.h.empty() ? 0 : run.h.front().size();
      runs.push_back(std::move(run));
    } catch (const json::exception& e) {
      throw config_error("run store: " + path + " line " + std::to_string(lineno) + ": " +
                         e.what());
    }
  }
  return runs;
}

void write_csv_matrix(const std::string& path, const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw config_error("csv: cannot open for writing: " + path);
  out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ",";
      out << row[j];
    }
    out << "\n";
  }
  if (!out) throw config_error("csv: write failed: " + path);
}

std::vector<std::vector<double>> read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("csv: cannot open: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw config_error("csv: " + path + " line " + std::to_string(lineno) +
                           ": not a number: " + cell);
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw config_error("csv: " + path + " line " + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cpmcmc
