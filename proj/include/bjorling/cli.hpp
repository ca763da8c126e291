#pragma once
#include <optional>
#include <string>
#include <vector>

#include "bjorling/metric.hpp"

namespace bjorling {

struct RunConfig {
  std::string command;  // bjorling | interpolate | verify | gallery | export
  std::optional<MetricTag> metric;
  int degree = 48;
  std::optional<int> grid_nu;
  std::optional<int> grid_nv;
  std::optional<double> v_half_range;
  std::vector<std::string> tol_overrides;  // name=value
  bool newton = false;
  std::string input;
  std::string target;
  std::string mesh_path;    // file for single surfaces, directory for gallery
  std::string report_path;
};

// Runs a command, writes artifacts, prints the report to stdout when no
// report path is given. Exit code 0 iff every pass flag in the report is
// true; 1 validation failure, 2 numeric certification failure, 3 I/O error.
int run(const RunConfig& config);

int cli_main(int argc, char** argv);

}  // namespace bjorling
