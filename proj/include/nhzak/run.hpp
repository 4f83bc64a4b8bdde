#pragma once

#include <string>
#include <vector>

#include "nhzak/config.hpp"
#include "nhzak/csv.hpp"

namespace nhzak {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunSummary {
  Manifest manifest;
  std::vector<std::string> files;  // artifacts written, relative to output_dir
};

// Executes config.command and writes CSV files plus manifest.txt into
// config.output_dir (created if needed). Errors propagate as exceptions.
RunSummary run(const RunConfig& config);

// Process exit code for an exception escaping run(): 2 validation, 3 numerical, 4 I/O.
int exit_code_for(const std::exception& e);

}  // namespace nhzak
