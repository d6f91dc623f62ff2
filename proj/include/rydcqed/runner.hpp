// runner.hpp — executes a RunConfig and writes manifest + CSV artifacts.

#pragma once

#include "rydcqed/config.hpp"

#include <iosfwd>
#include <string>

namespace rydcqed {

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_solver = 2, exit_io = 3 };

// Writes manifest.json and the mode's CSV files into cfg.output_dir.
// Failures are reported as one JSON object on `err`; the return value is the
// process exit status.
int run(const RunConfig& cfg, std::ostream& err);

// {"error": kind, "message": ..., "exit_code": n}
std::string error_json(const std::string& kind, const std::string& message, int exit_code);

std::string version();

} // namespace rydcqed
