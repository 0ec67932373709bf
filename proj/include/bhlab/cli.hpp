#pragma once

// Experiment runner behind the `bhlab` executable. `run` is callable
// in-process so every subcommand can be exercised without spawning.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bhlab/json_io.hpp"

namespace bhlab::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { ok = 0, invalid_args = 1, verification_failure = 2 };

struct ExperimentRecord {
  std::string command;
  Json params = Json::object();  // flag name -> value actually used
  std::uint64_t seed = 0;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  Json certificate = Json::object(); // NormCertificate or bound itemization
  std::optional<std::string> witness_path;
  std::int64_t runtime_ms = 0;
  std::string tool_version = kToolVersion;
  std::string created_at;
};

Json to_json(const ExperimentRecord& r);
ExperimentRecord record_from_json(const Json& j);

/// Rows of the report table, stably sorted by (command, m, n, p, seed).
/// Columns: m,n,p,command,value,lower,upper,seed.
std::string report_csv(const std::vector<ExperimentRecord>& records);

/// args excludes the program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bhlab::cli
