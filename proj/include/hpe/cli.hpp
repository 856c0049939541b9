#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hpe/config.hpp"
#include "hpe/verifier.hpp"

namespace hpe::cli {

/// Entry point of the `hpe` tool. Returns the process exit status; errors are
/// reported on `err` as one JSON object per line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// config_hash=..., code_version=..., schema_version=...
std::vector<std::string> header_lines(const RunConfig& c);

/// output_dir, prefixed by $HPE_OUTPUT_ROOT when relative.
std::filesystem::path output_path(const RunConfig& c);

/// Constants for a config: fitted C, lambda and c0 unless overridden.
FittedConstants resolve_constants(const RunConfig& c);

InitialData initial_data(const RunConfig& c, const FittedConstants& k,
                         const DyadicFilterBank& bank);

void write_run_directory(const std::filesystem::path& dir, const RunConfig& c,
                         const FittedConstants& k, const RunRecord& run,
                         const DyadicFilterBank& bank);

/// Rebuilds the record written by write_run_directory. Throws when the
/// directory holds no run.
RunRecord load_run_directory(const std::filesystem::path& dir);

/// Rows name,s,p,value of the summary norms of a run.
struct NormRow {
  std::string name;
  double s = 0.5;
  double p = 0.0;
  double value = 0.0;
};
std::vector<NormRow> run_norms(const RunRecord& run, const DyadicFilterBank& bank);

}  // namespace hpe::cli
