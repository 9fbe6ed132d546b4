#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ranklab::cli {

enum ExitCode : int {
    kOk = 0,
    kViolation = 1, ///< the computation found a violation or counterexample
    kUsage = 2,
    kInternal = 3,
};

/// Runs one command line (args excludes the program name), streaming the
/// report to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Tables known to `reproduce`.
std::vector<std::string> table_names();

/// Regenerates a table as TSV. Throws ContractError for an unknown name.
std::string generate_table(const std::string& name);

/// Directory holding the bundled golden TSVs: $RANKLAB_DATA_DIR/golden if the
/// variable is set, else the build-time default.
std::filesystem::path default_golden_dir();

} // namespace ranklab::cli
