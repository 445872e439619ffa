#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvrisk {

/// Process exit codes of the `cvrisk` tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInput = 2,
    kExitNumeric = 3,
};

/// Environment variable naming the directory that receives `<command>.<csv|json>`
/// when `--out` is not given. Without it results go to `out`.
inline constexpr const char* kOutputDirEnv = "CVRISK_OUTPUT_DIR";

/// Parses `args` (args[0] is the program name), runs the command and writes
/// the table. Diagnostics go to `err`. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvrisk
