#ifndef GPR_CLI_HPP
#define GPR_CLI_HPP

#include <string>
#include <vector>

namespace gpr {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Runs one CLI invocation. Exit codes: 0 success, 1 mathematical
/// infeasibility (e.g. an indefinite Pick matrix), 2 input error.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace gpr

#endif
