// CLI entry point, kept as a library function so tests can drive subcommands
// in-process. All output is deterministic: sorted JSON keys, contract-ordered
// arrays, exact rationals as "p/q".
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace parnode {

struct RunConfig {
    std::string subcommand;  // check | certify | components | mu-enum | dim |
                             // factorize | local-model
    std::string input_path;
    std::string output_format = "json";  // json | csv
    double tolerance = 1e-6;
    int workers = 1;
    // local-model only: inline problem size / field order instead of a file.
    std::optional<long long> size, field;
};

// Executes one subcommand; writes the report to `out` and diagnostics to
// `err`. Exit code: 0 success (all verdicts positive), 1 negative verdict,
// 2 malformed input or computation error (machine-readable error object on
// `out`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace parnode
