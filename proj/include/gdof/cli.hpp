#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with string streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace gdof::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid = 2,   // parse, validation, I/O or cap errors
    exit_refused = 3,   // input outside the regime the command needs
    exit_failed = 4,    // a property suite or scheme verification failed
};

/// `args` excludes the program name. A network path of "-" reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of the given bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace gdof::cli
