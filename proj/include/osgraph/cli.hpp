#pragma once

#include <string>
#include <vector>

namespace osgraph::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one CLI invocation (argv without the program name). Exit codes:
/// 0 success / properties hold, 1 property failure or replay mismatch,
/// 2 usage errors.
int run(const std::vector<std::string>& args);

/// fnv1a64:<hex> fingerprint used by run manifests to pin file contents.
std::string digest_bytes(const std::string& bytes);

}  // namespace osgraph::cli
