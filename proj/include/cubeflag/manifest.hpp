#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cubeflag {

inline constexpr const char* kToolVersion = "cubeflag 1.0.0";

// SHA-256 hex digest of a file's bytes.  Throws Error when unreadable.
std::string sha256_file(const std::string& path);
std::string sha256_bytes(const std::string& bytes);

// Reproducibility record written by every CLI run: the subcommand, its
// parameters, digests of inputs and outputs, and wall-clock timing (the one
// field excluded from reproducibility comparisons).
struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> inputs;   // file paths, digested at write time
  std::vector<std::string> outputs;  // file paths, digested at write time
  double elapsed_secs = 0.0;

  void write(const std::string& path) const;
};

}  // namespace cubeflag
