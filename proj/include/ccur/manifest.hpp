#ifndef CCUR_MANIFEST_HPP
#define CCUR_MANIFEST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ccur {

inline constexpr const char* kToolVersion = "0.1.0";

/// Record of one CLI run: the subcommand, every hyperparameter after
/// defaulting, digests of the input files, and the output paths. Written
/// next to the outputs; a run repeated with the same inputs and resolved
/// configuration reproduces the outputs byte for byte.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config;
  std::vector<std::pair<std::string, std::string>> inputs; // path, digest
  std::vector<std::string> outputs;
  std::optional<std::uint64_t> seed;
};

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string fnv1a64_file(const std::string& path);

void add_input(RunManifest& manifest, const std::string& path);
void write_manifest(const std::string& path, const RunManifest& manifest);

} // namespace ccur

#endif
