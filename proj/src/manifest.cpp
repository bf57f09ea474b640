#include "ccur/manifest.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "ccur/errors.hpp"

namespace ccur {

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw parse_error("cannot open '" + path + "' for digesting");
  }
  std::uint64_t hash = 14695981039346656037ull;
  char buffer[4096];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  std::ostringstream hex;
  hex << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) {
    hex << ((hash >> shift) & 0xF);
  }
  return hex.str();
}

void add_input(RunManifest& manifest, const std::string& path) {
  manifest.inputs.emplace_back(path, fnv1a64_file(path));
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json doc;
  doc["tool"] = "ccur";
  doc["version"] = kToolVersion;
  doc["subcommand"] = manifest.subcommand;
  doc["config"] = manifest.config;
  auto inputs = nlohmann::json::array();
  for (const auto& [input_path, digest] : manifest.inputs) {
    inputs.push_back({{"path", input_path}, {"fnv1a64", digest}});
  }
  doc["inputs"] = inputs;
  doc["outputs"] = manifest.outputs;
  if (manifest.seed) {
    doc["seed"] = *manifest.seed;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw parse_error("cannot open '" + path + "' for writing");
  }
  out << doc.dump(2) << '\n';
}

} // namespace ccur
