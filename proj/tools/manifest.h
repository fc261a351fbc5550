#ifndef HYPERROUTE_TOOLS_MANIFEST_H_
#define HYPERROUTE_TOOLS_MANIFEST_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace hyperroute::cli {

struct FileRecord {
  std::string path;
  std::string hash;  // FNV-1a of the contents, 16 hex digits
};

// Everything needed to replay one invocation and check that it reproduces.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;  // without the program name and --manifest
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
  std::vector<FileRecord> inputs;
  std::vector<FileRecord> outputs;
  double wall_ms = 0;
  int status = 0;

  nlohmann::json ToJson() const;
  static RunManifest FromJson(const nlohmann::json& j);
};

// Throws std::runtime_error when the file cannot be read.
std::string HashFile(const std::string& path);

}  // namespace hyperroute::cli

#endif  // HYPERROUTE_TOOLS_MANIFEST_H_
