#include "manifest.h"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace hyperroute::cli {

namespace {

nlohmann::json Records(const std::vector<FileRecord>& files) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : files) out.push_back({{"path", f.path}, {"hash", f.hash}});
  return out;
}

std::vector<FileRecord> ParseRecords(const nlohmann::json& j) {
  std::vector<FileRecord> out;
  for (const auto& f : j) {
    out.push_back({f.at("path").get<std::string>(), f.at("hash").get<std::string>()});
  }
  return out;
}

}  // namespace

nlohmann::json RunManifest::ToJson() const {
  return {
      {"command", command},
      {"argv", argv},
      {"seed", seed},
      {"parameters", parameters},
      {"inputs", Records(inputs)},
      {"outputs", Records(outputs)},
      {"wall_ms", wall_ms},
      {"status", status},
  };
}

RunManifest RunManifest::FromJson(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.seed = j.value("seed", std::uint64_t{0});
  m.parameters =
      j.value("parameters", std::map<std::string, std::string>{});
  m.inputs = ParseRecords(j.value("inputs", nlohmann::json::array()));
  m.outputs = ParseRecords(j.value("outputs", nlohmann::json::array()));
  m.wall_ms = j.value("wall_ms", 0.0);
  m.status = j.value("status", 0);
  return m;
}

std::string HashFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hyperroute::cli
