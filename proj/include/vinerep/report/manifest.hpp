#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace vinerep::report {

struct InputDigest {
  std::string path;
  std::string sha256;
};

/// What a CLI run did: enough to re-run it and to check every output it wrote.
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<InputDigest> inputs;
  std::string version;
  std::string timestamp;             // UTC, ISO 8601; the only run-dependent field
  std::vector<std::string> outputs;  // file names relative to the output directory
  std::string kernel_backend;

  nlohmann::json to_json() const;
};

/// Hex SHA-256 of a file's bytes. Throws InputError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

std::string utc_timestamp();

std::string library_version();

}  // namespace vinerep::report
