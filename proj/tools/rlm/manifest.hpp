#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace rlm::cli {

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Record of one invocation: enough to rerun it and to check its outputs.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set_params(nlohmann::json params) { params_ = std::move(params); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_output(const std::filesystem::path& path) { outputs_.push_back(path); }
  /// Command-specific facts (attempt counts, verdicts, ...).
  nlohmann::json& extra() { return extra_; }

  nlohmann::json finish(int exit_code, const std::string& error) const;

 private:
  std::string command_;
  nlohmann::json params_ = nlohmann::json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::filesystem::path> outputs_;
  nlohmann::json extra_ = nlohmann::json::object();
  std::string started_at_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace rlm::cli
