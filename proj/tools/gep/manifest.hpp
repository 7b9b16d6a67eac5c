// Copyright 2026 The gep-tsa Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gep::cli {

// Hex SHA-256 of a file's bytes. Throws IngestionError if unreadable.
std::string file_digest(const std::filesystem::path& path);

// Record of one command invocation. begin() writes it with status "running";
// finish() rewrites it with outputs, wall time and exit code.
class RunManifest {
 public:
  RunManifest(std::filesystem::path file, std::string command, std::vector<std::string> args);

  void set_config(nlohmann::json config) { config_ = std::move(config); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  void set_solver_status(std::string status) { solver_status_ = std::move(status); }

  void begin();
  void finish(int exit_code, const std::string& message);

  nlohmann::json to_json() const;

 private:
  void write() const;

  std::filesystem::path file_;
  std::string command_;
  std::vector<std::string> args_;
  nlohmann::json config_ = nlohmann::json::object();
  std::optional<std::uint64_t> seed_;
  nlohmann::json inputs_ = nlohmann::json::array();
  std::vector<std::string> outputs_;
  std::string status_ = "running";
  std::string solver_status_;
  std::string message_;
  int exit_code_ = -1;
  double wall_seconds_ = 0.0;
  std::chrono::steady_clock::time_point started_;
};

}  // namespace gep::cli
