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

#include "gep/manifest.hpp"

#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "gep/error.hpp"

namespace gep::cli {

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError(fmt::format("cannot open '{}'", path.string()));
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

RunManifest::RunManifest(std::filesystem::path file, std::string command,
                         std::vector<std::string> args)
    : file_(std::move(file)), command_(std::move(command)), args_(std::move(args)),
      started_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.push_back({{"path", path.string()}, {"sha256", file_digest(path)}});
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs_.push_back(path.string());
}

void RunManifest::begin() {
  status_ = "running";
  write();
}

void RunManifest::finish(int exit_code, const std::string& message) {
  exit_code_ = exit_code;
  status_ = exit_code == 0 ? "ok" : "failed";
  message_ = message;
  wall_seconds_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
  write();
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["schema"] = "gep-manifest/1";
  j["command"] = command_;
  j["args"] = args_;
  j["config"] = config_;
  j["seed"] = seed_ ? nlohmann::json(*seed_) : nlohmann::json(nullptr);
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  j["status"] = status_;
  if (!solver_status_.empty()) j["solver_status"] = solver_status_;
  if (exit_code_ >= 0) {
    j["exit_code"] = exit_code_;
    j["wall_seconds"] = wall_seconds_;
  }
  if (!message_.empty()) j["message"] = message_;
  return j;
}

void RunManifest::write() const {
  std::ofstream out(file_, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestionError(fmt::format("cannot write '{}'", file_.string()));
  out << to_json().dump(2) << '\n';
}

}  // namespace gep::cli
