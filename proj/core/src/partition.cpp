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

#include "gep/partition.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gep/error.hpp"

namespace gep {

Partition Partition::from_blocks(std::vector<Block> blocks, int horizon) {
  if (horizon < 1) throw InvalidArgument("partition: horizon must be positive");
  int expected = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].length < 1) {
      throw InvalidArgument(fmt::format("partition: block {} is empty", k));
    }
    if (blocks[k].start != expected) {
      throw InvalidArgument(fmt::format(
          "partition: block {} starts at {}, expected {} (blocks must be "
          "contiguous and ordered)",
          k, blocks[k].start, expected));
    }
    expected = blocks[k].end();
  }
  if (expected != horizon) {
    throw InvalidArgument(fmt::format(
        "partition: blocks cover [0, {}) but the horizon is {}", expected, horizon));
  }
  Partition part;
  part.blocks_ = std::move(blocks);
  part.horizon_ = horizon;
  return part;
}

Partition Partition::from_lengths(std::span<const int> lengths) {
  std::vector<Block> blocks;
  blocks.reserve(lengths.size());
  int start = 0;
  for (int len : lengths) {
    blocks.push_back({start, len});
    start += len;
  }
  return from_blocks(std::move(blocks), start);
}

Partition Partition::singletons(int horizon) {
  std::vector<int> lengths(static_cast<std::size_t>(std::max(horizon, 0)), 1);
  if (horizon < 1) throw InvalidArgument("partition: horizon must be positive");
  return from_lengths(lengths);
}

Partition Partition::single_block(int horizon) {
  return from_blocks({{0, horizon}}, horizon);
}

std::vector<int> Partition::lengths() const {
  std::vector<int> out;
  out.reserve(blocks_.size());
  for (const Block& b : blocks_) out.push_back(b.length);
  return out;
}

int Partition::block_of(int t) const {
  if (t < 0 || t >= horizon_) {
    throw InvalidArgument(fmt::format("partition: step {} outside horizon", t));
  }
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), t,
                             [](int step, const Block& b) { return step < b.start; });
  return static_cast<int>(std::distance(blocks_.begin(), it)) - 1;
}

std::string partition_to_csv(const Partition& part) {
  std::string out = "length\n";
  for (const Block& b : part.blocks()) out += fmt::format("{}\n", b.length);
  return out;
}

Partition partition_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw IngestionError("partition CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "length") {
    throw IngestionError("partition CSV: expected header 'length'");
  }
  std::vector<int> lengths;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    int value = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw IngestionError(fmt::format("partition CSV: row {} is not an integer", row));
    }
    lengths.push_back(value);
  }
  if (lengths.empty()) throw IngestionError("partition CSV: no blocks");
  try {
    return Partition::from_lengths(lengths);
  } catch (const InvalidArgument& e) {
    throw IngestionError(fmt::format("partition CSV: {}", e.what()));
  }
}

std::string partition_to_json(const Partition& part) {
  nlohmann::json doc;
  doc["horizon"] = part.horizon();
  doc["lengths"] = part.lengths();
  return doc.dump() + "\n";
}

Partition partition_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    const auto lengths = doc.at("lengths").get<std::vector<int>>();
    Partition part = Partition::from_lengths(lengths);
    if (doc.contains("horizon") && doc.at("horizon").get<int>() != part.horizon()) {
      throw IngestionError("partition JSON: lengths do not sum to horizon");
    }
    return part;
  } catch (const nlohmann::json::exception& e) {
    throw IngestionError(fmt::format("partition JSON: {}", e.what()));
  } catch (const InvalidArgument& e) {
    throw IngestionError(fmt::format("partition JSON: {}", e.what()));
  }
}

}  // namespace gep
