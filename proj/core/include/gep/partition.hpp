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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gep {

struct Block {
  int start = 0;
  int length = 0;

  int end() const { return start + length; }
  bool operator==(const Block&) const = default;
};

// Ordered, contiguous, disjoint blocks of time steps covering [0, horizon).
class Partition {
 public:
  Partition() = default;

  // Throws InvalidArgument unless the blocks tile [0, horizon) in order.
  static Partition from_blocks(std::vector<Block> blocks, int horizon);
  static Partition from_lengths(std::span<const int> lengths);
  static Partition singletons(int horizon);
  static Partition single_block(int horizon);

  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& operator[](std::size_t k) const { return blocks_[k]; }
  int size() const { return static_cast<int>(blocks_.size()); }
  int horizon() const { return horizon_; }
  std::vector<int> lengths() const;
  // Index of the block holding step t.
  int block_of(int t) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Block> blocks_;
  int horizon_ = 0;
};

// CSV with header `length`, one block per line.
std::string partition_to_csv(const Partition& part);
Partition partition_from_csv(std::string_view text);
// {"horizon": T, "lengths": [...]}
std::string partition_to_json(const Partition& part);
Partition partition_from_json(std::string_view text);

}  // namespace gep
