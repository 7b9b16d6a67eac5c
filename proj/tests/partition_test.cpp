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

#include <gtest/gtest.h>

#include <vector>

#include "gep/error.hpp"
#include "gep/partition.hpp"

namespace gep {
namespace {

TEST(Partition, FromLengthsBuildsContiguousBlocks) {
  const std::vector<int> lengths = {2, 1, 3};
  const Partition p = Partition::from_lengths(lengths);
  ASSERT_EQ(p.size(), 3);
  EXPECT_EQ(p.horizon(), 6);
  EXPECT_EQ(p[1], (Block{2, 1}));
  EXPECT_EQ(p[2], (Block{3, 3}));
  EXPECT_EQ(p.block_of(0), 0);
  EXPECT_EQ(p.block_of(2), 1);
  EXPECT_EQ(p.block_of(5), 2);
  EXPECT_THROW(p.block_of(6), InvalidArgument);
}

TEST(Partition, RejectsGapsOverlapsAndEmptyBlocks) {
  EXPECT_THROW(Partition::from_blocks({{0, 2}, {3, 1}}, 4), InvalidArgument);
  EXPECT_THROW(Partition::from_blocks({{0, 2}, {1, 3}}, 4), InvalidArgument);
  EXPECT_THROW(Partition::from_blocks({{0, 2}, {2, 1}}, 4), InvalidArgument);
  EXPECT_THROW(Partition::from_lengths(std::vector<int>{2, 0, 1}), InvalidArgument);
}

TEST(Partition, SingletonsAndSingleBlock) {
  EXPECT_EQ(Partition::singletons(5).size(), 5);
  EXPECT_EQ(Partition::single_block(5).size(), 1);
  EXPECT_EQ(Partition::single_block(5)[0].length, 5);
}

TEST(Partition, CsvAndJsonRoundTrip) {
  const Partition p = Partition::from_lengths(std::vector<int>{4, 1, 7});
  EXPECT_EQ(partition_to_csv(p), "length\n4\n1\n7\n");
  EXPECT_EQ(partition_from_csv(partition_to_csv(p)), p);
  EXPECT_EQ(partition_from_json(partition_to_json(p)), p);
}

TEST(Partition, MalformedFilesAreIngestionErrors) {
  EXPECT_THROW(partition_from_csv(""), IngestionError);
  EXPECT_THROW(partition_from_csv("size\n3\n"), IngestionError);
  EXPECT_THROW(partition_from_csv("length\nthree\n"), IngestionError);
  EXPECT_THROW(partition_from_csv("length\n2\n0\n"), IngestionError);
  EXPECT_THROW(partition_from_json("{"), IngestionError);
}

}  // namespace
}  // namespace gep
