// Copyright 2026 The Authors.
//
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

#ifndef PCGPLAN_BITSET_H_
#define PCGPLAN_BITSET_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pcgplan {

// Fixed-length bitset sized at runtime. Used for per-patch visibility, where
// the length is the surface patch count m.
class DynamicBitset {
 public:
  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t size);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  void clear();

  std::size_t count() const;
  bool any() const;

  // this |= other. Sizes must match.
  void merge(const DynamicBitset& other);
  // popcount(other & ~this): bits that `other` would newly add.
  std::size_t count_new(const DynamicBitset& other) const;
  // True iff every set bit of this is also set in other.
  bool is_subset_of(const DynamicBitset& other) const;

  std::vector<std::size_t> set_bits() const;

  // Lower-case hex, one nibble per 4 bits; nibble i holds bits 4i..4i+3 with
  // bit 4i as its least significant bit.
  std::string to_hex() const;
  static DynamicBitset from_hex(std::string_view hex, std::size_t size);

  const std::vector<uint64_t>& words() const { return words_; }

  friend bool operator==(const DynamicBitset& a, const DynamicBitset& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::size_t size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace pcgplan

#endif  // PCGPLAN_BITSET_H_
