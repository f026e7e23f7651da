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

#include "pcgplan/bitset.h"

#include <bit>
#include <stdexcept>

namespace pcgplan {

DynamicBitset::DynamicBitset(std::size_t size)
    : size_(size), words_((size + 63) / 64, 0) {}

void DynamicBitset::clear() {
  for (auto& w : words_) w = 0;
}

std::size_t DynamicBitset::count() const {
  std::size_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool DynamicBitset::any() const {
  for (uint64_t w : words_) {
    if (w != 0) return true;
  }
  return false;
}

void DynamicBitset::merge(const DynamicBitset& other) {
  if (other.size_ != size_) {
    throw std::invalid_argument("DynamicBitset::merge: size mismatch");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

std::size_t DynamicBitset::count_new(const DynamicBitset& other) const {
  if (other.size_ != size_) {
    throw std::invalid_argument("DynamicBitset::count_new: size mismatch");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += std::popcount(other.words_[i] & ~words_[i]);
  }
  return n;
}

bool DynamicBitset::is_subset_of(const DynamicBitset& other) const {
  if (other.size_ != size_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::vector<std::size_t> DynamicBitset::set_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    uint64_t bits = words_[w];
    while (bits) {
      out.push_back(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string DynamicBitset::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t nibbles = (size_ + 3) / 4;
  std::string out(nibbles, '0');
  for (std::size_t i = 0; i < nibbles; ++i) {
    const std::size_t bit = 4 * i;
    const unsigned v = (words_[bit >> 6] >> (bit & 63)) & 0xFu;
    out[i] = kDigits[v];
  }
  return out;
}

DynamicBitset DynamicBitset::from_hex(std::string_view hex, std::size_t size) {
  if (hex.size() != (size + 3) / 4) {
    throw std::invalid_argument("hex bitset length does not match size");
  }
  DynamicBitset out(size);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const char c = hex[i];
    unsigned v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw std::invalid_argument("invalid hex digit in bitset");
    }
    for (unsigned b = 0; b < 4; ++b) {
      if (!(v >> b & 1u)) continue;
      const std::size_t bit = 4 * i + b;
      if (bit >= size) throw std::invalid_argument("hex bitset sets bit past size");
      out.set(bit);
    }
  }
  return out;
}

}  // namespace pcgplan
