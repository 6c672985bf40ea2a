// Copyright 2026 The dasv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DASV_OWNER_SET_H_
#define DASV_OWNER_SET_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace dasv {

// Dense index of a data owner within one scenario.
struct OwnerId {
  std::uint32_t value = 0;

  constexpr OwnerId() = default;
  constexpr explicit OwnerId(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(OwnerId, OwnerId) = default;
};

inline constexpr std::size_t kDefaultOwnerCap = 4096;

// Throws ConfigError when `universe` exceeds `cap`.
void CheckOwnerUniverse(std::size_t universe,
                        std::size_t cap = kDefaultOwnerCap);

// Fixed-width bit-vector over the owners of one universe. Binary operations
// require both operands to share the universe width.
class OwnerSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  OwnerSet() = default;
  explicit OwnerSet(std::size_t universe);
  OwnerSet(std::size_t universe, std::initializer_list<std::uint32_t> members);

  static OwnerSet Singleton(std::size_t universe, OwnerId owner);
  static OwnerSet Full(std::size_t universe);

  std::size_t universe() const { return universe_; }

  void Insert(OwnerId owner);
  void Erase(OwnerId owner);
  bool Contains(OwnerId owner) const;

  std::size_t cardinality() const;
  bool empty() const;

  OwnerSet& operator|=(const OwnerSet& other);
  OwnerSet& operator&=(const OwnerSet& other);
  // Set difference.
  OwnerSet& operator-=(const OwnerSet& other);

  friend OwnerSet operator|(OwnerSet a, const OwnerSet& b) { return a |= b; }
  friend OwnerSet operator&(OwnerSet a, const OwnerSet& b) { return a &= b; }
  friend OwnerSet operator-(OwnerSet a, const OwnerSet& b) { return a -= b; }

  bool IsSubsetOf(const OwnerSet& other) const;
  bool IsProperSubsetOf(const OwnerSet& other) const;
  bool Intersects(const OwnerSet& other) const;

  // Members in increasing index order.
  std::vector<OwnerId> Members() const;

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int bit = __builtin_ctzll(bits);
        fn(OwnerId(static_cast<std::uint32_t>(w * kWordBits + bit)));
        bits &= bits - 1;
      }
    }
  }

  std::span<const Word> words() const { return {words_.data(), words_.size()}; }

  // "{0,3,7}".
  std::string ToString() const;

  std::size_t Hash() const;

  friend bool operator==(const OwnerSet& a, const OwnerSet& b);

 private:
  void CheckSameUniverse(const OwnerSet& other) const;
  void CheckMember(OwnerId owner) const;

  std::uint32_t universe_ = 0;
  boost::container::small_vector<Word, 2> words_;
};

// Canonical order: by cardinality, then lexicographically on the increasing
// member lists.
bool CanonicalLess(const OwnerSet& a, const OwnerSet& b);

struct OwnerSetHash {
  std::size_t operator()(const OwnerSet& s) const { return s.Hash(); }
};

}  // namespace dasv

template <>
struct std::hash<dasv::OwnerId> {
  std::size_t operator()(dasv::OwnerId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

#endif  // DASV_OWNER_SET_H_
