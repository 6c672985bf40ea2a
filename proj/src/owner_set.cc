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

#include "dasv/owner_set.h"

#include <algorithm>
#include <bit>

#include "dasv/errors.h"

namespace dasv {
namespace {

std::size_t WordCount(std::size_t universe) {
  return (universe + OwnerSet::kWordBits - 1) / OwnerSet::kWordBits;
}

}  // namespace

void CheckOwnerUniverse(std::size_t universe, std::size_t cap) {
  if (universe > cap) {
    throw ConfigError("owner universe of " + std::to_string(universe) +
                      " exceeds the configured cap of " +
                      std::to_string(cap));
  }
}

OwnerSet::OwnerSet(std::size_t universe)
    : universe_(static_cast<std::uint32_t>(universe)),
      words_(WordCount(universe), 0) {}

OwnerSet::OwnerSet(std::size_t universe,
                   std::initializer_list<std::uint32_t> members)
    : OwnerSet(universe) {
  for (std::uint32_t m : members) Insert(OwnerId(m));
}

OwnerSet OwnerSet::Singleton(std::size_t universe, OwnerId owner) {
  OwnerSet s(universe);
  s.Insert(owner);
  return s;
}

OwnerSet OwnerSet::Full(std::size_t universe) {
  OwnerSet s(universe);
  for (std::size_t i = 0; i < universe; ++i) {
    s.Insert(OwnerId(static_cast<std::uint32_t>(i)));
  }
  return s;
}

void OwnerSet::CheckMember(OwnerId owner) const {
  if (owner.value >= universe_) {
    throw UsageError("owner " + std::to_string(owner.value) +
                     " outside universe of width " +
                     std::to_string(universe_));
  }
}

void OwnerSet::CheckSameUniverse(const OwnerSet& other) const {
  if (universe_ != other.universe_) {
    throw UsageError("owner sets over different universes (" +
                     std::to_string(universe_) + " vs " +
                     std::to_string(other.universe_) + ")");
  }
}

void OwnerSet::Insert(OwnerId owner) {
  CheckMember(owner);
  words_[owner.value / kWordBits] |= Word{1} << (owner.value % kWordBits);
}

void OwnerSet::Erase(OwnerId owner) {
  CheckMember(owner);
  words_[owner.value / kWordBits] &= ~(Word{1} << (owner.value % kWordBits));
}

bool OwnerSet::Contains(OwnerId owner) const {
  if (owner.value >= universe_) return false;
  return (words_[owner.value / kWordBits] >> (owner.value % kWordBits)) & 1U;
}

std::size_t OwnerSet::cardinality() const {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool OwnerSet::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](Word w) { return w == 0; });
}

OwnerSet& OwnerSet::operator|=(const OwnerSet& other) {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

OwnerSet& OwnerSet::operator&=(const OwnerSet& other) {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

OwnerSet& OwnerSet::operator-=(const OwnerSet& other) {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= ~other.words_[i];
  }
  return *this;
}

bool OwnerSet::IsSubsetOf(const OwnerSet& other) const {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool OwnerSet::IsProperSubsetOf(const OwnerSet& other) const {
  return IsSubsetOf(other) && !(*this == other);
}

bool OwnerSet::Intersects(const OwnerSet& other) const {
  CheckSameUniverse(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::vector<OwnerId> OwnerSet::Members() const {
  std::vector<OwnerId> out;
  out.reserve(cardinality());
  ForEach([&](OwnerId id) { out.push_back(id); });
  return out;
}

std::string OwnerSet::ToString() const {
  std::string out = "{";
  bool first = true;
  ForEach([&](OwnerId id) {
    if (!first) out += ',';
    out += std::to_string(id.value);
    first = false;
  });
  out += '}';
  return out;
}

std::size_t OwnerSet::Hash() const {
  // splitmix-style mixing over the words
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
  for (Word w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool operator==(const OwnerSet& a, const OwnerSet& b) {
  a.CheckSameUniverse(b);
  return std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
}

bool CanonicalLess(const OwnerSet& a, const OwnerSet& b) {
  const std::size_t ca = a.cardinality();
  const std::size_t cb = b.cardinality();
  if (ca != cb) return ca < cb;
  // With equal cardinalities the sorted member lists first differ at the
  // smallest owner of the symmetric difference; the set holding it sorts
  // first.
  const auto wa = a.words();
  const auto wb = b.words();
  const std::size_t n = std::min(wa.size(), wb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const OwnerSet::Word diff = wa[i] ^ wb[i];
    if (diff != 0) return (wa[i] & (diff & (~diff + 1))) != 0;
  }
  return false;
}

}  // namespace dasv
