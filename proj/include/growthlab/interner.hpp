#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace growthlab {

// Dense string -> id map backed by one arena; ids are assigned in insertion
// order, which the BFS relies on for deterministic element ids.
class StringInterner {
 public:
  StringInterner() { rehash(1 << 10); }

  std::size_t size() const { return offsets_.size() - 1; }

  std::string_view view(std::uint32_t id) const {
    return std::string_view(arena_).substr(offsets_[id],
                                           offsets_[id + 1] - offsets_[id]);
  }

  std::optional<std::uint32_t> find(std::string_view s) const {
    std::size_t slot = hash(s) & mask_;
    while (table_[slot] != 0) {
      std::uint32_t id = table_[slot] - 1;
      if (view(id) == s) return id;
      slot = (slot + 1) & mask_;
    }
    return {};
  }

  std::uint32_t intern(std::string_view s) {
    std::size_t slot = hash(s) & mask_;
    while (table_[slot] != 0) {
      std::uint32_t id = table_[slot] - 1;
      if (view(id) == s) return id;
      slot = (slot + 1) & mask_;
    }
    std::uint32_t id = static_cast<std::uint32_t>(size());
    arena_.append(s);
    offsets_.push_back(static_cast<std::uint64_t>(arena_.size()));
    table_[slot] = id + 1;
    if ((size() + 1) * 10 > table_.size() * 7) rehash(table_.size() * 2);
    return id;
  }

  // Drop every id >= keep (BFS layer rollback on budget aborts).
  void truncate(std::size_t keep) {
    if (keep >= size()) return;
    offsets_.resize(keep + 1);
    arena_.resize(offsets_.back());
    rehash(table_.size());
  }

 private:
  static std::uint64_t hash(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }

  void rehash(std::size_t new_slots) {
    table_.assign(new_slots, 0);
    mask_ = new_slots - 1;
    for (std::uint32_t id = 0; id < size(); ++id) {
      std::size_t slot = hash(view(id)) & mask_;
      while (table_[slot] != 0) slot = (slot + 1) & mask_;
      table_[slot] = id + 1;
    }
  }

  std::string arena_;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<std::uint32_t> table_;
  std::size_t mask_ = 0;
};

}  // namespace growthlab
