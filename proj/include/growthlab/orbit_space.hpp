#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "growthlab/interner.hpp"
#include "growthlab/presentation.hpp"
#include "growthlab/word.hpp"

namespace growthlab {

// A lazily explored orbit of the group on itself: the Cayley graph under the
// presentation's word-problem engine. Elements are interned canonical forms
// with dense ids assigned in discovery order; BFS layers give exact
// word-metric distances from the basepoint (id 0). Ids may also be interned
// on demand outside the explored ball; the engines provide geodesic
// canonical forms, so such ids still carry exact distances. Quotient spaces
// are realized as the quotient group's Cayley graph, which for Cayley
// actions is isometric to the orbit-space metric.
class OrbitSpace {
 public:
  using Id = std::uint32_t;
  static constexpr Id kBase = 0;
  static constexpr std::size_t kDefaultBudget = 5'000'000;

  explicit OrbitSpace(Presentation p, std::size_t node_budget = kDefaultBudget);

  const Presentation& presentation() const { return pres_; }
  std::size_t node_budget() const { return node_budget_; }
  void set_node_budget(std::size_t b) { node_budget_ = b; }

  // BFS with canonical-form deduplication, layer by layer, letters in rank
  // order within a layer. Throws BudgetExceeded with the completed radius,
  // leaving the completed layers usable.
  void explore(int radius);
  int explored_radius() const { return explored_radius_; }
  std::size_t node_count() const { return interner_.size(); }

  Id id_of(const Word& w);
  std::optional<Id> find(const Word& w) const;

  std::string_view word_view(Id id) const { return interner_.view(id); }
  Word word(Id id) const { return Word(std::string(interner_.view(id))); }
  int dist(Id id) const { return dist_[id]; }

  Id mul(Id g, char letter);
  Id mul(Id g, const Word& w);
  Id inverse_id(Id g);

  // Exact word metric d(x, y) = |canonical(x^-1 y)|.
  int distance(Id x, Id y);

  // One geodesic path from x to y, ShortLex-least among geodesics (the
  // unique geodesic in free groups).
  std::vector<Id> geodesic(Id x, Id y);

  std::uint64_t ball_count(int n) const;
  std::uint64_t sphere_count(int n) const;
  std::vector<std::uint64_t> ball_counts() const;
  std::vector<std::uint64_t> sphere_counts() const;
  const std::vector<Id>& sphere_ids(int n) const;

  // Traces relator loops at every layered vertex and checks they close; a
  // failure means the canonical-form map split one element in two.
  void verify_relator_loops();

 private:
  Id intern_with_dist(std::string_view canon, int dist);

  Presentation pres_;
  std::size_t node_budget_;
  StringInterner interner_;
  std::vector<std::int32_t> dist_;
  std::vector<std::int32_t> layer_of_;     // -1 until BFS places the id
  std::vector<std::vector<Id>> layers_;
  int explored_radius_ = -1;
  std::unordered_map<std::uint64_t, int> distance_memo_;
};

struct PointSet {
  std::vector<OrbitSpace::Id> ids;  // sorted, unique
  std::string label;

  bool contains(OrbitSpace::Id id) const;
  static PointSet of(std::vector<OrbitSpace::Id> ids, std::string label = "");
};

// Cayley graph of the quotient by the normal closure of the extra relators.
OrbitSpace quotient_space(const Presentation& base, std::vector<Word> extra_relators,
                          std::size_t node_budget = OrbitSpace::kDefaultBudget);

}  // namespace growthlab
