#include "growthlab/orbit_space.hpp"

#include <algorithm>

#include "growthlab/errors.hpp"

namespace growthlab {

OrbitSpace::OrbitSpace(Presentation p, std::size_t node_budget)
    : pres_(std::move(p)), node_budget_(node_budget) {
  intern_with_dist("", 0);
  layer_of_[kBase] = 0;
  layers_.push_back({kBase});
  explored_radius_ = 0;
}

OrbitSpace::Id OrbitSpace::intern_with_dist(std::string_view canon, int dist) {
  Id id = interner_.intern(canon);
  if (id == dist_.size()) {
    dist_.push_back(dist);
    layer_of_.push_back(-1);
  }
  return id;
}

void OrbitSpace::explore(int radius) {
  const int k = pres_.generator_count();
  std::string letter_order;
  for (int g = 0; g < k; ++g) {
    letter_order.push_back(letters::generator(g));
    letter_order.push_back(letters::generator(g, true));
  }
  const bool free_fast_path = pres_.strategy() == Strategy::kFree;

  for (int n = explored_radius_; n < radius; ++n) {
    std::vector<Id> next_layer;
    std::vector<Id> added;
    std::string buf;
    for (Id parent_id : layers_[n]) {
      for (char s : letter_order) {
        std::string_view parent = interner_.view(parent_id);
        if (free_fast_path) {
          if (!parent.empty() && parent.back() == letters::inverse(s)) continue;
          buf.assign(parent);
          buf.push_back(s);
        } else {
          buf.assign(parent);
          buf.push_back(s);
          buf = pres_.canonical(Word(buf)).str();
          if (buf.size() <= static_cast<std::size_t>(n)) continue;  // old element
        }
        auto existing = interner_.find(buf);
        if (existing && layer_of_[*existing] >= 0) continue;
        if (!existing && interner_.size() >= node_budget_) {
          // Roll the partial layer back so the explored prefix stays exact.
          // Ids interned during this pass sit at the tail in discovery order.
          for (Id id : next_layer) layer_of_[id] = -1;
          std::size_t keep = interner_.size() - added.size();
          interner_.truncate(keep);
          dist_.resize(keep);
          layer_of_.resize(keep);
          throw BudgetExceeded(n, "exploration budget of " +
                                      std::to_string(node_budget_) +
                                      " nodes hit at radius " + std::to_string(n + 1));
        }
        Id id = existing ? *existing : intern_with_dist(buf, n + 1);
        if (dist_[id] != n + 1) {
          throw Error("BFS layer disagrees with the canonical geodesic length for '" +
                      std::string(interner_.view(id)) + "'");
        }
        layer_of_[id] = n + 1;
        next_layer.push_back(id);
        if (!existing) added.push_back(id);
      }
    }
    layers_.push_back(std::move(next_layer));
    explored_radius_ = n + 1;
  }
}

OrbitSpace::Id OrbitSpace::id_of(const Word& w) {
  Word canon = pres_.canonical(w);
  return intern_with_dist(canon.str(), static_cast<int>(canon.size()));
}

std::optional<OrbitSpace::Id> OrbitSpace::find(const Word& w) const {
  return interner_.find(pres_.canonical(w).str());
}

OrbitSpace::Id OrbitSpace::mul(Id g, char letter) {
  std::string s(interner_.view(g));
  s.push_back(letter);
  return id_of(Word(std::move(s)));
}

OrbitSpace::Id OrbitSpace::mul(Id g, const Word& w) {
  return id_of(Word(std::string(interner_.view(g)) + w.str()));
}

OrbitSpace::Id OrbitSpace::inverse_id(Id g) { return id_of(word(g).inverse()); }

int OrbitSpace::distance(Id x, Id y) {
  if (x == y) return 0;
  if (y == kBase) std::swap(x, y);
  if (x == kBase) return dist_[y];
  if (x > y) std::swap(x, y);  // the metric is symmetric
  std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | y;
  auto it = distance_memo_.find(key);
  if (it != distance_memo_.end()) return it->second;
  int d = pres_.geodesic_length(word(x).inverse() * word(y));
  distance_memo_.emplace(key, d);
  return d;
}

std::vector<OrbitSpace::Id> OrbitSpace::geodesic(Id x, Id y) {
  std::vector<Id> path{x};
  const int k = pres_.generator_count();
  Id cur = x;
  int d = distance(cur, y);
  while (d > 0) {
    bool stepped = false;
    for (int g = 0; g < 2 * k && !stepped; ++g) {
      char s = letters::generator(g / 2, g % 2 == 1);
      Id next = mul(cur, s);
      if (next == cur) continue;
      if (distance(next, y) == d - 1) {
        path.push_back(next);
        cur = next;
        --d;
        stepped = true;
      }
    }
    if (!stepped) throw Error("geodesic walk stalled; engine inconsistency");
  }
  return path;
}

std::uint64_t OrbitSpace::ball_count(int n) const {
  if (n < 0 || n > explored_radius_) {
    throw Unexplored("ball_count: radius " + std::to_string(n) +
                     " beyond explored " + std::to_string(explored_radius_));
  }
  std::uint64_t acc = 0;
  for (int r = 0; r <= n; ++r) acc += layers_[r].size();
  return acc;
}

std::uint64_t OrbitSpace::sphere_count(int n) const {
  if (n < 0 || n > explored_radius_) throw Unexplored("sphere beyond explored ball");
  return layers_[n].size();
}

std::vector<std::uint64_t> OrbitSpace::ball_counts() const {
  std::vector<std::uint64_t> out;
  std::uint64_t acc = 0;
  for (int n = 0; n <= explored_radius_; ++n) {
    acc += layers_[n].size();
    out.push_back(acc);
  }
  return out;
}

std::vector<std::uint64_t> OrbitSpace::sphere_counts() const {
  std::vector<std::uint64_t> out;
  for (int n = 0; n <= explored_radius_; ++n) out.push_back(layers_[n].size());
  return out;
}

const std::vector<OrbitSpace::Id>& OrbitSpace::sphere_ids(int n) const {
  if (n < 0 || n > explored_radius_) throw Unexplored("sphere beyond explored ball");
  return layers_[n];
}

void OrbitSpace::verify_relator_loops() {
  std::vector<std::string> loops;
  switch (pres_.strategy()) {
    case Strategy::kFree:
      return;
    case Strategy::kFreeProductOfCyclics:
    case Strategy::kCPrimeOneSixth:
      for (const auto& r : pres_.relators()) loops.push_back(r.str());
      break;
    case Strategy::kDirectProduct: {
      const auto& fs = pres_.factors();
      for (std::size_t f = 0; f < fs.size(); ++f) {
        for (const auto& r : fs[f].relators()) {
          std::string lifted;
          for (char c : r.str()) {
            lifted.push_back(pres_.factor_letter_to_product(static_cast<int>(f), c));
          }
          loops.push_back(lifted);
        }
      }
      for (int i = 0; i < pres_.generator_count(); ++i) {
        for (int j = i + 1; j < pres_.generator_count(); ++j) {
          char a = letters::generator(i), b = letters::generator(j);
          if (pres_.factor_of_letter(a) == pres_.factor_of_letter(b)) continue;
          loops.push_back(std::string{a, b, letters::inverse(a), letters::inverse(b)});
        }
      }
      break;
    }
  }
  const std::size_t explored = interner_.size();
  for (std::size_t idx = 0; idx < explored; ++idx) {
    if (layer_of_[idx] < 0) continue;
    for (const auto& loop : loops) {
      Id cur = static_cast<Id>(idx);
      for (char c : loop) cur = mul(cur, c);
      if (cur != static_cast<Id>(idx)) {
        throw Error("relator loop failed to close at id " + std::to_string(idx) +
                    " for relator " + loop + ": canonical map split an element");
      }
    }
  }
}

bool PointSet::contains(OrbitSpace::Id id) const {
  return std::binary_search(ids.begin(), ids.end(), id);
}

PointSet PointSet::of(std::vector<OrbitSpace::Id> ids, std::string label) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return PointSet{std::move(ids), std::move(label)};
}

OrbitSpace quotient_space(const Presentation& base, std::vector<Word> extra_relators,
                          std::size_t node_budget) {
  std::vector<Word> relators = base.relators();
  relators.insert(relators.end(), extra_relators.begin(), extra_relators.end());
  return OrbitSpace(
      Presentation::from_relators(base.generator_count(), std::move(relators)),
      node_budget);
}

}  // namespace growthlab
