#include "growthlab/contracting.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

#include "growthlab/errors.hpp"

namespace growthlab {

namespace {

Word power(const Word& w, int e) {
  std::string s;
  const Word base = e >= 0 ? w : w.inverse();
  for (int i = 0; i < std::abs(e); ++i) s += base.str();
  return free_reduce(Word(std::move(s)));
}

}  // namespace

Axis::Axis(OrbitSpace& space, const Word& h, const Word& translate, int window_radius)
    : h_(h), window_radius_(window_radius) {
  auto dec = cyclic_reduce_and_root(h);
  // Fold the conjugator into the root so the line passes through g.o.
  root_ = free_reduce(dec.conjugator * dec.root * dec.conjugator.inverse());
  translate_ = space.presentation().canonical(translate);

  const int core = std::max<int>(1, static_cast<int>(dec.root.size()));
  power_range_ =
      (2 * (window_radius + static_cast<int>(translate_.size()) +
            static_cast<int>(root_.size())) + core - 1) / core + 2;

  std::vector<OrbitSpace::Id> orbit, line;
  OrbitSpace::Id prev = 0;
  for (int j = -power_range_; j <= power_range_; ++j) {
    Word point = free_reduce(translate_ * power(root_, j));
    OrbitSpace::Id id = space.id_of(point);
    orbit.push_back(id);
    if (j > -power_range_) {
      auto seg = space.geodesic(prev, id);
      line.insert(line.end(), seg.begin(), seg.end());
    }
    prev = id;
  }
  std::string label = translate_.str() + ".Ax(" + root_.str() + ")";
  orbit_ = PointSet::of(std::move(orbit), label);
  line_ends_ = {line.front(), line.back()};
  points_ = PointSet::of(std::move(line), std::move(label));
}

Axis::QuasiGeodesicFit Axis::quasi_geodesic_fit(OrbitSpace& space) const {
  QuasiGeodesicFit fit;
  fit.lambda = 1e9;
  std::vector<OrbitSpace::Id> orbit;
  for (int j = -power_range_; j <= power_range_; ++j) {
    orbit.push_back(space.id_of(free_reduce(translate_ * power(root_, j))));
  }
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (std::size_t j = i + 1; j < orbit.size(); ++j) {
      double d = space.distance(orbit[i], orbit[j]);
      double steps = static_cast<double>(j - i);
      fit.lambda = std::min(fit.lambda, d / steps);
    }
  }
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (std::size_t j = i + 1; j < orbit.size(); ++j) {
      double d = space.distance(orbit[i], orbit[j]);
      fit.c = std::max(fit.c, fit.lambda * static_cast<double>(j - i) - d);
    }
  }
  return fit;
}

int Axis::root_orbit_gap(OrbitSpace& space) const {
  // Hausdorff gap between <h>.o and <root>.o around the translate.
  int gap = 0;
  for (int j = -3; j <= 3; ++j) {
    Word hp = free_reduce(translate_ * power(h_, j));
    OrbitSpace::Id id = space.id_of(hp);
    int best = 1 << 20;
    for (auto p : orbit_.ids) best = std::min(best, space.distance(id, p));
    gap = std::max(gap, best);
  }
  return gap;
}

PointSet project(OrbitSpace& space, const PointSet& S, OrbitSpace::Id x) {
  if (S.ids.empty()) throw WindowTooSmall("projection onto an empty set");
  int best = 1 << 30;
  std::vector<OrbitSpace::Id> arg;
  for (auto s : S.ids) {
    int d = space.distance(x, s);
    if (d < best) {
      best = d;
      arg.clear();
    }
    if (d == best) arg.push_back(s);
  }
  return PointSet::of(std::move(arg));
}

int set_diameter(OrbitSpace& space, const PointSet& S) {
  int diam = 0;
  for (std::size_t i = 0; i < S.ids.size(); ++i) {
    for (std::size_t j = i + 1; j < S.ids.size(); ++j) {
      diam = std::max(diam, space.distance(S.ids[i], S.ids[j]));
    }
  }
  return diam;
}

int proj_diameter(OrbitSpace& space, const PointSet& S, const PointSet& B) {
  std::vector<OrbitSpace::Id> all;
  for (auto x : B.ids) {
    auto p = project(space, S, x);
    all.insert(all.end(), p.ids.begin(), p.ids.end());
  }
  return set_diameter(space, PointSet::of(std::move(all)));
}

int proj_diameter(OrbitSpace& space, const PointSet& S, const PointSet& B,
                  const PointSet& C) {
  std::vector<OrbitSpace::Id> merged = B.ids;
  merged.insert(merged.end(), C.ids.begin(), C.ids.end());
  return proj_diameter(space, S, PointSet::of(std::move(merged)));
}

ContractionResult contraction_constant(OrbitSpace& space, const PointSet& S,
                                       int sample_radius, int trials,
                                       std::uint64_t seed) {
  if (sample_radius < 2) throw WindowTooSmall("sample radius too small");
  space.explore(sample_radius);
  const std::uint64_t ball = space.ball_count(sample_radius);

  std::vector<std::pair<OrbitSpace::Id, OrbitSpace::Id>> pairs;
  if (ball * ball <= 10'000) {
    for (OrbitSpace::Id x = 0; x < ball; ++x) {
      for (OrbitSpace::Id y = x + 1; y < ball; ++y) pairs.emplace_back(x, y);
    }
  } else {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
      auto x = static_cast<OrbitSpace::Id>(rng() % ball);
      auto y = static_cast<OrbitSpace::Id>(rng() % ball);
      if (x != y) pairs.emplace_back(x, y);
    }
  }

  std::vector<std::pair<int, int>> samples;  // (d(alpha,S), d^pi_S(alpha))
  for (auto [x, y] : pairs) {
    auto path = space.geodesic(x, y);
    int dist = 1 << 30;
    for (auto v : path) {
      for (auto s : S.ids) dist = std::min(dist, space.distance(v, s));
    }
    int pd = proj_diameter(space, S, PointSet::of(path));
    samples.emplace_back(dist, pd);
  }

  for (int C = 0; C <= sample_radius; ++C) {
    bool ok = true;
    for (auto [d, pd] : samples) {
      if (d >= C && pd > C) {
        ok = false;
        break;
      }
    }
    if (ok) {
      // Constants the window cannot falsify are not evidence of contraction.
      if (C > sample_radius / 2) {
        return NotContracting{"smallest admissible constant " + std::to_string(C) +
                              " exceeds half the sampled radius"};
      }
      return C;
    }
  }
  return NotContracting{"no constant up to the sample radius works"};
}

int bounded_intersection_profile(OrbitSpace& space, const PointSet& S1,
                                 const PointSet& S2, int c) {
  // Exact c-neighborhood of S1 by breadth-first fattening.
  std::unordered_set<OrbitSpace::Id> hood(S1.ids.begin(), S1.ids.end());
  std::vector<OrbitSpace::Id> frontier(S1.ids.begin(), S1.ids.end());
  const int k = space.presentation().generator_count();
  for (int step = 0; step < c; ++step) {
    std::vector<OrbitSpace::Id> next;
    for (auto v : frontier) {
      for (int g = 0; g < 2 * k; ++g) {
        auto u = space.mul(v, letters::generator(g / 2, g % 2 == 1));
        if (hood.insert(u).second) next.push_back(u);
      }
    }
    frontier = std::move(next);
  }
  std::vector<OrbitSpace::Id> both;
  for (auto v : hood) {
    for (auto s : S2.ids) {
      if (space.distance(v, s) <= c) {
        both.push_back(v);
        break;
      }
    }
  }
  if (both.empty()) return 0;
  return set_diameter(space, PointSet::of(std::move(both)));
}

BoundedProjectionReport bounded_projection_check(OrbitSpace& space,
                                                 const std::vector<Axis>& translates) {
  BoundedProjectionReport rep;
  for (std::size_t i = 0; i < translates.size(); ++i) {
    for (std::size_t j = 0; j < translates.size(); ++j) {
      if (i == j) continue;
      if (translates[i].same_points(translates[j])) {
        throw AxiomViolation("bounded_projection_check: duplicate translate " +
                             translates[i].label());
      }
      int v = proj_diameter(space, translates[i].points(), translates[j].points());
      rep.table.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
      rep.D = std::max(rep.D, v);
    }
  }
  return rep;
}

bool independence_test(OrbitSpace& space, const Word& h, const Word& f,
                       int window_radius, int profile_c) {
  Axis base_h(space, h, Word(), window_radius);
  Axis base_f(space, f, Word(), window_radius);
  if (base_h.same_points(base_f)) return false;

  // Window family: translates over a small ball, deduplicated setwise.
  space.explore(std::min(window_radius, 3));
  std::vector<Axis> family;
  auto add_translates = [&](const Word& elem) {
    for (OrbitSpace::Id g = 0; g < space.ball_count(std::min(window_radius, 3)); ++g) {
      Axis cand(space, elem, space.word(g), window_radius);
      bool dup = false;
      for (const auto& a : family) dup = dup || cand.same_points(a);
      if (!dup) family.push_back(std::move(cand));
    }
  };
  add_translates(h);
  std::size_t h_count = family.size();
  add_translates(f);

  // Mixed pairs (one from each family) must not coincide beyond what the
  // setwise dedup already merged, and their profiles must stay bounded.
  const int bound = 4 * profile_c +
                    2 * static_cast<int>(base_h.root().size() + base_f.root().size()) + 4;
  for (std::size_t i = 0; i < h_count; ++i) {
    for (std::size_t j = h_count; j < family.size(); ++j) {
      int profile =
          bounded_intersection_profile(space, family[i].points(), family[j].points(),
                                       profile_c);
      if (profile > bound) return false;
    }
  }
  return true;
}

int AdmissiblePath::total_length() const {
  int len = 0;
  for (const auto& s : segments) len += s.length();
  return len;
}

std::vector<OrbitSpace::Id> AdmissiblePath::vertices() const {
  std::vector<OrbitSpace::Id> out;
  for (const auto& s : segments) {
    for (auto v : s.points) {
      if (out.empty() || out.back() != v) out.push_back(v);
    }
  }
  return out;
}

AdmissibleVerdict check_admissible(OrbitSpace& space, const AdmissiblePath& path) {
  AdmissibleVerdict verdict;
  if (path.segments.empty()) return verdict;

  std::vector<std::size_t> assoc;
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    if (path.segments[i].axis_index) assoc.push_back(i);
  }
  const OrbitSpace::Id start = path.start(), end = path.end();

  for (std::size_t k = 0; k < assoc.size(); ++k) {
    const auto& seg = path.segments[assoc[k]];
    const Axis& axis = path.axes[*seg.axis_index];

    if (!axis.points().contains(seg.front()) || !axis.points().contains(seg.back())) {
      verdict.violations.push_back({assoc[k], "endpoint", 0});
    }
    // (LL): interior associated segments must be longer than K.
    if (seg.front() != start && seg.back() != end &&
        !(seg.length() > path.K)) {
      verdict.violations.push_back({assoc[k], "LL", static_cast<double>(seg.length())});
    }
    // (BP) on both sides, with path endpoints as the outer conventions.
    OrbitSpace::Id left =
        k == 0 ? start : path.segments[assoc[k - 1]].back();
    OrbitSpace::Id right =
        k + 1 == assoc.size() ? end : path.segments[assoc[k + 1]].front();
    int bp_left = proj_diameter(space, axis.points(), PointSet::of({left}),
                                PointSet::of({seg.front()}));
    int bp_right = proj_diameter(space, axis.points(), PointSet::of({seg.back()}),
                                 PointSet::of({right}));
    if (bp_left > path.theta) {
      verdict.violations.push_back({assoc[k], "BP", static_cast<double>(bp_left)});
    }
    if (bp_right > path.theta) {
      verdict.violations.push_back({assoc[k], "BP", static_cast<double>(bp_right)});
    }
  }
  return verdict;
}

double verify_bp_bound(OrbitSpace& space, const AdmissiblePath& path) {
  if (!check_admissible(space, path).admissible()) {
    throw NotAdmissible("verify_bp_bound expects an admissible path");
  }
  double best = 0;
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const auto& seg = path.segments[i];
    if (!seg.axis_index) continue;
    const Axis& axis = path.axes[*seg.axis_index];
    std::vector<OrbitSpace::Id> before, after;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& pts = path.segments[j].points;
      before.insert(before.end(), pts.begin(), pts.end());
    }
    before.push_back(seg.front());
    after.push_back(seg.back());
    for (std::size_t j = i + 1; j < path.segments.size(); ++j) {
      const auto& pts = path.segments[j].points;
      after.insert(after.end(), pts.begin(), pts.end());
    }
    best = std::max(best, static_cast<double>(proj_diameter(
                              space, axis.points(), PointSet::of(std::move(before)))));
    best = std::max(best, static_cast<double>(proj_diameter(
                              space, axis.points(), PointSet::of(std::move(after)))));
  }
  return best;
}

DeepPointReport classify_deep_points(OrbitSpace& space,
                                     const std::vector<OrbitSpace::Id>& geodesic,
                                     const std::vector<Axis>& system,
                                     const DeepPointParams& params) {
  DeepPointReport rep;
  if (geodesic.empty()) return rep;
  for (std::size_t s = 0; s < system.size(); ++s) {
    const auto& pts = system[s].points();
    int run_start = -1;
    for (std::size_t t = 0; t <= geodesic.size(); ++t) {
      bool close = false;
      if (t < geodesic.size()) {
        for (auto p : pts.ids) {
          if (space.distance(geodesic[t], p) <= params.epsilon) {
            close = true;
            break;
          }
        }
      }
      if (close && run_start < 0) run_start = static_cast<int>(t);
      if (!close && run_start >= 0) {
        int len = static_cast<int>(t) - 1 - run_start;
        if (len >= 2 * params.M) {
          rep.segments.push_back({s, system[s].label(), run_start, len});
        }
        run_start = -1;
      }
    }
  }
  return rep;
}

DeepPointReport deep_runs_in_translates(const Word& geodesic_word, const Word& h) {
  DeepPointReport rep;
  const std::string w = free_reduce(geodesic_word).str();
  if (w.empty()) return rep;
  const std::string root = cyclic_reduce_and_root(h).root.str();
  const int r = static_cast<int>(root.size());

  std::vector<std::string> phases;
  std::string back = Word(root).inverse().str();
  for (int i = 0; i < r; ++i) {
    phases.push_back(root.substr(i) + root.substr(0, i));
    phases.push_back(back.substr(i) + back.substr(0, i));
  }

  int prev_end = -1;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    int best = 0;
    std::string best_phase;
    for (const auto& rho : phases) {
      int m = 0;
      while (i + m < static_cast<int>(w.size()) && w[i + m] == rho[m % r]) ++m;
      if (m > best) {
        best = m;
        best_phase = rho;
      }
    }
    if (i + best <= prev_end) continue;  // contained in an earlier run
    if (best > 0) {
      rep.segments.push_back({static_cast<std::size_t>(-1),
                              w.substr(0, i) + "@" + best_phase, i, best});
      prev_end = i + best;
    }
  }
  return rep;
}

ExtensionTriple find_extension_triple(OrbitSpace& space,
                                      const std::vector<Word>& candidates,
                                      int test_radius) {
  if (candidates.size() < 3) {
    throw NoTripleFound("need at least three candidate elements");
  }
  std::vector<Axis> axes;
  for (const auto& c : candidates) axes.emplace_back(space, c, Word(), 2 * test_radius);
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      if (axes[i].same_points(axes[j])) {
        throw NoTripleFound("candidates " + candidates[i].str() + " and " +
                            candidates[j].str() + " share an axis");
      }
    }
  }

  space.explore(test_radius);
  const auto ball = static_cast<OrbitSpace::Id>(space.ball_count(test_radius));
  // pd[c][g] = d^pi_{Ax(candidate c)}([o, g.o]).
  std::vector<std::vector<int>> pd(candidates.size(), std::vector<int>(ball, 0));
  for (OrbitSpace::Id g = 0; g < ball; ++g) {
    auto path = PointSet::of(space.geodesic(OrbitSpace::kBase, g));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      pd[c][g] = proj_diameter(space, axes[c].points(), path);
    }
  }

  const int tau_cap = 2 * test_radius;
  int best_tau = tau_cap + 1;
  std::vector<std::size_t> best;
  std::vector<std::size_t> idx(3);
  for (idx[0] = 0; idx[0] < candidates.size(); ++idx[0]) {
    for (idx[1] = idx[0] + 1; idx[1] < candidates.size(); ++idx[1]) {
      for (idx[2] = idx[1] + 1; idx[2] < candidates.size(); ++idx[2]) {
        int worst = 0;
        for (OrbitSpace::Id g = 0; g < ball && worst <= tau_cap; ++g) {
          for (OrbitSpace::Id h = g; h < ball; ++h) {
            int pair_best = 1 << 30;
            for (std::size_t c : idx) {
              pair_best = std::min(pair_best, std::max(pd[c][g], pd[c][h]));
            }
            worst = std::max(worst, pair_best);
            if (worst > tau_cap) break;
          }
        }
        if (worst < best_tau) {
          best_tau = worst;
          best = idx;
        }
      }
    }
  }
  if (best.empty() || best_tau > tau_cap) {
    throw NoTripleFound("no candidate triple separates all pairs in the ball");
  }
  return ExtensionTriple{{candidates[best[0]], candidates[best[1]], candidates[best[2]]},
                         best_tau};
}

namespace {

// Connector choice for a consecutive letter pair: the projections that feed
// the (BP) checks are those of [o, prev^-1 o] and [o, next o].
std::size_t choose_connector(OrbitSpace& space, const std::vector<Axis>& axes,
                             const Word& prev, const Word& next, int tau) {
  for (std::size_t c = 0; c < axes.size(); ++c) {
    auto left = PointSet::of(
        space.geodesic(OrbitSpace::kBase, space.id_of(prev.inverse())));
    auto right = PointSet::of(space.geodesic(OrbitSpace::kBase, space.id_of(next)));
    int v = std::max(proj_diameter(space, axes[c].points(), left),
                     proj_diameter(space, axes[c].points(), right));
    if (v <= tau) return c;
  }
  return 0;  // fall back to the first member; admissibility checks will tell
}

}  // namespace

ExtensionResult extend_word(OrbitSpace& space, const std::vector<Word>& word_letters,
                            const ExtensionTriple& triple, int tau,
                            int connector_exponent) {
  ExtensionResult out;
  out.path.K = 0;
  out.path.theta = tau;
  if (word_letters.empty()) {
    out.element = Word();
    return out;
  }

  const int window = 2 * static_cast<int>(word_letters.size() + 1) * 8;
  std::vector<Axis> base_axes;
  for (const auto& f : triple.f) base_axes.emplace_back(space, f, Word(), 8);

  Word prefix;
  int min_connector = 1 << 30;
  for (std::size_t i = 0; i < word_letters.size(); ++i) {
    Word from = prefix;
    prefix = free_reduce(prefix * word_letters[i]);
    PathSegment seg;
    seg.points = space.geodesic(space.id_of(from), space.id_of(prefix));
    out.path.segments.push_back(std::move(seg));

    if (i + 1 < word_letters.size()) {
      std::size_t c = choose_connector(space, base_axes, word_letters[i],
                                       word_letters[i + 1], tau);
      Word connector = power(triple.f[c], connector_exponent);
      Word from2 = prefix;
      prefix = free_reduce(prefix * connector);
      PathSegment seg2;
      seg2.points = space.geodesic(space.id_of(from2), space.id_of(prefix));
      min_connector = std::min(min_connector, seg2.length());
      seg2.axis_index = out.path.axes.size();
      out.path.axes.emplace_back(space, triple.f[c], from2, window);
      out.path.segments.push_back(std::move(seg2));
    }
  }
  out.element = prefix;
  out.path.K = min_connector == (1 << 30) ? 0 : min_connector - 1;
  return out;
}

SemigroupTree build_semigroup_tree(OrbitSpace& space, const std::vector<Word>& alphabet,
                                   const Word& connector, int depth,
                                   int connector_exponent) {
  SemigroupTree tree;
  tree.alphabet = alphabet;
  tree.connector = connector;
  tree.depth = depth;

  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    for (std::size_t j = i + 1; j < alphabet.size(); ++j) {
      if (space.presentation().equal(alphabet[i], alphabet[j])) {
        throw InjectivityFailed(alphabet[i].str(), alphabet[j].str(),
                                "duplicate alphabet letters");
      }
    }
  }

  ExtensionTriple single{{connector, connector, connector}, 0};
  std::unordered_set<std::string> seen;
  std::vector<std::vector<std::size_t>> stack;
  tree.elements.push_back(Word());
  seen.insert("");

  std::vector<std::size_t> word;
  int max_dist = 0;
  std::vector<std::pair<int, Word>> dists;  // (distance, element)
  auto visit = [&](auto&& self) -> void {
    if (static_cast<int>(word.size()) == depth) return;
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      word.push_back(a);
      std::vector<Word> ws;
      for (auto idx : word) ws.push_back(alphabet[idx]);
      auto ext = extend_word(space, ws, single, 1 << 20, connector_exponent);
      Word canon = space.presentation().canonical(ext.element);
      if (!seen.insert(canon.str()).second) {
        std::string branch;
        for (auto idx : word) branch += alphabet[idx].str() + ".";
        throw InjectivityFailed(canon.str(), branch,
                                "semigroup tree collision at depth " +
                                    std::to_string(word.size()));
      }
      tree.elements.push_back(ext.element);
      int d = static_cast<int>(canon.size());
      dists.emplace_back(d, ext.element);
      max_dist = std::max(max_dist, d);
      if (static_cast<int>(word.size()) == depth) {
        tree.branch_paths.push_back(std::move(ext.path));
      }
      self(self);
      word.pop_back();
    }
  };
  visit(visit);

  std::vector<std::uint64_t> balls(max_dist + 1, 0);
  balls[0] = 1;
  for (auto& [d, w] : dists) ++balls[d];
  for (std::size_t n = 1; n < balls.size(); ++n) balls[n] += balls[n - 1];
  if (balls.size() >= 4) {
    tree.growth = growth_rate(balls, GrowthMethod::kTailSlope);
  } else {
    tree.growth.counts = balls;
  }

  tree.quasi_lambda = 1e9;
  for (const auto& path : tree.branch_paths) {
    auto verts = path.vertices();
    for (std::size_t t = 1; t < verts.size(); ++t) {
      double d = space.distance(verts[0], verts[t]);
      tree.quasi_lambda = std::min(tree.quasi_lambda, d / static_cast<double>(t));
    }
  }
  if (tree.branch_paths.empty()) tree.quasi_lambda = 1;
  for (const auto& path : tree.branch_paths) {
    auto verts = path.vertices();
    for (std::size_t t = 1; t < verts.size(); ++t) {
      double d = space.distance(verts[0], verts[t]);
      tree.quasi_c = std::max(tree.quasi_c, tree.quasi_lambda * t - d);
    }
  }
  return tree;
}

}  // namespace growthlab
