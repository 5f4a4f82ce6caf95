#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "growthlab/growth.hpp"
#include "growthlab/orbit_space.hpp"

namespace growthlab {

// A translate g.Ax(h) materialized inside a finite window. The axis is the
// bi-infinite line of the primitive root through g.o sampled at unit
// resolution: every vertex of the path ..., g r^-1 o, g o, g r o, ... is a
// point, with the root orbit exposed separately. The root absorbs the
// conjugator of h, so Ax(h) always passes through the basepoint translate.
class Axis {
 public:
  // Covers every point within `window_radius` of the basepoint: the power
  // range J is chosen from |g|, |root| and the radius, with a margin so
  // projections from the window cannot land on the ends.
  Axis(OrbitSpace& space, const Word& h, const Word& translate, int window_radius);

  const Word& root() const { return root_; }
  const Word& translate() const { return translate_; }
  const Word& defining_word() const { return h_; }
  int window_radius() const { return window_radius_; }
  int power_range() const { return power_range_; }

  const PointSet& points() const { return points_; }        // full line
  const PointSet& orbit_points() const { return orbit_; }   // g <root>^j o
  const std::string& label() const { return points_.label; }

  // Measured quasi-geodesic constants of j -> g r^j o over the window:
  // d(g r^i o, g r^j o) >= lambda.|i-j| - c with the best such pair.
  struct QuasiGeodesicFit {
    double lambda = 0;
    double c = 0;
  };
  QuasiGeodesicFit quasi_geodesic_fit(OrbitSpace& space) const;

  // Window Hausdorff gap between <h>.o and <root>.o translates (the E(h)
  // approximation's measured discrepancy).
  int root_orbit_gap(OrbitSpace& space) const;

  bool same_points(const Axis& other) const { return points_.ids == other.points_.ids; }

  // First and last vertex in line order; projections landing here mean the
  // window was too small.
  std::pair<OrbitSpace::Id, OrbitSpace::Id> line_ends() const { return line_ends_; }

 private:
  Word h_, root_, translate_;
  int window_radius_ = 0;
  int power_range_ = 0;
  PointSet points_;
  PointSet orbit_;
  std::pair<OrbitSpace::Id, OrbitSpace::Id> line_ends_{0, 0};
};

// pi_S(x): all points of S at minimal distance from x.
PointSet project(OrbitSpace& space, const PointSet& S, OrbitSpace::Id x);

// d^pi_S(B) = diam of the union of projections of the points of B.
int proj_diameter(OrbitSpace& space, const PointSet& S, const PointSet& B);
// d^pi_S(B, C) = diam pi_S(B union C).
int proj_diameter(OrbitSpace& space, const PointSet& S, const PointSet& B,
                  const PointSet& C);

int set_diameter(OrbitSpace& space, const PointSet& S);

struct NotContracting {
  std::string reason;
};
using ContractionResult = std::variant<int, NotContracting>;

// Smallest C <= sample_radius such that every sampled geodesic at distance
// >= C from S projects to diameter <= C. Exhaustive over sphere pairs when
// the pair count allows, seeded random otherwise.
ContractionResult contraction_constant(OrbitSpace& space, const PointSet& S,
                                       int sample_radius, int trials,
                                       std::uint64_t seed);

// diam(N_c(S1) and N_c(S2)) over the window; 0 if the neighborhoods miss.
int bounded_intersection_profile(OrbitSpace& space, const PointSet& S1,
                                 const PointSet& S2, int c);

struct BoundedProjectionReport {
  int D = 0;
  // (i, j, d^pi_{A_i}(A_j)) for all ordered distinct pairs.
  std::vector<std::tuple<int, int, int>> table;
};
BoundedProjectionReport bounded_projection_check(OrbitSpace& space,
                                                 const std::vector<Axis>& translates);

// Window-level independence: the mixed family of translates must have no
// coinciding members and a bounded pairwise intersection profile.
bool independence_test(OrbitSpace& space, const Word& h, const Word& f,
                       int window_radius, int profile_c = 1);

// Piecewise geodesic alternating travel along contracting sets with bounded
// cross projections at the transitions.
struct PathSegment {
  std::vector<OrbitSpace::Id> points;            // geodesic vertex path
  std::optional<std::size_t> axis_index;         // into AdmissiblePath::axes

  OrbitSpace::Id front() const { return points.front(); }
  OrbitSpace::Id back() const { return points.back(); }
  int length() const { return static_cast<int>(points.size()) - 1; }
};

struct AdmissiblePath {
  std::vector<PathSegment> segments;
  std::vector<Axis> axes;  // the saturation
  double K = 0;            // (LL) lower bound
  double theta = 0;        // (BP) upper bound

  OrbitSpace::Id start() const { return segments.front().points.front(); }
  OrbitSpace::Id end() const { return segments.back().points.back(); }
  int total_length() const;
  std::vector<OrbitSpace::Id> vertices() const;
};

struct AdmissibleVerdict {
  struct Violation {
    std::size_t segment;
    std::string rule;  // "LL" or "BP"
    double value;
  };
  std::vector<Violation> violations;
  bool admissible() const { return violations.empty(); }
};

AdmissibleVerdict check_admissible(OrbitSpace& space, const AdmissiblePath& path);

// Prop-2.9-style measurement: max over associated segments of the projection
// diameter of the two complementary halves of the path.
double verify_bp_bound(OrbitSpace& space, const AdmissiblePath& path);

struct DeepPointParams {
  double epsilon = 0;
  int M = 1;
};

struct DeepSegment {
  std::size_t axis_index;      // explicit-system index, or npos-like for scans
  std::string axis_label;
  int start = 0;               // vertex offset along the geodesic
  int length = 0;              // edge length of the deep subsegment
};

struct DeepPointReport {
  std::vector<DeepSegment> segments;
  bool transitional() const { return segments.empty(); }
};

// Maximal subsegments of the geodesic of length >= 2M inside the epsilon
// neighborhood of a system member.
DeepPointReport classify_deep_points(OrbitSpace& space,
                                     const std::vector<OrbitSpace::Id>& geodesic,
                                     const std::vector<Axis>& system,
                                     const DeepPointParams& params);

// Same classification against the full translate family {g.Ax(h)}: maximal
// runs of the word that read along a periodic root line (exact, epsilon 0).
DeepPointReport deep_runs_in_translates(const Word& geodesic_word, const Word& h);

// Extension triple: three contracting elements such that for every pair in
// the test ball some member sees both geodesics with projection <= tau.
struct ExtensionTriple {
  std::vector<Word> f;  // size 3
  int tau = 0;
};
ExtensionTriple find_extension_triple(OrbitSpace& space,
                                      const std::vector<Word>& candidates,
                                      int test_radius);

// Interleaves connectors from F between the letters and assembles the
// admissible path decomposition. connector_exponent repeats each connector.
struct ExtensionResult {
  Word element;
  AdmissiblePath path;
};
ExtensionResult extend_word(OrbitSpace& space, const std::vector<Word>& word_letters,
                            const ExtensionTriple& triple, int tau,
                            int connector_exponent = 1);

// Free semigroup tree over the alphabet with one common connector.
struct SemigroupTree {
  std::vector<Word> alphabet;
  Word connector;
  int depth = 0;
  std::vector<Word> elements;            // all products, depth-first order
  std::vector<AdmissiblePath> branch_paths;  // full-depth branches
  GrowthReport growth;
  double quasi_lambda = 0;               // measured quasi-geodesic constants
  double quasi_c = 0;
};
SemigroupTree build_semigroup_tree(OrbitSpace& space, const std::vector<Word>& alphabet,
                                   const Word& connector, int depth,
                                   int connector_exponent = 1);

}  // namespace growthlab
