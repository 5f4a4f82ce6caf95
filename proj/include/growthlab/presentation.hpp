#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/word.hpp"

namespace growthlab {

enum class Strategy {
  kFree,
  kFreeProductOfCyclics,
  kCPrimeOneSixth,
  kDirectProduct,
};

std::string strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

// A finite presentation together with a word-problem engine.
//
// Engines:
//   free                      - free reduction, canonical = reduced word
//   free-product-of-cyclics   - relators are powers of single generators;
//                               canonical = syllable normal form (geodesic)
//   c-prime-one-sixth         - Dehn's algorithm; canonical = ShortLex-least
//                               geodesic found by a bounded rewriting closure
//   direct-product            - letters split over factors; canonical =
//                               concatenation of factor canonical forms
class Presentation {
 public:
  static Presentation free_group(int generator_count);
  static Presentation from_relators(int generator_count,
                                    std::vector<Word> relators,
                                    std::optional<Strategy> forced = {});
  static Presentation direct_product(std::vector<Presentation> factors);

  // Text format: "gens a b", zero or more "rel <word>", optional
  // "strategy <tag>". '#' starts a comment.
  static Presentation parse(std::istream& in);
  static Presentation parse_text(const std::string& text);
  static Presentation load(const std::string& path);

  int generator_count() const { return generator_count_; }
  Strategy strategy() const { return strategy_; }
  const std::vector<Word>& relators() const { return relators_; }
  const std::vector<Presentation>& factors() const { return factors_; }

  // Cyclic order of a generator under the fpc engine (0 = infinite).
  int cyclic_order(int gen_index) const;

  // Which factor a letter belongs to, and the letter translated into that
  // factor's own alphabet (direct products only).
  int factor_of_letter(char c) const;
  char letter_in_factor(char c) const;
  char factor_letter_to_product(int factor, char c) const;

  // Canonical form of the group element represented by w. Equal elements
  // have equal canonical forms; for free / fpc / direct-product engines the
  // canonical word is geodesic. For the Dehn engine it is the ShortLex-least
  // geodesic representative (see canonical_c16 in the implementation).
  Word canonical(const Word& w) const;

  bool is_trivial(const Word& w) const;
  bool equal(const Word& u, const Word& v) const;

  // Word length of the canonical form = d(o, w.o) in the Cayley graph.
  int geodesic_length(const Word& w) const;

  // Dehn's algorithm: repeatedly free-reduce and replace any subword that is
  // strictly more than half of a symmetrized relator by the inverse of its
  // complement. Scans left to right, applies the longest (leftmost on ties)
  // replacement, then rescans. Empty output iff w is trivial in the quotient.
  Word dehn_normalize(const Word& w) const;

  const std::vector<std::string>& symmetrized_relators() const;
  int max_piece_value() const { return max_piece_; }
  int min_relator_length() const { return min_relator_length_; }
  int max_relator_length() const { return max_relator_length_; }

  // Presentation content hash (engine, generators, relators); stable across
  // runs, used to key ball caches.
  std::string content_hash() const;

  std::string describe() const;

 private:
  Presentation() = default;
  void finalize_relator_data();
  Word canonical_c16(const Word& w) const;
  Word canonical_fpc(const Word& w) const;
  Word canonical_product(const Word& w) const;

  int generator_count_ = 0;
  Strategy strategy_ = Strategy::kFree;
  std::vector<Word> relators_;

  // fpc engine
  std::vector<int> cyclic_order_;  // per generator; 0 = infinite

  // c16 engine
  std::vector<std::string> symmetrized_;
  int max_piece_ = 0;
  int min_relator_length_ = 0;
  int max_relator_length_ = 0;

  // direct product
  std::vector<Presentation> factors_;
  std::vector<int> letter_factor_;    // generator index -> factor
  std::vector<char> letter_local_;    // generator index -> letter in factor
  std::vector<int> factor_offset_;    // factor -> first product generator
};

// Operation-level helpers mirroring the module surface.
bool equal_in_group(const Word& u, const Word& v, const Presentation& p);

}  // namespace growthlab
