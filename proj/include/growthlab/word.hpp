#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace growthlab {

// Letters are ASCII: 'a'+i is generator i, 'A'+i its inverse.
// ShortLex order compares length first, then letter rank a < A < b < B < ...
namespace letters {

constexpr int kMaxGenerators = 26;

inline bool is_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char inverse(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A')
                                : static_cast<char>(c - 'A' + 'a');
}

// 0-based generator index regardless of case.
inline int index(char c) { return (c >= 'a' && c <= 'z') ? c - 'a' : c - 'A'; }

inline bool is_inverse_char(char c) { return c >= 'A' && c <= 'Z'; }

inline char generator(int idx, bool inv = false) {
  return static_cast<char>((inv ? 'A' : 'a') + idx);
}

// Rank for ShortLex ties: a < A < b < B < ...
inline int rank(char c) { return 2 * index(c) + (is_inverse_char(c) ? 1 : 0); }

}  // namespace letters

// A word over signed generators. Not automatically reduced; free_reduce
// and the Presentation engines produce reduced/canonical instances.
class Word {
 public:
  Word() = default;
  explicit Word(std::string s);
  explicit Word(std::string_view s) : Word(std::string(s)) {}
  explicit Word(const char* s) : Word(std::string(s)) {}

  static const Word& identity();

  const std::string& str() const { return s_; }
  std::size_t size() const { return s_.size(); }
  bool empty() const { return s_.empty(); }
  char operator[](std::size_t i) const { return s_[i]; }

  Word inverse() const;
  Word subword(std::size_t begin, std::size_t end) const;

  // Largest generator index used, -1 for the empty word.
  int max_generator_index() const;

  friend Word operator*(const Word& a, const Word& b) {
    return Word(a.s_ + b.s_);
  }
  friend bool operator==(const Word& a, const Word& b) { return a.s_ == b.s_; }
  friend bool operator!=(const Word& a, const Word& b) { return a.s_ != b.s_; }

 private:
  std::string s_;
};

bool shortlex_less(std::string_view a, std::string_view b);
inline bool shortlex_less(const Word& a, const Word& b) {
  return shortlex_less(a.str(), b.str());
}

// Unique freely reduced representative; idempotent.
Word free_reduce(const Word& w);
std::string free_reduce(std::string_view s);

bool is_freely_reduced(std::string_view s);
bool is_cyclically_reduced(std::string_view s);

// Cyclic reduction plus primitive-root extraction: w = conj . root^exp . conj^-1
// in the free group, root cyclically reduced and not a proper power.
struct CyclicDecomposition {
  Word root;
  int exponent = 0;
  Word conjugator;
};
CyclicDecomposition cyclic_reduce_and_root(const Word& w);

// All distinct cyclic shifts of w and of w^-1 (w must be cyclically reduced).
std::vector<std::string> symmetrized_closure(const Word& relator);

// Maximal length of a common prefix of two distinct symmetrized words.
int max_piece(const Word& relator);
int max_piece(const std::vector<std::string>& symmetrized);

// True if u and v are conjugate in the free group (cyclic words match).
bool free_conjugate(const Word& u, const Word& v);

struct WordHash {
  std::size_t operator()(const Word& w) const {
    return std::hash<std::string>{}(w.str());
  }
};

}  // namespace growthlab
