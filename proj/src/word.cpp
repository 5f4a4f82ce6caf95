#include "growthlab/word.hpp"

#include <algorithm>
#include <set>

#include "growthlab/errors.hpp"

namespace growthlab {

Word::Word(std::string s) : s_(std::move(s)) {
  for (char c : s_) {
    if (!letters::is_letter(c)) {
      throw ConfigError("invalid letter '" + std::string(1, c) + "' in word");
    }
  }
}

const Word& Word::identity() {
  static const Word e;
  return e;
}

Word Word::inverse() const {
  std::string out;
  out.reserve(s_.size());
  for (auto it = s_.rbegin(); it != s_.rend(); ++it) {
    out.push_back(letters::inverse(*it));
  }
  return Word(std::move(out));
}

Word Word::subword(std::size_t begin, std::size_t end) const {
  return Word(s_.substr(begin, end - begin));
}

int Word::max_generator_index() const {
  int m = -1;
  for (char c : s_) m = std::max(m, letters::index(c));
  return m;
}

bool shortlex_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return letters::rank(a[i]) < letters::rank(b[i]);
  }
  return false;
}

std::string free_reduce(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (!out.empty() && out.back() == letters::inverse(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Word free_reduce(const Word& w) { return Word(free_reduce(w.str())); }

bool is_freely_reduced(std::string_view s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i + 1] == letters::inverse(s[i])) return false;
  }
  return true;
}

bool is_cyclically_reduced(std::string_view s) {
  if (!is_freely_reduced(s)) return false;
  if (s.size() >= 2 && s.front() == letters::inverse(s.back())) return false;
  return true;
}

CyclicDecomposition cyclic_reduce_and_root(const Word& w) {
  std::string core = free_reduce(w.str());
  if (core.empty()) throw TrivialWord("cyclic_reduce_and_root: word is trivial");

  std::string conj;
  while (core.size() >= 2 && core.front() == letters::inverse(core.back())) {
    conj.push_back(core.front());
    core = core.substr(1, core.size() - 2);
  }
  // Minimal period of the cyclically reduced core gives the primitive root.
  const std::size_t n = core.size();
  std::size_t period = n;
  for (std::size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = core[i] == core[i - p];
    if (ok) {
      period = p;
      break;
    }
  }
  CyclicDecomposition out;
  out.root = Word(core.substr(0, period));
  out.exponent = static_cast<int>(n / period);
  out.conjugator = Word(std::move(conj));
  return out;
}

std::vector<std::string> symmetrized_closure(const Word& relator) {
  if (!is_cyclically_reduced(relator.str())) {
    throw ConfigError("symmetrized_closure: relator must be cyclically reduced");
  }
  std::set<std::string> seen;
  for (const std::string& base : {relator.str(), relator.inverse().str()}) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      seen.insert(base.substr(i) + base.substr(0, i));
    }
  }
  return {seen.begin(), seen.end()};
}

static int common_prefix(const std::string& a, const std::string& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return static_cast<int>(i);
}

int max_piece(const std::vector<std::string>& symmetrized) {
  int best = 0;
  for (std::size_t i = 0; i < symmetrized.size(); ++i) {
    for (std::size_t j = i + 1; j < symmetrized.size(); ++j) {
      best = std::max(best, common_prefix(symmetrized[i], symmetrized[j]));
    }
  }
  return best;
}

int max_piece(const Word& relator) {
  return max_piece(symmetrized_closure(relator));
}

bool free_conjugate(const Word& u, const Word& v) {
  auto cyc = [](const Word& w) -> std::string {
    std::string core = free_reduce(w.str());
    while (core.size() >= 2 && core.front() == letters::inverse(core.back())) {
      core = core.substr(1, core.size() - 2);
    }
    return core;
  };
  std::string a = cyc(u), b = cyc(v);
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::string doubled = a + a;
  return doubled.find(b) != std::string::npos;
}

}  // namespace growthlab
