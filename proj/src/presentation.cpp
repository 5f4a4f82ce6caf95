#include "growthlab/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "growthlab/errors.hpp"

namespace growthlab {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kFree: return "free";
    case Strategy::kFreeProductOfCyclics: return "free-product-of-cyclics";
    case Strategy::kCPrimeOneSixth: return "c-prime-one-sixth";
    case Strategy::kDirectProduct: return "direct-product";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "free") return Strategy::kFree;
  if (name == "free-product-of-cyclics") return Strategy::kFreeProductOfCyclics;
  if (name == "c-prime-one-sixth") return Strategy::kCPrimeOneSixth;
  if (name == "direct-product") return Strategy::kDirectProduct;
  return {};
}

Presentation Presentation::free_group(int generator_count) {
  if (generator_count < 1 || generator_count > letters::kMaxGenerators) {
    throw ConfigError("generator count out of range");
  }
  Presentation p;
  p.generator_count_ = generator_count;
  p.strategy_ = Strategy::kFree;
  return p;
}

// Recognizes a relator of the form g^n (single generator, either sign).
static std::optional<std::pair<int, int>> single_generator_power(const Word& r) {
  if (r.empty()) return {};
  char first = r.str().front();
  for (char c : r.str()) {
    if (c != first) return {};
  }
  return std::make_pair(letters::index(first), static_cast<int>(r.size()));
}

Presentation Presentation::from_relators(int generator_count,
                                         std::vector<Word> relators,
                                         std::optional<Strategy> forced) {
  Presentation p;
  p.generator_count_ = generator_count;
  if (generator_count < 1 || generator_count > letters::kMaxGenerators) {
    throw ConfigError("generator count out of range");
  }

  for (auto& r : relators) {
    std::string reduced = free_reduce(r.str());
    while (reduced.size() >= 2 &&
           reduced.front() == letters::inverse(reduced.back())) {
      reduced = reduced.substr(1, reduced.size() - 2);
    }
    if (reduced.empty()) throw ConfigError("trivial relator");
    r = Word(std::move(reduced));
    if (r.max_generator_index() >= generator_count) {
      throw ConfigError("relator uses generator outside the alphabet");
    }
  }
  std::sort(relators.begin(), relators.end(),
            [](const Word& a, const Word& b) { return shortlex_less(a, b); });
  relators.erase(std::unique(relators.begin(), relators.end()), relators.end());
  p.relators_ = std::move(relators);

  // Strategy selection: free if no relators, fpc if every relator is a power
  // of a distinct single generator, else Dehn with the C'(1/6) check.
  bool fpc_ok = !p.relators_.empty();
  std::vector<int> orders(generator_count, 0);
  for (const auto& r : p.relators_) {
    auto sg = single_generator_power(r);
    if (!sg || orders[sg->first] != 0) {
      fpc_ok = false;
      break;
    }
    orders[sg->first] = sg->second;
  }

  Strategy chosen;
  if (forced) {
    chosen = *forced;
  } else if (p.relators_.empty()) {
    chosen = Strategy::kFree;
  } else if (fpc_ok) {
    chosen = Strategy::kFreeProductOfCyclics;
  } else {
    chosen = Strategy::kCPrimeOneSixth;
  }

  switch (chosen) {
    case Strategy::kFree:
      if (!p.relators_.empty()) {
        throw StrategyMismatch("free strategy does not accept relators");
      }
      break;
    case Strategy::kFreeProductOfCyclics:
      if (!fpc_ok) {
        throw StrategyMismatch(
            "free-product-of-cyclics needs one single-generator power relator "
            "per generator");
      }
      p.cyclic_order_ = std::move(orders);
      break;
    case Strategy::kCPrimeOneSixth:
      if (p.relators_.empty()) {
        throw StrategyMismatch("c-prime-one-sixth requires relators");
      }
      p.finalize_relator_data();
      if (6 * p.max_piece_ >= p.min_relator_length_) {
        throw StrategyMismatch("presentation fails C'(1/6): max piece " +
                               std::to_string(p.max_piece_) + " vs relator length " +
                               std::to_string(p.min_relator_length_));
      }
      break;
    case Strategy::kDirectProduct:
      throw ConfigError("direct products are built from factor presentations");
  }
  p.strategy_ = chosen;
  return p;
}

void Presentation::finalize_relator_data() {
  std::set<std::string> sym;
  min_relator_length_ = 0;
  max_relator_length_ = 0;
  for (const auto& r : relators_) {
    for (auto& s : symmetrized_closure(r)) sym.insert(std::move(s));
    int len = static_cast<int>(r.size());
    min_relator_length_ = min_relator_length_ == 0 ? len : std::min(min_relator_length_, len);
    max_relator_length_ = std::max(max_relator_length_, len);
  }
  symmetrized_.assign(sym.begin(), sym.end());
  max_piece_ = max_piece(symmetrized_);
}

Presentation Presentation::direct_product(std::vector<Presentation> factors) {
  if (factors.size() < 2) throw ConfigError("direct product needs >= 2 factors");
  Presentation p;
  p.strategy_ = Strategy::kDirectProduct;
  int offset = 0;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (factors[f].strategy() == Strategy::kDirectProduct) {
      throw ConfigError("nested direct products are not supported; flatten factors");
    }
    p.factor_offset_.push_back(offset);
    for (int g = 0; g < factors[f].generator_count(); ++g) {
      p.letter_factor_.push_back(static_cast<int>(f));
      p.letter_local_.push_back(letters::generator(g));
      ++offset;
    }
  }
  if (offset > letters::kMaxGenerators) {
    throw ConfigError("combined alphabet exceeds 26 generators");
  }
  p.generator_count_ = offset;
  p.factors_ = std::move(factors);
  return p;
}

int Presentation::cyclic_order(int gen_index) const {
  if (strategy_ == Strategy::kFree) return 0;
  if (strategy_ != Strategy::kFreeProductOfCyclics) {
    throw StrategyMismatch("cyclic_order: not a free product of cyclics");
  }
  return cyclic_order_.at(gen_index);
}

int Presentation::factor_of_letter(char c) const {
  return letter_factor_.at(letters::index(c));
}

char Presentation::letter_in_factor(char c) const {
  char local = letter_local_.at(letters::index(c));
  return letters::is_inverse_char(c) ? letters::inverse(local) : local;
}

char Presentation::factor_letter_to_product(int factor, char c) const {
  int idx = factor_offset_.at(factor) + letters::index(c);
  return letters::generator(idx, letters::is_inverse_char(c));
}

Word Presentation::canonical(const Word& w) const {
  switch (strategy_) {
    case Strategy::kFree: return free_reduce(w);
    case Strategy::kFreeProductOfCyclics: return canonical_fpc(w);
    case Strategy::kCPrimeOneSixth: return canonical_c16(w);
    case Strategy::kDirectProduct: return canonical_product(w);
  }
  throw Error("unreachable");
}

Word Presentation::canonical_fpc(const Word& w) const {
  // Syllable normal form: merge adjacent powers of one generator, reduce the
  // exponent to the shortest residue (positive on the n/2 tie), drop empty
  // syllables and re-merge.
  std::vector<std::pair<int, long long>> stack;
  auto normalize = [&](int gen, long long e) -> long long {
    int n = cyclic_order_[gen];
    if (n == 0) return e;
    e = ((e % n) + n) % n;
    if (2 * e > n) e -= n;
    return e;
  };
  for (char c : w.str()) {
    int gen = letters::index(c);
    long long d = letters::is_inverse_char(c) ? -1 : 1;
    if (!stack.empty() && stack.back().first == gen) {
      stack.back().second = normalize(gen, stack.back().second + d);
      if (stack.back().second == 0) stack.pop_back();
    } else {
      long long e = normalize(gen, d);
      if (e != 0) stack.emplace_back(gen, e);
    }
    // A vanished syllable may expose two mergeable neighbours.
    while (stack.size() >= 2 &&
           stack[stack.size() - 1].first == stack[stack.size() - 2].first) {
      auto [gen2, e2] = stack.back();
      stack.pop_back();
      stack.back().second = normalize(gen2, stack.back().second + e2);
      if (stack.back().second == 0) stack.pop_back();
    }
  }
  std::string out;
  for (auto [gen, e] : stack) {
    char c = letters::generator(gen, e < 0);
    out.append(static_cast<std::size_t>(e < 0 ? -e : e), c);
  }
  return Word(std::move(out));
}

Word Presentation::dehn_normalize(const Word& w) const {
  if (strategy_ != Strategy::kCPrimeOneSixth) {
    throw StrategyMismatch("dehn_normalize requires the c-prime-one-sixth engine");
  }
  std::string cur = free_reduce(w.str());
  for (;;) {
    // Longest match of a symmetrized-relator prefix; leftmost on ties.
    std::size_t best_pos = 0, best_len = 0;
    const std::string* best_rho = nullptr;
    for (std::size_t pos = 0; pos < cur.size(); ++pos) {
      for (const auto& rho : symmetrized_) {
        std::size_t cap = std::min(rho.size(), cur.size() - pos);
        std::size_t m = 0;
        while (m < cap && cur[pos + m] == rho[m]) ++m;
        if (2 * m > rho.size() && m > best_len) {
          best_len = m;
          best_pos = pos;
          best_rho = &rho;
        }
      }
    }
    if (!best_rho) break;
    // rho = u.v with u the matched prefix; u equals v^-1 in the quotient.
    std::string complement = best_rho->substr(best_len);
    std::string repl(complement.rbegin(), complement.rend());
    for (char& c : repl) c = letters::inverse(c);
    cur = free_reduce(cur.substr(0, best_pos) + repl + cur.substr(best_pos + best_len));
  }
  return Word(std::move(cur));
}

// ShortLex-least geodesic representative for the Dehn engine.
//
// Starting from the Dehn-reduced word, close under single relator
// substitutions that keep the length within 4*max_piece of the current
// minimum; restart whenever a shorter word appears. In a C'(1/6) group two
// geodesics with the same endpoints cobound a ladder of cells whose interior
// arcs are pieces, so crossing the ladder cell by cell stays within that
// margin; the closure therefore reaches every geodesic spelling.
Word Presentation::canonical_c16(const Word& w) const {
  std::string start = dehn_normalize(free_reduce(w)).str();
  const int slack = 4 * max_piece_;

  for (;;) {
    const std::size_t len = start.size();
    if (len == 0) return Word();

    // Fast path: no substitution can stay within the margin.
    bool has_candidate = false;
    for (std::size_t pos = 0; pos < start.size() && !has_candidate; ++pos) {
      for (const auto& rho : symmetrized_) {
        std::size_t cap = std::min(rho.size(), start.size() - pos);
        std::size_t m = 0;
        while (m < cap && start[pos + m] == rho[m]) ++m;
        if (2 * m + static_cast<std::size_t>(slack) >= rho.size() && m > 0) {
          has_candidate = true;
          break;
        }
      }
    }
    if (!has_candidate) return Word(std::move(start));

    std::unordered_set<std::string> seen{start};
    std::vector<std::string> queue{start};
    std::string best = start;
    std::optional<std::string> shorter;
    std::size_t expanded = 0;

    while (!queue.empty() && !shorter) {
      std::string x = std::move(queue.back());
      queue.pop_back();
      if (++expanded > 200000) {
        throw Error("canonical form closure budget exceeded; presentation too "
                    "wild for the Dehn engine at this scale");
      }
      for (std::size_t pos = 0; pos < x.size() && !shorter; ++pos) {
        for (const auto& rho : symmetrized_) {
          std::size_t cap = std::min(rho.size(), x.size() - pos);
          std::size_t m = 0;
          while (m < cap && x[pos + m] == rho[m]) ++m;
          if (m == 0) continue;
          // Replace x[pos, pos+k) by the inverse of rho[k..): only splits
          // that keep the pre-reduction length within margin matter.
          std::size_t k_min = 1;
          if (x.size() + rho.size() > len + slack) {
            k_min = (x.size() + rho.size() - len - slack + 1) / 2;
          }
          for (std::size_t k = std::max<std::size_t>(k_min, 1); k <= m; ++k) {
            std::string tail = rho.substr(k);
            std::string repl(tail.rbegin(), tail.rend());
            for (char& c : repl) c = letters::inverse(c);
            std::string y =
                free_reduce(x.substr(0, pos) + repl + x.substr(pos + k));
            if (y.size() < len) {
              shorter = dehn_normalize(Word(std::move(y))).str();
              break;
            }
            if (y.size() > len + slack) continue;
            if (seen.insert(y).second) {
              if (y.size() == len && shortlex_less(y, best)) best = y;
              queue.push_back(std::move(y));
            }
          }
        }
      }
    }
    if (shorter) {
      start = std::move(*shorter);
      continue;
    }
    return Word(std::move(best));
  }
}

Word Presentation::canonical_product(const Word& w) const {
  std::vector<std::string> parts(factors_.size());
  for (char c : w.str()) parts[factor_of_letter(c)].push_back(letter_in_factor(c));
  std::string out;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    Word cf = factors_[f].canonical(Word(std::move(parts[f])));
    for (char c : cf.str()) out.push_back(factor_letter_to_product(static_cast<int>(f), c));
  }
  return Word(std::move(out));
}

bool Presentation::is_trivial(const Word& w) const {
  switch (strategy_) {
    case Strategy::kFree: return free_reduce(w.str()).empty();
    case Strategy::kFreeProductOfCyclics: return canonical_fpc(w).empty();
    case Strategy::kCPrimeOneSixth: return dehn_normalize(w).empty();
    case Strategy::kDirectProduct: {
      for (std::size_t f = 0; f < factors_.size(); ++f) {
        std::string part;
        for (char c : w.str()) {
          if (factor_of_letter(c) == static_cast<int>(f)) part.push_back(letter_in_factor(c));
        }
        if (!factors_[f].is_trivial(Word(std::move(part)))) return false;
      }
      return true;
    }
  }
  throw Error("unreachable");
}

bool Presentation::equal(const Word& u, const Word& v) const {
  return is_trivial(u * v.inverse());
}

int Presentation::geodesic_length(const Word& w) const {
  return static_cast<int>(canonical(w).size());
}

const std::vector<std::string>& Presentation::symmetrized_relators() const {
  if (strategy_ != Strategy::kCPrimeOneSixth) {
    throw StrategyMismatch("symmetrized relators only exist for the Dehn engine");
  }
  return symmetrized_;
}

std::string Presentation::content_hash() const {
  std::string desc = describe();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : desc) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string Presentation::describe() const {
  std::ostringstream os;
  os << strategy_name(strategy_) << "|gens=" << generator_count_;
  for (const auto& r : relators_) os << "|rel=" << r.str();
  for (const auto& f : factors_) os << "|factor{" << f.describe() << "}";
  return os.str();
}

Presentation Presentation::parse(std::istream& in) {
  int gens = 0;
  std::vector<Word> relators;
  std::optional<Strategy> forced;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "gens") {
      std::string name;
      int expected = 0;
      while (ls >> name) {
        if (name.size() != 1 || name[0] != 'a' + expected) {
          throw ConfigError("generators must be listed as a b c ... in order");
        }
        ++expected;
      }
      gens = expected;
    } else if (key == "rel") {
      std::string word;
      if (!(ls >> word)) throw ConfigError("rel line without a word");
      if (word == "\"\"") throw ConfigError("trivial relator");
      relators.emplace_back(word);
    } else if (key == "strategy") {
      std::string tag;
      if (!(ls >> tag)) throw ConfigError("strategy line without a tag");
      forced = strategy_from_name(tag);
      if (!forced) throw ConfigError("unknown strategy tag: " + tag);
      if (*forced == Strategy::kDirectProduct) {
        throw ConfigError("direct products are built from factor presentations");
      }
    } else {
      throw ConfigError("unknown directive in presentation file: " + key);
    }
  }
  if (gens == 0) throw ConfigError("presentation file missing a gens line");
  return from_relators(gens, std::move(relators), forced);
}

Presentation Presentation::parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

Presentation Presentation::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open presentation file: " + path);
  return parse(in);
}

bool equal_in_group(const Word& u, const Word& v, const Presentation& p) {
  return p.equal(u, v);
}

}  // namespace growthlab
