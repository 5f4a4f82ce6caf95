#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "growthlab/errors.hpp"
#include "growthlab/presentation.hpp"
#include "growthlab/word.hpp"

using namespace growthlab;

namespace {

// Test-local reducer, kept independent of the library path it checks.
std::string naive_reduce(std::string s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      char a = s[i], b = s[i + 1];
      bool cancel = (a >= 'a' ? a - 'a' : a - 'A') == (b >= 'a' ? b - 'a' : b - 'A') &&
                    ((a >= 'a') != (b >= 'a'));
      if (cancel) {
        s.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return s;
}

std::vector<std::string> random_words(int count, int max_len, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<std::string> out;
  const std::string alphabet = "abAB";
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::string w;
    int n = len(rng);
    for (int j = 0; j < n; ++j) w.push_back(alphabet[rng() % 4]);
    out.push_back(w);
  }
  return out;
}

// All freely reduced words over {a,b}^+- up to the given length.
std::vector<std::string> reduced_words_up_to(int max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  const std::string alphabet = "aAbB";
  for (int n = 1; n <= max_len; ++n) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char c : alphabet) {
        if (!w.empty() && w.back() == letters::inverse(c)) continue;
        next.push_back(w + c);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("free_reduce examples") {
  CHECK(free_reduce(Word("abB")).str() == "a");
  CHECK(free_reduce(Word("aA")).str() == "");
  CHECK(free_reduce(Word("abAB")).str() == "abAB");
}

TEST_CASE("free_reduce properties") {
  for (const auto& s : random_words(300, 14, 20250810)) {
    Word w(s);
    Word r = free_reduce(w);
    CHECK(free_reduce(r).str() == r.str());            // idempotent
    CHECK(r.size() <= w.size());                       // non-increasing
    CHECK(free_reduce(w * w.inverse()).empty());       // w.w^-1 trivial
    CHECK(r.str() == naive_reduce(s));                 // independent oracle
  }
}

TEST_CASE("shortlex order") {
  CHECK(shortlex_less("", "a"));
  CHECK(shortlex_less("a", "A"));
  CHECK(shortlex_less("A", "b"));
  CHECK(shortlex_less("b", "B"));
  CHECK(shortlex_less("B", "aa"));
  CHECK(shortlex_less("ab", "aB"));
  CHECK(!shortlex_less("a", "a"));
}

TEST_CASE("cyclic_reduce_and_root examples") {
  auto d = cyclic_reduce_and_root(Word("abab"));
  CHECK(d.root.str() == "ab");
  CHECK(d.exponent == 2);
  CHECK(d.conjugator.str() == "");

  d = cyclic_reduce_and_root(Word("ab"));
  CHECK(d.root.str() == "ab");
  CHECK(d.exponent == 1);
  CHECK(d.conjugator.str() == "");

  // b.a^2.b^-1: conjugated square of a.
  d = cyclic_reduce_and_root(Word("baaB"));
  CHECK(d.root.str() == "a");
  CHECK(d.exponent == 2);
  CHECK(d.conjugator.str() == "b");

  CHECK_THROWS_AS(cyclic_reduce_and_root(Word("aA")), TrivialWord);
}

TEST_CASE("cyclic_reduce_and_root reassembles the input") {
  for (const auto& s : random_words(200, 12, 99)) {
    Word w(s);
    if (free_reduce(w).empty()) continue;
    auto d = cyclic_reduce_and_root(w);
    CHECK(is_cyclically_reduced(d.root.str()));
    Word rebuilt = d.conjugator;
    for (int i = 0; i < d.exponent; ++i) rebuilt = rebuilt * d.root;
    rebuilt = rebuilt * d.conjugator.inverse();
    CHECK(free_reduce(rebuilt).str() == free_reduce(w).str());
    // Root is primitive: no smaller period.
    const std::string& r = d.root.str();
    for (std::size_t p = 1; p < r.size(); ++p) {
      if (r.size() % p != 0) continue;
      bool periodic = true;
      for (std::size_t i = p; i < r.size(); ++i) {
        if (r[i] != r[i - p]) periodic = false;
      }
      CHECK(!periodic);
    }
  }
}

namespace {

// Independent max_piece oracle: enumerate the symmetrized closure by hand.
int oracle_max_piece(const std::string& r) {
  auto invert = [](const std::string& s) {
    std::string out(s.rbegin(), s.rend());
    for (char& c : out) c = letters::inverse(c);
    return out;
  };
  std::set<std::string> sym;
  for (std::string base : {r, invert(r)}) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      sym.insert(base.substr(i) + base.substr(0, i));
    }
  }
  int best = 0;
  for (auto it = sym.begin(); it != sym.end(); ++it) {
    for (auto jt = std::next(it); jt != sym.end(); ++jt) {
      std::size_t m = 0;
      while (m < it->size() && m < jt->size() && (*it)[m] == (*jt)[m]) ++m;
      best = std::max(best, static_cast<int>(m));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("max_piece examples and oracle") {
  CHECK(max_piece(Word("aaa")) == 0);
  CHECK(max_piece(Word("ababab")) == 0);
  CHECK(max_piece(Word("abAB")) == 1);
  for (const std::string r : {"aaa", "ababab", "abAB", "aabab", "aabb", "abaB"}) {
    CHECK(max_piece(Word(r)) == oracle_max_piece(r));
  }
}

TEST_CASE("max_piece of h^n is bounded independent of n") {
  for (const std::string h : {"a", "ab"}) {
    int bound = -1;
    for (int n = 2; n <= 12; ++n) {
      std::string rel;
      for (int i = 0; i < n; ++i) rel += h;
      int piece = max_piece(Word(rel));
      if (bound < 0) bound = piece;
      CHECK(piece == bound);  // constant, hence bounded
    }
  }
}

TEST_CASE("dehn_normalize examples") {
  auto p = Presentation::from_relators(2, {Word("aaa")}, Strategy::kCPrimeOneSixth);
  CHECK(p.dehn_normalize(Word("aaa")).str() == "");
  CHECK(p.dehn_normalize(Word("aa")).str() == "A");
  CHECK(p.dehn_normalize(Word("ab")).str() == "ab");

  auto free2 = Presentation::free_group(2);
  CHECK_THROWS_AS(free2.dehn_normalize(Word("a")), StrategyMismatch);
}

TEST_CASE("dehn_normalize preserves the group element") {
  auto p = Presentation::from_relators(2, {Word("ababababab")});
  REQUIRE(p.strategy() == Strategy::kCPrimeOneSixth);
  for (const auto& s : random_words(200, 16, 7)) {
    Word w(s);
    CHECK(equal_in_group(w, p.dehn_normalize(w), p));
  }
}

TEST_CASE("equal_in_group examples") {
  auto z3 = Presentation::from_relators(2, {Word("aaa")});
  CHECK(equal_in_group(Word("aa"), Word("A"), z3));
  auto free2 = Presentation::free_group(2);
  CHECK(!equal_in_group(Word("ab"), Word("ba"), free2));
  CHECK(equal_in_group(Word(""), Word("aA"), free2));
}

TEST_CASE("equal_in_group is an equivalence on samples") {
  auto p = Presentation::from_relators(2, {Word("aaaa")}, Strategy::kCPrimeOneSixth);
  auto words = random_words(25, 8, 5150);
  std::vector<Word> ws;
  for (auto& s : words) ws.emplace_back(s);
  for (const auto& u : ws) CHECK(equal_in_group(u, u, p));
  for (const auto& u : ws) {
    for (const auto& v : ws) {
      CHECK(equal_in_group(u, v, p) == equal_in_group(v, u, p));
    }
  }
  for (const auto& u : ws) {
    for (const auto& v : ws) {
      if (!equal_in_group(u, v, p)) continue;
      for (const auto& w : ws) {
        if (equal_in_group(v, w, p)) CHECK(equal_in_group(u, w, p));
      }
    }
  }
}

TEST_CASE("strategy selection and validation") {
  CHECK(Presentation::free_group(2).strategy() == Strategy::kFree);
  CHECK(Presentation::from_relators(2, {Word("aaa")}).strategy() ==
        Strategy::kFreeProductOfCyclics);
  CHECK(Presentation::from_relators(2, {Word("ababab")}).strategy() ==
        Strategy::kCPrimeOneSixth);
  // abAB has pieces of length 1 and |r| = 4 < 6: fails C'(1/6).
  CHECK_THROWS_AS(Presentation::from_relators(2, {Word("abAB")}), StrategyMismatch);
  CHECK_THROWS_AS(
      Presentation::from_relators(2, {Word("ab")}, Strategy::kFreeProductOfCyclics),
      StrategyMismatch);
  CHECK_THROWS_AS(Presentation::from_relators(2, {Word("aA")}), ConfigError);
}

TEST_CASE("fpc canonical forms") {
  auto z4 = Presentation::from_relators(2, {Word("aaaa")});
  CHECK(z4.canonical(Word("aa")).str() == "aa");   // tie broken to the positive power
  CHECK(z4.canonical(Word("AA")).str() == "aa");
  CHECK(z4.canonical(Word("aaa")).str() == "A");
  CHECK(z4.canonical(Word("abAb")).str() == "abAb");
  CHECK(z4.canonical(Word("abaaaB")).str() == "abAB");

  auto z1 = Presentation::from_relators(2, {Word("a")});
  CHECK(z1.canonical(Word("ab")).str() == "b");
  CHECK(z1.canonical(Word("bab")).str() == "bb");
  CHECK(z1.is_trivial(Word("aaa")));
}

TEST_CASE("dehn engine agrees with fpc on a shared presentation") {
  auto fpc = Presentation::from_relators(2, {Word("aaa")});
  auto dehn = Presentation::from_relators(2, {Word("aaa")}, Strategy::kCPrimeOneSixth);
  auto words = reduced_words_up_to(4);
  std::vector<Word> ws;
  for (auto& s : words) ws.emplace_back(s);
  for (const auto& u : ws) {
    CHECK(dehn.geodesic_length(u) == fpc.geodesic_length(u));
    for (const auto& v : ws) {
      bool lhs = dehn.canonical(u) == dehn.canonical(v);
      bool rhs = fpc.canonical(u) == fpc.canonical(v);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("dehn engine agrees with a Nielsen change of basis") {
  // <a,b | (ab)^3> maps to <x,b | x^3> under a -> xb^-1; the fpc engine on
  // the image is an independent word-problem oracle for the Dehn engine.
  auto dehn = Presentation::from_relators(2, {Word("ababab")});
  REQUIRE(dehn.strategy() == Strategy::kCPrimeOneSixth);
  auto image = Presentation::from_relators(2, {Word("aaa")});  // x plays 'a'
  auto to_image = [](const std::string& w) {
    std::string out;
    for (char c : w) {
      switch (c) {
        case 'a': out += "aB"; break;   // a -> x b^-1
        case 'A': out += "bA"; break;
        default: out.push_back(c);
      }
    }
    return Word(out);
  };
  auto words = reduced_words_up_to(4);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i; j < words.size(); ++j) {
      bool lhs = dehn.equal(Word(words[i]), Word(words[j]));
      bool rhs = image.equal(to_image(words[i]), to_image(words[j]));
      CHECK(lhs == rhs);
    }
  }
  // Geodesic lengths from the closure match a brute-force search: the
  // distance from the identity is the smallest length among all words equal
  // to w, which the image engine can score exactly via enumeration.
  for (const auto& s : reduced_words_up_to(3)) {
    int claimed = dehn.geodesic_length(Word(s));
    int brute = -1;
    for (const auto& cand : words) {
      if (static_cast<int>(cand.size()) > claimed) continue;
      if (image.equal(to_image(cand), to_image(s))) {
        brute = brute < 0 ? static_cast<int>(cand.size())
                          : std::min(brute, static_cast<int>(cand.size()));
      }
    }
    CHECK(brute == claimed);
  }
}

TEST_CASE("direct product canonical forms") {
  auto f2 = Presentation::free_group(2);
  auto prod = Presentation::direct_product({f2, f2});
  CHECK(prod.generator_count() == 4);
  // Factor-2 letters are c, d; blocks sort by factor.
  CHECK(prod.canonical(Word("ca")).str() == "ac");
  CHECK(prod.canonical(Word("cAca")).str() == "cc");
  CHECK(prod.is_trivial(Word("cC")));
  CHECK(prod.equal(Word("ac"), Word("ca")));
  CHECK(prod.geodesic_length(Word("ac")) == 2);
}

TEST_CASE("presentation file parsing") {
  auto p = Presentation::parse_text("gens a b\nrel aaa\n");
  CHECK(p.generator_count() == 2);
  CHECK(p.strategy() == Strategy::kFreeProductOfCyclics);

  auto forced = Presentation::parse_text(
      "gens a b\nrel aaa\nstrategy c-prime-one-sixth\n");
  CHECK(forced.strategy() == Strategy::kCPrimeOneSixth);

  CHECK_THROWS_AS(Presentation::parse_text("rel aaa\n"), ConfigError);
  CHECK_THROWS_AS(Presentation::parse_text("gens a b\nbogus x\n"), ConfigError);
  CHECK_THROWS_AS(Presentation::parse_text("gens a b\nrel abAB\n"), StrategyMismatch);

  CHECK(Presentation::parse_text("gens a b\nrel aaa\n").content_hash() ==
        p.content_hash());
  CHECK(Presentation::parse_text("gens a b\nrel aaaa\n").content_hash() !=
        p.content_hash());
}
