#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qsphere/qcoeff.hpp"

namespace qsphere {

using Letter = std::uint8_t;

// Word over at most 15 generators, packed as 4-bit codes (letter + 1) into a
// left-aligned 128-bit integer so that same-length words compare
// lexicographically as integers.
class Word {
 public:
  static constexpr int kMaxLength = 32;

  Word() = default;
  static Word letter(Letter g);
  static Word from_letters(const std::vector<Letter>& letters);
  static Word from_letters(std::initializer_list<Letter> letters) { return from_letters(std::vector<Letter>(letters)); }

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  Letter operator[](int i) const { return static_cast<Letter>(((bits_ >> (4 * (31 - i))) & 0xF) - 1); }
  Letter front() const { return (*this)[0]; }
  Letter back() const { return (*this)[size_ - 1]; }
  Word without_front() const;
  Word without_back() const;
  std::vector<Letter> letters() const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  // Container order: length first, then lexicographic.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.bits_ == b.bits_ ? std::strong_ordering::equal
                              : (a.bits_ < b.bits_ ? std::strong_ordering::less : std::strong_ordering::greater);
  }

  std::size_t hash() const {
    const auto lo = static_cast<std::uint64_t>(bits_), hi = static_cast<std::uint64_t>(bits_ >> 64);
    return std::hash<std::uint64_t>{}(hi * 0x9E3779B97F4A7C15ULL ^ lo ^ size_);
  }

 private:
  unsigned __int128 bits_ = 0;
  std::uint8_t size_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

using Terms = std::vector<std::pair<Word, QScalar>>;

struct GeneratorInfo {
  std::string name;  // starred generators carry a trailing '*'
  Letter star;
  int weight = 1;
};

struct RewriteRule {
  Letter first, second;  // left-hand side is the two-letter word (first, second)
  Terms rhs;             // normal words with coefficients
};

// A presented *-algebra: generators, a weighted degree-lexicographic word
// order, and two-letter rewrite rules that strictly decrease that order.
// Immutable after construction apart from the internal product cache.
class Presentation {
 public:
  Presentation(std::string name, std::vector<GeneratorInfo> generators, std::vector<RewriteRule> rules);

  const std::string& name() const { return name_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }
  const GeneratorInfo& generator(Letter g) const { return generators_.at(g); }
  Letter star(Letter g) const { return generators_.at(g).star; }
  std::optional<Letter> find_generator(std::string_view name, bool starred) const;
  const std::vector<RewriteRule>& rules() const { return rules_; }
  const RewriteRule* rule(Letter a, Letter b) const;

  int weight(const Word& w) const;
  bool order_less(const Word& a, const Word& b) const;
  bool is_normal(const Word& w) const;
  Word star(const Word& w) const;

  // Normal form of u*v for normal words u, v (memoized).
  const Terms& multiply_normal(const Word& u, const Word& v) const;
  // Normal form of an arbitrary word, folding letters left to right.
  Terms reduce_word(const Word& w) const;
  // One rewrite step at position i (rule on letters i, i+1), as a linear
  // combination of words; nullopt if no rule applies there.
  std::optional<Terms> rewrite_at(const Word& w, int i) const;

  std::size_t cache_size() const;
  std::string word_to_string(const Word& w) const;

 private:
  Terms insert_letter(const Word& u, Letter g) const;

  struct PairHash {
    std::size_t operator()(const std::pair<Word, Word>& p) const {
      return p.first.hash() * 1000003ULL ^ p.second.hash();
    }
  };

  std::string name_;
  std::vector<GeneratorInfo> generators_;
  std::vector<RewriteRule> rules_;
  std::vector<int> rule_index_;  // generator_count^2 table, -1 when no rule
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::pair<Word, Word>, Terms, PairHash> product_cache_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

// Generators x1 < x2 < x3 < x4 < x4* < x3* < x2* < x1* (letters 0..7).
PresentationPtr presentation_s7q();
// Generators alpha < alpha* < gamma < gamma* (letters 0..3), weights 2,2,1,1.
PresentationPtr presentation_suq2();

namespace s7 {
inline constexpr Letter x1 = 0, x2 = 1, x3 = 2, x4 = 3, x4s = 4, x3s = 5, x2s = 6, x1s = 7;
}
namespace suq2 {
inline constexpr Letter alpha = 0, alpha_s = 1, gamma = 2, gamma_s = 3;
}

// Noncommutative polynomial with every word in normal form. A
// default-constructed NCPoly is the zero of any presentation.
class NCPoly {
 public:
  using TermMap = std::map<Word, QScalar>;
  using Accumulator = class PolyAccumulator;

  NCPoly() = default;
  NCPoly(PresentationPtr pres, const QScalar& constant);
  explicit NCPoly(PresentationPtr pres) : pres_(std::move(pres)) {}

  static NCPoly generator(PresentationPtr pres, Letter g);
  // Normal-forms arbitrary words.
  static NCPoly from_terms(PresentationPtr pres, const Terms& terms);
  static NCPoly from_word(PresentationPtr pres, const Word& w, const QScalar& c = QScalar(1));

  const PresentationPtr& presentation() const { return pres_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<QScalar> as_scalar() const;
  QScalar coefficient(const Word& w) const;
  QScalar constant_term() const { return coefficient(Word()); }
  int degree() const;

  NCPoly operator-() const;
  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const QScalar& c);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(NCPoly a, const QScalar& c) { return a *= c; }
  friend NCPoly operator*(const QScalar& c, NCPoly a) { return a *= c; }
  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

  // a += b * c without materializing the product.
  void add_product(const NCPoly& b, const NCPoly& c, const QScalar& scale = QScalar(1));

  std::string to_string() const;

 private:
  friend class PolyAccumulator;
  void adopt(const PresentationPtr& other);
  void add_term(const Word& w, const QScalar& c);

  PresentationPtr pres_;
  TermMap terms_;
};

// Sum of polynomials and products with coefficient reduction deferred to
// result(); the matrix product uses it for long inner sums.
class PolyAccumulator {
 public:
  PolyAccumulator() = default;
  void add(const NCPoly& a);
  void add_product(const NCPoly& b, const NCPoly& c);
  NCPoly result() const;

 private:
  void adopt(const PresentationPtr& p);

  PresentationPtr pres_;
  std::unordered_map<Word, ScalarAccumulator, WordHash> terms_;
};

NCPoly normal_form(const NCPoly& p);
NCPoly star(const NCPoly& p);
NCPoly parse_poly(std::string_view text, const PresentationPtr& pres);

struct ConfluenceReport {
  std::string presentation;
  int degree_bound = 0;
  std::size_t overlaps_checked = 0;
  std::size_t words_checked = 0;
  std::vector<std::string> failures;
  bool confluent() const { return failures.empty(); }
};

// Resolves every overlap of two rule left-hand sides (three-letter words) and,
// for bound >= 4, every word of length 4..bound rewritten at each redex.
ConfluenceReport check_local_confluence(const Presentation& pres, int degree_bound);

}  // namespace qsphere
