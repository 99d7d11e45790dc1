#pragma once

// Normal forms for free products of finite cyclic groups, free monoid
// generators and free group generators, plus finite Cayley balls.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace paradoxlab {

enum class FactorKind { Cyclic, FreeMonoid, FreeGroup };

struct FactorSpec {
  std::string name;
  FactorKind kind = FactorKind::Cyclic;
  int order = 0;  // only meaningful for Cyclic

  static FactorSpec cyclic(std::string name, int order);
  static FactorSpec free_monoid(std::string name);
};

struct Syllable {
  int generator = 0;
  long exponent = 0;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A reduced word: adjacent syllables use distinct generators, cyclic
/// exponents lie in 1..order-1, monoid exponents are positive. Empty is e.
class Word {
 public:
  Word() = default;

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }
  std::size_t syllable_count() const { return syllables_.size(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  friend class Presentation;
  explicit Word(std::vector<Syllable> s) : syllables_(std::move(s)) {}
  std::vector<Syllable> syllables_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Platform-independent 64-bit fingerprint of a word, used to derive bits.
std::uint64_t stable_hash(const Word& w);

class Presentation {
 public:
  static constexpr std::size_t kDefaultBallCap = 1'000'000;

  Presentation(std::vector<FactorSpec> factors, int free_rank);

  /// Parses "Z2*Z3", "Z2*Z5", "F2", "N0*Z2" and other products of Zn, N0, Fk.
  static Presentation parse(std::string_view spelling);

  static Presentation z2_z3();
  static Presentation z2_z5();
  static Presentation f2();
  static Presentation n0_z2();

  const std::vector<FactorSpec>& factors() const { return factors_; }
  int free_rank() const { return free_rank_; }
  const std::string& spelling() const { return spelling_; }

  /// Generators are the factors followed by the free-group generators.
  int generator_count() const { return static_cast<int>(generators_.size()); }
  const FactorSpec& generator(int index) const { return generators_.at(index); }
  int generator_index(std::string_view name) const;

  /// Word consisting of generator^exponent (already reduced).
  Word generator_word(int index, long exponent = 1) const;
  Word generator_word(std::string_view name, long exponent = 1) const;

  Word reduce(const std::vector<Syllable>& raw) const;
  Word multiply(const Word& lhs, const Word& rhs) const;
  Word invert(const Word& w) const;
  bool is_invertible(const Word& w) const;

  /// Number of steps in the symmetric generating set (t and t^-1 both count 1).
  long word_length(const Word& w) const;

  /// Single-generator steps spanning the Cayley graph: s, t, t^-1, a, a^-1, T.
  std::vector<Word> generating_steps() const;

  /// All words of length <= radius, shortlex ordered.
  std::vector<Word> ball(int radius, std::size_t cap = kDefaultBallCap) const;

  /// Length first, then syllable lexicographic order.
  bool shortlex_less(const Word& a, const Word& b) const;

  std::string format(const Word& w) const;
  Word parse_word(std::string_view text) const;

  bool has_order_two_factor() const;
  /// The first order-2 cyclic generator, written s.
  Word sigma() const;

 private:
  std::vector<FactorSpec> factors_;
  int free_rank_ = 0;
  std::vector<FactorSpec> generators_;
  std::string spelling_;

  void push_syllable(std::vector<Syllable>& out, Syllable s) const;
  void check_exponent(const Syllable& s) const;
};

/// The two words of Z2*Z3 generating a free subgroup of rank two.
Word free_embedding_first(const Presentation& z2z3);   // t.s.t^2.s
Word free_embedding_second(const Presentation& z2z3);  // t^2.s.t.s

}  // namespace paradoxlab

template <>
struct std::hash<paradoxlab::Word> : paradoxlab::WordHash {};
