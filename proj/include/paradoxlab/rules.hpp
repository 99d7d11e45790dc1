#pragma once

// Finitary colouring rules on Bernoulli spaces over Cayley graphs: the rule
// data model, the built-in rules and satisfaction checking on finite balls.

#include "paradoxlab/group.hpp"
#include "paradoxlab/measure.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace paradoxlab {

using Colour = int;
/// Bit c set iff palette colour c is allowed. Palettes hold at most 32 colours.
using ColourSet = std::uint32_t;

inline constexpr ColourSet colour_bit(Colour c) { return ColourSet{1} << c; }
inline constexpr bool contains(ColourSet set, Colour c) { return (set >> c) & 1U; }
inline int colour_count(ColourSet set) { return std::popcount(set); }

class Palette {
 public:
  explicit Palette(std::vector<std::string> colours);

  int size() const { return static_cast<int>(colours_.size()); }
  const std::string& name(Colour c) const { return colours_.at(c); }
  Colour index(std::string_view name) const;
  ColourSet all() const { return (ColourSet{1} << size()) - 1; }
  /// First colour of a set in palette order; deterministic tie-break.
  Colour first(ColourSet set) const;
  const std::vector<std::string>& colours() const { return colours_; }

 private:
  std::vector<std::string> colours_;
};

/// A vertex of a truncated orbit: the point word(x0), on copy `tag`.
struct Point {
  Word word;
  Tag tag = Tag::None;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    return WordHash{}(p.word) * 3 + static_cast<std::size_t>(p.tag);
  }
};

/// One descendant position: x_i = word(x), optionally on the other copy.
struct Move {
  Word word;
  bool swap_tag = false;
};

struct DescendantSpec {
  std::vector<Move> positions;    // plain points, and R points of tagged rules
  std::vector<Move> s_positions;  // S points of tagged rules
  std::vector<Word> read_bits;    // coordinates of x the rule reads
  bool tagged = false;
};

struct RuleInput {
  Tag tag = Tag::None;
  std::span<const std::uint8_t> bits;  // aligned with DescendantSpec::read_bits
  std::span<const Colour> descendants;
};

using DecisionFn = std::function<ColourSet(const RuleInput&)>;

struct Rule {
  std::string name;
  Presentation presentation;
  Palette palette;
  DescendantSpec descendants;
  std::vector<DecisionFn> parts;
  bool stationary = true;
  /// Colours also encode crowdedness, validated against realised arrows.
  bool arrow_crowdedness = false;

  int rank() const { return static_cast<int>(parts.size()); }
  const std::vector<Move>& moves_for(Tag tag) const;
  Point apply(const Move& move, const Point& x) const;
  std::vector<Point> descendants_of(const Point& x) const;
  /// Coordinate of the configuration holding read-bit `coordinate` of x.
  Word bit_coordinate(const Word& coordinate, const Point& x) const;
  bool shortlex_less(const Point& a, const Point& b) const;
};

using Colouring = std::map<Point, Colour>;
/// e-coordinates of the root configuration, x0^w for each vertex word w.
using BitField = std::unordered_map<Word, std::uint8_t, WordHash>;

struct Violation {
  Point vertex;
  int part = 0;
  Colour observed = 0;
  ColourSet allowed = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Applies one part of the rule. `bits` is keyed by read-bit coordinate.
ColourSet evaluate(const Rule& rule, int part, const std::map<Word, int>& bits,
                   std::span<const Colour> descendant_colours, Tag tag = Tag::None);

Rule hausdorff_rule();
Rule example1_rule();
Rule example2_rule();
Rule example3_rule();
Rule example4_rule();
Rule example5_rule();

/// "hausdorff", "ex1" ... "ex5".
Rule rule_by_name(std::string_view name);
const std::vector<std::string>& rule_names();

// Hausdorff congruences as maps from a descendant colour to allowed colours.
ColourSet hausdorff_sigma(Colour sigma_colour);
ColourSet hausdorff_tau(Colour tau_inverse_colour);

// Example 3 pair colours.
inline constexpr Colour pair_colour(Colour first, Colour second) { return 3 * first + second; }
inline constexpr Colour pair_first(Colour c) { return c / 3; }
inline constexpr Colour pair_second(Colour c) { return c % 3; }

// Example 5 colours: P^u, P^c, N^u, N^c.
enum class Crowding { U, C };
inline constexpr bool is_positive(Colour c) { return c < 2; }
inline constexpr bool is_crowded(Colour c) { return c % 2 == 1; }
inline constexpr Colour example5_colour(bool positive, Crowding crowding) {
  return (positive ? 0 : 2) + (crowding == Crowding::C ? 1 : 0);
}

struct Arrow {
  Word target;
  bool inside = false;
};

/// Arrow leaving vertex w: toward T_d(w) if P-coloured, T_d^-1(w) otherwise,
/// where d = a for bit 0 and d = b for bit 1.
Word arrow_target(const Word& w, Colour colour, std::uint8_t bit);

std::map<Word, Arrow> arrows(const Colouring& colouring, std::span<const Word> ball,
                             const BitField& bits);
std::map<Word, Crowding> crowdedness(const std::map<Word, Arrow>& arrow_map,
                                     std::span<const Word> ball);

/// Violations at interior vertices, ordered by vertex (shortlex) then part.
/// Example 5 crowdedness mismatches are reported with part index rank().
std::vector<Violation> check_satisfaction(const Rule& rule, std::span<const Point> ball,
                                          const Colouring& colouring, const BitField& bits);
std::vector<Violation> check_satisfaction_serial(const Rule& rule, std::span<const Point> ball,
                                                 const Colouring& colouring, const BitField& bits);

/// Vertices of `ball` all of whose descendants lie in `ball`.
std::vector<Point> interior(const Rule& rule, std::span<const Point> ball);

std::vector<Point> plain_points(std::span<const Word> words);
std::vector<Point> tagged_points(std::span<const Word> words);
/// The ball of the rule's group, doubled into R and S copies for tagged rules.
std::vector<Point> rule_ball(const Rule& rule, int radius);

/// Seeded pseudo-random e-bits; a vertex's bit depends only on (seed, word).
BitField random_bits(std::span<const Word> words, std::uint64_t seed);
BitField random_bits(std::span<const Point> points, std::uint64_t seed);

std::string format_point(const Presentation& p, const Point& x);
Point parse_point(const Presentation& p, std::string_view text);

}  // namespace paradoxlab
