#pragma once

// Cylinder sets of the Bernoulli space {0,1}^G with their exact measures,
// the shift action and the single-coordinate flips.

#include "paradoxlab/group.hpp"
#include "paradoxlab/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace paradoxlab {

/// Copy label of the doubled space {R,S} x {0,1}^G; None on the plain space.
enum class Tag : std::uint8_t { None, R, S };

Tag swap_tag(Tag t);

struct Cylinder {
  std::map<Word, int> assignment;
  Tag tag = Tag::None;

  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

Rational cylinder_measure(const Cylinder& c);

/// Preimage of c under the action of g: coordinate h becomes h*g.
Cylinder shift(const Word& g, const Cylinder& c, const Presentation& p);

enum class FlipCoordinate { Identity, Sigma };

/// Toggles the e (or sigma) coordinate if the cylinder constrains it.
Cylinder flip(FlipCoordinate which, const Cylinder& c, const Presentation& p);

struct Pattern {
  std::vector<std::uint8_t> bits;
  Rational measure;
};

inline constexpr std::size_t kDefaultPatternCap = 24;

/// All 2^n assignments of the given coordinates, bit i of the index drives coords[i].
std::vector<Pattern> enumerate_patterns(std::span<const Word> coords,
                                        std::size_t cap = kDefaultPatternCap);

}  // namespace paradoxlab
