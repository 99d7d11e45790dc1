#pragma once

// Finite-domain backtracking search for colourings satisfying a rule on the
// interior of a finite ball. Boundary vertices are unconstrained variables.

#include "paradoxlab/rational.hpp"
#include "paradoxlab/rules.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace paradoxlab {

struct ObjectiveSpec {
  Colour colour = 0;
  bool maximise = false;
};

struct Instance {
  Rule rule;
  std::vector<Point> ball;
  BitField bits;
  Colouring pinned;
  std::optional<ObjectiveSpec> objective;
};

enum class SolveStatus { SAT, UNSAT, LIMIT };

std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::UNSAT;
  std::optional<Colouring> witness;
  std::optional<std::uint64_t> count;
  std::optional<Rational> extremal;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeLimit = 10'000'000;

/// First solution in (shortlex vertex, palette colour) order. When the
/// instance has an objective and is SAT, `extremal` is filled as well.
SolveResult solve(const Instance& instance, std::uint64_t node_limit = kDefaultNodeLimit);

/// Violation-free colourings in search order, at most `limit` of them.
std::vector<Colouring> enumerate(const Instance& instance, std::size_t limit,
                                 std::uint64_t node_limit = kDefaultNodeLimit);

/// Exact min or max over all violation-free colourings of
/// (#interior vertices with the objective colour) / (#interior vertices).
Rational extremal_fraction(const Instance& instance, std::uint64_t node_limit = kDefaultNodeLimit);

}  // namespace paradoxlab
