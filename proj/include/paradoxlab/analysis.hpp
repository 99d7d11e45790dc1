#pragma once

// Exact reproductions of the measure arguments showing that the built-in
// rules admit no colouring measurable for an invariant finitely additive
// extension of the Bernoulli measure.

#include "paradoxlab/polynomial.hpp"
#include "paradoxlab/rational.hpp"
#include "paradoxlab/rules.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace paradoxlab {

enum class BoundMode { Formula, BruteForce };

std::string_view to_string(BoundMode mode);

struct BoundReport {
  Rational lower;
  Rational upper;
  bool contradiction = false;  // lower > upper
  BoundMode method = BoundMode::Formula;
};

// --- A1 frequency bounds for the five-colour cycle rule ---------------------

/// Minimum number of A1-coloured opposite points over all rule-consistent
/// colourings of one t-cycle, indexed by the cycle's e-bit pattern (bit j of
/// the index is the e-bit of t^j x). 32 entries.
std::vector<int> theorem1_forced_table();
std::vector<int> theorem1_forced_table_serial();

/// Lower bound on the A1 frequency. `corrupt_table` perturbs one entry of
/// the brute-force table and exists only to exercise failure reporting.
Rational theorem1_lower_bound(BoundMode mode, bool corrupt_table = false);
/// Probability that a t-cycle is monochrome, as the measure of the all-zero
/// cylinder on the cycle's five e-coordinates.
Rational theorem1_monochrome_term();
Rational theorem1_upper_bound();
BoundReport theorem1_bounds(BoundMode mode, bool corrupt_table = false);

// --- Hausdorff rule ---------------------------------------------------------

struct MeasureConstraints {
  Rational sigma_value;  // mu(A) forced by the sigma part
  Rational tau_value;    // mu(A) forced by the tau part
  bool contradiction = false;
};

/// Value of mu(colour) forced by a part of a rule that reads only the given
/// descendant position, from
/// invariance of mu under the descendant map plus total mass one.
Rational forced_colour_measure(const Rule& rule, int part, int descendant, Colour colour);

MeasureConstraints hausdorff_measure_constraints();

// --- Semigroup rule Q -------------------------------------------------------

struct ConflictCell {
  Colour image = 0;       // colour of T z
  Colour twin_image = 0;  // colour of T sigma z
  std::uint8_t bit = 0;       // z^e
  std::uint8_t twin_bit = 0;  // (sigma z)^e
  bool colourable = false;
};

/// All 4 colour pairs x 4 bit pairs, rows in (image, twin_image, bit, twin_bit)
/// lexicographic order.
std::vector<ConflictCell> example4_conflict_table();

struct Example4Bound {
  Rational a_cap;                     // pinned cap on mu(A)
  Rational a_cap_derived;             // cap derived from the twin-bit argument
  Rational twin_bit_one;              // P((sigma x)^e = 1)
  Rational uncolourable_coefficient;  // uncolourable mass per unit of mu(B)
  Rational lower_bound;               // (1 - a_cap) * coefficient
};

Example4Bound example4_bound();
Rational example4_lower_bound();

// --- Free group rule: degrees and branching ---------------------------------

struct DegreeStats {
  std::array<Rational, 5> distribution;
  Rational zero_fraction;
  Rational cond_deg3;
  Rational cond_deg4;
};

DegreeStats example5_degree_stats();

struct BranchingRecursion {
  Polynomial recursion_map;     // phi(p)
  Polynomial fixed_point_poly;  // p - phi(p)
  Polynomial nontrivial_factor; // monic quotient after removing the root p = 0
  Rational discriminant;
  std::vector<Rational> roots_in_unit_interval;
};

BranchingRecursion branching_recursion();
/// phi(p) = (3p^2 - p^3) / 4.
Rational recursion_map(const Rational& p);
/// Numerator and denominator roughly triple in length per step.
inline constexpr int kMaxExactDepth = 12;
/// phi^depth(1); SizeLimit beyond kMaxExactDepth.
Rational recursion_iterate(int depth);
/// phi^depth(1) in floating point; underflows to 0 from depth 11 on.
double recursion_iterate_approx(int depth);

/// Fraction of trials in which the backward-arrow chain survives `depth`
/// generations. Trial i draws from StreamRng(seed, i).
double branching_simulation(std::uint64_t seed, std::uint64_t trials, int depth);
double branching_simulation_serial(std::uint64_t seed, std::uint64_t trials, int depth);

// --- Inclusion-exclusion ----------------------------------------------------

/// Finite universe 0..n-1 with point weights; sets are bitmasks over it.
struct WeightedSetSystem {
  std::vector<Rational> weights;
  std::vector<std::uint32_t> sets;
};

struct InclusionExclusionResult {
  Rational lhs;  // mu(X) - mu(union)
  Rational rhs;  // alternating sum of intersections of two or more sets
  bool identity_holds = false;
};

InclusionExclusionResult inclusion_exclusion_check(const WeightedSetSystem& system);

/// Random valid system (universe <= 20, at most 6 sets, sum of set measures 1).
WeightedSetSystem random_set_system(std::uint64_t seed, std::uint64_t unit);

struct InclusionExclusionBatch {
  std::uint64_t count = 0;
  std::uint64_t holds = 0;
};

InclusionExclusionBatch inclusion_exclusion_batch(std::uint64_t seed, std::uint64_t count);
InclusionExclusionBatch inclusion_exclusion_batch_serial(std::uint64_t seed, std::uint64_t count);

}  // namespace paradoxlab
