#include "paradoxlab/analysis.hpp"
#include "paradoxlab/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

using namespace paradoxlab;

namespace {

Rational frac(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

// Minimum A1 opposite points for one cycle bit pattern, by walking every
// colouring of the cycle itself and charging one A1 per unearned increment.
int cycle_oracle(unsigned pattern) {
  int best = std::numeric_limits<int>::max();
  for (int code = 0; code < 3125; ++code) {
    int c[5];
    for (int j = 0, rest = code; j < 5; ++j, rest /= 5) c[j] = rest % 5;
    int cost = 0;
    bool ok = true;
    for (int j = 0; j < 5 && ok; ++j) {
      const int prev = c[(j + 4) % 5];
      const bool free_advance = ((pattern >> j) & 1U) || prev == 4;
      if (c[j] == (prev + 1) % 5) {
        cost += free_advance ? 0 : 1;
      } else if (c[j] != prev || free_advance) {
        ok = false;
      }
    }
    if (ok) best = std::min(best, cost);
  }
  return best;
}

// Rule Q written out directly: 0 = A, 1 = B.
int rule_q(int image, int bit, int twin) {
  if (image == 1 && bit == 0) return twin;
  return 1 - twin;
}

// Both sides of the identity by explicit set arithmetic.
std::pair<Rational, Rational> set_oracle(const WeightedSetSystem& s) {
  auto members = [](std::uint32_t mask, std::size_t n) {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) out.insert(i);
    }
    return out;
  };
  const std::size_t n = s.weights.size();
  auto measure = [&](const std::set<std::size_t>& xs) {
    Rational m;
    for (std::size_t x : xs) m += s.weights[x];
    return m;
  };
  std::set<std::size_t> everything, uni;
  for (std::size_t i = 0; i < n; ++i) everything.insert(i);
  for (std::uint32_t a : s.sets) {
    const auto m = members(a, n);
    uni.insert(m.begin(), m.end());
  }
  Rational rhs;
  const std::size_t k = s.sets.size();
  for (std::uint32_t choice = 1; choice < (1U << k); ++choice) {
    if (std::popcount(choice) < 2) continue;
    std::set<std::size_t> meet = everything;
    for (std::size_t i = 0; i < k; ++i) {
      if (!((choice >> i) & 1U)) continue;
      std::set<std::size_t> next;
      const auto m = members(s.sets[i], n);
      std::set_intersection(meet.begin(), meet.end(), m.begin(), m.end(), std::inserter(next, next.begin()));
      meet = std::move(next);
    }
    rhs += (std::popcount(choice) % 2 == 0 ? Rational(1) : Rational(-1)) * measure(meet);
  }
  return {measure(everything) - measure(uni), rhs};
}

}  // namespace

TEST(Theorem1, ForcedTableMatchesCycleOracle) {
  const auto table = theorem1_forced_table();
  ASSERT_EQ(table.size(), 32U);
  for (unsigned pattern = 0; pattern < 32; ++pattern) EXPECT_EQ(table[pattern], cycle_oracle(pattern)) << pattern;
  EXPECT_EQ(theorem1_forced_table_serial(), table);
}

TEST(Theorem1, ZeroBitsForceOneFewerA1) {
  const auto table = theorem1_forced_table();
  for (unsigned pattern = 0; pattern < 32; ++pattern) {
    const int zeros = 5 - std::popcount(pattern);
    EXPECT_EQ(table[pattern], zeros == 5 || zeros == 0 ? 0 : zeros - 1) << pattern;
  }
}

TEST(Theorem1, Bounds) {
  EXPECT_EQ(theorem1_lower_bound(BoundMode::Formula), frac(9, 32));
  EXPECT_EQ(theorem1_lower_bound(BoundMode::BruteForce), frac(9, 32));
  EXPECT_EQ(theorem1_monochrome_term(), frac(1, 32));
  EXPECT_EQ(theorem1_upper_bound(), frac(9, 40));
  const BoundReport r = theorem1_bounds(BoundMode::BruteForce);
  EXPECT_TRUE(r.contradiction);
  EXPECT_GT(r.lower, r.upper);
}

TEST(Theorem1, CorruptTableDetected) {
  try {
    theorem1_bounds(BoundMode::BruteForce, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VerificationFailed);
  }
}

TEST(Hausdorff, MeasureConstraints) {
  const MeasureConstraints m = hausdorff_measure_constraints();
  EXPECT_EQ(m.sigma_value, frac(1, 2));
  EXPECT_EQ(m.tau_value, frac(1, 3));
  EXPECT_TRUE(m.contradiction);
  EXPECT_EQ(forced_colour_measure(hausdorff_rule(), 1, 1, 2), frac(1, 3));
}

TEST(Hausdorff, ForcedMeasureOfPermutationPart) {
  // With the opposite point fixed at A1 the cycle rule permutes the five colours.
  EXPECT_EQ(forced_colour_measure(example1_rule(), 0, 0, 3), frac(1, 5));
}

TEST(Hausdorff, OverlappingImagesRejected) {
  // Two uncrowded neighbours leave every colour allowed, for several inputs.
  EXPECT_THROW(forced_colour_measure(example5_rule(), 0, 0, 0), Error);
}

TEST(Example4, ConflictTableMatchesDirectRule) {
  const auto table = example4_conflict_table();
  ASSERT_EQ(table.size(), 16U);
  for (const ConflictCell& cell : table) {
    bool colourable = false;
    for (int cz = 0; cz < 2; ++cz) {
      for (int ct = 0; ct < 2; ++ct) {
        colourable = colourable || (rule_q(cell.image, cell.bit, ct) == cz &&
                                    rule_q(cell.twin_image, cell.twin_bit, cz) == ct);
      }
    }
    EXPECT_EQ(cell.colourable, colourable);
  }
}

TEST(Example4, RowPatterns) {
  int bb_bad = 0;
  for (const ConflictCell& cell : example4_conflict_table()) {
    if (cell.image == 1 && cell.twin_image == 1 && !cell.colourable) ++bb_bad;
    if (cell.image == 1 && cell.twin_image == 0) EXPECT_EQ(cell.colourable, cell.bit == 1);
    if (cell.image == 0 && cell.twin_image == 0) EXPECT_TRUE(cell.colourable);
  }
  EXPECT_EQ(bb_bad, 2);
}

TEST(Example4, LowerBound) {
  const Example4Bound b = example4_bound();
  EXPECT_EQ(b.a_cap, frac(5, 6));
  EXPECT_EQ(b.a_cap_derived, frac(3, 5));
  EXPECT_EQ(b.twin_bit_one, frac(1, 2));
  EXPECT_EQ(b.uncolourable_coefficient, frac(1, 4));
  EXPECT_EQ(b.lower_bound, frac(1, 24));
  EXPECT_EQ(example4_lower_bound(), frac(1, 24));
}

TEST(Example5, DegreeDistributionIsBinomial) {
  const DegreeStats s = example5_degree_stats();
  Rational total;
  for (unsigned k = 0; k <= 4; ++k) {
    EXPECT_EQ(s.distribution[k], Rational(binomial(4, k), BigInt(16)));
    total += s.distribution[k];
  }
  EXPECT_EQ(total, Rational(1));
  EXPECT_EQ(s.zero_fraction, frac(1, 16));
  EXPECT_EQ(s.cond_deg3, frac(3, 8));
  EXPECT_EQ(s.cond_deg4, frac(1, 8));
}

TEST(Theorem3, Recursion) {
  const BranchingRecursion r = branching_recursion();
  EXPECT_EQ(r.nontrivial_factor, Polynomial({Rational(4), Rational(-3), Rational(1)}));
  EXPECT_EQ(r.discriminant, Rational(-7));
  EXPECT_EQ(r.roots_in_unit_interval, std::vector<Rational>{Rational(0)});
  EXPECT_EQ(recursion_map(Rational(1)), frac(1, 2));
  EXPECT_EQ(recursion_iterate(2), frac(5, 32));
  EXPECT_EQ(recursion_map(Rational(0)), Rational(0));
}

TEST(Theorem3, RecursionMatchesDirectEvaluation) {
  const BranchingRecursion r = branching_recursion();
  Rational p(1);
  for (int d = 1; d <= 8; ++d) {
    p = (Rational(3) * p * p - p * p * p) / Rational(4);
    EXPECT_EQ(recursion_iterate(d), p);
  }
  for (int k = 1; k <= 100; ++k) {
    const Rational q = frac(k, 100);
    EXPECT_EQ(r.recursion_map(q), recursion_map(q));
    EXPECT_LT(recursion_map(q), q);
    EXPECT_EQ(r.fixed_point_poly(q), q - recursion_map(q));
  }
}

TEST(Theorem3, SimulationTracksIterates) {
  constexpr std::uint64_t trials = 100000;
  for (int d = 1; d <= 10; ++d) {
    const double exact = recursion_iterate(d).to_double();
    const double freq = branching_simulation(1, trials, d);
    const double sigma = std::sqrt(exact * (1 - exact) / trials);
    EXPECT_LE(std::abs(freq - exact), 3 * sigma + 1e-12) << d;
  }
  EXPECT_LE(branching_simulation(1, trials, 30), 0.001);
}

TEST(Theorem3, SimulationDeterministicAcrossKernels) {
  EXPECT_EQ(branching_simulation(7, 20000, 5), branching_simulation_serial(7, 20000, 5));
  EXPECT_EQ(branching_simulation(7, 20000, 5), branching_simulation(7, 20000, 5));
}

TEST(InclusionExclusion, DisjointPartition) {
  WeightedSetSystem s{std::vector<Rational>(6, frac(1, 6)), {0b000011, 0b001100, 0b110000}};
  const auto r = inclusion_exclusion_check(s);
  EXPECT_EQ(r.lhs, Rational(0));
  EXPECT_EQ(r.rhs, Rational(0));
  EXPECT_TRUE(r.identity_holds);
}

TEST(InclusionExclusion, PreconditionsEnforced) {
  WeightedSetSystem same{{Rational(1), Rational(0), Rational(0)}, {0b001, 0b001, 0b001}};
  EXPECT_THROW(inclusion_exclusion_check(same), Error);
  WeightedSetSystem heavy{{frac(1, 2), frac(1, 3)}, {0b01}};
  EXPECT_THROW(inclusion_exclusion_check(heavy), Error);
}

TEST(InclusionExclusion, OverlappingTriple) {
  // 20 points of weight 1/20; sets of sizes 8, 7, 5 overlap.
  WeightedSetSystem s{std::vector<Rational>(20, frac(1, 20)), {0x000FF, 0x0007F << 4, 0x0001F << 9}};
  const auto [lhs, rhs] = set_oracle(s);
  const auto r = inclusion_exclusion_check(s);
  EXPECT_EQ(r.lhs, lhs);
  EXPECT_EQ(r.rhs, rhs);
  EXPECT_TRUE(r.identity_holds);
}

TEST(InclusionExclusion, RandomSystemsMatchSetOracle) {
  for (std::uint64_t unit = 0; unit < 300; ++unit) {
    const WeightedSetSystem s = random_set_system(5, unit);
    EXPECT_LE(s.weights.size(), 20U);
    EXPECT_GE(s.sets.size(), 1U);
    EXPECT_LE(s.sets.size(), 6U);
    const auto [lhs, rhs] = set_oracle(s);
    const auto r = inclusion_exclusion_check(s);
    EXPECT_EQ(r.lhs, lhs);
    EXPECT_EQ(r.rhs, rhs);
    EXPECT_TRUE(r.identity_holds);
  }
}

TEST(InclusionExclusion, BatchKernelsAgree) {
  const auto a = inclusion_exclusion_batch(1, 1000);
  const auto b = inclusion_exclusion_batch_serial(1, 1000);
  EXPECT_EQ(a.count, 1000U);
  EXPECT_EQ(a.holds, 1000U);
  EXPECT_EQ(b.holds, a.holds);
}
