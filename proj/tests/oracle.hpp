#pragma once

// Test-side oracles: exhaustive colouring search and random small instances.

#include "paradoxlab/csp.hpp"
#include "paradoxlab/rules.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace paradoxlab::testing {

struct BruteForce {
  bool sat = false;
  std::uint64_t solutions = 0;
  std::uint64_t colourings = 0;
};

/// Walks every colouring that respects the pins. Stops at the first
/// solution unless `count_all`.
inline BruteForce brute_force(const Instance& inst, bool count_all) {
  const int k = inst.rule.palette.size();
  std::vector<Point> free;
  Colouring col = inst.pinned;
  for (const Point& x : inst.ball) {
    if (!inst.pinned.contains(x)) {
      free.push_back(x);
      col[x] = 0;
    }
  }
  BruteForce out;
  while (true) {
    ++out.colourings;
    if (check_satisfaction_serial(inst.rule, inst.ball, col, inst.bits).empty()) {
      out.sat = true;
      ++out.solutions;
      if (!count_all) return out;
    }
    std::size_t i = 0;
    for (; i < free.size(); ++i) {
      Colour& c = col[free[i]];
      if (++c < k) break;
      c = 0;
    }
    if (i == free.size()) return out;
  }
}

inline std::uint64_t space_size(const Instance& inst) {
  std::uint64_t n = 1;
  for (const Point& x : inst.ball) {
    if (!inst.pinned.contains(x)) n *= static_cast<std::uint64_t>(inst.rule.palette.size());
  }
  return n;
}

/// Region grown breadth-first from a random centre, with a few random pins.
/// The colouring space stays at or below `max_space`.
inline Instance random_instance(const std::string& rule_name, std::mt19937_64& rng,
                                std::uint64_t max_space = 30000) {
  Instance inst{rule_by_name(rule_name), {}, {}, {}, std::nullopt};
  const Rule& rule = inst.rule;
  const Presentation& p = rule.presentation;
  const auto centres = p.ball(1);
  const Word centre = centres[rng() % centres.size()];
  const int per_word = rule.descendants.tagged ? 2 : 1;
  const auto palette = static_cast<std::uint64_t>(rule.palette.size());

  std::vector<Word> region{centre};
  std::set<Word> seen{centre};
  std::uint64_t space = 1;
  for (int i = 0; i < per_word; ++i) space *= palette;
  const auto steps = p.generating_steps();
  for (std::size_t head = 0; head < region.size(); ++head) {
    std::vector<Word> next;
    for (const Word& g : steps) next.push_back(p.multiply(g, region[head]));
    std::shuffle(next.begin(), next.end(), rng);
    for (const Word& w : next) {
      std::uint64_t grown = space;
      for (int i = 0; i < per_word; ++i) grown *= palette;
      if (grown > max_space * 4 || seen.contains(w)) continue;
      seen.insert(w);
      region.push_back(w);
      space = grown;
    }
  }
  inst.ball = rule.descendants.tagged ? tagged_points(region) : plain_points(region);
  inst.bits = random_bits(std::span<const Point>(inst.ball), rng());
  const std::size_t pins = inst.ball.size() / 4 + rng() % 2;
  for (std::size_t i = 0; i < pins && space_size(inst) > 1; ++i) {
    const Point& x = inst.ball[rng() % inst.ball.size()];
    inst.pinned[x] = static_cast<Colour>(rng() % palette);
  }
  while (space_size(inst) > max_space) {
    const Point& x = inst.ball[rng() % inst.ball.size()];
    inst.pinned[x] = static_cast<Colour>(rng() % palette);
  }
  return inst;
}

}  // namespace paradoxlab::testing
