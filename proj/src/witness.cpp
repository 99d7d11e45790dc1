#include "paradoxlab/witness.hpp"

#include "paradoxlab/error.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace paradoxlab {

namespace {

// Right-to-left fold over the syllables of w: a t^k syllable adds k, an s
// syllable sends colour 0 to 1 and everything else to 0.
Colour syllable_colour(const Presentation& p, const Word& w, int modulus) {
  Colour c = 0;
  const auto& syllables = w.syllables();
  for (auto it = syllables.rbegin(); it != syllables.rend(); ++it) {
    const FactorSpec& g = p.generator(it->generator);
    if (g.kind == FactorKind::Cyclic && g.order == 2) {
      c = c == 0 ? 1 : 0;
    } else if (g.kind == FactorKind::Cyclic && g.order == modulus) {
      c = static_cast<Colour>((c + it->exponent) % modulus);
    } else {
      throw Error(ErrorKind::PreconditionViolated, "word outside " + p.spelling());
    }
  }
  return c;
}

void require_clean(const Rule& rule, std::span<const Point> points, const Colouring& colouring,
                   const BitField& bits) {
  const auto violations = check_satisfaction(rule, points, colouring, bits);
  if (!violations.empty()) {
    throw Error(ErrorKind::VerificationFailed,
                rule.name + " witness violates the rule at " + format_point(rule.presentation, violations.front().vertex));
  }
}

}  // namespace

Colouring hausdorff_cycle_witness(std::span<const Word> ball) {
  const Rule rule = hausdorff_rule();
  Colouring colouring;
  for (const Word& w : ball) colouring.emplace(Point{w}, syllable_colour(rule.presentation, w, 3));
  require_clean(rule, plain_points(ball), colouring, BitField{});
  return colouring;
}

Colouring example1_cycle_witness(std::span<const Word> ball, const BitField& bits) {
  const Rule rule = example1_rule();
  Colouring colouring;
  for (const Word& w : ball) colouring.emplace(Point{w}, syllable_colour(rule.presentation, w, 5));
  require_clean(rule, plain_points(ball), colouring, bits);
  return colouring;
}

CycleFractions example1_opposite_fractions(const Colouring& colouring, std::span<const Word> ball) {
  const Presentation p = Presentation::z2_z5();
  const Word sigma = p.sigma();
  const std::unordered_set<Word, WordHash> members(ball.begin(), ball.end());
  CycleFractions out;
  long long a1_total = 0;
  bool first = true;
  for (const Word& x : ball) {
    std::vector<Word> cycle;
    bool complete = true;
    for (int k = 0; k < 5 && complete; ++k) {
      Word point = p.multiply(p.generator_word("t", k), x);
      Word opposite = p.multiply(sigma, point);
      complete = members.contains(point) && members.contains(opposite);
      cycle.push_back(std::move(point));
    }
    if (!complete) continue;
    if (std::any_of(cycle.begin(), cycle.end(), [&](const Word& w) { return p.shortlex_less(w, x); })) continue;
    int a1 = 0;
    for (const Word& point : cycle) {
      if (colouring.at(Point{p.multiply(sigma, point)}) == 0) ++a1;
    }
    const Rational share(BigInt(a1), BigInt(5));
    if (first || share < out.min_cycle) out.min_cycle = share;
    if (first || share > out.max_cycle) out.max_cycle = share;
    first = false;
    a1_total += a1;
    ++out.cycles;
  }
  if (out.cycles == 0) throw Error(ErrorKind::PreconditionViolated, "ball contains no complete t-cycle");
  out.overall = Rational(BigInt(a1_total), BigInt(5 * static_cast<long long>(out.cycles)));
  return out;
}

Colouring example5_bfs_witness(std::span<const Word> ball, const BitField& bits) {
  const Rule rule = example5_rule();
  Colouring colouring;
  for (const Word& w : ball) {
    auto it = bits.find(w);
    if (it == bits.end()) throw Error(ErrorKind::MissingBit, "no bit for " + rule.presentation.format(w));
    const int direction = it->second;
    // d^-1 w is the longer neighbour only when w already starts with d^-1.
    const bool backward = !w.is_identity() && w.syllables().front().generator == direction &&
                          w.syllables().front().exponent < 0;
    colouring.emplace(Point{w}, example5_colour(!backward, Crowding::U));
  }
  require_clean(rule, plain_points(ball), colouring, bits);
  return colouring;
}

OrbitWitness semigroup_orbit_witness(int depth, const BitField& bits) {
  if (depth < 1) throw Error(ErrorKind::PreconditionViolated, "orbit depth must be at least 1");
  const Rule rule = example4_rule();
  const Presentation& p = rule.presentation;
  OrbitWitness out{OrbitTree{Word{}, depth, p.ball(depth)}, {}};
  for (const Word& w : out.tree.vertices) {
    Colour c = 0;
    const auto& syllables = w.syllables();
    for (auto it = syllables.rbegin(); it != syllables.rend(); ++it) {
      c = p.generator(it->generator).kind == FactorKind::FreeMonoid ? 0 : 1 - c;
    }
    out.colouring.emplace(Point{w}, c);
  }
  require_clean(rule, plain_points(out.tree.vertices), out.colouring, bits);
  return out;
}

// ---------------------------------------------------------------------------

PieceDecomposition derive_doubling(const Colouring& colouring, std::span<const Word> ball) {
  PieceDecomposition out;
  if (ball.empty()) return out;

  const Rule rule = hausdorff_rule();
  const Presentation& p = rule.presentation;
  if (!check_satisfaction(rule, plain_points(ball), colouring, BitField{}).empty()) {
    throw Error(ErrorKind::NotAWitness, "colouring violates the Hausdorff rule");
  }
  const Colour kA = 0;
  const Colour kB = 1;
  const Colour kC = 2;
  const Word sigma = p.sigma();
  const Word tau[3] = {Word{}, p.generator_word("t", 1), p.generator_word("t", 2)};

  auto colour_of = [&](const Word& w) -> std::optional<Colour> {
    auto it = colouring.find(Point{w});
    if (it == colouring.end()) return std::nullopt;
    return it->second;
  };

  struct Family {
    const char* name;
    int power;     // piece = t^power (A ∩ s(twin))
    Colour twin;
    const char* move;
  };
  const Family families[6] = {
      {"A&sB", 0, kB, "t^2.s"},     {"A&sC", 0, kC, "t.s"},
      {"t(A&sB)", 1, kB, "s.t^2"},  {"t(A&sC)", 1, kC, "s.t^2"},
      {"t^2(A&sB)", 2, kB, "s.t"},  {"t^2(A&sC)", 2, kC, "s.t"},
  };
  // Membership of x in piece i: nullopt when a needed vertex is outside the ball.
  auto member = [&](const Word& x, int i) -> std::optional<bool> {
    const Word base = p.multiply(tau[(3 - families[i].power) % 3], x);
    const auto c = colour_of(base);
    const auto twin = colour_of(p.multiply(sigma, base));
    if (!c || !twin) return std::nullopt;
    return *c == kA && *twin == families[i].twin;
  };

  // Steps to the nearest vertex with a s, t or t^2 neighbour outside the ball.
  std::unordered_map<Word, int, WordHash> distance;
  const std::unordered_set<Word, WordHash> in_ball(ball.begin(), ball.end());
  std::deque<Word> queue;
  const Word steps[3] = {sigma, tau[1], tau[2]};
  for (const Word& x : ball) {
    if (std::any_of(std::begin(steps), std::end(steps),
                    [&](const Word& g) { return !in_ball.contains(p.multiply(g, x)); })) {
      distance.emplace(x, 0);
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    const Word x = queue.front();
    queue.pop_front();
    for (const Word& g : steps) {
      const Word y = p.multiply(g, x);
      if (in_ball.contains(y) && !distance.contains(y)) {
        distance.emplace(y, distance.at(x) + 1);
        queue.push_back(y);
      }
    }
  }
  auto depth_of = [&](const Word& x) {
    auto it = distance.find(x);
    return it == distance.end() ? 1 << 30 : it->second;
  };

  for (const Family& f : families) out.pieces.push_back(Piece{f.name, p.parse_word(f.move), {}});
  for (const Word& x : ball) {
    int hits = 0;
    bool unknown = false;
    for (int i = 0; i < 6; ++i) {
      const auto m = member(x, i);
      if (!m) {
        unknown = true;
      } else if (*m) {
        ++hits;
        out.pieces[i].members.push_back(x);
      }
    }
    if (hits > 1) throw Error(ErrorKind::CoverageGap, p.format(x) + " lies in " + std::to_string(hits) + " pieces");
    if (hits == 1) {
      ++out.classified;
    } else if (depth_of(x) >= 2 || !unknown) {
      throw Error(ErrorKind::CoverageGap, p.format(x) + " lies in no piece");
    } else {
      ++out.exempt;
    }
  }

  for (const Word& y : ball) {
    if (depth_of(y) <= 2) continue;
    ++out.deep_vertices;
    int cover = 0;
    for (int i = 0; i < 6; ++i) {
      const Word x = p.multiply(p.invert(out.pieces[i].move), y);
      const auto m = member(x, i);
      if (!m) throw Error(ErrorKind::CoverageGap, "preimage of " + p.format(y) + " leaves the ball");
      if (*m && in_ball.contains(x)) ++cover;
    }
    if (cover != 2) {
      throw Error(ErrorKind::CoverageGap,
                  p.format(y) + " is covered " + std::to_string(cover) + " times by the moved pieces");
    }
  }
  for (Piece& piece : out.pieces) {
    std::sort(piece.members.begin(), piece.members.end(),
              [&p](const Word& a, const Word& b) { return p.shortlex_less(a, b); });
  }
  return out;
}

}  // namespace paradoxlab
