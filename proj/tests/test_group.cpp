#include "paradoxlab/error.hpp"
#include "paradoxlab/group.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <random>
#include <set>

using namespace paradoxlab;

namespace {

Word random_word(const Presentation& p, std::mt19937_64& rng, int steps) {
  const std::vector<Word> gens = p.generating_steps();
  Word w;
  for (int i = 0; i < steps; ++i) w = p.multiply(w, gens[rng() % gens.size()]);
  return w;
}

// Cayley-graph distances from e by breadth-first search over raw steps.
std::map<Word, int> bfs_distances(const Presentation& p, int radius) {
  std::map<Word, int> dist{{Word{}, 0}};
  std::deque<Word> queue{Word{}};
  while (!queue.empty()) {
    const Word w = queue.front();
    queue.pop_front();
    if (dist[w] == radius) continue;
    for (const Word& g : p.generating_steps()) {
      const Word next = p.multiply(w, g);
      if (dist.emplace(next, dist[w] + 1).second) queue.push_back(next);
    }
  }
  return dist;
}

}  // namespace

TEST(Reduce, OrderTwoCancellation) {
  const Presentation p = Presentation::z2_z3();
  EXPECT_TRUE(p.reduce({{0, 1}, {0, 1}}).is_identity());
}

TEST(Reduce, CyclicExponentsWrap) {
  const Presentation p = Presentation::z2_z3();
  EXPECT_EQ(p.reduce({{1, 2}, {1, 2}}), p.generator_word("t"));
}

TEST(Reduce, FreeGeneratorUnchanged) {
  const Presentation p = Presentation::z2_z3();
  const Word w = p.reduce({{1, 1}, {0, 1}, {1, 2}, {0, 1}});
  EXPECT_EQ(w.syllable_count(), 4U);
  EXPECT_EQ(p.format(w), "t.s.t^2.s");
}

TEST(Reduce, CascadingCancellation) {
  const Presentation p = Presentation::z2_z3();
  EXPECT_TRUE(p.reduce({{1, 1}, {0, 1}, {0, 1}, {1, 2}}).is_identity());
}

TEST(Reduce, NegativeMonoidExponentRejected) {
  const Presentation p = Presentation::n0_z2();
  try {
    p.reduce({{0, -1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeMonoidExponent);
  }
}

TEST(Multiply, Examples) {
  const Presentation p = Presentation::z2_z3();
  EXPECT_TRUE(p.multiply(p.generator_word("t"), p.generator_word("t", 2)).is_identity());
  const Word w = free_embedding_first(p);
  EXPECT_EQ(p.multiply(Word{}, w), w);
  const Word product = p.multiply(w, free_embedding_second(p));
  // Hand merge: the junction s . t^2 does not cancel.
  EXPECT_EQ(product.syllable_count(), 8U);
  EXPECT_EQ(p.format(product), "t.s.t^2.s.t^2.s.t.s");
}

TEST(Invert, Examples) {
  const Presentation z23 = Presentation::z2_z3();
  EXPECT_EQ(z23.invert(z23.sigma()), z23.sigma());
  const Presentation z25 = Presentation::z2_z5();
  EXPECT_EQ(z25.invert(z25.generator_word("t")), z25.generator_word("t", 4));
  const Presentation n0 = Presentation::n0_z2();
  try {
    n0.invert(n0.generator_word("T"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonInvertible);
  }
  EXPECT_TRUE(n0.is_invertible(n0.sigma()));
}

TEST(WordLength, Examples) {
  const Presentation z23 = Presentation::z2_z3();
  EXPECT_EQ(z23.word_length(Word{}), 0);
  EXPECT_EQ(z23.word_length(z23.generator_word("t", 2)), 1);
  const Presentation f2 = Presentation::f2();
  EXPECT_EQ(f2.word_length(f2.parse_word("a.b^-1.a")), 3);
}

TEST(WordLength, MatchesBreadthFirstDistance) {
  for (const Presentation& p : {Presentation::z2_z3(), Presentation::z2_z5(), Presentation::f2()}) {
    for (const auto& [w, d] : bfs_distances(p, 5)) EXPECT_EQ(p.word_length(w), d) << p.format(w);
  }
}

TEST(Ball, Examples) {
  const Presentation f2 = Presentation::f2();
  EXPECT_EQ(f2.ball(0).size(), 1U);
  const auto b1 = f2.ball(1);
  EXPECT_EQ(b1.size(), 5U);
  EXPECT_EQ(std::set<Word>(b1.begin(), b1.end()),
            (std::set<Word>{Word{}, f2.parse_word("a"), f2.parse_word("a^-1"), f2.parse_word("b"),
                            f2.parse_word("b^-1")}));
  EXPECT_EQ(f2.ball(2).size(), 17U);
  // BFS with {s, t, t^-1}: 1 + 3 + 4.
  EXPECT_EQ(Presentation::z2_z3().ball(2).size(), 8U);
}

TEST(Ball, MatchesBreadthFirstSearch) {
  for (const Presentation& p : {Presentation::z2_z3(), Presentation::z2_z5(), Presentation::f2(),
                                Presentation::n0_z2()}) {
    const auto ball = p.ball(4);
    const auto dist = bfs_distances(p, 4);
    EXPECT_EQ(ball.size(), dist.size()) << p.spelling();
    for (const Word& w : ball) EXPECT_TRUE(dist.contains(w));
  }
}

TEST(Ball, ShortlexOrderAndCap) {
  const Presentation p = Presentation::z2_z3();
  const auto ball = p.ball(5);
  for (std::size_t i = 1; i < ball.size(); ++i) EXPECT_TRUE(p.shortlex_less(ball[i - 1], ball[i]));
  try {
    p.ball(6, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimit);
  }
}

TEST(Parse, RoundTripAndSpelling) {
  EXPECT_EQ(Presentation::parse("Z2*Z3").spelling(), "Z2*Z3");
  EXPECT_EQ(Presentation::parse("F2").free_rank(), 2);
  const Presentation p = Presentation::n0_z2();
  for (const Word& w : p.ball(4)) EXPECT_EQ(p.parse_word(p.format(w)), w);
  EXPECT_THROW(Presentation::parse("Q7"), Error);
  EXPECT_THROW(p.parse_word("x^2"), Error);
}

TEST(GroupLaws, Associativity) {
  std::mt19937_64 rng(11);
  for (const Presentation& p : {Presentation::z2_z3(), Presentation::z2_z5(), Presentation::f2(),
                                Presentation::n0_z2()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Word a = random_word(p, rng, 6), b = random_word(p, rng, 6), c = random_word(p, rng, 6);
      EXPECT_EQ(p.multiply(p.multiply(a, b), c), p.multiply(a, p.multiply(b, c)));
    }
  }
}

TEST(GroupLaws, InverseAndSubadditivity) {
  std::mt19937_64 rng(12);
  for (const Presentation& p : {Presentation::z2_z3(), Presentation::z2_z5(), Presentation::f2()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Word a = random_word(p, rng, 8), b = random_word(p, rng, 8);
      EXPECT_TRUE(p.multiply(a, p.invert(a)).is_identity());
      EXPECT_TRUE(p.multiply(p.invert(a), a).is_identity());
      EXPECT_EQ(p.word_length(p.invert(a)), p.word_length(a));
      EXPECT_LE(p.word_length(p.multiply(a, b)), p.word_length(a) + p.word_length(b));
    }
  }
}

TEST(GroupLaws, BallPrefixClosed) {
  const Presentation p = Presentation::z2_z3();
  const auto ball = p.ball(5);
  const std::set<Word> members(ball.begin(), ball.end());
  for (const Word& w : ball) {
    std::vector<Syllable> syl = w.syllables();
    while (!syl.empty()) {
      syl.pop_back();
      EXPECT_TRUE(members.contains(p.reduce(syl)));
    }
  }
}

TEST(GroupLaws, FreeEmbeddingWordsAreFree) {
  // Reduced products of the two embedding words and their inverses never collapse to e.
  const Presentation p = Presentation::z2_z3();
  const std::vector<Word> gens{free_embedding_first(p), p.invert(free_embedding_first(p)),
                               free_embedding_second(p), p.invert(free_embedding_second(p))};
  std::vector<std::pair<Word, int>> frontier{{Word{}, -1}};
  for (int depth = 1; depth <= 4; ++depth) {
    std::vector<std::pair<Word, int>> next;
    for (const auto& [w, last] : frontier) {
      for (int g = 0; g < 4; ++g) {
        if (last >= 0 && (g ^ 1) == last) continue;
        const Word product = p.multiply(w, gens[g]);
        EXPECT_FALSE(product.is_identity());
        next.emplace_back(product, g);
      }
    }
    frontier = std::move(next);
  }
}

TEST(GroupLaws, ReduceIdempotent) {
  std::mt19937_64 rng(13);
  const Presentation p = Presentation::z2_z5();
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Syllable> raw;
    const int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) raw.push_back({static_cast<int>(rng() % 2), static_cast<long>(rng() % 9) - 4});
    const Word once = p.reduce(raw);
    EXPECT_EQ(p.reduce(once.syllables()), once);
  }
}

TEST(GroupLaws, TreeLikeBalls) {
  for (const Presentation& p : {Presentation::f2(), Presentation::z2_z3()}) {
    for (const Word& w : p.ball(5)) {
      if (w.is_identity()) continue;
      const long len = p.word_length(w);
      int closer = 0;
      for (const Word& g : p.generating_steps()) closer += p.word_length(p.multiply(g, w)) == len - 1 ? 1 : 0;
      EXPECT_EQ(closer, 1) << p.format(w);
    }
  }
}
