#pragma once

// Explicit colourings satisfying the built-in rules on finite balls, and the
// six-piece doubling read off a Hausdorff colouring. Every constructor
// verifies its output and throws VerificationFailed on an interior violation.

#include "paradoxlab/rational.hpp"
#include "paradoxlab/rules.hpp"

#include <span>
#include <string>
#include <vector>

namespace paradoxlab {

/// Colours each word of Z2*Z3 from its syllables, right to left: e is A, a
/// leading t^k adds k, a leading s maps A to B and B, C to A.
Colouring hausdorff_cycle_witness(std::span<const Word> ball);

/// Same scheme mod 5 on Z2*Z5 with A1 in place of A; e-bits are ignored.
Colouring example1_cycle_witness(std::span<const Word> ball, const BitField& bits);

struct CycleFractions {
  std::size_t cycles = 0;  // t-cycles whose points and opposite points lie in the ball
  Rational overall;        // A1 share among their opposite points
  Rational min_cycle;
  Rational max_cycle;
};

CycleFractions example1_opposite_fractions(const Colouring& colouring, std::span<const Word> ball);

/// Arrows point away from e; every vertex ends up uncrowded.
Colouring example5_bfs_witness(std::span<const Word> ball, const BitField& bits);

struct OrbitTree {
  Word root;
  int depth = 0;
  std::vector<Word> vertices;  // semigroup words U with |U| <= depth, read as U(root)
};

struct OrbitWitness {
  OrbitTree tree;
  Colouring colouring;
};

/// Rule Q on the N0*Z2 orbit of one point: T-images are A, the rest follow
/// the sigma twin.
OrbitWitness semigroup_orbit_witness(int depth, const BitField& bits);

struct Piece {
  std::string name;
  Word move;
  std::vector<Word> members;  // shortlex order
};

struct PieceDecomposition {
  std::vector<Piece> pieces;
  std::size_t classified = 0;    // vertices placed in a piece
  std::size_t deep_vertices = 0; // interior vertices more than 2 steps from the boundary
  std::size_t exempt = 0;        // unclassified vertices within 2 steps of the boundary
};

/// Pieces A∩sB, A∩sC and their t, t^2 images, with moves t^2.s, t.s, s.t^2,
/// s.t^2, s.t, s.t. Throws NotAWitness for a colouring with violations and
/// CoverageGap when the pieces fail to partition or double-cover.
PieceDecomposition derive_doubling(const Colouring& colouring, std::span<const Word> ball);

}  // namespace paradoxlab
