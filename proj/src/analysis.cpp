#include "paradoxlab/analysis.hpp"

#include "paradoxlab/error.hpp"
#include "paradoxlab/measure.hpp"
#include "paradoxlab/rng.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace paradoxlab {

std::string_view to_string(BoundMode mode) {
  return mode == BoundMode::Formula ? "formula" : "brute-force";
}

namespace {

Rational frac(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

constexpr int kCycle = 5;
constexpr int kOppositeColourings = 5 * 5 * 5 * 5 * 5;
constexpr Colour kA1 = 0;

// Minimum number of A1 opposite points over closed propagations of the cycle
// rule for one e-bit pattern; INT_MAX if no closed propagation exists.
int forced_minimum(const Rule& rule, unsigned pattern) {
  int best = std::numeric_limits<int>::max();
  std::uint8_t bits[kCycle];
  for (int j = 0; j < kCycle; ++j) bits[j] = static_cast<std::uint8_t>((pattern >> j) & 1U);
  for (int code = 0; code < kOppositeColourings; ++code) {
    Colour opposite[kCycle];
    int a1_count = 0;
    for (int j = 0, rest = code; j < kCycle; ++j, rest /= 5) {
      opposite[j] = rest % 5;
      if (opposite[j] == kA1) ++a1_count;
    }
    if (a1_count >= best) continue;
    for (Colour seed = 0; seed < 5; ++seed) {
      Colour current = seed;
      bool closed = true;
      for (int step = 1; step <= kCycle; ++step) {
        const int j = step % kCycle;
        const Colour desc[2] = {current, opposite[j]};
        const std::uint8_t bit[1] = {bits[j]};
        const ColourSet allowed = rule.parts[0](RuleInput{Tag::None, bit, desc});
        current = std::countr_zero(allowed);
        if (colour_count(allowed) != 1) closed = false;
      }
      if (closed && current == seed) {
        best = a1_count;
        break;
      }
    }
  }
  return best;
}

Rational forced_table_average(const std::vector<int>& table) {
  long long total = 0;
  for (int v : table) {
    if (v == std::numeric_limits<int>::max()) {
      throw Error(ErrorKind::VerificationFailed, "a cycle bit pattern admits no colouring");
    }
    total += v;
  }
  return frac(total, static_cast<long long>(table.size()) * kCycle);
}

}  // namespace

std::vector<int> theorem1_forced_table_serial() {
  const Rule rule = example1_rule();
  std::vector<int> table(1U << kCycle);
  for (unsigned pattern = 0; pattern < table.size(); ++pattern) table[pattern] = forced_minimum(rule, pattern);
  return table;
}

std::vector<int> theorem1_forced_table() {
  const Rule rule = example1_rule();
  std::vector<int> table(1U << kCycle);
  const long n = static_cast<long>(table.size());
#pragma omp parallel for schedule(dynamic)
  for (long pattern = 0; pattern < n; ++pattern) {
    table[pattern] = forced_minimum(rule, static_cast<unsigned>(pattern));
  }
  return table;
}

Rational theorem1_lower_bound(BoundMode mode, bool corrupt_table) {
  if (mode == BoundMode::Formula) {
    Rational sum(0);
    for (unsigned k = 2; k <= 4; ++k) sum += Rational(k - 1) * Rational(binomial(5, k), BigInt(1));
    return frac(1, 5) * sum * dyadic(5);
  }
  std::vector<int> table = theorem1_forced_table();
  if (corrupt_table) table[0] += 1;
  return forced_table_average(table);
}

Rational theorem1_monochrome_term() {
  const Presentation p = Presentation::z2_z5();
  Cylinder all_zero;
  for (int j = 0; j < kCycle; ++j) all_zero.assignment.emplace(p.generator_word("t", j), 0);
  return cylinder_measure(all_zero);
}

Rational theorem1_upper_bound() {
  const Rational mono = theorem1_monochrome_term();
  return mono + frac(1, 5) * (Rational(1) - mono);
}

BoundReport theorem1_bounds(BoundMode mode, bool corrupt_table) {
  BoundReport report;
  report.method = mode;
  report.lower = theorem1_lower_bound(mode, corrupt_table);
  report.upper = theorem1_upper_bound();
  report.contradiction = report.lower > report.upper;
  if (mode == BoundMode::BruteForce) {
    const Rational formula = theorem1_lower_bound(BoundMode::Formula);
    if (report.lower != formula) {
      throw Error(ErrorKind::VerificationFailed, "brute-force lower bound " + report.lower.str() +
                                                     " disagrees with formula value " + formula.str());
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

// Reduced row echelon form of an augmented system; returns pivot columns.
std::vector<int> row_reduce(std::vector<std::vector<Rational>>& rows, int columns) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < columns && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Rational scale = Rational(1) / rows[r][c];
    for (Rational& x : rows[r]) x *= scale;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Rational factor = rows[i][c];
      for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] -= factor * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (!rows[i].back().is_zero()) throw Error(ErrorKind::PreconditionViolated, "inconsistent measure constraints");
  }
  return pivots;
}

}  // namespace

Rational forced_colour_measure(const Rule& rule, int part, int descendant, Colour colour) {
  const int n = rule.palette.size();
  const std::size_t arity = rule.moves_for(rule.descendants.tagged ? Tag::R : Tag::None).size();
  if (descendant < 0 || static_cast<std::size_t>(descendant) >= arity) {
    throw Error(ErrorKind::PreconditionViolated, "no such descendant position");
  }
  if (colour < 0 || colour >= n) throw Error(ErrorKind::PreconditionViolated, "no such colour");
  std::map<Word, int> bits;
  for (const Word& w : rule.descendants.read_bits) bits.emplace(w, 0);

  std::map<ColourSet, ColourSet> preimage;  // output set -> descendant colours producing it
  for (Colour d = 0; d < n; ++d) {
    std::vector<Colour> desc(arity, 0);
    desc[descendant] = d;
    preimage[evaluate(rule, part, bits, desc)] |= colour_bit(d);
  }
  ColourSet covered = 0;
  for (const auto& [image, source] : preimage) {
    if (image & covered) throw Error(ErrorKind::PreconditionViolated, "rule part images overlap");
    covered |= image;
  }
  if (covered != rule.palette.all()) throw Error(ErrorKind::PreconditionViolated, "rule part images miss a colour");

  std::vector<std::vector<Rational>> rows;
  for (const auto& [image, source] : preimage) {
    std::vector<Rational> row(n + 1, Rational(0));
    for (Colour c = 0; c < n; ++c) {
      if (contains(source, c)) row[c] += 1;
      if (contains(image, c)) row[c] -= 1;
    }
    rows.push_back(std::move(row));
  }
  rows.emplace_back(n + 1, Rational(1));

  const std::vector<int> pivots = row_reduce(rows, n);
  const auto at = std::find(pivots.begin(), pivots.end(), colour);
  if (at == pivots.end()) throw Error(ErrorKind::PreconditionViolated, "measure of colour is not determined");
  const auto& row = rows[static_cast<std::size_t>(at - pivots.begin())];
  for (int c = 0; c < n; ++c) {
    if (c != colour && !row[c].is_zero()) {
      throw Error(ErrorKind::PreconditionViolated, "measure of colour is not determined");
    }
  }
  return row.back();
}

MeasureConstraints hausdorff_measure_constraints() {
  const Rule rule = hausdorff_rule();
  const Colour a = rule.palette.index("A");
  MeasureConstraints out;
  out.sigma_value = forced_colour_measure(rule, 0, 0, a);
  out.tau_value = forced_colour_measure(rule, 1, 1, a);
  out.contradiction = out.sigma_value != out.tau_value;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<ConflictCell> example4_conflict_table() {
  const Rule rule = example4_rule();
  std::vector<ConflictCell> table;
  for (Colour image = 0; image < 2; ++image) {
    for (Colour twin_image = 0; twin_image < 2; ++twin_image) {
      for (int bit = 0; bit < 2; ++bit) {
        for (int twin_bit = 0; twin_bit < 2; ++twin_bit) {
          ConflictCell cell{image, twin_image, static_cast<std::uint8_t>(bit),
                            static_cast<std::uint8_t>(twin_bit), false};
          for (Colour cz = 0; cz < 2 && !cell.colourable; ++cz) {
            for (Colour ctwin = 0; ctwin < 2 && !cell.colourable; ++ctwin) {
              const Colour z_desc[2] = {image, ctwin};
              const Colour twin_desc[2] = {twin_image, cz};
              const bool z_ok = contains(evaluate(rule, 0, {{Word{}, bit}}, z_desc), cz);
              const bool twin_ok = contains(evaluate(rule, 0, {{Word{}, twin_bit}}, twin_desc), ctwin);
              cell.colourable = z_ok && twin_ok;
            }
          }
          table.push_back(cell);
        }
      }
    }
  }
  return table;
}

Example4Bound example4_bound() {
  const Rule rule = example4_rule();
  const Colour b = rule.palette.index("B");
  const Presentation& p = rule.presentation;

  Example4Bound out;
  out.a_cap = frac(5, 6);
  out.twin_bit_one = cylinder_measure(Cylinder{{{p.sigma(), 1}}, Tag::None});
  // An A point whose twin is also A needs T x coloured B and x^e = 0, and the
  // e-bit is independent of the colour of T x: a <= (1 + q)(1 - a).
  const Rational q = Rational(1) - out.twin_bit_one;
  out.a_cap_derived = (Rational(1) + q) / (Rational(2) + q);
  if (out.a_cap < out.a_cap_derived) {
    throw Error(ErrorKind::VerificationFailed, "pinned A cap is below the derived cap");
  }

  // Among pairs with T z coloured B, the smallest uncolourable share over the
  // twin image colour; each bad pair may be counted from both of its points.
  Rational worst(1);
  const auto table = example4_conflict_table();
  for (Colour twin_image = 0; twin_image < 2; ++twin_image) {
    Rational bad(0);
    for (const ConflictCell& cell : table) {
      if (cell.image == b && cell.twin_image == twin_image && !cell.colourable) bad += frac(1, 4);
    }
    worst = std::min(worst, bad);
  }
  out.uncolourable_coefficient = worst / Rational(2);
  out.lower_bound = (Rational(1) - out.a_cap) * out.uncolourable_coefficient;
  return out;
}

Rational example4_lower_bound() { return example4_bound().lower_bound; }

// ---------------------------------------------------------------------------

DegreeStats example5_degree_stats() {
  const Rule rule = example5_rule();
  std::vector<Word> neighbours;
  for (const Move& m : rule.descendants.positions) neighbours.push_back(m.word);

  DegreeStats out;
  for (Rational& r : out.distribution) r = Rational(0);
  Rational first_potential(0);
  Rational cond3(0);
  Rational cond4(0);
  for (const Pattern& pattern : enumerate_patterns(neighbours)) {
    int degree = 0;
    bool first = false;
    for (std::size_t i = 0; i < neighbours.size(); ++i) {
      bool potential = false;
      for (Colour c = 0; c < rule.palette.size(); ++c) {
        potential = potential || arrow_target(neighbours[i], c, pattern.bits[i]).is_identity();
      }
      if (potential) {
        ++degree;
        if (i == 0) first = true;
      }
    }
    out.distribution[degree] += pattern.measure;
    if (first) {
      first_potential += pattern.measure;
      if (degree == 3) cond3 += pattern.measure;
      if (degree == 4) cond4 += pattern.measure;
    }
  }
  out.zero_fraction = out.distribution[0];
  out.cond_deg3 = cond3 / first_potential;
  out.cond_deg4 = cond4 / first_potential;
  return out;
}

BranchingRecursion branching_recursion() {
  const Polynomial p = Polynomial::identity();
  const Polynomial p2 = p * p;
  const Polynomial p3 = p2 * p;
  const DegreeStats stats = example5_degree_stats();
  // At least two of three survive: three pairs, less the triple counted
  // once too often by each of the other two pairs.
  const Rational pairs(binomial(3, 2), BigInt(1));
  const Polynomial two_of_three = pairs * p2 - (pairs - Rational(1)) * p3;

  BranchingRecursion out;
  out.recursion_map = stats.cond_deg3 * p2 + stats.cond_deg4 * two_of_three;
  out.fixed_point_poly = p - out.recursion_map;
  const auto [quotient, remainder] = out.fixed_point_poly.divide_by_root(Rational(0));
  if (!remainder.is_zero()) throw Error(ErrorKind::VerificationFailed, "0 is not a fixed point");
  out.nontrivial_factor = quotient.monic();
  out.discriminant = out.nontrivial_factor.discriminant();
  out.roots_in_unit_interval = {Rational(0)};
  if (out.discriminant >= Rational(0)) {
    for (const Rational& candidate : {Rational(0), Rational(1)}) {
      if (out.nontrivial_factor(candidate).is_zero()) out.roots_in_unit_interval.push_back(candidate);
    }
  }
  std::sort(out.roots_in_unit_interval.begin(), out.roots_in_unit_interval.end());
  out.roots_in_unit_interval.erase(std::unique(out.roots_in_unit_interval.begin(), out.roots_in_unit_interval.end()),
                                   out.roots_in_unit_interval.end());
  return out;
}

Rational recursion_map(const Rational& p) { return (Rational(3) * p * p - p * p * p) / Rational(4); }

Rational recursion_iterate(int depth) {
  if (depth < 0) throw Error(ErrorKind::PreconditionViolated, "negative depth");
  if (depth > kMaxExactDepth) {
    throw Error(ErrorKind::SizeLimit, "exact iterates are limited to depth " + std::to_string(kMaxExactDepth));
  }
  Rational p(1);
  for (int i = 0; i < depth; ++i) p = recursion_map(p);
  return p;
}

double recursion_iterate_approx(int depth) {
  if (depth < 0) throw Error(ErrorKind::PreconditionViolated, "negative depth");
  double p = 1.0;
  for (int i = 0; i < depth; ++i) p = (3.0 * p * p - p * p * p) / 4.0;
  return p;
}

namespace {

bool survives(StreamRng& rng, int depth) {
  if (depth == 0) return true;
  const std::uint64_t r = rng.bits(3);
  if (r < 3) return survives(rng, depth - 1) && survives(rng, depth - 1);
  if (r == 3) {
    int alive = 0;
    for (int child = 0; child < 3; ++child) {
      if (survives(rng, depth - 1)) ++alive;
      if (alive == 2) return true;
      if (alive + (2 - child) < 2) return false;
    }
    return false;
  }
  return false;
}

void check_simulation_args(std::uint64_t trials, int depth) {
  if (trials < 1) throw Error(ErrorKind::PreconditionViolated, "trials must be at least 1");
  if (depth < 1) throw Error(ErrorKind::PreconditionViolated, "depth must be at least 1");
}

}  // namespace

double branching_simulation_serial(std::uint64_t seed, std::uint64_t trials, int depth) {
  check_simulation_args(trials, depth);
  std::uint64_t alive = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    StreamRng rng(seed, i);
    if (survives(rng, depth)) ++alive;
  }
  return static_cast<double>(alive) / static_cast<double>(trials);
}

double branching_simulation(std::uint64_t seed, std::uint64_t trials, int depth) {
  check_simulation_args(trials, depth);
  long long alive = 0;
  const auto n = static_cast<long long>(trials);
#pragma omp parallel for reduction(+ : alive) schedule(static)
  for (long long i = 0; i < n; ++i) {
    StreamRng rng(seed, static_cast<std::uint64_t>(i));
    if (survives(rng, depth)) ++alive;
  }
  return static_cast<double>(alive) / static_cast<double>(trials);
}

// ---------------------------------------------------------------------------

namespace {

Rational mass(const WeightedSetSystem& system, std::uint32_t members) {
  Rational total(0);
  for (std::size_t i = 0; i < system.weights.size(); ++i) {
    if ((members >> i) & 1U) total += system.weights[i];
  }
  return total;
}

}  // namespace

InclusionExclusionResult inclusion_exclusion_check(const WeightedSetSystem& system) {
  const std::size_t n = system.weights.size();
  if (n == 0 || n > 32) throw Error(ErrorKind::PreconditionViolated, "universe size must lie in 1..32");
  if (system.sets.size() > 20) throw Error(ErrorKind::PreconditionViolated, "at most 20 sets");
  const std::uint32_t universe = n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
  for (const Rational& w : system.weights) {
    if (w < Rational(0)) throw Error(ErrorKind::PreconditionViolated, "negative point weight");
  }
  if (mass(system, universe) != Rational(1)) {
    throw Error(ErrorKind::PreconditionViolated, "total measure is not 1");
  }
  Rational set_total(0);
  std::uint32_t all = 0;
  for (std::uint32_t s : system.sets) {
    if (s & ~universe) throw Error(ErrorKind::PreconditionViolated, "set leaves the universe");
    set_total += mass(system, s);
    all |= s;
  }
  if (set_total != Rational(1)) throw Error(ErrorKind::PreconditionViolated, "set measures do not sum to 1");

  InclusionExclusionResult out;
  out.lhs = Rational(1) - mass(system, all);
  out.rhs = Rational(0);
  const std::size_t k = system.sets.size();
  for (std::uint32_t choice = 0; choice < (std::uint32_t{1} << k); ++choice) {
    const int size = std::popcount(choice);
    if (size < 2) continue;
    std::uint32_t meet = universe;
    for (std::size_t i = 0; i < k; ++i) {
      if ((choice >> i) & 1U) meet &= system.sets[i];
    }
    const Rational m = mass(system, meet);
    if (size % 2 == 0) {
      out.rhs += m;
    } else {
      out.rhs -= m;
    }
  }
  out.identity_holds = out.lhs == out.rhs;
  return out;
}

WeightedSetSystem random_set_system(std::uint64_t seed, std::uint64_t unit) {
  StreamRng rng(seed, unit);
  const std::size_t n = 2 + rng.below(19);
  const std::size_t k = 1 + rng.below(6);
  const std::size_t reserved = n - 1;  // kept out of every set
  WeightedSetSystem system;
  for (std::size_t i = 0; i < n; ++i) system.weights.emplace_back(static_cast<long long>(1 + rng.below(100)));
  const std::uint32_t coverable = (std::uint32_t{1} << reserved) - 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t s = static_cast<std::uint32_t>(rng()) & coverable;
    if (s == 0) s = 1;
    system.sets.push_back(s);
  }

  std::vector<int> multiplicity(n, 0);
  for (std::uint32_t s : system.sets) {
    for (std::size_t i = 0; i < n; ++i) multiplicity[i] += static_cast<int>((s >> i) & 1U);
  }
  Rational set_total(0);
  for (std::uint32_t s : system.sets) set_total += mass(system, s);
  Rational total(0);
  for (const Rational& w : system.weights) total += w;

  const Rational excess = set_total - total;
  if (excess > Rational(0)) {
    system.weights[reserved] += excess;
  } else if (excess < Rational(0)) {
    const auto shared = std::max_element(multiplicity.begin(), multiplicity.end());
    if (*shared >= 2) {
      system.weights[static_cast<std::size_t>(shared - multiplicity.begin())] -= excess / Rational(*shared - 1);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (multiplicity[i] == 0) system.weights[i] = Rational(0);
      }
    }
  }
  Rational scale(0);
  for (std::uint32_t s : system.sets) scale += mass(system, s);
  for (Rational& w : system.weights) w /= scale;
  return system;
}

InclusionExclusionBatch inclusion_exclusion_batch_serial(std::uint64_t seed, std::uint64_t count) {
  InclusionExclusionBatch out{count, 0};
  for (std::uint64_t i = 0; i < count; ++i) {
    if (inclusion_exclusion_check(random_set_system(seed, i)).identity_holds) ++out.holds;
  }
  return out;
}

InclusionExclusionBatch inclusion_exclusion_batch(std::uint64_t seed, std::uint64_t count) {
  long long holds = 0;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for reduction(+ : holds) schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    if (inclusion_exclusion_check(random_set_system(seed, static_cast<std::uint64_t>(i))).identity_holds) ++holds;
  }
  return InclusionExclusionBatch{count, static_cast<std::uint64_t>(holds)};
}

}  // namespace paradoxlab
