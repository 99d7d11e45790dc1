#include "paradoxlab/rules.hpp"

#include "paradoxlab/error.hpp"
#include "paradoxlab/rng.hpp"

#include <algorithm>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paradoxlab {

Palette::Palette(std::vector<std::string> colours) : colours_(std::move(colours)) {
  if (colours_.size() < 2 || colours_.size() > 32) {
    throw Error(ErrorKind::PreconditionViolated, "palette size must lie in 2..32");
  }
  for (std::size_t i = 0; i < colours_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (colours_[i] == colours_[j]) throw Error(ErrorKind::PreconditionViolated, "duplicate colour " + colours_[i]);
    }
  }
}

Colour Palette::index(std::string_view name) const {
  for (std::size_t i = 0; i < colours_.size(); ++i) {
    if (colours_[i] == name) return static_cast<Colour>(i);
  }
  throw Error(ErrorKind::Parse, "unknown colour '" + std::string(name) + "'");
}

Colour Palette::first(ColourSet set) const {
  if (set == 0) throw Error(ErrorKind::PreconditionViolated, "empty colour set");
  return std::countr_zero(set);
}

const std::vector<Move>& Rule::moves_for(Tag tag) const {
  if (descendants.tagged) {
    if (tag == Tag::None) throw Error(ErrorKind::PreconditionViolated, name + " is defined on tagged points only");
    return tag == Tag::S ? descendants.s_positions : descendants.positions;
  }
  return descendants.positions;
}

Point Rule::apply(const Move& move, const Point& x) const {
  return Point{presentation.multiply(move.word, x.word), move.swap_tag ? swap_tag(x.tag) : x.tag};
}

std::vector<Point> Rule::descendants_of(const Point& x) const {
  std::vector<Point> out;
  for (const Move& m : moves_for(x.tag)) out.push_back(apply(m, x));
  return out;
}

Word Rule::bit_coordinate(const Word& coordinate, const Point& x) const {
  return presentation.multiply(coordinate, x.word);
}

bool Rule::shortlex_less(const Point& a, const Point& b) const {
  if (a.word != b.word) return presentation.shortlex_less(a.word, b.word);
  return a.tag < b.tag;
}

ColourSet evaluate(const Rule& rule, int part, const std::map<Word, int>& bits,
                   std::span<const Colour> descendant_colours, Tag tag) {
  if (part < 0 || part >= rule.rank()) throw Error(ErrorKind::PreconditionViolated, "no such rule part");
  if (descendant_colours.size() != rule.moves_for(tag).size()) {
    throw Error(ErrorKind::PreconditionViolated, "descendant colour count does not match the rule");
  }
  std::vector<std::uint8_t> local;
  for (const Word& coordinate : rule.descendants.read_bits) {
    auto it = bits.find(coordinate);
    if (it == bits.end()) {
      throw Error(ErrorKind::MissingBit, "rule " + rule.name + " needs coordinate " +
                                             rule.presentation.format(coordinate));
    }
    local.push_back(static_cast<std::uint8_t>(it->second & 1));
  }
  return rule.parts[part](RuleInput{tag, local, descendant_colours});
}

// ---------------------------------------------------------------------------
// Built-in rules

namespace {

constexpr Colour kA = 0;
constexpr Colour kB = 1;
constexpr Colour kC = 2;

Palette abc() { return Palette({"A", "B", "C"}); }

}  // namespace

ColourSet hausdorff_sigma(Colour sigma_colour) {
  return sigma_colour == kA ? (colour_bit(kB) | colour_bit(kC)) : colour_bit(kA);
}

ColourSet hausdorff_tau(Colour tau_inverse_colour) { return colour_bit((tau_inverse_colour + 1) % 3); }

Rule hausdorff_rule() {
  Presentation p = Presentation::z2_z3();
  DescendantSpec d;
  d.positions = {Move{p.sigma()}, Move{p.generator_word("t", -1)}};
  return Rule{
      "hausdorff",
      p,
      abc(),
      d,
      {[](const RuleInput& in) { return hausdorff_sigma(in.descendants[0]); },
       [](const RuleInput& in) { return hausdorff_tau(in.descendants[1]); }},
      true,
  };
}

Rule example1_rule() {
  Presentation p = Presentation::z2_z5();
  DescendantSpec d;
  d.positions = {Move{p.generator_word("t", -1)}, Move{p.sigma()}};
  d.read_bits = {Word{}};
  auto part = [](const RuleInput& in) {
    const Colour previous = in.descendants[0];
    const bool advance = in.bits[0] == 1 || previous == 4 || in.descendants[1] == 0;
    return colour_bit(advance ? (previous + 1) % 5 : previous);
  };
  return Rule{"ex1", p, Palette({"A1", "A2", "A3", "A4", "A5"}), d, {part}, false};
}

Rule example2_rule() {
  Presentation p = Presentation::z2_z3();
  DescendantSpec d;
  d.tagged = true;
  d.positions = {Move{Word{}, true}, Move{p.sigma()}, Move{p.generator_word("t", -1)}};
  d.s_positions = {Move{Word{}, true}};
  auto part = [](const RuleInput& in) -> ColourSet {
    const Colour twin = in.descendants[0];
    if (in.tag == Tag::S) return colour_bit(twin);
    const ColourSet consistent = hausdorff_sigma(in.descendants[1]) & hausdorff_tau(in.descendants[2]);
    if (contains(consistent, twin)) return colour_bit(twin);
    return ColourSet{0b111} & ~colour_bit(twin);
  };
  return Rule{"ex2", p, abc(), d, {part}, true};
}

Rule example3_rule() {
  Presentation p = Presentation::z2_z3();
  DescendantSpec d;
  d.positions = {Move{p.sigma()}, Move{p.generator_word("t", -1)}};
  std::vector<std::string> names;
  for (const char* first : {"A", "B", "C"}) {
    for (const char* second : {"A", "B", "C"}) names.push_back(std::string(first) + second);
  }
  auto part = [](const RuleInput& in) {
    const Colour sigma_first = pair_first(in.descendants[0]);
    const Colour sigma_second = pair_second(in.descendants[0]);
    const Colour tau_first = pair_first(in.descendants[1]);
    const ColourSet consistent = hausdorff_sigma(sigma_first) & hausdorff_tau(tau_first);
    const ColourSet firsts = contains(consistent, sigma_second) ? colour_bit(sigma_second)
                                                                : (ColourSet{0b111} & ~colour_bit(sigma_second));
    ColourSet out = 0;
    for (Colour f = 0; f < 3; ++f) {
      if (contains(firsts, f)) out |= colour_bit(pair_colour(f, sigma_first));
    }
    return out;
  };
  return Rule{"ex3", p, Palette(names), d, {part}, true};
}

Rule example4_rule() {
  Presentation p = Presentation::n0_z2();
  DescendantSpec d;
  d.positions = {Move{p.generator_word("T")}, Move{p.sigma()}};
  d.read_bits = {Word{}};
  auto part = [](const RuleInput& in) {
    const Colour image = in.descendants[0];
    const Colour twin = in.descendants[1];
    const bool same = image == 1 && in.bits[0] == 0;
    return colour_bit(same ? twin : 1 - twin);
  };
  return Rule{"ex4", p, Palette({"A", "B"}), d, {part}, false};
}

Rule example5_rule() {
  Presentation p = Presentation::f2();
  DescendantSpec d;
  d.positions = {Move{p.generator_word("a", 1)}, Move{p.generator_word("a", -1)},
                 Move{p.generator_word("b", 1)}, Move{p.generator_word("b", -1)}};
  d.read_bits = {Word{}};
  auto part = [](const RuleInput& in) -> ColourSet {
    const int dir = in.bits[0];
    const bool forward_crowded = is_crowded(in.descendants[2 * dir]);
    const bool backward_crowded = is_crowded(in.descendants[2 * dir + 1]);
    constexpr ColourSet positive = 0b0011;
    constexpr ColourSet negative = 0b1100;
    if (!forward_crowded && backward_crowded) return positive;
    if (forward_crowded && !backward_crowded) return negative;
    return positive | negative;
  };
  Rule rule{"ex5", p, Palette({"P^u", "P^c", "N^u", "N^c"}), d, {part}, false};
  rule.arrow_crowdedness = true;
  return rule;
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names{"hausdorff", "ex1", "ex2", "ex3", "ex4", "ex5"};
  return names;
}

Rule rule_by_name(std::string_view name) {
  if (name == "hausdorff") return hausdorff_rule();
  if (name == "ex1") return example1_rule();
  if (name == "ex2") return example2_rule();
  if (name == "ex3") return example3_rule();
  if (name == "ex4") return example4_rule();
  if (name == "ex5") return example5_rule();
  throw Error(ErrorKind::Parse, "unknown rule '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Example 5 arrows

namespace {

const Presentation& free_group() {
  static const Presentation f2 = Presentation::f2();
  return f2;
}

Colour colour_at(const Colouring& colouring, const Point& x) {
  auto it = colouring.find(x);
  if (it == colouring.end()) {
    throw Error(ErrorKind::PreconditionViolated, "colouring is not total on the ball");
  }
  return it->second;
}

std::uint8_t bit_at(const BitField& bits, const Word& coordinate, const Presentation& p) {
  auto it = bits.find(coordinate);
  if (it == bits.end()) throw Error(ErrorKind::MissingBit, "no bit for coordinate " + p.format(coordinate));
  return it->second;
}

}  // namespace

Word arrow_target(const Word& w, Colour colour, std::uint8_t bit) {
  const Presentation& f2 = free_group();
  return f2.multiply(f2.generator_word(bit == 0 ? 0 : 1, is_positive(colour) ? 1 : -1), w);
}

std::map<Word, Arrow> arrows(const Colouring& colouring, std::span<const Word> ball, const BitField& bits) {
  const std::unordered_set<Word, WordHash> members(ball.begin(), ball.end());
  std::map<Word, Arrow> out;
  for (const Word& w : ball) {
    Word target = arrow_target(w, colour_at(colouring, Point{w}), bit_at(bits, w, free_group()));
    const bool inside = members.contains(target);
    out.emplace(w, Arrow{std::move(target), inside});
  }
  return out;
}

std::map<Word, Crowding> crowdedness(const std::map<Word, Arrow>& arrow_map, std::span<const Word> ball) {
  std::map<Word, int> in_degree;
  for (const Word& w : ball) in_degree[w] = 0;
  for (const auto& [source, arrow] : arrow_map) {
    if (!arrow.inside) continue;
    if (auto it = in_degree.find(arrow.target); it != in_degree.end()) ++it->second;
  }
  std::map<Word, Crowding> out;
  for (const auto& [w, degree] : in_degree) out.emplace(w, degree >= 2 ? Crowding::C : Crowding::U);
  return out;
}

// ---------------------------------------------------------------------------
// Satisfaction

namespace {

struct CheckContext {
  const Rule& rule;
  std::span<const Point> ball;
  std::unordered_map<Point, int, PointHash> index;
  std::vector<Colour> colours;
  std::vector<std::int8_t> crowding;  // -1 unknown, else Crowding as int
  const BitField& bits;
};

CheckContext make_context(const Rule& rule, std::span<const Point> ball, const Colouring& colouring,
                          const BitField& bits) {
  CheckContext ctx{rule, ball, {}, {}, {}, bits};
  ctx.index.reserve(ball.size());
  ctx.colours.reserve(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    ctx.index.emplace(ball[i], static_cast<int>(i));
    ctx.colours.push_back(colour_at(colouring, ball[i]));
  }
  if (rule.arrow_crowdedness) {
    std::vector<Word> words;
    for (const Point& x : ball) words.push_back(x.word);
    const auto realised = crowdedness(arrows(colouring, words, bits), words);
    ctx.crowding.reserve(ball.size());
    for (const Point& x : ball) ctx.crowding.push_back(static_cast<std::int8_t>(realised.at(x.word)));
  }
  return ctx;
}

void check_vertex(const CheckContext& ctx, std::size_t i, std::vector<Violation>& out) {
  const Rule& rule = ctx.rule;
  const Point& x = ctx.ball[i];
  const std::vector<Move>& moves = rule.moves_for(x.tag);
  std::vector<Colour> desc;
  desc.reserve(moves.size());
  for (const Move& m : moves) {
    auto it = ctx.index.find(rule.apply(m, x));
    if (it == ctx.index.end()) return;  // boundary vertex
    desc.push_back(ctx.colours[it->second]);
  }
  std::vector<std::uint8_t> local;
  for (const Word& coordinate : rule.descendants.read_bits) {
    local.push_back(bit_at(ctx.bits, rule.bit_coordinate(coordinate, x), rule.presentation));
  }
  const Colour observed = ctx.colours[i];
  const RuleInput input{x.tag, local, desc};
  for (int part = 0; part < rule.rank(); ++part) {
    const ColourSet allowed = rule.parts[part](input);
    if (!contains(allowed, observed)) out.push_back(Violation{x, part, observed, allowed});
  }
  if (rule.arrow_crowdedness) {
    const auto realised = static_cast<Crowding>(ctx.crowding[i]);
    if ((realised == Crowding::C) != is_crowded(observed)) {
      const ColourSet allowed = colour_bit(example5_colour(is_positive(observed), realised));
      out.push_back(Violation{x, rule.rank(), observed, allowed});
    }
  }
}

void normalise(const Rule& rule, std::vector<Violation>& v) {
  std::sort(v.begin(), v.end(), [&rule](const Violation& a, const Violation& b) {
    if (a.vertex != b.vertex) return rule.shortlex_less(a.vertex, b.vertex);
    return a.part < b.part;
  });
}

}  // namespace

std::vector<Violation> check_satisfaction_serial(const Rule& rule, std::span<const Point> ball,
                                                 const Colouring& colouring, const BitField& bits) {
  const CheckContext ctx = make_context(rule, ball, colouring, bits);
  std::vector<Violation> out;
  for (std::size_t i = 0; i < ball.size(); ++i) check_vertex(ctx, i, out);
  normalise(rule, out);
  return out;
}

std::vector<Violation> check_satisfaction(const Rule& rule, std::span<const Point> ball,
                                          const Colouring& colouring, const BitField& bits) {
  const CheckContext ctx = make_context(rule, ball, colouring, bits);
  const auto n = static_cast<long>(ball.size());
  std::vector<Violation> out;
  bool missing_bit = false;
#pragma omp parallel
  {
    std::vector<Violation> local;
#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i) {
      try {
        check_vertex(ctx, static_cast<std::size_t>(i), local);
      } catch (const Error&) {
#pragma omp atomic write
        missing_bit = true;
      }
    }
#pragma omp critical
    out.insert(out.end(), local.begin(), local.end());
  }
  if (missing_bit) return check_satisfaction_serial(rule, ball, colouring, bits);  // rethrows
  normalise(rule, out);
  return out;
}

std::vector<Point> interior(const Rule& rule, std::span<const Point> ball) {
  const std::unordered_set<Point, PointHash> members(ball.begin(), ball.end());
  std::vector<Point> out;
  for (const Point& x : ball) {
    const auto desc = rule.descendants_of(x);
    if (std::all_of(desc.begin(), desc.end(), [&](const Point& d) { return members.contains(d); })) {
      out.push_back(x);
    }
  }
  return out;
}

std::vector<Point> plain_points(std::span<const Word> words) {
  std::vector<Point> out;
  out.reserve(words.size());
  for (const Word& w : words) out.push_back(Point{w, Tag::None});
  return out;
}

std::vector<Point> tagged_points(std::span<const Word> words) {
  std::vector<Point> out;
  out.reserve(2 * words.size());
  for (const Word& w : words) {
    out.push_back(Point{w, Tag::R});
    out.push_back(Point{w, Tag::S});
  }
  return out;
}

std::vector<Point> rule_ball(const Rule& rule, int radius) {
  const std::vector<Word> words = rule.presentation.ball(radius);
  return rule.descendants.tagged ? tagged_points(words) : plain_points(words);
}

BitField random_bits(std::span<const Word> words, std::uint64_t seed) {
  BitField bits;
  bits.reserve(words.size());
  for (const Word& w : words) {
    bits.emplace(w, static_cast<std::uint8_t>(splitmix64(splitmix64(seed) ^ stable_hash(w)) >> 63));
  }
  return bits;
}

BitField random_bits(std::span<const Point> points, std::uint64_t seed) {
  std::vector<Word> words;
  words.reserve(points.size());
  for (const Point& x : points) words.push_back(x.word);
  return random_bits(words, seed);
}

std::string format_point(const Presentation& p, const Point& x) {
  switch (x.tag) {
    case Tag::R: return "R:" + p.format(x.word);
    case Tag::S: return "S:" + p.format(x.word);
    case Tag::None: break;
  }
  return p.format(x.word);
}

Point parse_point(const Presentation& p, std::string_view text) {
  if (text.size() >= 2 && text[1] == ':' && (text[0] == 'R' || text[0] == 'S')) {
    return Point{p.parse_word(text.substr(2)), text[0] == 'R' ? Tag::R : Tag::S};
  }
  return Point{p.parse_word(text), Tag::None};
}

}  // namespace paradoxlab
