#include "paradoxlab/group.hpp"

#include "paradoxlab/error.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <unordered_set>

namespace paradoxlab {

FactorSpec FactorSpec::cyclic(std::string name, int order) {
  return FactorSpec{std::move(name), FactorKind::Cyclic, order};
}

FactorSpec FactorSpec::free_monoid(std::string name) {
  return FactorSpec{std::move(name), FactorKind::FreeMonoid, 0};
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  return static_cast<std::size_t>(stable_hash(w));
}

std::uint64_t stable_hash(const Word& w) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  };
  for (const Syllable& s : w.syllables()) {
    mix(static_cast<std::uint64_t>(s.generator));
    mix(static_cast<std::uint64_t>(s.exponent));
  }
  return h;
}

namespace {

std::string factor_token(const FactorSpec& f) {
  if (f.kind == FactorKind::FreeMonoid) return "N0";
  return "Z" + std::to_string(f.order);
}

}  // namespace

Presentation::Presentation(std::vector<FactorSpec> factors, int free_rank)
    : factors_(std::move(factors)), free_rank_(free_rank) {
  if (free_rank_ < 0) throw Error(ErrorKind::PreconditionViolated, "negative free rank");
  if (factors_.empty() && free_rank_ == 0) {
    throw Error(ErrorKind::PreconditionViolated, "presentation needs at least one generator");
  }
  generators_ = factors_;
  for (int i = 0; i < free_rank_; ++i) {
    generators_.push_back(FactorSpec{std::string(1, static_cast<char>('a' + i)), FactorKind::FreeGroup, 0});
  }
  std::vector<std::string> names;
  for (const FactorSpec& g : generators_) {
    if (g.kind == FactorKind::Cyclic && g.order < 2) {
      throw Error(ErrorKind::PreconditionViolated, "cyclic factor " + g.name + " has order < 2");
    }
    if (g.name.empty() || g.name == "e") {
      throw Error(ErrorKind::PreconditionViolated, "invalid generator name '" + g.name + "'");
    }
    if (std::find(names.begin(), names.end(), g.name) != names.end()) {
      throw Error(ErrorKind::PreconditionViolated, "duplicate generator name " + g.name);
    }
    names.push_back(g.name);
  }
  for (const FactorSpec& f : factors_) {
    if (!spelling_.empty()) spelling_ += "*";
    spelling_ += factor_token(f);
  }
  if (free_rank_ > 0) {
    if (!spelling_.empty()) spelling_ += "*";
    spelling_ += "F" + std::to_string(free_rank_);
  }
}

Presentation Presentation::parse(std::string_view spelling) {
  std::vector<FactorSpec> factors;
  int free_rank = 0;
  std::map<std::string, int> seen;
  auto unique_name = [&seen](const std::string& base) {
    const int n = ++seen[base];
    return n == 1 ? base : base + std::to_string(n);
  };
  std::size_t start = 0;
  while (start <= spelling.size()) {
    const std::size_t stop = std::min(spelling.find('*', start), spelling.size());
    const std::string_view token = spelling.substr(start, stop - start);
    if (token.size() < 2) throw Error(ErrorKind::Parse, "bad presentation token in '" + std::string(spelling) + "'");
    int value = 0;
    const auto digits = token.substr(1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error(ErrorKind::Parse, "bad presentation token '" + std::string(token) + "'");
    }
    switch (token[0]) {
      case 'Z':
        if (value < 2) throw Error(ErrorKind::Parse, "cyclic order must be >= 2");
        factors.push_back(FactorSpec::cyclic(unique_name(value == 2 ? "s" : "t"), value));
        break;
      case 'N':
        if (value != 0) throw Error(ErrorKind::Parse, "only N0 is a valid monoid factor");
        factors.push_back(FactorSpec::free_monoid(unique_name("T")));
        break;
      case 'F':
        free_rank += value;
        break;
      default:
        throw Error(ErrorKind::Parse, "bad presentation token '" + std::string(token) + "'");
    }
    start = stop + 1;
  }
  return Presentation(std::move(factors), free_rank);
}

Presentation Presentation::z2_z3() { return parse("Z2*Z3"); }
Presentation Presentation::z2_z5() { return parse("Z2*Z5"); }
Presentation Presentation::f2() { return parse("F2"); }
Presentation Presentation::n0_z2() { return parse("N0*Z2"); }

int Presentation::generator_index(std::string_view name) const {
  for (int i = 0; i < generator_count(); ++i) {
    if (generators_[i].name == name) return i;
  }
  throw Error(ErrorKind::Parse, "unknown generator '" + std::string(name) + "' in " + spelling_);
}

Word Presentation::generator_word(int index, long exponent) const {
  return reduce({Syllable{index, exponent}});
}

Word Presentation::generator_word(std::string_view name, long exponent) const {
  return generator_word(generator_index(name), exponent);
}

void Presentation::check_exponent(const Syllable& s) const {
  if (s.generator < 0 || s.generator >= generator_count()) {
    throw Error(ErrorKind::PreconditionViolated, "generator index out of range");
  }
  if (generators_[s.generator].kind == FactorKind::FreeMonoid && s.exponent < 0) {
    throw Error(ErrorKind::NegativeMonoidExponent,
                "negative power of monoid generator " + generators_[s.generator].name);
  }
}

void Presentation::push_syllable(std::vector<Syllable>& out, Syllable s) const {
  check_exponent(s);
  const FactorSpec& g = generators_[s.generator];
  if (g.kind == FactorKind::Cyclic) s.exponent = ((s.exponent % g.order) + g.order) % g.order;
  if (s.exponent == 0) return;
  if (!out.empty() && out.back().generator == s.generator) {
    long merged = out.back().exponent + s.exponent;
    if (g.kind == FactorKind::Cyclic) merged %= g.order;
    if (merged == 0) {
      out.pop_back();
    } else {
      out.back().exponent = merged;
    }
    return;
  }
  out.push_back(s);
}

Word Presentation::reduce(const std::vector<Syllable>& raw) const {
  std::vector<Syllable> out;
  out.reserve(raw.size());
  for (const Syllable& s : raw) push_syllable(out, s);
  return Word(std::move(out));
}

Word Presentation::multiply(const Word& lhs, const Word& rhs) const {
  std::vector<Syllable> out = lhs.syllables_;
  for (const Syllable& s : rhs.syllables_) push_syllable(out, s);
  return Word(std::move(out));
}

bool Presentation::is_invertible(const Word& w) const {
  return std::none_of(w.syllables_.begin(), w.syllables_.end(), [this](const Syllable& s) {
    return generators_[s.generator].kind == FactorKind::FreeMonoid;
  });
}

Word Presentation::invert(const Word& w) const {
  std::vector<Syllable> out;
  out.reserve(w.syllables_.size());
  for (auto it = w.syllables_.rbegin(); it != w.syllables_.rend(); ++it) {
    const FactorSpec& g = generators_[it->generator];
    switch (g.kind) {
      case FactorKind::FreeMonoid:
        throw Error(ErrorKind::NonInvertible, "monoid generator " + g.name + " has no inverse");
      case FactorKind::Cyclic:
        out.push_back(Syllable{it->generator, g.order - it->exponent});
        break;
      case FactorKind::FreeGroup:
        out.push_back(Syllable{it->generator, -it->exponent});
        break;
    }
  }
  return Word(std::move(out));
}

long Presentation::word_length(const Word& w) const {
  long total = 0;
  for (const Syllable& s : w.syllables_) {
    const FactorSpec& g = generators_[s.generator];
    if (g.kind == FactorKind::Cyclic) {
      total += std::min(s.exponent, g.order - s.exponent);
    } else {
      total += s.exponent < 0 ? -s.exponent : s.exponent;
    }
  }
  return total;
}

std::vector<Word> Presentation::generating_steps() const {
  std::vector<Word> steps;
  for (int i = 0; i < generator_count(); ++i) {
    const FactorSpec& g = generators_[i];
    steps.push_back(generator_word(i, 1));
    if ((g.kind == FactorKind::Cyclic && g.order > 2) || g.kind == FactorKind::FreeGroup) {
      steps.push_back(generator_word(i, -1));
    }
  }
  return steps;
}

bool Presentation::shortlex_less(const Word& a, const Word& b) const {
  const long la = word_length(a);
  const long lb = word_length(b);
  if (la != lb) return la < lb;
  return a.syllables_ < b.syllables_;
}

std::vector<Word> Presentation::ball(int radius, std::size_t cap) const {
  if (radius < 0) throw Error(ErrorKind::PreconditionViolated, "negative radius");
  const std::vector<Word> steps = generating_steps();
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<Word> result{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int r = 1; r <= radius && !frontier.empty(); ++r) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (const Word& step : steps) {
        Word v = multiply(step, w);
        if (word_length(v) != r) continue;
        if (seen.insert(v).second) {
          if (result.size() >= cap) {
            throw Error(ErrorKind::SizeLimit, "ball of radius " + std::to_string(radius) +
                                                  " exceeds the vertex cap " + std::to_string(cap));
          }
          result.push_back(v);
          next.push_back(std::move(v));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(result.begin(), result.end(),
            [this](const Word& a, const Word& b) { return shortlex_less(a, b); });
  return result;
}

std::string Presentation::format(const Word& w) const {
  if (w.is_identity()) return "e";
  std::string out;
  for (const Syllable& s : w.syllables_) {
    if (!out.empty()) out += '.';
    out += generators_[s.generator].name;
    if (s.exponent != 1) out += "^" + std::to_string(s.exponent);
  }
  return out;
}

Word Presentation::parse_word(std::string_view text) const {
  if (text.empty() || text == "e") return Word{};
  std::vector<Syllable> raw;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t stop = std::min(text.find('.', start), text.size());
    const std::string_view token = text.substr(start, stop - start);
    const std::size_t caret = token.find('^');
    const std::string_view name = token.substr(0, caret);
    long exponent = 1;
    if (caret != std::string_view::npos) {
      const std::string_view digits = token.substr(caret + 1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw Error(ErrorKind::Parse, "bad exponent in word '" + std::string(text) + "'");
      }
    }
    if (name != "e") raw.push_back(Syllable{generator_index(name), exponent});
    start = stop + 1;
  }
  return reduce(raw);
}

bool Presentation::has_order_two_factor() const {
  return std::any_of(generators_.begin(), generators_.end(), [](const FactorSpec& g) {
    return g.kind == FactorKind::Cyclic && g.order == 2;
  });
}

Word Presentation::sigma() const {
  for (int i = 0; i < generator_count(); ++i) {
    if (generators_[i].kind == FactorKind::Cyclic && generators_[i].order == 2) return generator_word(i);
  }
  throw Error(ErrorKind::PreconditionViolated, spelling_ + " has no order-2 factor");
}

Word free_embedding_first(const Presentation& z2z3) { return z2z3.parse_word("t.s.t^2.s"); }
Word free_embedding_second(const Presentation& z2z3) { return z2z3.parse_word("t^2.s.t.s"); }

}  // namespace paradoxlab
