#include "paradoxlab/measure.hpp"

#include "paradoxlab/error.hpp"

namespace paradoxlab {

Tag swap_tag(Tag t) {
  switch (t) {
    case Tag::R: return Tag::S;
    case Tag::S: return Tag::R;
    case Tag::None: break;
  }
  return Tag::None;
}

Rational cylinder_measure(const Cylinder& c) {
  Rational m = dyadic(static_cast<unsigned>(c.assignment.size()));
  if (c.tag != Tag::None) m *= Rational(1, 2);
  return m;
}

Cylinder shift(const Word& g, const Cylinder& c, const Presentation& p) {
  if (!p.is_invertible(g)) {
    throw Error(ErrorKind::NonInvertible, "shift by non-invertible word " + p.format(g));
  }
  Cylinder out;
  out.tag = c.tag;
  for (const auto& [coord, bit] : c.assignment) out.assignment.emplace(p.multiply(coord, g), bit);
  return out;
}

Cylinder flip(FlipCoordinate which, const Cylinder& c, const Presentation& p) {
  const Word target = which == FlipCoordinate::Identity ? Word{} : p.sigma();
  Cylinder out = c;
  if (auto it = out.assignment.find(target); it != out.assignment.end()) it->second ^= 1;
  return out;
}

std::vector<Pattern> enumerate_patterns(std::span<const Word> coords, std::size_t cap) {
  if (coords.size() > cap) {
    throw Error(ErrorKind::SizeLimit, "pattern enumeration over " + std::to_string(coords.size()) +
                                          " coordinates exceeds cap " + std::to_string(cap));
  }
  const std::size_t n = coords.size();
  const Rational each = dyadic(static_cast<unsigned>(n));
  std::vector<Pattern> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t index = 0; index < (std::size_t{1} << n); ++index) {
    Pattern pattern{std::vector<std::uint8_t>(n), each};
    for (std::size_t i = 0; i < n; ++i) pattern.bits[i] = static_cast<std::uint8_t>((index >> i) & 1U);
    out.push_back(std::move(pattern));
  }
  return out;
}

}  // namespace paradoxlab
