#include "paradoxlab/csp.hpp"

#include "paradoxlab/error.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace paradoxlab {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::SAT: return "SAT";
    case SolveStatus::UNSAT: return "UNSAT";
    case SolveStatus::LIMIT: return "LIMIT";
  }
  return "UNKNOWN";
}

namespace {

struct Constraint {
  int vertex = 0;
  std::vector<int> scope;  // descendants in rule position order
  std::vector<std::uint8_t> bits;
  std::vector<std::uint8_t> neighbour_bits;  // arrow-crowdedness rules only
};

class NodeLimit {};

/// Compiled search problem: variables are ball points in shortlex order.
class Search {
 public:
  Search(const Instance& inst, std::uint64_t node_limit) : inst_(inst), node_limit_(node_limit) {
    const Rule& rule = inst.rule;
    points_ = inst.ball;
    std::sort(points_.begin(), points_.end(),
              [&rule](const Point& a, const Point& b) { return rule.shortlex_less(a, b); });
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i], static_cast<int>(i));

    domains_.assign(points_.size(), rule.palette.all());
    for (const auto& [point, colour] : inst.pinned) {
      auto it = index_.find(point);
      if (it == index_.end()) throw Error(ErrorKind::PreconditionViolated, "pinned vertex outside the ball");
      if (colour < 0 || colour >= rule.palette.size()) throw Error(ErrorKind::PreconditionViolated, "pinned colour out of range");
      domains_[it->second] = colour_bit(colour);
    }

    triggered_.resize(points_.size());
    interior_.assign(points_.size(), false);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const Point& x = points_[i];
      Constraint c;
      c.vertex = static_cast<int>(i);
      bool inside = true;
      for (const Point& d : rule.descendants_of(x)) {
        auto it = index_.find(d);
        if (it == index_.end()) {
          inside = false;
          break;
        }
        c.scope.push_back(it->second);
      }
      if (!inside) continue;
      for (const Word& coordinate : rule.descendants.read_bits) c.bits.push_back(bit(rule.bit_coordinate(coordinate, x)));
      if (rule.arrow_crowdedness) {
        for (int n : c.scope) c.neighbour_bits.push_back(bit(points_[n].word));
      }
      interior_[i] = true;
      ++interior_count_;
      const int trigger = std::max(c.vertex, *std::max_element(c.scope.begin(), c.scope.end()));
      triggered_[trigger].push_back(constraints_.size());
      constraints_.push_back(std::move(c));
    }
    assignment_.assign(points_.size(), -1);
  }

  std::uint64_t nodes() const { return nodes_; }
  int interior_count() const { return interior_count_; }

  /// Visits solutions in order; the visitor returns false to stop.
  /// Returns false if the node budget ran out.
  bool run(const std::function<bool(const std::vector<Colour>&)>& visit) {
    visit_ = &visit;
    try {
      descend(0);
    } catch (const NodeLimit&) {
      return false;
    }
    return true;
  }

  /// Branch and bound over the objective count.
  bool optimise(Colour target, bool maximise, std::optional<int>& best) {
    target_ = target;
    maximise_ = maximise;
    best_ = &best;
    interior_after_.assign(points_.size() + 1, 0);
    for (int i = static_cast<int>(points_.size()) - 1; i >= 0; --i) {
      interior_after_[i] = interior_after_[i + 1] + (interior_[i] ? 1 : 0);
    }
    try {
      bound(0, 0);
    } catch (const NodeLimit&) {
      return false;
    }
    return true;
  }

  Colouring colouring(const std::vector<Colour>& values) const {
    Colouring out;
    for (std::size_t i = 0; i < points_.size(); ++i) out.emplace(points_[i], values[i]);
    return out;
  }

 private:
  std::uint8_t bit(const Word& coordinate) const {
    auto it = inst_.bits.find(coordinate);
    if (it == inst_.bits.end()) {
      throw Error(ErrorKind::MissingBit, "instance has no bit for " + inst_.rule.presentation.format(coordinate));
    }
    return it->second;
  }

  bool satisfied(const Constraint& c) const {
    const Rule& rule = inst_.rule;
    const Colour observed = assignment_[c.vertex];
    std::vector<Colour> desc;
    desc.reserve(c.scope.size());
    for (int d : c.scope) desc.push_back(assignment_[d]);
    const RuleInput input{points_[c.vertex].tag, c.bits, desc};
    for (int part = 0; part < rule.rank(); ++part) {
      if (!contains(rule.parts[part](input), observed)) return false;
    }
    if (rule.arrow_crowdedness) {
      int in_degree = 0;
      const Word& here = points_[c.vertex].word;
      for (std::size_t k = 0; k < c.scope.size(); ++k) {
        const Word& from = points_[c.scope[k]].word;
        if (arrow_target(from, assignment_[c.scope[k]], c.neighbour_bits[k]) == here) ++in_degree;
      }
      if ((in_degree >= 2) != is_crowded(observed)) return false;
    }
    return true;
  }

  bool consistent_at(std::size_t i) const {
    for (std::size_t k : triggered_[i]) {
      if (!satisfied(constraints_[k])) return false;
    }
    return true;
  }

  void tick() {
    if (++nodes_ > node_limit_) throw NodeLimit{};
  }

  bool descend(std::size_t i) {
    if (i == points_.size()) return (*visit_)(assignment_);
    ColourSet domain = domains_[i];
    while (domain != 0) {
      const Colour c = std::countr_zero(domain);
      domain &= domain - 1;
      tick();
      assignment_[i] = c;
      if (consistent_at(i) && !descend(i + 1)) return false;
    }
    assignment_[i] = -1;
    return true;
  }

  void bound(std::size_t i, int count) {
    if (i == points_.size()) {
      if (!*best_ || (maximise_ ? count > **best_ : count < **best_)) *best_ = count;
      return;
    }
    if (*best_) {
      if (maximise_ && count + interior_after_[i] <= **best_) return;
      if (!maximise_ && count >= **best_) return;
    }
    ColourSet domain = domains_[i];
    while (domain != 0) {
      const Colour c = std::countr_zero(domain);
      domain &= domain - 1;
      tick();
      assignment_[i] = c;
      if (consistent_at(i)) bound(i + 1, count + (interior_[i] && c == target_ ? 1 : 0));
    }
    assignment_[i] = -1;
  }

  const Instance& inst_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::vector<Point> points_;
  std::unordered_map<Point, int, PointHash> index_;
  std::vector<ColourSet> domains_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> triggered_;
  std::vector<bool> interior_;
  int interior_count_ = 0;
  std::vector<Colour> assignment_;
  const std::function<bool(const std::vector<Colour>&)>* visit_ = nullptr;

  Colour target_ = 0;
  bool maximise_ = false;
  std::optional<int>* best_ = nullptr;
  std::vector<int> interior_after_;
};

}  // namespace

SolveResult solve(const Instance& instance, std::uint64_t node_limit) {
  Search search(instance, node_limit);
  SolveResult result;
  const bool finished = search.run([&](const std::vector<Colour>& values) {
    result.witness = search.colouring(values);
    return false;
  });
  result.nodes = search.nodes();
  if (result.witness) {
    result.status = SolveStatus::SAT;
    if (instance.objective) result.extremal = extremal_fraction(instance, node_limit);
  } else {
    result.status = finished ? SolveStatus::UNSAT : SolveStatus::LIMIT;
  }
  return result;
}

std::vector<Colouring> enumerate(const Instance& instance, std::size_t limit, std::uint64_t node_limit) {
  std::vector<Colouring> out;
  if (limit == 0) return out;
  Search search(instance, node_limit);
  search.run([&](const std::vector<Colour>& values) {
    out.push_back(search.colouring(values));
    return out.size() < limit;
  });
  return out;
}

Rational extremal_fraction(const Instance& instance, std::uint64_t node_limit) {
  if (!instance.objective) throw Error(ErrorKind::PreconditionViolated, "instance has no objective");
  Search search(instance, node_limit);
  if (search.interior_count() == 0) throw Error(ErrorKind::PreconditionViolated, "instance has no interior vertices");
  std::optional<int> best;
  if (!search.optimise(instance.objective->colour, instance.objective->maximise, best)) {
    throw Error(ErrorKind::SizeLimit, "node limit reached before the optimum was proven");
  }
  if (!best) throw Error(ErrorKind::Unsatisfiable, "no violation-free colouring exists");
  return Rational(*best) / Rational(search.interior_count());
}

}  // namespace paradoxlab
