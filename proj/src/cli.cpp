#include "paradoxlab/cli.hpp"

#include "paradoxlab/analysis.hpp"
#include "paradoxlab/csp.hpp"
#include "paradoxlab/error.hpp"
#include "paradoxlab/report.hpp"
#include "paradoxlab/witness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paradoxlab {

namespace {

struct Settings {
  std::string format = "json";
  std::string output;
  std::string config;
  bool timing = false;
  std::size_t ball_cap = Presentation::kDefaultBallCap;
  std::uint64_t node_limit = kDefaultNodeLimit;
  int threads = 0;
};

struct AnalyzeOptions {
  std::string target;
  std::string mode = "formula";
  bool inject_fault = false;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  int depth = 30;
  std::uint64_t count = 1000;
};

struct SolveOptions {
  std::string rule;
  std::string presentation;
  int radius = -1;
  std::string bits = "0";
  std::string pin;
  std::string objective;
  std::uint64_t node_limit = 0;
  std::size_t enumerate = 0;
};

struct ConstructOptions {
  std::string witness;
  int radius = -1;
  std::uint64_t seed = 1;
};

struct VerifyOptions {
  std::string rule;
  std::string presentation;
  std::string colouring;
  std::string bits = "0";
};

// --- small helpers -----------------------------------------------------------

std::optional<std::uint64_t> parse_unsigned(const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

void read_config(const std::string& path, Settings& settings) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open config " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, "config line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "format") {
      settings.format = value;
      continue;
    }
    const auto number = parse_unsigned(value);
    if (!number) throw Error(ErrorKind::Parse, "config value for " + key + " is not a number");
    if (key == "ball_cap") {
      settings.ball_cap = *number;
    } else if (key == "node_limit") {
      settings.node_limit = *number;
    } else if (key == "threads") {
      settings.threads = static_cast<int>(*number);
    } else {
      throw Error(ErrorKind::Parse, "unknown config key " + key);
    }
  }
}

void apply_threads(const Settings& settings) {
  int threads = settings.threads;
  if (const char* env = std::getenv("PARADOXLAB_THREADS")) {
    const auto n = parse_unsigned(env);
    if (!n || *n == 0) throw Error(ErrorKind::Parse, "PARADOXLAB_THREADS must be a positive integer");
    threads = static_cast<int>(*n);
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
}

Json polynomial_json(const Polynomial& p) {
  Json coeffs = Json::array();
  for (const Rational& c : p.coefficients()) coeffs.push_back(to_json(c));
  return Json{{"text", p.str()}, {"coefficients", coeffs}};
}

std::vector<Point> sorted_points(const Rule& rule, std::vector<Point> points) {
  std::sort(points.begin(), points.end(), [&rule](const Point& a, const Point& b) { return rule.shortlex_less(a, b); });
  return points;
}

// {"vertices": [[point, colour], ...]} in shortlex order.
Json colouring_json(const Rule& rule, const Colouring& colouring) {
  std::vector<Point> points;
  for (const auto& [x, c] : colouring) points.push_back(x);
  Json vertices = Json::array();
  for (const Point& x : sorted_points(rule, std::move(points))) {
    vertices.push_back(Json::array({format_point(rule.presentation, x), rule.palette.name(colouring.at(x))}));
  }
  return Json{{"vertices", vertices}};
}

Json violations_json(const Rule& rule, const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const Violation& v : violations) {
    Json allowed = Json::array();
    for (Colour c = 0; c < rule.palette.size(); ++c) {
      if (contains(v.allowed, c)) allowed.push_back(rule.palette.name(c));
    }
    out.push_back(Json{{"vertex", format_point(rule.presentation, v.vertex)},
                       {"part", v.part},
                       {"observed", rule.palette.name(v.observed)},
                       {"allowed", allowed}});
  }
  return out;
}

Rule checked_rule(const std::string& name, const std::string& presentation) {
  Rule rule = rule_by_name(name);
  if (!presentation.empty() && Presentation::parse(presentation).spelling() != rule.presentation.spelling()) {
    throw Error(ErrorKind::PreconditionViolated,
                "rule " + name + " lives on " + rule.presentation.spelling() + ", not " + presentation);
  }
  return rule;
}

// Integer seed, or a JSON file {"bits": [[word, bit], ...]} with absent words 0.
BitField load_bits(const Rule& rule, std::span<const Point> points, const std::string& spec) {
  if (const auto seed = parse_unsigned(spec)) return random_bits(points, *seed);
  BitField bits;
  for (const Point& x : points) bits.emplace(x.word, 0);
  const Json doc = read_json_file(spec);
  if (!doc.contains("bits") || !doc["bits"].is_array()) throw Error(ErrorKind::Parse, spec + " has no \"bits\" array");
  for (const Json& entry : doc["bits"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_number_integer()) {
      throw Error(ErrorKind::Parse, "bit entries are [word, 0|1] pairs");
    }
    const int bit = entry[1].get<int>();
    if (bit != 0 && bit != 1) throw Error(ErrorKind::Parse, "bits must be 0 or 1");
    bits[rule.presentation.parse_word(entry[0].get<std::string>())] = static_cast<std::uint8_t>(bit);
  }
  return bits;
}

Colouring load_colouring(const Rule& rule, const Json& doc, const std::string& what) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw Error(ErrorKind::Parse, what + " must hold a \"vertices\" array of [point, colour] pairs");
  }
  Colouring out;
  for (const Json& entry : doc["vertices"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_string()) {
      throw Error(ErrorKind::Parse, what + " entries are [point, colour] string pairs");
    }
    out[parse_point(rule.presentation, entry[0].get<std::string>())] = rule.palette.index(entry[1].get<std::string>());
  }
  return out;
}

// --- analyze -------------------------------------------------------------------

using AnalyzeFn = std::function<void(const AnalyzeOptions&, ReportDocument&)>;

void analyze_theorem1(const AnalyzeOptions& o, ReportDocument& doc) {
  BoundMode mode = BoundMode::Formula;
  if (o.mode == "brute-force") {
    mode = BoundMode::BruteForce;
  } else if (o.mode != "formula") {
    throw Error(ErrorKind::Parse, "mode must be formula or brute-force");
  }
  if (o.inject_fault && mode != BoundMode::BruteForce) {
    throw Error(ErrorKind::PreconditionViolated, "--inject-fault needs --mode brute-force");
  }
  const BoundReport bounds = theorem1_bounds(mode, o.inject_fault);
  doc.results["lower"] = to_json(bounds.lower);
  doc.results["upper"] = to_json(bounds.upper);
  doc.results["contradiction"] = bounds.contradiction;
  doc.results["method"] = std::string(to_string(bounds.method));
  doc.results["monochrome_term"] = to_json(theorem1_monochrome_term());
  doc.checks["lower_exceeds_upper"] = bounds.contradiction;
  doc.provenance["lower"] = "Theorem 1, lower bound on the A1 frequency";
  doc.provenance["upper"] = "Theorem 1, upper bound on the A1 frequency";
  doc.provenance["contradiction"] = "Theorem 1, contradiction";
  doc.provenance["method"] = "Theorem 1, lower bound computation";
  doc.provenance["monochrome_term"] = "Theorem 1, monochrome cycle probability";
  if (mode == BoundMode::BruteForce) {
    const std::vector<int> table = theorem1_forced_table();
    Table csv{"forced_a1", {"pattern", "zero_bits", "forced_a1"}, {}};
    Json rows = Json::array();
    bool per_k = true;
    for (std::size_t pattern = 0; pattern < table.size(); ++pattern) {
      std::string bits;
      int zeros = 0;
      for (int j = 0; j < 5; ++j) {
        const bool one = (pattern >> j) & 1U;
        bits += one ? '1' : '0';
        zeros += one ? 0 : 1;
      }
      const int expected = (zeros >= 2 && zeros <= 4) ? zeros - 1 : 0;
      per_k = per_k && table[pattern] == expected;
      rows.push_back(Json{{"pattern", bits}, {"zero_bits", zeros}, {"forced_a1", table[pattern]}});
      csv.rows.push_back({bits, std::to_string(zeros), std::to_string(table[pattern])});
    }
    doc.results["forced_table"] = rows;
    doc.checks["brute_force_matches_formula"] = true;
    doc.checks["k_zero_bits_force_k_minus_1"] = per_k;
    doc.provenance["forced_table"] = "Theorem 1, opposite A1 points forced per cycle";
    doc.tables.push_back(std::move(csv));
  }
}

void analyze_hausdorff(const AnalyzeOptions&, ReportDocument& doc) {
  const MeasureConstraints m = hausdorff_measure_constraints();
  doc.results["sigma_value"] = to_json(m.sigma_value);
  doc.results["tau_value"] = to_json(m.tau_value);
  doc.results["contradiction"] = m.contradiction;
  doc.checks["half_differs_from_third"] = m.contradiction;
  doc.provenance["sigma_value"] = "Hausdorff rules, sigma part forces mu(A)";
  doc.provenance["tau_value"] = "Hausdorff rules, tau part forces mu(A)";
  doc.provenance["contradiction"] = "Hausdorff rules, half versus one third";
}

void analyze_ex4(const AnalyzeOptions&, ReportDocument& doc) {
  const Rule rule = example4_rule();
  const Colour a = rule.palette.index("A");
  const Colour b = rule.palette.index("B");
  const auto table = example4_conflict_table();
  Table csv{"conflict_table", {"image", "twin_image", "bit", "twin_bit", "colourable"}, {}};
  Json rows = Json::array();
  int bb_bad = 0;
  bool ba_exact = true;
  for (const ConflictCell& cell : table) {
    const std::string image = rule.palette.name(cell.image);
    const std::string twin = rule.palette.name(cell.twin_image);
    rows.push_back(Json{{"image", image},
                        {"twin_image", twin},
                        {"bit", cell.bit},
                        {"twin_bit", cell.twin_bit},
                        {"colourable", cell.colourable}});
    csv.rows.push_back({image, twin, std::to_string(cell.bit), std::to_string(cell.twin_bit),
                        cell.colourable ? "true" : "false"});
    if (cell.image == b && cell.twin_image == b && !cell.colourable) ++bb_bad;
    if (cell.image == b && cell.twin_image == a) ba_exact = ba_exact && (cell.colourable == (cell.bit == 1));
  }
  const Example4Bound bound = example4_bound();
  doc.results["conflict_table"] = rows;
  doc.results["a_cap"] = to_json(bound.a_cap);
  doc.results["a_cap_derived"] = to_json(bound.a_cap_derived);
  doc.results["twin_bit_one"] = to_json(bound.twin_bit_one);
  doc.results["uncolourable_coefficient"] = to_json(bound.uncolourable_coefficient);
  doc.results["lower_bound"] = to_json(bound.lower_bound);
  doc.checks["bb_row_half_uncolourable"] = bb_bad == 2;
  doc.checks["ba_row_uncolourable_iff_bit_zero"] = ba_exact;
  doc.checks["a_cap_dominates_derived_cap"] = bound.a_cap >= bound.a_cap_derived;
  doc.checks["lower_bound_positive"] = bound.lower_bound > Rational(0);
  doc.provenance["conflict_table"] = "Example 4, conflict table of rule Q";
  doc.provenance["a_cap"] = "Example 4, cap on the A-coloured set";
  doc.provenance["a_cap_derived"] = "Example 4, derived cap on the A-coloured set";
  doc.provenance["twin_bit_one"] = "Example 4, probability of a twin e-bit equal to 1";
  doc.provenance["uncolourable_coefficient"] = "Example 4, uncolourable share of the B-coloured set";
  doc.provenance["lower_bound"] = "Example 4, uncolourable mass lower bound";
  doc.tables.push_back(std::move(csv));
}

void analyze_ex5(const AnalyzeOptions&, ReportDocument& doc) {
  const DegreeStats stats = example5_degree_stats();
  Json dist = Json::array();
  Table csv{"degree_distribution", {"degree", "probability"}, {}};
  Rational total(0);
  bool binomial_ok = true;
  for (std::size_t k = 0; k < stats.distribution.size(); ++k) {
    dist.push_back(to_json(stats.distribution[k]));
    csv.rows.push_back({std::to_string(k), stats.distribution[k].str()});
    total += stats.distribution[k];
    binomial_ok = binomial_ok && stats.distribution[k] == Rational(binomial(4, static_cast<unsigned>(k)), BigInt(16));
  }
  doc.results["distribution"] = dist;
  doc.results["zero_fraction"] = to_json(stats.zero_fraction);
  doc.results["cond_deg3"] = to_json(stats.cond_deg3);
  doc.results["cond_deg4"] = to_json(stats.cond_deg4);
  doc.checks["distribution_sums_to_one"] = total == Rational(1);
  doc.checks["distribution_is_binomial"] = binomial_ok;
  doc.provenance["distribution"] = "Theorem 3, potential arrow degree distribution";
  doc.provenance["zero_fraction"] = "Theorem 3, degree zero vertices";
  doc.provenance["cond_deg3"] = "Theorem 3, conditional degree three";
  doc.provenance["cond_deg4"] = "Theorem 3, conditional degree four";
  doc.tables.push_back(std::move(csv));
}

bool within_three_sigma(double frequency, double p, std::uint64_t trials) {
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return std::fabs(frequency - p) <= 3.0 * sigma;
}

void analyze_theorem3(const AnalyzeOptions& o, ReportDocument& doc) {
  const BranchingRecursion rec = branching_recursion();
  doc.results["recursion_map"] = polynomial_json(rec.recursion_map);
  doc.results["fixed_point_poly"] = polynomial_json(rec.fixed_point_poly);
  doc.results["nontrivial_factor"] = polynomial_json(rec.nontrivial_factor);
  doc.results["discriminant"] = to_json(rec.discriminant);
  Json roots = Json::array();
  for (const Rational& r : rec.roots_in_unit_interval) roots.push_back(to_json(r));
  doc.results["roots_in_unit_interval"] = roots;

  bool below = true;
  for (int i = 1; i <= 100; ++i) {
    const Rational p(BigInt(i), BigInt(100));
    below = below && rec.recursion_map(p) < p && recursion_map(p) == rec.recursion_map(p);
  }

  Table csv{"survival_by_depth", {"depth", "frequency", "exact"}, {}};
  Json profile = Json::array();
  bool profile_ok = true;
  for (int d = 1; d <= 10; ++d) {
    const double freq = branching_simulation(o.seed, o.trials, d);
    const Rational exact = recursion_iterate(d);
    const bool ok = within_three_sigma(freq, exact.to_double(), o.trials);
    profile_ok = profile_ok && ok;
    profile.push_back(Json{{"depth", d}, {"frequency", freq}, {"exact", to_json(exact)}, {"within_3_sigma", ok}});
    std::ostringstream f;
    f << freq;
    csv.rows.push_back({std::to_string(d), f.str(), exact.str()});
  }
  const double freq = branching_simulation(o.seed, o.trials, o.depth);
  const double exact = o.depth <= 10 ? recursion_iterate(o.depth).to_double() : recursion_iterate_approx(o.depth);
  doc.results["depth_profile"] = profile;
  doc.results["simulation"] = Json{{"seed", o.seed},
                                   {"trials", o.trials},
                                   {"depth", o.depth},
                                   {"survival_frequency", freq},
                                   {"exact_iterate", exact}};
  doc.checks["quadratic_factor_has_no_real_root"] = rec.discriminant < Rational(0);
  doc.checks["only_fixed_point_in_unit_interval_is_zero"] =
      rec.roots_in_unit_interval == std::vector<Rational>{Rational(0)};
  doc.checks["phi_below_identity_on_grid"] = below;
  doc.checks["simulation_tracks_iterates"] = profile_ok && within_three_sigma(freq, exact, o.trials);
  doc.provenance["recursion_map"] = "Theorem 3, crowded chain recursion";
  doc.provenance["fixed_point_poly"] = "Theorem 3, fixed point equation";
  doc.provenance["nontrivial_factor"] = "Theorem 3, quadratic factor";
  doc.provenance["discriminant"] = "Theorem 3, quadratic factor has no real roots";
  doc.provenance["roots_in_unit_interval"] = "Theorem 3, crowded points have measure zero";
  doc.provenance["depth_profile"] = "Theorem 3, branching simulation against exact iterates";
  doc.provenance["simulation"] = "Theorem 3, branching simulation";
  doc.tables.push_back(std::move(csv));
}

void analyze_inclusion_exclusion(const AnalyzeOptions& o, ReportDocument& doc) {
  if (o.count < 1) throw Error(ErrorKind::PreconditionViolated, "count must be at least 1");
  const InclusionExclusionBatch batch = inclusion_exclusion_batch(o.seed, o.count);
  const WeightedSetSystem sample = random_set_system(o.seed, 0);
  const InclusionExclusionResult check = inclusion_exclusion_check(sample);
  Json weights = Json::array();
  for (const Rational& w : sample.weights) weights.push_back(to_json(w));
  doc.results["count"] = batch.count;
  doc.results["holds"] = batch.holds;
  doc.results["sample"] = Json{{"weights", weights}, {"sets", sample.sets},
                               {"lhs", to_json(check.lhs)}, {"rhs", to_json(check.rhs)}};
  doc.checks["identity_holds_on_all_systems"] = batch.holds == batch.count;
  doc.provenance["count"] = "Inclusion-exclusion identity, systems generated";
  doc.provenance["holds"] = "Inclusion-exclusion identity for sets of total measure one";
  doc.provenance["sample"] = "Inclusion-exclusion identity, first generated system";
}

const std::map<std::string, AnalyzeFn>& analyzers() {
  static const std::map<std::string, AnalyzeFn> table{
      {"theorem1", analyze_theorem1},       {"hausdorff", analyze_hausdorff},
      {"ex4", analyze_ex4},                 {"ex5-degrees", analyze_ex5},
      {"theorem3", analyze_theorem3},       {"inclusion-exclusion", analyze_inclusion_exclusion},
  };
  return table;
}

ReportDocument run_analyze(const AnalyzeOptions& o) {
  auto it = analyzers().find(o.target);
  if (it == analyzers().end()) throw Error(ErrorKind::Parse, "unknown analyze target '" + o.target + "'");
  ReportDocument doc;
  doc.command = Json{{"verb", "analyze"}, {"target", o.target}};
  Json options = Json::object();
  if (o.target == "theorem1") {
    options["mode"] = o.mode;
    options["inject_fault"] = o.inject_fault;
  } else if (o.target == "theorem3") {
    options = Json{{"seed", o.seed}, {"trials", o.trials}, {"depth", o.depth}};
  } else if (o.target == "inclusion-exclusion") {
    options = Json{{"seed", o.seed}, {"count", o.count}};
  }
  doc.command["options"] = options;
  doc.results["claim"] = analyze_claims().at(o.target);
  it->second(o, doc);
  return doc;
}

// --- solve / construct / verify -----------------------------------------------

ReportDocument run_solve(const SolveOptions& o, const Settings& s) {
  if (o.radius < 0) throw Error(ErrorKind::Parse, "--radius is required");
  const Rule rule = checked_rule(o.rule, o.presentation);
  const std::vector<Word> words = rule.presentation.ball(o.radius, s.ball_cap);
  Instance inst{rule, rule.descendants.tagged ? tagged_points(words) : plain_points(words), {}, {}, std::nullopt};
  inst.bits = load_bits(rule, inst.ball, o.bits);
  if (!o.pin.empty()) {
    inst.pinned = load_colouring(rule, read_json_file(o.pin), o.pin);
    for (const auto& [x, c] : inst.pinned) {
      if (std::find(inst.ball.begin(), inst.ball.end(), x) == inst.ball.end()) {
        throw Error(ErrorKind::PreconditionViolated, "pinned vertex " + format_point(rule.presentation, x) +
                                                         " lies outside the ball");
      }
    }
  }
  if (!o.objective.empty()) {
    const auto colon = o.objective.rfind(':');
    const std::string sense = colon == std::string::npos ? "" : o.objective.substr(colon + 1);
    if (sense != "min" && sense != "max") throw Error(ErrorKind::Parse, "objective is colour:min or colour:max");
    inst.objective = ObjectiveSpec{rule.palette.index(o.objective.substr(0, colon)), sense == "max"};
  }
  const std::uint64_t node_limit = o.node_limit ? o.node_limit : s.node_limit;
  const SolveResult result = solve(inst, node_limit);

  ReportDocument doc;
  doc.command = Json{{"verb", "solve"},
                     {"target", o.rule},
                     {"options", Json{{"presentation", rule.presentation.spelling()},
                                      {"radius", o.radius},
                                      {"bits", o.bits},
                                      {"pin", o.pin},
                                      {"objective", o.objective},
                                      {"node_limit", node_limit},
                                      {"enumerate", o.enumerate}}}};
  doc.results["status"] = std::string(to_string(result.status));
  doc.results["nodes"] = result.nodes;
  doc.results["ball_size"] = inst.ball.size();
  doc.results["interior_size"] = interior(rule, inst.ball).size();
  if (result.witness) {
    doc.results["witness"] = colouring_json(rule, *result.witness);
    doc.checks["witness_has_no_violations"] =
        check_satisfaction(rule, inst.ball, *result.witness, inst.bits).empty();
  }
  if (result.extremal) doc.results["extremal"] = to_json(*result.extremal);
  if (o.enumerate > 0) doc.results["enumerated"] = enumerate(inst, o.enumerate, node_limit).size();
  doc.provenance["status"] = "finite-ball satisfiability of rule " + rule.name;
  return doc;
}

ReportDocument run_construct(const ConstructOptions& o, const Settings& s) {
  if (o.radius < 0) throw Error(ErrorKind::Parse, "--radius is required");
  ReportDocument doc;
  doc.command = Json{{"verb", "construct"}, {"target", o.witness}, {"options", Json{{"radius", o.radius}, {"seed", o.seed}}}};
  auto summarise = [&](const Rule& rule, std::span<const Word> ball, const Colouring& colouring, const BitField& bits) {
    const auto points = plain_points(ball);
    const auto violations = check_satisfaction(rule, points, colouring, bits);
    doc.results["colouring"] = colouring_json(rule, colouring);
    doc.results["verification"] = Json{{"ball_size", points.size()},
                                       {"interior_size", interior(rule, points).size()},
                                       {"violations", violations.size()}};
    doc.checks["no_interior_violations"] = violations.empty();
  };
  if (o.witness == "hausdorff") {
    const Rule rule = hausdorff_rule();
    const auto ball = rule.presentation.ball(o.radius, s.ball_cap);
    const Colouring colouring = hausdorff_cycle_witness(ball);
    summarise(rule, ball, colouring, BitField{});
    const PieceDecomposition pieces = derive_doubling(colouring, ball);
    Json list = Json::array();
    for (const Piece& piece : pieces.pieces) {
      list.push_back(Json{{"name", piece.name},
                          {"move", rule.presentation.format(piece.move)},
                          {"size", piece.members.size()}});
    }
    doc.results["doubling"] = Json{{"pieces", list},
                                   {"classified", pieces.classified},
                                   {"deep_vertices", pieces.deep_vertices},
                                   {"exempt", pieces.exempt}};
    doc.checks["deep_vertices_covered_twice"] = true;
    doc.provenance["colouring"] = "Hausdorff rules, orbit colouring";
    doc.provenance["doubling"] = "Hausdorff rules, six pieces forming two copies";
  } else if (o.witness == "ex1") {
    const Rule rule = example1_rule();
    const auto ball = rule.presentation.ball(o.radius, s.ball_cap);
    const BitField bits = random_bits(std::span<const Word>(ball), o.seed);
    const Colouring colouring = example1_cycle_witness(ball, bits);
    summarise(rule, ball, colouring, bits);
    const CycleFractions f = example1_opposite_fractions(colouring, ball);
    doc.results["opposite_a1"] = Json{{"cycles", f.cycles},
                                      {"overall", to_json(f.overall)},
                                      {"min_cycle", to_json(f.min_cycle)},
                                      {"max_cycle", to_json(f.max_cycle)}};
    doc.checks["four_of_five_opposite_points_a1"] =
        f.min_cycle == Rational(BigInt(4), BigInt(5)) && f.max_cycle == f.min_cycle;
    doc.provenance["colouring"] = "Theorem 1, cycle colouring";
    doc.provenance["opposite_a1"] = "Theorem 1, all but one opposite point coloured A1";
  } else if (o.witness == "ex5") {
    const Rule rule = example5_rule();
    const auto ball = rule.presentation.ball(o.radius, s.ball_cap);
    const BitField bits = random_bits(std::span<const Word>(ball), o.seed);
    const Colouring colouring = example5_bfs_witness(ball, bits);
    summarise(rule, ball, colouring, bits);
    const auto points = plain_points(ball);
    std::size_t crowded = 0;
    const auto realised = crowdedness(arrows(colouring, ball, bits), ball);
    for (const Point& x : interior(rule, points)) crowded += realised.at(x.word) == Crowding::C ? 1 : 0;
    doc.results["crowded_interior_vertices"] = crowded;
    doc.checks["no_crowded_interior_vertex"] = crowded == 0;
    doc.provenance["colouring"] = "Theorem 3, outward arrow colouring";
    doc.provenance["crowded_interior_vertices"] = "Theorem 3, uncrowded vertices";
  } else if (o.witness == "orbitQ") {
    const Rule rule = example4_rule();
    const auto ball = rule.presentation.ball(o.radius, s.ball_cap);
    const BitField bits = random_bits(std::span<const Word>(ball), o.seed);
    const OrbitWitness w = semigroup_orbit_witness(o.radius, bits);
    summarise(rule, w.tree.vertices, w.colouring, bits);
    const Colour a = rule.palette.index("A");
    bool images_a = true;
    for (const Word& v : w.tree.vertices) {
      const bool t_image = !v.is_identity() &&
                           rule.presentation.generator(v.syllables().front().generator).kind == FactorKind::FreeMonoid;
      if (t_image) images_a = images_a && w.colouring.at(Point{v}) == a;
    }
    doc.results["tree"] = Json{{"root", "e"}, {"depth", w.tree.depth}, {"vertices", w.tree.vertices.size()}};
    doc.checks["t_images_coloured_a"] = images_a;
    doc.provenance["colouring"] = "Theorem 2, semigroup orbit colouring";
    doc.provenance["tree"] = "Theorem 2, semigroup orbit";
  } else {
    throw Error(ErrorKind::Parse, "unknown witness '" + o.witness + "'");
  }
  return doc;
}

ReportDocument run_verify(const VerifyOptions& o) {
  const Rule rule = checked_rule(o.rule, o.presentation);
  const Json file = read_json_file(o.colouring);
  // A bare colouring, or a construct / solve report holding one.
  const Json* source = &file;
  if (file.contains("results")) {
    const Json& results = file["results"];
    if (results.contains("colouring")) source = &results["colouring"];
    if (results.contains("witness")) source = &results["witness"];
  }
  const Colouring colouring = load_colouring(rule, *source, o.colouring);
  std::vector<Point> ball;
  for (const auto& [x, c] : colouring) ball.push_back(x);
  ball = sorted_points(rule, std::move(ball));
  const BitField bits = load_bits(rule, ball, o.bits);
  const auto violations = check_satisfaction(rule, ball, colouring, bits);

  ReportDocument doc;
  doc.command = Json{{"verb", "verify"}, {"target", o.rule},
                     {"options", Json{{"colouring", o.colouring}, {"bits", o.bits}}}};
  doc.results["ball_size"] = ball.size();
  doc.results["interior_size"] = interior(rule, ball).size();
  doc.results["violations"] = violations_json(rule, violations);
  doc.checks["no_interior_violations"] = violations.empty();
  doc.provenance["violations"] = "satisfaction of rule " + rule.name + " on the interior";
  return doc;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::VerificationFailed:
    case ErrorKind::NotAWitness:
    case ErrorKind::CoverageGap:
      return kExitVerification;
    default:
      return kExitUsage;
  }
}

void write_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << Json{{"error", Json{{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

const std::map<std::string, std::string>& analyze_claims() {
  static const std::map<std::string, std::string> claims{
      {"theorem1", "theorem1-bounds"},
      {"hausdorff", "hausdorff-constraints"},
      {"ex4", "example4-uncolourable"},
      {"ex5-degrees", "example5-degrees"},
      {"theorem3", "theorem3-recursion"},
      {"inclusion-exclusion", "inclusion-exclusion-identity"},
  };
  return claims;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings settings;
  AnalyzeOptions analyze_opts;
  SolveOptions solve_opts;
  ConstructOptions construct_opts;
  VerifyOptions verify_opts;

  CLI::App app{"Colouring rules, paradox bounds and witnesses", "paradoxlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", settings.format, "json or csv");
  app.add_option("--output", settings.output, "write the report here instead of stdout");
  app.add_option("--config", settings.config, "key=value file: ball_cap, node_limit, threads, format");
  app.add_flag("--timing", settings.timing, "include wall time in the report");

  CLI::App* analyze = app.add_subcommand("analyze", "exact reproductions of the paradox arguments");
  analyze->add_option("target", analyze_opts.target, "theorem1 | hausdorff | ex4 | ex5-degrees | theorem3 | inclusion-exclusion")
      ->required();
  analyze->add_option("--mode", analyze_opts.mode, "theorem1: formula or brute-force");
  analyze->add_flag("--inject-fault", analyze_opts.inject_fault, "theorem1: corrupt the brute-force table");
  analyze->add_option("--seed", analyze_opts.seed);
  analyze->add_option("--trials", analyze_opts.trials);
  analyze->add_option("--depth", analyze_opts.depth);
  analyze->add_option("--count", analyze_opts.count);

  CLI::App* solve_cmd = app.add_subcommand("solve", "search for a colouring on a finite ball");
  solve_cmd->add_option("--rule", solve_opts.rule)->required();
  solve_cmd->add_option("--presentation", solve_opts.presentation);
  solve_cmd->add_option("--radius", solve_opts.radius)->required();
  solve_cmd->add_option("--bits", solve_opts.bits, "seed or JSON file");
  solve_cmd->add_option("--pin", solve_opts.pin, "JSON file {\"vertices\": [[point, colour], ...]}");
  solve_cmd->add_option("--objective", solve_opts.objective, "colour:min or colour:max");
  solve_cmd->add_option("--node-limit", solve_opts.node_limit);
  solve_cmd->add_option("--enumerate", solve_opts.enumerate, "also count up to N solutions");

  CLI::App* construct = app.add_subcommand("construct", "build and verify an explicit colouring");
  construct->add_option("--witness", construct_opts.witness, "hausdorff | ex1 | ex5 | orbitQ")->required();
  construct->add_option("--radius", construct_opts.radius)->required();
  construct->add_option("--seed", construct_opts.seed);

  CLI::App* verify = app.add_subcommand("verify", "check a colouring against a rule");
  verify->add_option("--rule", verify_opts.rule)->required();
  verify->add_option("--presentation", verify_opts.presentation);
  verify->add_option("--colouring", verify_opts.colouring)->required();
  verify->add_option("--bits", verify_opts.bits, "seed or JSON file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "Usage", e.what());
    return kExitUsage;
  }

  try {
    if (!settings.config.empty()) {
      const std::string format = settings.format;
      Settings from_file;
      read_config(settings.config, from_file);
      from_file.output = settings.output;
      from_file.timing = settings.timing;
      from_file.config = settings.config;
      if (app.count("--format") > 0) from_file.format = format;
      settings = from_file;
    }
    apply_threads(settings);
    if (settings.format != "json" && settings.format != "csv") {
      throw Error(ErrorKind::UnsupportedFormat, "unsupported report format '" + settings.format + "'");
    }

    const auto start = std::chrono::steady_clock::now();
    ReportDocument doc;
    if (*analyze) {
      doc = run_analyze(analyze_opts);
    } else if (*solve_cmd) {
      doc = run_solve(solve_opts, settings);
    } else if (*construct) {
      doc = run_construct(construct_opts, settings);
    } else {
      doc = run_verify(verify_opts);
    }
    if (settings.timing) {
      doc.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    const std::string bytes = emit(doc, settings.format);
    if (settings.output.empty()) {
      out << bytes;
    } else {
      std::ofstream file(settings.output, std::ios::binary);
      if (!file) throw Error(ErrorKind::Parse, "cannot write " + settings.output);
      file << bytes;
    }
    return doc.all_checks_pass() ? kExitOk : kExitVerification;
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    write_error(err, "Internal", e.what());
    return kExitUsage;
  }
}

}  // namespace paradoxlab
