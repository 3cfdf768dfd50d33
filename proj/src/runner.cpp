#include "latlab/runner.hpp"

#include "latlab/chabauty.hpp"
#include "latlab/euc_geom.hpp"
#include "latlab/hyp_geom.hpp"
#include "latlab/lattice_lab.hpp"
#include "latlab/nerve.hpp"
#include "latlab/presets.hpp"
#include "latlab/smallness.hpp"
#include "latlab/solvable.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace latlab::cli {

using json = nlohmann::ordered_json;

namespace {

const std::map<std::string, std::string>& registry() {
  static const std::map<std::string, std::string> r = {
      {"classify", "Classification of isometries of hyperbolic space"},
      {"thickthin", "Thick-thin decomposition of hyperbolic manifolds"},
      {"psi-check", "Main Lemma: the gradient of psi vanishes precisely where psi vanishes"},
      {"presentation", "Presentation from the nerve of a cover: relations of length at most 3"},
      {"count-presentations", "Counting presentations: v^{av} <= N(c,v) <= v^{bv}"},
      {"chabauty", "Chabauty topology on the space of closed subgroups"},
      {"mahler", "Mahler compactness criterion"},
      {"solvable", "Non-uniform lattice in a solvable group"},
      {"heisenberg", "Integral Heisenberg group is a uniform lattice"},
      {"zassenhaus", "Zassenhaus neighbourhood: commutator contraction"},
      {"jordan", "Jordan's theorem on finite linear groups"},
      {"crystallo", "Bieberbach's theorem on crystallographic groups"},
      {"recurrence", "Recurrence lemma"},
      {"span", "Weak Borel density: lattices span the matrix algebra"},
  };
  return r;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw PreconditionError("parameter " + key + ": not a number: " + text);
  return v;
}

long parse_long(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw PreconditionError("parameter " + key + ": not an integer: " + text);
  return v;
}

/// Typed access to the raw parameters. Every value read, defaulted or not,
/// is echoed into the report.
class Params {
public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  std::string text(const std::string& key, const std::string& def) {
    const std::string v = lookup(key).value_or(def);
    echo_[key] = v;
    return v;
  }
  std::optional<std::string> optional_text(const std::string& key) {
    auto v = lookup(key);
    echo_[key] = v ? json(*v) : json(nullptr);
    return v;
  }
  double number(const std::string& key, double def) {
    const auto v = lookup(key);
    const double x = v ? parse_double(key, *v) : def;
    echo_[key] = x;
    return x;
  }
  long integer(const std::string& key, long def, long min = std::numeric_limits<long>::min()) {
    const auto v = lookup(key);
    const long x = v ? parse_long(key, *v) : def;
    if (x < min) throw PreconditionError("parameter " + key + " must be >= " + std::to_string(min));
    echo_[key] = x;
    return x;
  }
  std::vector<double> numbers(const std::string& key, const std::string& def) {
    std::vector<double> out;
    for (const auto& item : split(text(key, def), ',')) out.push_back(parse_double(key, item));
    return out;
  }
  std::vector<Rational> rationals(const std::string& key, const std::string& def) {
    std::vector<Rational> out;
    for (const auto& item : split(text(key, def), ',')) out.push_back(parse_rational(item));
    return out;
  }
  std::vector<long> integers(const std::string& key, const std::string& def) {
    std::vector<long> out;
    for (const auto& item : split(text(key, def), ',')) out.push_back(parse_long(key, item));
    return out;
  }
  std::string choice(const std::string& key, const std::string& def, std::initializer_list<const char*> allowed) {
    const std::string v = text(key, def);
    for (const char* a : allowed)
      if (v == a) return v;
    throw PreconditionError("parameter " + key + ": unsupported value " + v);
  }

  void reject_unknown() const {
    for (const auto& [k, v] : raw_)
      if (!used_.count(k)) throw PreconditionError("unknown parameter: " + k);
  }
  const json& echo() const { return echo_; }
  bool used(const std::string& key) const { return used_.count(key) > 0; }

private:
  std::optional<std::string> lookup(const std::string& key) {
    used_.insert(key);
    const auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    return it->second;
  }
  const std::map<std::string, std::string>& raw_;
  std::set<std::string> used_;
  json echo_ = json::object();
};

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json point_json(const hyp::HPoint& p) { return p.coords(); }

json table(std::vector<std::string> columns, json rows) {
  return json{{"columns", columns}, {"rows", std::move(rows)}};
}

std::string big(const BigInt& n) { return n.str(); }

Exec exec_of(Params& p) { return p.choice("exec", "parallel", {"parallel", "serial"}) == "serial" ? Exec::Serial : Exec::Parallel; }

// ---------------------------------------------------------------------------

json class_json(const hyp::IsometryClass& c) {
  json j;
  j["kind"] = hyp::to_string(c.kind);
  j["translation_length"] = c.translation_length;
  j["infimum_attained"] = c.infimum_attained;
  j["boundary_fixed_points"] = c.boundary_fixed_count;
  if (c.axis) j["axis"] = {hyp::to_string(c.axis->first), hyp::to_string(c.axis->second)};
  if (c.boundary_fixed_point) j["fixed_point"] = hyp::to_string(*c.boundary_fixed_point);
  if (c.interior_fixed_point) j["interior_fixed_point"] = point_json(*c.interior_fixed_point);
  return j;
}

json cmd_classify(Params& p) {
  const auto matrix = p.optional_text("matrix");
  std::vector<std::pair<std::string, hyp::MoebiusIsometry>> items;
  if (matrix) {
    const auto entries = p.numbers("matrix", *matrix);
    if (entries.size() != 4 && entries.size() != 8)
      throw PreconditionError("classify: matrix needs 4 real or 8 (re, im) entries");
    items.emplace_back("matrix", hyp::MoebiusIsometry::from_row_major(entries));
  } else {
    const auto group = presets::moebius_preset(p.text("preset", "sl2z-T"));
    for (std::size_t i = 0; i < group.generators.size(); ++i)
      items.emplace_back("g" + std::to_string(i), group.generators[i]);
  }
  json elements = json::array();
  json rows = json::array();
  for (const auto& [name, g] : items) {
    const auto c = hyp::classify(g);
    json e;
    e["element"] = name;
    e["matrix"] = g.row_major();
    e["trace"] = {g.trace().real(), g.trace().imag()};
    const json cj = class_json(c);
    for (const auto& [k, v] : cj.items()) e[k] = v;
    elements.push_back(e);
    rows.push_back({name, hyp::to_string(c.kind), c.translation_length, c.infimum_attained});
  }
  json r;
  if (items.size() == 1) r["kind"] = elements[0]["kind"];
  r["elements"] = elements;
  r["table"] = table({"element", "kind", "translation_length", "infimum_attained"}, rows);
  return r;
}

json cmd_thickthin(Params& p) {
  const std::string preset = p.text("preset", "sl2z");
  const auto group = presets::moebius_preset(preset);
  const double eps = p.number("epsilon", 0.2);
  const int radius = static_cast<int>(p.integer("word-ball", 5, 1));
  lab::SampleRegion region;
  region.count = static_cast<std::size_t>(p.integer("samples", 1000, 1));
  region.seed = static_cast<std::uint64_t>(p.integer("seed", 0, 0));
  if (preset == "octagon-genus2") {
    region.kind = lab::RegionKind::Octagon;
  } else if (preset.rfind("cyclic-hyperbolic", 0) == 0) {
    region.kind = lab::RegionKind::Annulus;
    region.parameter = hyp::translation_length(group.generators.front()).value;
  } else {
    region.kind = lab::RegionKind::ModularDomain;
    region.parameter = p.number("height-cap", 20.0);
  }
  const auto points = lab::sample_region(region);
  const auto rep = lab::thick_thin_scan(group, eps, points, radius, exec_of(p));

  json components = json::array();
  json rows = json::array();
  for (std::size_t i = 0; i < rep.components.size(); ++i) {
    const auto& c = rep.components[i];
    json j;
    j["kind"] = lab::to_string(c.kind);
    if (c.kind == lab::ComponentKind::Tube) j["core_length"] = c.core_length;
    if (c.axis) j["axis"] = {hyp::to_string(c.axis->first), hyp::to_string(c.axis->second)};
    if (c.fixed_point) j["fixed_point"] = hyp::to_string(*c.fixed_point);
    json words = json::array();
    for (const auto& w : c.witnesses) words.push_back(word_to_string(w));
    j["witnesses"] = words;
    j["samples"] = c.samples.size();
    components.push_back(j);
    rows.push_back({i, lab::to_string(c.kind), c.kind == lab::ComponentKind::Tube ? json(c.core_length) : json(nullptr),
                    c.samples.size()});
  }
  json r;
  r["ball_size"] = rep.ball_size;
  r["samples"] = rep.points.size();
  r["thick"] = rep.thick.size();
  r["cone"] = rep.cone.size();
  r["unresolved"] = rep.unresolved.size();
  r["thin_components"] = rep.components.size();
  r["components"] = components;
  if (!rep.note.empty()) r["note"] = rep.note;
  r["table"] = table({"component", "kind", "core_length", "samples"}, rows);
  return r;
}

json cmd_psi_check(Params& p) {
  const auto group = presets::moebius_preset(p.text("preset", "cusp-model"));
  const double eps = p.number("epsilon", 0.3);
  const int radius = static_cast<int>(p.integer("word-ball", 3, 1));
  const auto count = static_cast<std::size_t>(p.integer("samples", 100, 2));
  const double x = p.number("x", 0.0);
  const double y0 = p.number("y-min", 0.5);
  const double y1 = p.number("y-max", 10.0);
  const double h = p.number("h", 1e-4);
  const double tol = p.number("tol", 1e-10);
  const double grad_tol = p.number("grad-tol", 1e-8);
  const auto bump = p.choice("bump", "standard", {"standard", "plateau"}) == "plateau" ? lab::BumpKind::Plateau
                                                                                       : lab::BumpKind::Standard;
  if (!(y0 > 0.0) || !(y1 > y0)) throw PreconditionError("psi-check: need 0 < y-min < y-max");
  const Exec exec = exec_of(p);
  std::vector<hyp::HPoint> samples;
  for (std::size_t i = 0; i < count; ++i)
    samples.push_back(hyp::HPoint::plane(x, y0 + (y1 - y0) * static_cast<double>(i) / static_cast<double>(count - 1)));
  const auto ctx = lab::psi_context(group, eps, radius, bump, exec);
  const auto rep = lab::gradient_lemma_check(ctx, samples, h, tol, grad_tol, exec);
  json violations = json::array();
  json rows = json::array();
  for (const auto& v : rep.violations) {
    violations.push_back({{"sample", v.sample}, {"y", samples[v.sample].height()}, {"psi", v.psi},
                          {"gradient_norm", v.gradient_norm}});
    rows.push_back({v.sample, samples[v.sample].height(), v.psi, v.gradient_norm});
  }
  json r;
  r["short_elements"] = ctx.elements.size();
  r["evaluated"] = rep.evaluated;
  r["borderline"] = rep.borderline;
  r["disagreeing_samples"] = rep.disagreeing_samples;
  r["violation_count"] = rep.violations.size();
  r["violations"] = violations;
  r["table"] = table({"sample", "y", "psi", "gradient_norm"}, rows);
  return r;
}

json cmd_presentation(Params& p) {
  const std::string preset = p.choice("preset", "torus", {"torus", "octagon-genus2"});
  const bool torus = preset == "torus";
  const double eps = p.number("epsilon", torus ? 0.6 : 0.5);
  const double r = p.number("radius", torus ? 0.6 : 0.55);
  const auto count = static_cast<std::size_t>(p.integer("samples", torus ? 2000 : 3000, 1));
  const auto seed = static_cast<std::uint64_t>(p.integer("seed", 0, 0));
  const auto tree_seed = p.optional_text("tree-seed");
  const Exec exec = exec_of(p);
  if (!(eps > 0.0) || !(r >= 0.5 * eps)) throw PreconditionError("presentation: need epsilon > 0 and radius >= epsilon/2");

  std::shared_ptr<nerve::DeckGroup> net_deck, deck;
  std::vector<nerve::Point> samples;
  if (torus) {
    deck = net_deck = nerve::lattice_translations(2, 2);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < count; ++i) {
      const double a = u(rng);
      samples.push_back(Eigen::Vector2d(a, u(rng)));
    }
  } else {
    const int wb = static_cast<int>(p.integer("word-ball", 6, 1));
    const auto group = presets::octagon_genus2();
    const double diam = 2.0 * presets::octagon_circumradius();
    net_deck = nerve::fuchsian_deck(group, wb, diam + eps + 0.1);
    deck = nerve::fuchsian_deck(group, wb, diam + 4.0 * r + 0.1);
    lab::SampleRegion region{lab::RegionKind::Octagon, count, seed, 0.0};
    for (const auto& q : lab::sample_region(region)) samples.push_back(Eigen::Vector2d(q.horizontal().real(), q.height()));
  }
  const auto net = nerve::build_eps_net(*net_deck, samples, eps);
  const auto complex = nerve::build_nerve(*deck, net.centers, r, exec);
  std::optional<std::uint64_t> ts;
  if (tree_seed) ts = static_cast<std::uint64_t>(parse_long("tree-seed", *tree_seed));
  const auto pres = nerve::presentation_from_nerve(complex, ts);
  const auto ab = nerve::abelianization(pres);

  std::size_t longest = 0;
  json relators = json::array();
  json rows = json::array();
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    longest = std::max(longest, pres.relators[i].size());
    relators.push_back(word_to_string(pres.relators[i]));
    rows.push_back({i, pres.relators[i].size(), word_to_string(pres.relators[i])});
  }
  json torsion = json::array();
  for (const auto& t : ab.torsion) torsion.push_back(big(t));
  std::vector<std::size_t> degree(complex.vertices, 0);
  for (const auto& e : complex.edges) {
    ++degree[e.from];
    ++degree[e.to];
  }
  const std::size_t max_degree = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  // vol(B_{2.5 eps}) / vol(B_{eps/2}) in the model plane
  const double degree_bound = torus ? 25.0 : (std::cosh(2.5 * eps) - 1.0) / (std::cosh(0.5 * eps) - 1.0);
  json r_;
  r_["deck_size"] = deck->size();
  r_["net_size"] = net.centers.size();
  r_["vertices"] = complex.vertices;
  r_["edges"] = complex.edges.size();
  r_["triangles"] = complex.triangles.size();
  r_["euler_characteristic"] = complex.euler_characteristic();
  r_["max_degree"] = max_degree;
  r_["degree_bound"] = degree_bound;
  r_["generators"] = pres.generators;
  r_["relator_count"] = pres.relators.size();
  r_["max_relator_length"] = longest;
  r_["abelianization"] = {{"rank", ab.rank}, {"torsion", torsion}};
  r_["relators"] = relators;
  r_["table"] = table({"relator", "length", "word"}, rows);
  return r_;
}

json cmd_count_presentations(Params& p) {
  const Rational c = parse_rational(p.text("c", "1"));
  const auto vs = p.integers("v", "4,8,16,32");
  if (c <= 0) throw PreconditionError("count-presentations: c must be positive");
  for (long v : vs)
    if (v < 1) throw PreconditionError("count-presentations: v must be >= 1");
  const auto rows = nerve::growth_profile(c, vs);
  json out = json::array();
  json trows = json::array();
  for (const auto& row : rows) {
    out.push_back({{"v", row.v}, {"count", big(row.count)}, {"log_ratio", row.log_ratio}});
    trows.push_back({row.v, big(row.count), row.log_ratio});
  }
  json r;
  r["c"] = to_string(c);
  r["micro_case"] = {{"v", 1}, {"count", big(nerve::count_presentations(c, 1))}};
  r["rows"] = out;
  if (rows.size() >= 2) {
    const auto w = nerve::growth_window(rows);
    r["window"] = {{"low", w.low},
                   {"high", w.high},
                   {"monotone", w.monotone},
                   {"max_step_drift", w.max_step_drift},
                   {"total_drift", w.total_drift}};
  }
  r["table"] = table({"v", "count", "log_ratio"}, trows);
  return r;
}

json subgroup_json(const chab::ClosedSubgroup& h) {
  return {{"dimension", h.dim()},
          {"connected_dim", h.connected().cols()},
          {"connected", matrix_json(h.connected())},
          {"lattice", matrix_json(h.discrete())}};
}

json cmd_chabauty(Params& p) {
  const std::string family = p.choice("family", "inv-n", {"inv-n", "n", "rotating-line"});
  const long n_max = p.integer("n-max", 100, 1);
  const double R = p.number("radius", 1.0);
  const auto radii = p.numbers("radii", "1,2,4");
  const double tol = p.number("tol", 1e-6);
  const Exec exec = exec_of(p);

  chab::SubgroupSequence seq;
  std::optional<chab::ClosedSubgroup> reference;
  std::function<double(long)> expected;
  if (family == "inv-n") {
    seq = [](long n) {
      Eigen::MatrixXd b(1, 1);
      b(0, 0) = 1.0 / static_cast<double>(n);
      return chab::ClosedSubgroup::lattice(b);
    };
    reference = chab::ClosedSubgroup::whole(1);
    expected = [](long n) { return 0.5 / static_cast<double>(n); };
  } else if (family == "n") {
    seq = [](long n) {
      Eigen::MatrixXd b(1, 1);
      b(0, 0) = static_cast<double>(n);
      return chab::ClosedSubgroup::lattice(b);
    };
    reference = chab::ClosedSubgroup::trivial(1);
  } else {
    seq = [](long n) {
      Eigen::MatrixXd v(2, 1);
      v << std::cos(1.0 / static_cast<double>(n)), std::sin(1.0 / static_cast<double>(n));
      return chab::ClosedSubgroup(2, v, Eigen::MatrixXd(2, 0));
    };
    Eigen::MatrixXd v(2, 1);
    v << 1.0, 0.0;
    reference = chab::ClosedSubgroup(2, v, Eigen::MatrixXd(2, 0));
  }

  std::vector<long> indices;
  for (long n = 1; n <= n_max; ++n) indices.push_back(n);
  const auto dist = kernels::map(exec, indices.size(), [&](std::size_t i) {
    return chab::chabauty_distance(seq(indices[i]), *reference, R);
  });
  json rows = json::array();
  double max_error = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    json row = {indices[i], dist[i]};
    if (expected) {
      const double e = expected(indices[i]);
      max_error = std::max(max_error, std::abs(dist[i] - e));
      row.push_back(e);
    }
    rows.push_back(row);
  }

  const auto lim = chab::chabauty_limit(seq, indices, radii, tol, 10000000, exec);
  json r;
  r["family"] = family;
  r["reference"] = subgroup_json(*reference);
  if (expected) r["max_error_vs_closed_form"] = max_error;
  json limit;
  limit["found"] = lim.found;
  limit["verified"] = lim.verified;
  if (lim.limit) limit["subgroup"] = subgroup_json(*lim.limit);
  if (!lim.witness.empty()) limit["witness"] = lim.witness;
  json last = json::array();
  for (std::size_t k = 0; k < lim.radii.size(); ++k)
    last.push_back({{"radius", lim.radii[k]}, {"final_distance", lim.distances[k].empty() ? 0.0 : lim.distances[k].back()}});
  limit["final_distances"] = last;
  r["limit"] = limit;
  std::vector<std::string> cols = {"n", "distance"};
  if (expected) cols.push_back("closed_form");
  r["table"] = table(cols, rows);
  return r;
}

json cmd_mahler(Params& p) {
  const std::string family = p.choice("family", "rotating", {"rotating", "shrinking"});
  const long count = p.integer("count", 40, 1);
  const double v = p.number("covolume-bound", 1.0);
  const double r = p.number("min-length", 0.5);
  const double target = p.number("target", 1e-3);
  std::vector<Eigen::MatrixXd> seq;
  for (long k = 1; k <= count; ++k) {
    const double t = 1.0 / static_cast<double>(k);
    Eigen::Matrix2d b;
    if (family == "rotating")
      b << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    else
      b << t, 0.0, 0.0, 1.0 / t;
    seq.push_back(b);
  }
  const auto rep = chab::mahler_subsequence(seq, v, r, target);
  json sub = json::array();
  for (auto i : rep.subsequence) sub.push_back(i + 1);
  json rr;
  rr["family"] = family;
  rr["subsequence"] = sub;
  rr["limit_basis"] = matrix_json(rep.limit);
  rr["limit_covolume"] = rep.limit_covolume;
  rr["limit_shortest"] = rep.limit_shortest;
  rr["basis_bound"] = rep.basis_bound;
  rr["box_diameter"] = rep.box_diameter;
  rr["verified"] = rep.verified;
  return rr;
}

json cmd_solvable(Params& p) {
  std::vector<std::uint64_t> primes;
  for (long q : p.integers("primes", "5,7,11")) {
    if (q < 2 || !solv::is_prime(static_cast<std::uint64_t>(q)))
      throw PreconditionError("solvable: not a prime: " + std::to_string(q));
    primes.push_back(static_cast<std::uint64_t>(q));
  }
  const auto m = static_cast<std::size_t>(p.integer("m", static_cast<long>(primes.size()), 1));
  if (m > primes.size()) throw PreconditionError("solvable: m exceeds the prime list");
  const Rational bound = parse_rational(p.text("bound", "2"));
  const auto seed = static_cast<std::uint64_t>(p.integer("seed", 0, 0));

  const Rational cov = solv::covolume_product(primes, m);
  json r;
  r["covolume"] = to_string(cov);
  r["gamma_closed"] = solv::gamma_closure_check(primes, 1000, seed);
  try {
    const auto fm = solv::finite_model_count(primes, m);
    r["finite_model"] = {{"group_order", big(fm.group_order)},
                         {"gamma_order", big(fm.gamma_order)},
                         {"compact_order", big(fm.compact_order)},
                         {"ratio", to_string(fm.ratio)},
                         {"matches_covolume", fm.ratio == cov}};
  } catch (const CapExceeded& e) {
    r["finite_model"] = {{"skipped", e.what()}};
  }
  json idx = json::array();
  json rows = json::array();
  for (std::size_t k = 1; k <= m; ++k) {
    const auto ir = solv::indices(primes, k);
    const std::uint64_t pk = primes[k - 1];
    const bool ok = ir.g_index == pk && ir.gamma_index == pk - 1;
    json j = {{"m", k}, {"g_index", ir.g_index}, {"gamma_index", ir.gamma_index}, {"enumerated", ir.enumerated},
              {"expected", {pk, pk - 1}}, {"matches", ok}};
    if (!ir.note.empty()) j["note"] = ir.note;
    idx.push_back(j);
    rows.push_back({k, pk, ir.g_index, ir.gamma_index, to_string(solv::covolume_product(primes, k))});
  }
  r["indices"] = idx;
  const auto cert = solv::lattice_certificate(primes, bound);
  json covs = json::array();
  for (const auto& c : cert.covolumes) covs.push_back(to_string(c));
  r["certificate"] = {{"covolumes", covs},
                      {"strictly_increasing", cert.strictly_increasing},
                      {"series", to_string(cert.series)},
                      {"bound", to_string(cert.bound)},
                      {"stabilizes_at", cert.stabilizes_at},
                      {"verdict", cert.verdict}};
  r["table"] = table({"m", "p_m", "g_index", "gamma_index", "covolume"}, rows);
  return r;
}

json heisenberg_json(const solv::Heisenberg& g) {
  return {to_string(g[0]), to_string(g[1]), to_string(g[2])};
}

json cmd_heisenberg(Params& p) {
  const auto entries = p.rationals("point", "7/3,-5/2,11/4");
  if (entries.size() != 3) throw PreconditionError("heisenberg: point needs three rationals x,y,z");
  const solv::Heisenberg g{entries[0], entries[1], entries[2]};
  const auto red = solv::heisenberg_reduce(g);
  json r;
  r["element"] = heisenberg_json(g);
  r["gamma"] = heisenberg_json(red.gamma);
  r["rest"] = heisenberg_json(red.rest);
  r["recomposes"] = solv::heisenberg_multiply(red.gamma, red.rest) == g;
  r["fundamental_domain_volume"] = "1";
  return r;
}

json cmd_zassenhaus(Params& p) {
  const int d = static_cast<int>(p.integer("dimension", 3, 1));
  const double eps = p.number("epsilon", 0.1);
  const auto pairs = static_cast<std::size_t>(p.integer("pairs", 1000, 1));
  const int levels = static_cast<int>(p.integer("levels", 5, 0));
  const auto gens = static_cast<std::size_t>(p.integer("generators", 3, 1));
  const auto seed = static_cast<std::uint64_t>(p.integer("seed", 0, 0));
  const Exec exec = exec_of(p);

  const auto trial = small::commutator_contraction_trial(d, eps, pairs, seed, exec);
  const auto s = small::MatrixSet::floating(small::random_near_identity(d, gens, eps, seed + 1));
  const auto ladder = small::commutator_ladder(s, levels, exec);
  json rows = json::array();
  for (std::size_t n = 0; n < ladder.max_distance.size(); ++n) {
    rows.push_back({n, ladder.levels[n].size(), ladder.max_distance[n],
                    ladder.bound_asserted ? json(ladder.bound[n]) : json(nullptr)});
  }
  json r;
  r["trial"] = {{"pairs", trial.pairs}, {"violations", trial.violations}, {"max_ratio", trial.max_ratio}};
  r["ladder"] = {{"epsilon", ladder.epsilon},
                 {"bound_asserted", ladder.bound_asserted},
                 {"bound_holds", ladder.bound_holds},
                 {"max_distance", ladder.max_distance}};
  r["table"] = table({"level", "size", "max_distance", "bound"}, rows);
  return r;
}

json cmd_jordan(Params& p) {
  const std::string name = p.choice("group", "a5", {"a5", "q8"});
  const double eps = p.number("epsilon", 0.5);
  const auto metric = p.choice("metric", "frobenius", {"frobenius", "angle"}) == "angle" ? small::IdentityMetric::Angle
                                                                                         : small::IdentityMetric::Frobenius;
  const auto gens = name == "a5" ? presets::a5_generators() : presets::q8_generators();
  const auto f = small::finite_closure(gens);
  const auto j = small::jordan_abelian_index(f, eps, metric);
  json r;
  r["group"] = name;
  r["group_order"] = j.group_order;
  r["subgroup_order"] = j.subgroup_order;
  r["index"] = j.index;
  r["abelian"] = j.abelian;
  r["oracle_max_abelian_order"] = j.oracle_max_abelian_order;
  r["oracle_best_index"] = j.oracle_best_index;
  return r;
}

json cmd_crystallo(Params& p) {
  const auto group = presets::euclidean_preset(p.text("preset", "p2"));
  const int cutoff = static_cast<int>(p.integer("word-ball", 6, 1));
  euc::CrystallographicOptions opts;
  opts.exec = exec_of(p);
  const auto rep = euc::crystallographic_analysis(group.generators, cutoff, opts);
  json r;
  r["cutoff"] = rep.cutoff;
  r["elements"] = rep.elements;
  r["capped"] = rep.capped;
  r["translation_rank"] = rep.translation_rank;
  r["point_group_order"] = rep.point_group_order;
  r["abelian_index"] = rep.abelian_index;
  r["translation_basis"] = matrix_json(rep.translation_basis);
  return r;
}

json cmd_recurrence(Params& p) {
  const std::string mode = p.choice("mode", "vector", {"vector", "rotation", "matrix"});
  const double eps = p.number("epsilon", 0.05);
  lab::RecurrenceReport rep;
  if (mode == "vector") {
    const long n_max = p.integer("n-max", 100, 1);
    const auto v = p.numbers("v", "0.41421356237309503");
    const Eigen::VectorXd vec = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    rep = lab::recurrence_search(vec, eps, n_max);
  } else {
    const long n_max = p.integer("n-max", 10000, 1);
    Eigen::Matrix2d g;
    if (mode == "rotation") {
      const double t = p.number("angle", 1.0);
      g << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    } else {
      const auto m = p.numbers("matrix", "1,1,0,1");
      if (m.size() != 4) throw PreconditionError("recurrence: matrix needs 4 entries");
      g << m[0], m[1], m[2], m[3];
    }
    rep = lab::recurrence_search(g, eps, n_max);
  }
  json rows = json::array();
  for (std::size_t i = 0; i < rep.hits.size(); ++i) {
    json row = {rep.hits[i]};
    if (i < rep.witnesses.size()) {
      const auto& w = rep.witnesses[i];
      row.push_back(std::to_string(w(0, 0)) + " " + std::to_string(w(0, 1)) + " " + std::to_string(w(1, 0)) + " " +
                    std::to_string(w(1, 1)));
    }
    rows.push_back(row);
  }
  json r;
  r["mode"] = mode;
  r["hit_count"] = rep.hits.size();
  r["first_hit"] = rep.hits.empty() ? json(nullptr) : json(rep.hits.front());
  std::vector<std::string> cols = {"n"};
  if (!rep.witnesses.empty()) cols.push_back("lattice_element");
  r["table"] = table(cols, rows);
  return r;
}

json cmd_span(Params& p) {
  const auto group = presets::moebius_preset(p.text("preset", "sl2z"));
  const int radius = static_cast<int>(p.integer("word-ball", 3, 1));
  const auto rep = lab::span_check(group, radius, exec_of(p));
  json r;
  r["ball_size"] = rep.ball_size;
  r["dimension"] = rep.dimension;
  r["regular_witness"] = rep.regular_witness ? json(word_to_string(*rep.regular_witness)) : json(nullptr);
  return r;
}

using Handler = json (*)(Params&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"classify", cmd_classify},     {"thickthin", cmd_thickthin},
      {"psi-check", cmd_psi_check},   {"presentation", cmd_presentation},
      {"count-presentations", cmd_count_presentations},
      {"chabauty", cmd_chabauty},     {"mahler", cmd_mahler},
      {"solvable", cmd_solvable},     {"heisenberg", cmd_heisenberg},
      {"zassenhaus", cmd_zassenhaus}, {"jordan", cmd_jordan},
      {"crystallo", cmd_crystallo},   {"recurrence", cmd_recurrence},
      {"span", cmd_span},
  };
  return h;
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"classify",   "thickthin",  "psi-check", "presentation", "count-presentations",
                                             "chabauty",   "mahler",     "solvable",  "heisenberg",   "zassenhaus",
                                             "jordan",     "crystallo",  "recurrence", "span"};
  return s;
}

std::string anchor(const std::string& command) {
  const auto it = registry().find(command);
  if (it == registry().end()) throw PreconditionError("unknown subcommand: " + command);
  return it->second;
}

RunConfig apply_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("config: cannot open " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError("config: malformed line " + std::to_string(number));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw PreconditionError("config: empty key on line " + std::to_string(number));
    if (key == "out") {
      base.out = value;
    } else if (key == "format") {
      base.format = value;
    } else if (key == "timing") {
      if (value != "true" && value != "false") throw PreconditionError("config: timing must be true or false");
      base.timing = value == "true";
    } else {
      base.params[key] = value;
    }
  }
  return base;
}

json run(const RunConfig& config) {
  const auto it = handlers().find(config.command);
  if (it == handlers().end()) throw PreconditionError("unknown subcommand: " + config.command);
  const auto start = std::chrono::steady_clock::now();
  Params params(config.params);
  json result = it->second(params);
  if (!params.used("seed")) params.integer("seed", 0, 0);
  if (!params.used("exec")) exec_of(params);
  params.reject_unknown();
  json report;
  report["command"] = config.command;
  report["anchor"] = anchor(config.command);
  report["config"] = params.echo();
  report["result"] = std::move(result);
  if (config.timing)
    report["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format != "csv") throw PreconditionError("unknown format: " + format);
  std::ostringstream out;
  const json* tab = nullptr;
  if (report.contains("result") && report["result"].is_object() && report["result"].contains("table"))
    tab = &report["result"]["table"];
  if (tab) {
    bool first = true;
    for (const auto& c : (*tab)["columns"]) {
      out << (first ? "" : ",") << csv_field(c);
      first = false;
    }
    out << "\n";
    for (const auto& row : (*tab)["rows"]) {
      first = true;
      for (const auto& v : row) {
        out << (first ? "" : ",") << csv_field(v);
        first = false;
      }
      out << "\n";
    }
    return out.str();
  }
  out << "key,value\n";
  const nlohmann::json flat = nlohmann::json(report).flatten();
  for (const auto& [k, v] : flat.items()) out << csv_field(k) << "," << csv_field(v) << "\n";
  return out.str();
}

int exit_code(const std::string& kind) { return kind == "borderline" ? 3 : 2; }

json error_report(const RunConfig& config, const std::string& kind, const std::string& message,
                  const std::vector<std::string>& candidates) {
  json report;
  report["command"] = config.command;
  const auto it = registry().find(config.command);
  report["anchor"] = it == registry().end() ? json(nullptr) : json(it->second);
  json cfg = json::object();
  for (const auto& [k, v] : config.params) cfg[k] = v;
  report["config"] = cfg;
  json err;
  err["kind"] = kind;
  err["message"] = message;
  err["exit_code"] = exit_code(kind);
  if (!candidates.empty()) err["candidates"] = candidates;
  report["error"] = err;
  return report;
}

}  // namespace latlab::cli
