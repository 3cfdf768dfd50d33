#include "latlab/nerve.hpp"

#include "latlab/kernels.hpp"
#include "latlab/lorentz.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace latlab::nerve {

namespace {

class LatticeDeck final : public DeckGroup {
public:
  LatticeDeck(int n, int shell) : n_(n), shell_(shell), side_(2 * shell + 1) {
    // identity first, then the remaining shell vectors in lexicographic order
    std::vector<int> v(static_cast<std::size_t>(n), -shell);
    offsets_.push_back(Eigen::VectorXi::Zero(n));
    for (;;) {
      Eigen::VectorXi e(n);
      for (int i = 0; i < n; ++i) e(i) = v[static_cast<std::size_t>(i)];
      if (!e.isZero()) offsets_.push_back(e);
      int i = n - 1;
      while (i >= 0 && v[static_cast<std::size_t>(i)] == shell) v[static_cast<std::size_t>(i--)] = -shell;
      if (i < 0) break;
      ++v[static_cast<std::size_t>(i)];
    }
    for (std::size_t g = 0; g < offsets_.size(); ++g) lookup_.emplace(code(offsets_[g]), g);
  }

  std::size_t size() const override { return offsets_.size(); }
  Point apply(std::size_t g, const Point& p) const override { return p + offsets_[g].cast<double>(); }
  std::optional<std::size_t> relative(std::size_t a, std::size_t b) const override {
    return find(offsets_[b] - offsets_[a]);
  }
  std::size_t inverse(std::size_t g) const override { return *find(-offsets_[g]); }
  double distance(const Point& p, const Point& q) const override { return (p - q).norm(); }
  std::string label(std::size_t g) const override {
    std::string s = "(";
    for (int i = 0; i < n_; ++i) s += (i ? "," : "") + std::to_string(offsets_[g](i));
    return s + ")";
  }

private:
  std::optional<std::size_t> find(const Eigen::VectorXi& e) const {
    if (e.cwiseAbs().maxCoeff() > shell_) return std::nullopt;
    return lookup_.at(code(e));
  }
  long code(const Eigen::VectorXi& e) const {
    long c = 0;
    for (int i = 0; i < n_; ++i) c = c * side_ + (e(i) + shell_);
    return c;
  }
  int n_, shell_, side_;
  std::vector<Eigen::VectorXi> offsets_;
  std::map<long, std::size_t> lookup_;
};

class TrivialDeck final : public DeckGroup {
public:
  explicit TrivialDeck(int n) : n_(n) {}
  std::size_t size() const override { return 1; }
  Point apply(std::size_t, const Point& p) const override { return p; }
  std::optional<std::size_t> relative(std::size_t, std::size_t) const override { return 0; }
  std::size_t inverse(std::size_t) const override { return 0; }
  double distance(const Point& p, const Point& q) const override {
    if (n_ == 0) return hyp::distance(hyp::HPoint::plane(p(0), p(1)), hyp::HPoint::plane(q(0), q(1)));
    return (p - q).norm();
  }
  std::string label(std::size_t) const override { return "1"; }
  bool hyperbolic() const override { return n_ == 0; }

private:
  int n_;
};

class FuchsianDeck final : public DeckGroup {
public:
  FuchsianDeck(const FinitelyGeneratedGroup<hyp::MoebiusIsometry>& group, int radius, double max_displacement) {
    const auto ball = word_ball(group, radius);
    const auto base = hyp::HPoint::plane(0.0, 1.0);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (hyp::displacement(ball.elements[i], base) > max_displacement) continue;
      index_.emplace(GroupTraits<hyp::MoebiusIsometry>::key(ball.elements[i]), elements_.size());
      elements_.push_back(ball.elements[i]);
      words_.push_back(ball.words[i]);
    }
  }
  std::size_t size() const override { return elements_.size(); }
  Point apply(std::size_t g, const Point& p) const override {
    const auto q = elements_[g].apply(hyp::HPoint::plane(p(0), p(1)));
    return Eigen::Vector2d(q.horizontal().real(), q.height());
  }
  std::optional<std::size_t> relative(std::size_t a, std::size_t b) const override {
    return find(elements_[a].inverse() * elements_[b]);
  }
  std::size_t inverse(std::size_t g) const override {
    const auto i = find(elements_[g].inverse());
    if (!i) throw std::logic_error("fuchsian deck: ball is not closed under inversion");
    return *i;
  }
  double distance(const Point& p, const Point& q) const override {
    return hyp::distance(hyp::HPoint::plane(p(0), p(1)), hyp::HPoint::plane(q(0), q(1)));
  }
  std::string label(std::size_t g) const override { return word_to_string(words_[g]); }
  bool hyperbolic() const override { return true; }

private:
  std::optional<std::size_t> find(const hyp::MoebiusIsometry& m) const {
    const auto it = index_.find(GroupTraits<hyp::MoebiusIsometry>::key(m));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::vector<hyp::MoebiusIsometry> elements_;
  std::vector<Word> words_;
  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> index_;
};

Eigen::Vector3d lift(const Point& p) {
  return hyp::to_hyperboloid(hyp::HPoint::plane(p(0), p(1))).vector();
}

double mink(const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2); }

double hyperboloid_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::acosh(std::max(1.0, -mink(a, b)));
}

}  // namespace

std::shared_ptr<DeckGroup> lattice_translations(int n, int shell) {
  if (n < 1 || shell < 0) throw PreconditionError("lattice_translations: need n >= 1 and shell >= 0");
  return std::make_shared<LatticeDeck>(n, shell);
}

std::shared_ptr<DeckGroup> trivial_deck(int n) {
  if (n < 0) throw PreconditionError("trivial_deck: negative dimension");
  return std::make_shared<TrivialDeck>(n);
}

std::shared_ptr<DeckGroup> fuchsian_deck(const FinitelyGeneratedGroup<hyp::MoebiusIsometry>& group, int radius,
                                         double max_displacement) {
  return std::make_shared<FuchsianDeck>(group, radius, max_displacement);
}

double quotient_distance(const DeckGroup& deck, const Point& p, const Point& q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < deck.size(); ++g) best = std::min(best, deck.distance(p, deck.apply(g, q)));
  return best;
}

EpsNet build_eps_net(const DeckGroup& deck, const std::vector<Point>& samples, double eps, std::size_t cap) {
  if (!(eps > 0.0)) throw PreconditionError("build_eps_net: eps must be positive");
  EpsNet net;
  net.epsilon = eps;
  net.samples = samples.size();
  for (const auto& s : samples) {
    bool covered = false;
    for (const auto& c : net.centers)
      if (quotient_distance(deck, c, s) < eps) {
        covered = true;
        break;
      }
    if (covered) continue;
    if (net.centers.size() >= cap) throw CapExceeded("build_eps_net: net size cap exceeded");
    net.centers.push_back(s);
  }
  net.maximal = true;
  return net;
}

double minimax_radius(const DeckGroup& deck, const Point& a, const Point& b, const Point& c) {
  constexpr double slack = 1e-12;
  if (deck.hyperbolic()) {
    const Eigen::Vector3d x[3] = {lift(a), lift(b), lift(c)};
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      const auto& p = x[i];
      const auto& q = x[(i + 1) % 3];
      const auto& o = x[(i + 2) % 3];
      const Eigen::Vector3d s = p + q;
      const Eigen::Vector3d m = s / std::sqrt(-mink(s, s));
      const double r = hyperboloid_distance(p, q) / 2.0;
      if (hyperboloid_distance(m, o) <= r + slack) best = std::min(best, r);
    }
    if (std::isfinite(best)) return best;
    // circumcentre: Q-orthogonal to both differences
    const Eigen::Vector3d k = (x[0] - x[1]).cross(x[0] - x[2]);
    Eigen::Vector3d n(-k(0), k(1), k(2));
    const double nn = mink(n, n);
    if (!(nn < 0.0)) {
      // no circle through the three points
      return std::max({hyperboloid_distance(x[0], x[1]), hyperboloid_distance(x[1], x[2]),
                       hyperboloid_distance(x[0], x[2])}) / 2.0;
    }
    n /= std::sqrt(-nn);
    if (n(0) < 0.0) n = -n;
    return hyperboloid_distance(n, x[0]);
  }
  const Point pts[3] = {a, b, c};
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const Point m = (pts[i] + pts[(i + 1) % 3]) / 2.0;
    const double r = (pts[i] - pts[(i + 1) % 3]).norm() / 2.0;
    if ((m - pts[(i + 2) % 3]).norm() <= r + slack) best = std::min(best, r);
  }
  if (std::isfinite(best)) return best;
  const Point u = b - a, w = c - a;
  Eigen::Matrix2d gram;
  gram << u.dot(u), u.dot(w), u.dot(w), w.dot(w);
  const Eigen::Vector2d ab = gram.fullPivLu().solve(Eigen::Vector2d(u.dot(u) / 2.0, w.dot(w) / 2.0));
  return (ab(0) * u + ab(1) * w).norm();
}

namespace {

using EdgeKey = std::tuple<std::size_t, std::size_t, std::size_t>;

struct Member {
  std::size_t vertex, deck;
  auto operator<=>(const Member&) const = default;
};

std::size_t need(std::optional<std::size_t> i) {
  if (!i) throw CapExceeded("nerve: deck truncation too small for the cover");
  return *i;
}

// canonical key of the orbit of the oriented edge (a, 1) -> (b, rel)
std::pair<EdgeKey, int> canonical_edge(const DeckGroup& deck, std::size_t a, std::size_t b, std::size_t rel) {
  if (a < b) return {{a, b, rel}, 1};
  const std::size_t inv = deck.inverse(rel);
  if (a > b) return {{b, a, inv}, -1};
  return rel < inv ? std::pair{EdgeKey{a, a, rel}, 1} : std::pair{EdgeKey{a, a, inv}, -1};
}

}  // namespace

NerveComplex build_nerve(const DeckGroup& deck, const std::vector<Point>& centers, double r, Exec exec) {
  if (!(r > 0.0)) throw PreconditionError("build_nerve: radius must be positive");
  const std::size_t v = centers.size();
  NerveComplex n;
  n.vertices = v;
  n.radius = r;

  // neighbours (j, g) of each centre i: d(p_i, g p_j) < 2r
  const auto neighbours = kernels::map(exec, v, [&](std::size_t i) {
    std::vector<Member> out;
    for (std::size_t j = 0; j < v; ++j)
      for (std::size_t g = 0; g < deck.size(); ++g) {
        if (j == i && g == 0) continue;
        if (deck.distance(centers[i], deck.apply(g, centers[j])) < 2.0 * r) out.push_back({j, g});
      }
    return out;
  });

  std::map<EdgeKey, std::size_t> edge_index;
  for (std::size_t i = 0; i < v; ++i)
    for (const auto& m : neighbours[i]) {
      const auto [key, sign] = canonical_edge(deck, i, m.vertex, m.deck);
      if (sign != 1 || edge_index.count(key)) continue;
      edge_index.emplace(key, n.edges.size());
      n.edges.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    }

  auto use = [&](const Member& x, const Member& y) -> std::optional<EdgeUse> {
    const std::size_t rel = need(deck.relative(x.deck, y.deck));
    const auto [key, sign] = canonical_edge(deck, x.vertex, y.vertex, rel);
    const auto it = edge_index.find(key);
    if (it == edge_index.end()) return std::nullopt;
    return EdgeUse{it->second, sign};
  };

  // canonical form: anchor each member at the identity, keep the least tuple
  auto canonical = [&](const Member (&t)[3]) {
    std::array<Member, 3> best{};
    bool first = true;
    for (int a = 0; a < 3; ++a) {
      std::array<Member, 3> c;
      c[0] = {t[a].vertex, 0};
      c[1] = {t[(a + 1) % 3].vertex, need(deck.relative(t[a].deck, t[(a + 1) % 3].deck))};
      c[2] = {t[(a + 2) % 3].vertex, need(deck.relative(t[a].deck, t[(a + 2) % 3].deck))};
      if (c[2] < c[1]) std::swap(c[1], c[2]);
      if (first || c < best) best = c;
      first = false;
    }
    return best;
  };

  struct Found {
    std::array<Member, 3> members;
    double minimax;
  };
  const auto found = kernels::map(exec, v, [&](std::size_t i) {
    std::vector<Found> out;
    const auto& nb = neighbours[i];
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y) {
        const Member t[3] = {{i, 0}, nb[x], nb[y]};
        if (!use(t[1], t[2])) continue;
        const double mm = minimax_radius(deck, centers[i], deck.apply(nb[x].deck, centers[nb[x].vertex]),
                                         deck.apply(nb[y].deck, centers[nb[y].vertex]));
        if (mm >= r) continue;
        out.push_back({canonical(t), mm});
      }
    return out;
  });

  std::set<std::array<Member, 3>> seen;
  for (const auto& list : found)
    for (const auto& f : list) {
      if (!seen.insert(f.members).second) continue;
      Triangle t;
      for (int k = 0; k < 3; ++k) {
        t.vertex[k] = f.members[static_cast<std::size_t>(k)].vertex;
        t.deck[k] = f.members[static_cast<std::size_t>(k)].deck;
      }
      for (int k = 0; k < 3; ++k) {
        const auto e = use(f.members[static_cast<std::size_t>(k)], f.members[static_cast<std::size_t>((k + 1) % 3)]);
        if (!e) throw std::logic_error("nerve: triangle edge missing from the edge list");
        t.boundary[k] = *e;
      }
      t.minimax = f.minimax;
      n.triangles.push_back(t);
    }
  return n;
}

Presentation presentation_from_nerve(const NerveComplex& n, std::optional<std::uint64_t> tree_seed) {
  if (n.vertices == 0) throw PreconditionError("presentation_from_nerve: empty complex");
  Presentation p;
  std::vector<bool> in_tree(n.edges.size(), false);
  std::size_t joined = 1;
  if (!tree_seed) {
    std::vector<std::vector<std::size_t>> adjacent(n.vertices);
    for (std::size_t e = 0; e < n.edges.size(); ++e) {
      adjacent[n.edges[e].from].push_back(e);
      adjacent[n.edges[e].to].push_back(e);
    }
    std::vector<bool> seen(n.vertices, false);
    std::vector<std::size_t> queue{0};
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (auto e : adjacent[queue[head]]) {
        const std::size_t other = n.edges[e].from == queue[head] ? n.edges[e].to : n.edges[e].from;
        if (seen[other]) continue;
        seen[other] = true;
        in_tree[e] = true;
        queue.push_back(other);
        ++joined;
      }
  } else {
    std::vector<std::size_t> order(n.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(*tree_seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> parent(n.vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (auto e : order) {
      const auto a = find(n.edges[e].from), b = find(n.edges[e].to);
      if (a == b) continue;
      parent[a] = b;
      in_tree[e] = true;
      ++joined;
    }
  }
  if (joined != n.vertices) throw PreconditionError("presentation_from_nerve: complex is disconnected");

  std::vector<std::size_t> generator_of(n.edges.size(), 0);
  for (std::size_t e = 0; e < n.edges.size(); ++e) {
    if (in_tree[e]) {
      p.tree_edges.push_back(e);
    } else {
      generator_of[e] = p.generator_edges.size();
      p.generator_edges.push_back(e);
    }
  }
  p.generators = p.generator_edges.size();
  for (const auto& t : n.triangles) {
    Word w;
    for (const auto& u : t.boundary)
      if (!in_tree[u.edge]) w.push_back(u.sign * static_cast<int>(generator_of[u.edge] + 1));
    p.relators.push_back(std::move(w));
  }
  return p;
}

std::string export_complex(const NerveComplex& n, const DeckGroup& deck) {
  std::ostringstream out;
  out << "vertices " << n.vertices << "\n";
  out << "edges " << n.edges.size() << "\n";
  for (std::size_t e = 0; e < n.edges.size(); ++e)
    out << "e " << e << ' ' << n.edges[e].from << ' ' << n.edges[e].to << ' ' << deck.label(n.edges[e].deck) << "\n";
  out << "triangles " << n.triangles.size() << "\n";
  for (std::size_t t = 0; t < n.triangles.size(); ++t) {
    out << "t " << t;
    for (const auto& u : n.triangles[t].boundary) out << ' ' << (u.sign > 0 ? '+' : '-') << u.edge;
    out << "\n";
  }
  return out.str();
}

std::string export_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "generators " << p.generators << "\n";
  out << "relators " << p.relators.size() << "\n";
  for (const auto& r : p.relators) out << word_to_string(r) << "\n";
  return out.str();
}

Presentation parse_presentation(std::size_t generators, const std::vector<std::string>& relators) {
  Presentation p;
  p.generators = generators;
  auto letter = [&](int index, bool inverse) {
    if (index < 0 || static_cast<std::size_t>(index) >= generators)
      throw PreconditionError("parse_presentation: generator out of range");
    return inverse ? -(index + 1) : index + 1;
  };
  for (const auto& text : relators) {
    Word w;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
      if (token.size() > 1 && token[0] == 'g' && std::isdigit(static_cast<unsigned char>(token[1]))) {
        std::size_t used = 0;
        const int idx = std::stoi(token.substr(1), &used);
        const std::string rest = token.substr(1 + used);
        if (!rest.empty() && rest != "^-1") throw PreconditionError("parse_presentation: bad token " + token);
        w.push_back(letter(idx, !rest.empty()));
        continue;
      }
      for (char ch : token) {
        if (!std::isalpha(static_cast<unsigned char>(ch))) throw PreconditionError("parse_presentation: bad token " + token);
        const bool inv = std::isupper(static_cast<unsigned char>(ch));
        w.push_back(letter(std::tolower(static_cast<unsigned char>(ch)) - 'a', inv));
      }
    }
    p.relators.push_back(std::move(w));
  }
  return p;
}

}  // namespace latlab::nerve
