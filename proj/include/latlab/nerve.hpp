#pragma once

// Epsilon-nets, nerves of ball covers of a quotient X / Delta, presentations
// with relators of length at most 3 read off the nerve, and abelianization.
//
// The nerve is built equivariantly: balls are lifted to X and simplices are
// orbits of lifted simplices under the deck group Delta. Vertices are the net
// centres, an edge is a pair (centre i, deck translate g of centre j), and a
// triangle a lifted triple. This stays correct when a ball meets another
// ball's translates more than once.

#include "latlab/common.hpp"
#include "latlab/exact.hpp"
#include "latlab/hyp_geom.hpp"
#include "latlab/word_ball.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace latlab::nerve {

using Point = Eigen::VectorXd;

/// Isometry group acting on the model space, truncated to a finite set.
/// Element 0 is the identity.
class DeckGroup {
public:
  virtual ~DeckGroup() = default;
  virtual std::size_t size() const = 0;
  virtual Point apply(std::size_t g, const Point& p) const = 0;
  /// Index of a^-1 b, or nullopt when it lies outside the truncation.
  virtual std::optional<std::size_t> relative(std::size_t a, std::size_t b) const = 0;
  virtual std::size_t inverse(std::size_t g) const = 0;
  /// Distance in the model space.
  virtual double distance(const Point& p, const Point& q) const = 0;
  virtual std::string label(std::size_t g) const = 0;
  virtual bool hyperbolic() const { return false; }
};

/// Translations by Z^n with every coordinate in [-shell, shell], acting on R^n.
std::shared_ptr<DeckGroup> lattice_translations(int n, int shell = 2);
/// Trivial group on R^n (n > 0) or on H^2 (n = 0).
std::shared_ptr<DeckGroup> trivial_deck(int n);
/// Word ball of a Fuchsian group acting on H^2, points stored as (x, y).
/// Only elements moving i by at most `max_displacement` are kept.
std::shared_ptr<DeckGroup> fuchsian_deck(const FinitelyGeneratedGroup<hyp::MoebiusIsometry>& group, int radius,
                                         double max_displacement = std::numeric_limits<double>::infinity());

/// min over the deck group of d(p, g q).
double quotient_distance(const DeckGroup& deck, const Point& p, const Point& q);

struct EpsNet {
  std::vector<Point> centers;
  double epsilon = 0.0;
  /// Every sample lies within epsilon of a centre.
  bool maximal = false;
  std::size_t samples = 0;
};

/// Greedy insertion over the sample stream using the quotient distance.
/// Throws CapExceeded when the net outgrows `cap`.
EpsNet build_eps_net(const DeckGroup& deck, const std::vector<Point>& samples, double eps, std::size_t cap = 5000);

struct Edge {
  std::size_t from = 0, to = 0;
  std::size_t deck = 0;  // the edge joins centre `from` with deck(to)
};

/// An oriented edge of the complex and the direction it is traversed in.
struct EdgeUse {
  std::size_t edge = 0;
  int sign = 1;
};

struct Triangle {
  std::size_t vertex[3] = {0, 0, 0};
  std::size_t deck[3] = {0, 0, 0};  // deck[0] is the identity
  /// Boundary loop 0 -> 1 -> 2 -> 0.
  EdgeUse boundary[3];
  double minimax = 0.0;
};

struct NerveComplex {
  std::size_t vertices = 0;
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  double radius = 0.0;
  int euler_characteristic() const {
    return static_cast<int>(vertices) - static_cast<int>(edges.size()) + static_cast<int>(triangles.size());
  }
};

/// Radius of the smallest ball containing the three points.
double minimax_radius(const DeckGroup& deck, const Point& a, const Point& b, const Point& c);

/// Edges where lifted balls of radius r meet, triangles where three do.
NerveComplex build_nerve(const DeckGroup& deck, const std::vector<Point>& centers, double r,
                         Exec exec = Exec::Parallel);

struct Presentation {
  std::size_t generators = 0;
  std::vector<Word> relators;  // letters +-(i+1)
  std::vector<std::size_t> tree_edges;
  std::vector<std::size_t> generator_edges;  // edge index of each generator
};

/// Spanning tree by breadth-first search from vertex 0, or by Kruskal over a
/// seeded shuffle of the edges. Throws PreconditionError when disconnected.
Presentation presentation_from_nerve(const NerveComplex& n, std::optional<std::uint64_t> tree_seed = std::nullopt);

struct Abelianization {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  // elementary divisors > 1
};

/// Smith normal form of the relator exponent matrix.
Abelianization abelianization(const Presentation& p);
/// Diagonal of the Smith normal form, nonzero entries only.
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m);

/// Parses relators such as "a b A B" (upper case = inverse) or "g0 g1^-1".
Presentation parse_presentation(std::size_t generators, const std::vector<std::string>& relators);

std::string export_complex(const NerveComplex& n, const DeckGroup& deck);
std::string export_presentation(const Presentation& p);

// ---------------------------------------------------------------------------
// counting

/// Number of presentations with at most ceil(c v) generators and at most
/// ceil(c v) relators: relators form a multiset of nonempty words of length
/// <= 3 over the 2g letters.
BigInt count_presentations(const Rational& c, long v);
/// Nonempty words of length <= 3 over 2g letters.
BigInt word_count(long g);

struct GrowthRow {
  long v = 0;
  BigInt count;
  double log_ratio = 0.0;  // log N / (v log v)
};

std::vector<GrowthRow> growth_profile(const Rational& c, const std::vector<long>& vs);

struct GrowthWindow {
  double low = 0.0, high = 0.0;
  bool monotone = false;
  double max_step_drift = 0.0;  // largest |r_{i+1} - r_i| / r_i
  double total_drift = 0.0;     // |r_last - r_first| / r_first
};

GrowthWindow growth_window(const std::vector<GrowthRow>& rows);

/// Natural log of a positive big integer.
double log_big(const BigInt& n);

}  // namespace latlab::nerve
