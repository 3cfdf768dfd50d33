#pragma once

// Breadth-first enumeration of group elements by word length over a
// symmetric generating set, with tolerance-aware deduplication.

#include "latlab/common.hpp"
#include "latlab/euc_geom.hpp"
#include "latlab/exact.hpp"
#include "latlab/hyp_geom.hpp"
#include "latlab/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latlab {

/// Quantised coordinates of an element; equal keys mean equal elements.
struct ElementKey {
  std::vector<std::int64_t> q;
  bool operator==(const ElementKey&) const = default;
};

struct ElementKeyHash {
  std::size_t operator()(const ElementKey& k) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : k.q) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline std::int64_t quantise(double x, double step = 1e-6) {
  const double r = std::round(x / step);
  return static_cast<std::int64_t>(r == 0.0 ? 0.0 : r);  // folds -0
}

template <class E>
struct GroupTraits;

template <>
struct GroupTraits<hyp::MoebiusIsometry> {
  using Point = hyp::HPoint;
  static hyp::MoebiusIsometry identity_like(const hyp::MoebiusIsometry&) { return {}; }
  static hyp::MoebiusIsometry multiply(const hyp::MoebiusIsometry& a, const hyp::MoebiusIsometry& b) { return a * b; }
  static hyp::MoebiusIsometry inverse(const hyp::MoebiusIsometry& a) { return a.inverse(); }
  static ElementKey key(const hyp::MoebiusIsometry& a) {
    // entries are already sign-canonical
    ElementKey k;
    for (int i = 0; i < 4; ++i) {
      k.q.push_back(quantise(a.matrix()(i / 2, i % 2).real()));
      k.q.push_back(quantise(a.matrix()(i / 2, i % 2).imag()));
    }
    return k;
  }
  static double displacement(const hyp::MoebiusIsometry& g, const Point& p) { return hyp::displacement(g, p); }
};

template <>
struct GroupTraits<euc::EuclideanIsometry> {
  using Point = Eigen::VectorXd;
  static euc::EuclideanIsometry identity_like(const euc::EuclideanIsometry& a) {
    return euc::EuclideanIsometry::identity(a.dim());
  }
  static euc::EuclideanIsometry multiply(const euc::EuclideanIsometry& a, const euc::EuclideanIsometry& b) {
    return a * b;
  }
  static euc::EuclideanIsometry inverse(const euc::EuclideanIsometry& a) { return a.inverse(); }
  static ElementKey key(const euc::EuclideanIsometry& a) {
    ElementKey k;
    for (Eigen::Index i = 0; i < a.linear().size(); ++i) k.q.push_back(quantise(a.linear().data()[i]));
    for (Eigen::Index i = 0; i < a.translation().size(); ++i) k.q.push_back(quantise(a.translation()(i)));
    return k;
  }
  static double displacement(const euc::EuclideanIsometry& g, const Point& p) { return euc::displacement(g, p); }
};

/// Letters are +-(i+1) for generator i and its inverse.
using Word = std::vector<int>;

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int l : w) {
    if (!out.empty()) out += ' ';
    out += 'g' + std::to_string(std::abs(l) - 1);
    if (l < 0) out += "^-1";
  }
  return out;
}

template <class E>
struct WordBall {
  int radius = 0;
  std::vector<Word> words;
  std::vector<E> elements;
  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> index;

  std::size_t size() const { return elements.size(); }
  int length(std::size_t i) const { return static_cast<int>(words[i].size()); }
  /// Index of an element, or npos.
  std::size_t find(const E& e) const {
    const auto it = index.find(GroupTraits<E>::key(e));
    return it == index.end() ? static_cast<std::size_t>(-1) : it->second;
  }
};

template <class E>
struct FinitelyGeneratedGroup {
  std::vector<E> generators;
  bool exact = false;
  std::string name;

  /// Generators followed by their inverses, with the letter for each.
  std::vector<std::pair<int, E>> letters() const {
    std::vector<std::pair<int, E>> out;
    for (std::size_t i = 0; i < generators.size(); ++i) out.emplace_back(static_cast<int>(i) + 1, generators[i]);
    for (std::size_t i = 0; i < generators.size(); ++i)
      out.emplace_back(-static_cast<int>(i) - 1, GroupTraits<E>::inverse(generators[i]));
    return out;
  }
};

/// One BFS level: all products frontier[i] * letter[j], computed in the
/// order (i, j). Serial reference.
template <class E>
std::vector<E> expand_frontier_serial(const std::vector<E>& frontier, const std::vector<std::pair<int, E>>& letters) {
  return kernels::map_serial(frontier.size() * letters.size(), [&](std::size_t k) {
    return GroupTraits<E>::multiply(frontier[k / letters.size()], letters[k % letters.size()].second);
  });
}

template <class E>
std::vector<E> expand_frontier_parallel(const std::vector<E>& frontier,
                                        const std::vector<std::pair<int, E>>& letters) {
  return kernels::map_parallel(frontier.size() * letters.size(), [&](std::size_t k) {
    return GroupTraits<E>::multiply(frontier[k / letters.size()], letters[k % letters.size()].second);
  });
}

/// Every element of word length <= radius exactly once, each with a word of
/// minimal length. With `capped` non-null the enumeration stops at the cap
/// and flags it instead of throwing. Deduplication happens in a deterministic serial merge,
/// so both execution paths return identical balls.
template <class E>
WordBall<E> word_ball(const FinitelyGeneratedGroup<E>& group, int radius, std::size_t cap = 1000000,
                      Exec exec = Exec::Parallel, bool* capped = nullptr) {
  if (capped) *capped = false;
  if (radius < 0) throw PreconditionError("word_ball: radius must be >= 0");
  if (group.generators.empty()) throw PreconditionError("word_ball: empty generator list");
  WordBall<E> ball;
  ball.radius = radius;
  const E id = GroupTraits<E>::identity_like(group.generators.front());
  ball.words.push_back({});
  ball.elements.push_back(id);
  ball.index.emplace(GroupTraits<E>::key(id), 0);

  const auto letters = group.letters();
  std::vector<std::size_t> frontier_ids{0};
  for (int level = 1; level <= radius && !frontier_ids.empty(); ++level) {
    std::vector<E> frontier;
    frontier.reserve(frontier_ids.size());
    for (auto id_ : frontier_ids) frontier.push_back(ball.elements[id_]);
    const std::vector<E> products =
        exec == Exec::Serial ? expand_frontier_serial(frontier, letters) : expand_frontier_parallel(frontier, letters);
    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < products.size(); ++k) {
      auto [it, inserted] = ball.index.emplace(GroupTraits<E>::key(products[k]), ball.elements.size());
      if (!inserted) continue;
      if (ball.elements.size() >= cap) {
        ball.index.erase(it);
        if (!capped) throw CapExceeded("word_ball: element cap exceeded");
        *capped = true;
        return ball;
      }
      Word w = ball.words[frontier_ids[k / letters.size()]];
      w.push_back(letters[k % letters.size()].first);
      ball.words.push_back(std::move(w));
      ball.elements.push_back(products[k]);
      next.push_back(it->second);
    }
    frontier_ids = std::move(next);
  }
  return ball;
}

}  // namespace latlab
