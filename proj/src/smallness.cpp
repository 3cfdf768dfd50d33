#include "latlab/smallness.hpp"

#include "latlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace latlab::small {

namespace {

ElementKey float_key(const Eigen::MatrixXd& m) {
  ElementKey k;
  for (Eigen::Index i = 0; i < m.size(); ++i) k.q.push_back(quantise(m.data()[i], 1e-12));
  return k;
}

ElementKey complex_key(const Eigen::MatrixXcd& m) {
  ElementKey k;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    k.q.push_back(quantise(m.data()[i].real(), 1e-8));
    k.q.push_back(quantise(m.data()[i].imag(), 1e-8));
  }
  return k;
}

double frobenius_inverse_norm(const Eigen::MatrixXd& m) { return m.inverse().norm(); }

double frobenius_inverse_norm(const RationalMatrix& m) { return m.inverse().to_double().norm(); }

}  // namespace

MatrixSet MatrixSet::exact(std::vector<RationalMatrix> m) {
  MatrixSet s;
  s.exact_flag_ = true;
  s.dim_ = m.empty() ? 0 : m.front().dim();
  for (const auto& x : m) {
    if (x.dim() != s.dim_) throw PreconditionError("MatrixSet: mixed dimensions");
    if (x.determinant() == 0) throw PreconditionError("MatrixSet: singular element");
  }
  s.exact_ = std::move(m);
  return s;
}

MatrixSet MatrixSet::floating(std::vector<Eigen::MatrixXd> m) {
  MatrixSet s;
  s.dim_ = m.empty() ? 0 : static_cast<std::size_t>(m.front().rows());
  for (const auto& x : m) {
    if (x.rows() != x.cols() || static_cast<std::size_t>(x.rows()) != s.dim_)
      throw PreconditionError("MatrixSet: mixed dimensions");
    if (std::abs(x.determinant()) < 1e-300) throw PreconditionError("MatrixSet: singular element");
  }
  s.float_ = std::move(m);
  return s;
}

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw PreconditionError("commutator: dimension mismatch");
  if (std::abs(a.determinant()) < 1e-300 || std::abs(b.determinant()) < 1e-300)
    throw PreconditionError("commutator: singular input");
  return a * b * a.inverse() * b.inverse();
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw PreconditionError("commutator: dimension mismatch");
  return a * b * a.inverse() * b.inverse();
}

double distance_to_identity(const Eigen::MatrixXd& m) {
  return (m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).norm();
}

double distance_to_identity(const RationalMatrix& m) {
  return distance_to_identity(m.to_double());
}

MatrixSet next_commutator_level(const MatrixSet& s, const MatrixSet& previous, Exec exec) {
  const std::size_t ns = s.size(), np = previous.size();
  if (s.is_exact()) {
    const auto products = kernels::map(exec, ns * np, [&](std::size_t k) {
      return commutator(s.exact_elements()[k / np], previous.exact_elements()[k % np]);
    });
    std::vector<RationalMatrix> out;
    for (const auto& p : products)
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    return MatrixSet::exact(std::move(out));
  }
  const auto products = kernels::map(exec, ns * np, [&](std::size_t k) {
    return Eigen::MatrixXd(commutator(s.float_elements()[k / np], previous.float_elements()[k % np]));
  });
  std::vector<Eigen::MatrixXd> out;
  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> seen;
  for (const auto& p : products)
    if (seen.emplace(float_key(p), out.size()).second) out.push_back(p);
  return MatrixSet::floating(std::move(out));
}

CommutatorLadder commutator_ladder(const MatrixSet& s, int levels, Exec exec) {
  if (levels < 1) throw PreconditionError("commutator_ladder: levels must be >= 1");
  if (s.size() == 0) throw PreconditionError("commutator_ladder: empty set");
  CommutatorLadder out;
  out.levels.push_back(s);
  for (int n = 1; n <= levels; ++n) out.levels.push_back(next_commutator_level(s, out.levels.back(), exec));

  double max_inverse = 0.0;
  for (const auto& level : out.levels) {
    double m = 0.0;
    if (level.is_exact()) {
      for (const auto& x : level.exact_elements()) {
        m = std::max(m, distance_to_identity(x));
        max_inverse = std::max(max_inverse, frobenius_inverse_norm(x));
      }
    } else {
      for (const auto& x : level.float_elements()) {
        m = std::max(m, distance_to_identity(x));
        max_inverse = std::max(max_inverse, frobenius_inverse_norm(x));
      }
    }
    out.max_distance.push_back(m);
  }
  out.epsilon = out.max_distance.front();
  out.bound_asserted = out.epsilon < 0.125 && max_inverse <= 2.0;
  if (out.bound_asserted) {
    for (int n = 0; n <= levels; ++n) {
      const double b = out.epsilon * std::pow(8.0 * out.epsilon, n);
      out.bound.push_back(b);
      if (out.max_distance[static_cast<std::size_t>(n)] > b * (1.0 + 1e-12) + 1e-300) out.bound_holds = false;
    }
  }
  return out;
}

std::vector<Eigen::MatrixXd> random_near_identity(int d, std::size_t count, double eps, std::uint64_t seed) {
  if (d < 1 || !(eps > 0.0)) throw PreconditionError("random_near_identity: need d >= 1 and eps > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::MatrixXd x(d, d);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = gauss(rng);
    const double scale = eps * (1.0 - unit(rng));  // in (0, eps]
    out.push_back(Eigen::MatrixXd::Identity(d, d) + x * (scale / x.norm()));
  }
  return out;
}

ContractionTrial commutator_contraction_trial(int d, double eps, std::size_t pairs, std::uint64_t seed, Exec exec) {
  const auto m = random_near_identity(d, 2 * pairs, eps, seed);
  const auto ratios = kernels::map(exec, pairs, [&](std::size_t k) {
    const auto& a = m[2 * k];
    const auto& b = m[2 * k + 1];
    return distance_to_identity(commutator(a, b)) / (distance_to_identity(a) * distance_to_identity(b));
  });
  ContractionTrial t;
  t.pairs = pairs;
  for (double r : ratios) {
    t.max_ratio = std::max(t.max_ratio, r);
    if (r > 8.0) ++t.violations;
  }
  return t;
}

std::optional<int> nilpotency_class(const MatrixSet& s, int cutoff, double tol) {
  if (s.size() == 0) throw PreconditionError("nilpotency_class: empty set");
  auto trivial = [&](const MatrixSet& level) {
    if (level.is_exact())
      return std::all_of(level.exact_elements().begin(), level.exact_elements().end(),
                         [](const RationalMatrix& m) { return m.is_identity(); });
    return std::all_of(level.float_elements().begin(), level.float_elements().end(),
                       [&](const Eigen::MatrixXd& m) { return distance_to_identity(m) <= tol; });
  };
  MatrixSet level = s;
  for (int n = 0; n <= cutoff; ++n) {
    if (trivial(level)) return n;
    if (n < cutoff) level = next_commutator_level(s, level);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// finite groups

namespace {

void fill_table(FiniteMatrixGroup& g, const std::unordered_map<ElementKey, std::size_t, ElementKeyHash>& index) {
  const std::size_t n = g.elements.size();
  g.table.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto it = index.find(complex_key(g.elements[i] * g.elements[j]));
      if (it == index.end()) throw PreconditionError("finite group: element set is not closed under multiplication");
      g.table[i * n + j] = it->second;
    }
}

}  // namespace

FiniteMatrixGroup finite_closure(std::span<const Eigen::MatrixXcd> gens, std::size_t cap) {
  if (gens.empty()) throw PreconditionError("finite_closure: no generators");
  const auto d = gens.front().rows();
  FiniteMatrixGroup g;
  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> index;
  g.elements.push_back(Eigen::MatrixXcd::Identity(d, d));
  index.emplace(complex_key(g.elements[0]), 0);
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& s : gens) {
      if (s.rows() != d || s.cols() != d) throw PreconditionError("finite_closure: mixed dimensions");
      Eigen::MatrixXcd p = g.elements[head] * s;
      if (index.emplace(complex_key(p), g.elements.size()).second) {
        if (g.elements.size() >= cap) throw CapExceeded("finite_closure: group exceeds the element cap");
        g.elements.push_back(std::move(p));
      }
    }
  }
  if (g.elements.size() <= 4096) fill_table(g, index);
  return g;
}

FiniteMatrixGroup finite_group_from_elements(std::span<const Eigen::MatrixXcd> elements) {
  if (elements.empty()) throw PreconditionError("finite_group_from_elements: empty set");
  FiniteMatrixGroup g;
  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> index;
  const auto d = elements.front().rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  bool has_identity = false;
  for (const auto& e : elements) has_identity = has_identity || (e - id).norm() < 1e-8;
  if (!has_identity) throw PreconditionError("finite_group_from_elements: identity missing");
  g.elements.push_back(id);
  index.emplace(complex_key(id), 0);
  for (const auto& e : elements)
    if (index.emplace(complex_key(e), g.elements.size()).second) g.elements.push_back(e);
  fill_table(g, index);
  return g;
}

double identity_distance(const Eigen::MatrixXcd& g, IdentityMetric metric) {
  if (metric == IdentityMetric::Frobenius)
    return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).norm();
  const double tr = g.trace().real();
  if (g.rows() == 3) return std::acos(std::clamp((tr - 1.0) / 2.0, -1.0, 1.0));
  if (g.rows() == 2) return std::acos(std::clamp(tr / 2.0, -1.0, 1.0));
  throw PreconditionError("identity_distance: angle metric needs SO(3) or SU(2)");
}

std::vector<std::size_t> generated_subgroup(const FiniteMatrixGroup& f, std::span<const std::size_t> gens) {
  if (f.table.empty()) throw PreconditionError("generated_subgroup: multiplication table unavailable");
  std::vector<bool> in(f.order(), false);
  std::vector<std::size_t> members{0};
  in[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head)
    for (auto s : gens) {
      const std::size_t p = f.product(members[head], s);
      if (!in[p]) {
        in[p] = true;
        members.push_back(p);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::size_t max_abelian_subgroup_order(const FiniteMatrixGroup& f) {
  if (f.table.empty()) throw PreconditionError("max_abelian_subgroup_order: multiplication table unavailable");
  const std::size_t n = f.order();
  auto commute = [&](std::size_t a, std::size_t b) { return f.product(a, b) == f.product(b, a); };
  std::set<std::vector<std::size_t>> visited;
  std::size_t best = 1;
  // depth-first over abelian subgroups, each extended by one commuting element
  std::vector<std::vector<std::size_t>> stack{{0}};
  visited.insert({0});
  while (!stack.empty()) {
    const std::vector<std::size_t> h = std::move(stack.back());
    stack.pop_back();
    best = std::max(best, h.size());
    std::vector<bool> in(n, false);
    for (auto x : h) in[x] = true;
    for (std::size_t c = 0; c < n; ++c) {
      if (in[c]) continue;
      if (!std::all_of(h.begin(), h.end(), [&](std::size_t x) { return commute(x, c); })) continue;
      std::vector<std::size_t> gens = h;
      gens.push_back(c);
      std::vector<std::size_t> next = generated_subgroup(f, gens);
      if (visited.insert(next).second) stack.push_back(std::move(next));
    }
  }
  return best;
}

JordanResult jordan_abelian_index(const FiniteMatrixGroup& f, double eps, IdentityMetric metric) {
  if (!(eps > 0.0)) throw PreconditionError("jordan_abelian_index: eps must be positive");
  if (f.table.empty()) throw PreconditionError("jordan_abelian_index: multiplication table unavailable");
  std::vector<std::size_t> small;
  for (std::size_t i = 0; i < f.order(); ++i)
    if (identity_distance(f.elements[i], metric) < eps) small.push_back(i);
  JordanResult r;
  r.group_order = f.order();
  r.subgroup = generated_subgroup(f, small);
  r.subgroup_order = r.subgroup.size();
  r.index = r.group_order / r.subgroup_order;
  r.abelian = true;
  for (auto a : r.subgroup)
    for (auto b : r.subgroup) r.abelian = r.abelian && f.product(a, b) == f.product(b, a);
  r.oracle_max_abelian_order = max_abelian_subgroup_order(f);
  r.oracle_best_index = r.group_order / r.oracle_max_abelian_order;
  return r;
}

GroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw PreconditionError("cyclic_group: order must be positive");
  GroupTable t;
  t.order = n;
  t.mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t.mul[a * n + b] = (a + b) % n;
  return t;
}

GroupTable table_of(const FiniteMatrixGroup& f) {
  if (f.table.empty()) throw PreconditionError("table_of: multiplication table unavailable");
  return {f.order(), f.table};
}

double circle_distance(std::complex<double> a, std::complex<double> b) { return std::abs(std::arg(a / b)); }

double quasi_morphism_defect(const GroupTable& domain, std::span<const std::complex<double>> f, Exec exec) {
  if (f.size() != domain.order) throw PreconditionError("quasi_morphism_defect: map size differs from group order");
  const std::vector<double> rows = kernels::map(exec, domain.order, [&](std::size_t a) {
    double m = 0.0;
    for (std::size_t b = 0; b < domain.order; ++b)
      m = std::max(m, circle_distance(f[domain.product(a, b)], f[a] * f[b]));
    return m;
  });
  return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
}

// ---------------------------------------------------------------------------
// Margulis short subgroup

std::string to_string(ElementaryKind k) {
  switch (k) {
    case ElementaryKind::Trivial: return "trivial";
    case ElementaryKind::Finite: return "finite";
    case ElementaryKind::Cusp: return "cusp";
    case ElementaryKind::Tube: return "tube";
    case ElementaryKind::NotElementary: return "not-elementary";
  }
  return "unknown";
}

ElementaryVerdict elementary_kind(std::span<const hyp::IsometryClass> classes, double tol) {
  using hyp::IsometryKind;
  ElementaryVerdict v;
  std::vector<const hyp::IsometryClass*> nontrivial;
  for (const auto& c : classes)
    if (c.kind != IsometryKind::Identity) nontrivial.push_back(&c);
  if (nontrivial.empty()) return v;
  const IsometryKind kind = nontrivial.front()->kind;
  const bool uniform = std::all_of(nontrivial.begin(), nontrivial.end(), [&](auto* c) { return c->kind == kind; });
  v.kind = ElementaryKind::NotElementary;
  if (!uniform) return v;
  if (kind == IsometryKind::Parabolic) {
    const auto& p = *nontrivial.front()->boundary_fixed_point;
    for (auto* c : nontrivial)
      if (!hyp::same_boundary_point(p, *c->boundary_fixed_point, tol)) return v;
    v.kind = ElementaryKind::Cusp;
    v.fixed_point = p;
  } else if (kind == IsometryKind::Hyperbolic) {
    const auto& ax = *nontrivial.front()->axis;
    v.min_translation_length = nontrivial.front()->translation_length;
    for (auto* c : nontrivial) {
      if (!hyp::same_axis(ax, *c->axis, tol)) return v;
      v.min_translation_length = std::min(v.min_translation_length, c->translation_length);
    }
    v.kind = ElementaryKind::Tube;
    v.axis = ax;
  } else {
    const auto& p = *nontrivial.front()->interior_fixed_point;
    for (auto* c : nontrivial)
      if (hyp::distance(p, *c->interior_fixed_point) > tol) return v;
    v.kind = ElementaryKind::Finite;
  }
  return v;
}

ShortSubgroupReport margulis_short_subgroup(const FinitelyGeneratedGroup<hyp::MoebiusIsometry>& group,
                                            const hyp::HPoint& x, double eps, int word_cutoff, Exec exec) {
  if (word_cutoff < 1) throw PreconditionError("margulis_short_subgroup: word_cutoff must be >= 1");
  if (!(eps > 0.0)) throw PreconditionError("margulis_short_subgroup: eps must be positive");
  const auto ball = word_ball(group, word_cutoff, 1000000, exec);
  const auto disp = kernels::map(exec, ball.size(), [&](std::size_t i) { return hyp::displacement(ball.elements[i], x); });
  ShortSubgroupReport r;
  r.word_cutoff = word_cutoff;
  r.ball_size = ball.size();
  std::vector<hyp::IsometryClass> classes;
  for (std::size_t i = 1; i < ball.size(); ++i) {
    if (disp[i] > eps) continue;
    r.short_words.push_back(ball.words[i]);
    r.displacements.push_back(disp[i]);
    classes.push_back(hyp::classify(ball.elements[i]));
  }
  r.verdict = elementary_kind(classes);
  return r;
}

}  // namespace latlab::small
