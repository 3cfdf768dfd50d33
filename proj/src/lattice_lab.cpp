#include "latlab/lattice_lab.hpp"

#include "latlab/euc_geom.hpp"
#include "latlab/presets.hpp"
#include "latlab/smallness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace latlab::lab {

using hyp::HPoint;
using hyp::IsometryClass;
using hyp::IsometryKind;
using hyp::MoebiusIsometry;

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base), f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

std::pair<double, double> halton2(std::uint64_t i) { return {radical_inverse(i, 2), radical_inverse(i, 3)}; }

std::vector<HPoint> sample_region(const SampleRegion& region) {
  if (region.count == 0) throw PreconditionError("sample_region: count must be positive");
  std::mt19937_64 rng(region.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double su = unit(rng), sv = unit(rng);
  auto point = [&](std::uint64_t i) {
    auto [u, v] = halton2(i + 1);
    return std::pair{std::fmod(u + su, 1.0), std::fmod(v + sv, 1.0)};
  };
  std::vector<HPoint> out;
  out.reserve(region.count);
  switch (region.kind) {
    case RegionKind::ModularDomain: {
      if (!(region.parameter > 1.0)) throw PreconditionError("sample_region: height cap must exceed 1");
      for (std::uint64_t i = 0; out.size() < region.count; ++i) {
        auto [u, v] = point(i);
        const double x = u - 0.5;
        // uniform in 1/y, which is uniform in hyperbolic area for fixed x
        const double lo = 1.0 / region.parameter, hi = 1.0 / std::sqrt(1.0 - x * x);
        out.push_back(HPoint::plane(x, 1.0 / (lo + v * (hi - lo))));
      }
      break;
    }
    case RegionKind::Annulus: {
      if (!(region.parameter > 0.0)) throw PreconditionError("sample_region: annulus width must be positive");
      for (std::uint64_t i = 0; out.size() < region.count; ++i) {
        auto [u, v] = point(i);
        const double theta = std::numbers::pi * (0.01 + 0.98 * u);
        const std::complex<double> z = std::polar(std::exp(v * region.parameter), theta);
        out.push_back(HPoint::plane(z.real(), z.imag()));
      }
      break;
    }
    case RegionKind::Octagon: {
      const double rho = std::tanh(presets::octagon_circumradius() / 2.0);
      for (std::uint64_t i = 0; out.size() < region.count; ++i) {
        if (i > 100 * region.count) throw std::logic_error("sample_region: octagon rejection stalled");
        auto [u, v] = point(i);
        const std::complex<double> w = std::polar(rho * std::sqrt(v), 2.0 * std::numbers::pi * u);
        if (!presets::in_octagon(w)) continue;
        const auto z = presets::disk_to_half_plane(w);
        out.push_back(HPoint::plane(z.real(), z.imag()));
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// thick-thin

std::string to_string(ComponentKind k) { return k == ComponentKind::Tube ? "tube" : "cusp"; }

namespace {

struct SampleVerdict {
  bool thin = false;
  std::vector<std::size_t> short_elements;  // non-elliptic witnesses
  bool elliptic_only = false;
  small::ElementaryVerdict verdict;
};

bool same_axis_any_order(const std::pair<hyp::BoundaryPoint, hyp::BoundaryPoint>& a,
                         const std::pair<hyp::BoundaryPoint, hyp::BoundaryPoint>& b, double tol) {
  return hyp::same_axis(a, b, tol) || hyp::same_axis(a, {b.second, b.first}, tol);
}

bool same_key(const ThinComponentReport& a, const small::ElementaryVerdict& v, double tol) {
  if (v.kind == small::ElementaryKind::Cusp)
    return a.kind == ComponentKind::Cusp && hyp::same_boundary_point(*a.fixed_point, *v.fixed_point, tol);
  return a.kind == ComponentKind::Tube && same_axis_any_order(*a.axis, *v.axis, tol);
}

bool related_by(const MoebiusIsometry& h, const ThinComponentReport& a, const ThinComponentReport& b, double tol) {
  if (a.kind != b.kind) return false;
  if (a.kind == ComponentKind::Cusp) return hyp::same_boundary_point(h.apply(*a.fixed_point), *b.fixed_point, tol);
  return same_axis_any_order({h.apply(a.axis->first), h.apply(a.axis->second)}, *b.axis, tol);
}

}  // namespace

ThickThinReport thick_thin_scan(const MoebiusGroup& group, double eps, const std::vector<HPoint>& points, int radius,
                                Exec exec) {
  if (!(eps > 0.0)) throw PreconditionError("thick_thin_scan: eps must be positive");
  if (radius < 1) throw PreconditionError("thick_thin_scan: radius must be >= 1");
  constexpr double key_tol = 1e-7;
  const auto ball = word_ball(group, radius, 1000000, exec);
  const auto classes = kernels::map(exec, ball.size(), [&](std::size_t i) {
    return i == 0 ? IsometryClass{} : hyp::classify(ball.elements[i]);
  });

  const auto verdicts = kernels::map(exec, points.size(), [&](std::size_t s) {
    SampleVerdict v;
    std::vector<IsometryClass> witness_classes;
    bool any_elliptic = false;
    for (std::size_t i = 1; i < ball.size(); ++i) {
      if (hyp::displacement(ball.elements[i], points[s]) >= eps) continue;
      v.thin = true;
      if (classes[i].kind == IsometryKind::Elliptic) {
        any_elliptic = true;
        continue;
      }
      v.short_elements.push_back(i);
      witness_classes.push_back(classes[i]);
    }
    v.elliptic_only = v.thin && any_elliptic && v.short_elements.empty();
    if (!v.short_elements.empty()) v.verdict = small::elementary_kind(witness_classes, key_tol);
    return v;
  });

  ThickThinReport r;
  r.radius = radius;
  r.epsilon = eps;
  r.ball_size = ball.size();
  r.points = points;
  for (std::size_t s = 0; s < points.size(); ++s) {
    const auto& v = verdicts[s];
    if (!v.thin) {
      r.thick.push_back(s);
      continue;
    }
    if (v.elliptic_only) {
      r.cone.push_back(s);
      continue;
    }
    const auto kind = v.verdict.kind;
    if (kind != small::ElementaryKind::Cusp && kind != small::ElementaryKind::Tube) {
      r.unresolved.push_back(s);
      continue;
    }
    auto it = std::find_if(r.components.begin(), r.components.end(),
                           [&](const ThinComponentReport& c) { return same_key(c, v.verdict, key_tol); });
    if (it == r.components.end()) {
      ThinComponentReport c;
      if (kind == small::ElementaryKind::Cusp) {
        c.kind = ComponentKind::Cusp;
        c.fixed_point = v.verdict.fixed_point;
      } else {
        c.kind = ComponentKind::Tube;
        c.axis = v.verdict.axis;
        c.core_length = v.verdict.min_translation_length;
      }
      r.components.push_back(std::move(c));
      it = std::prev(r.components.end());
    }
    it->samples.push_back(s);
    if (it->kind == ComponentKind::Tube) it->core_length = std::min(it->core_length, v.verdict.min_translation_length);
    for (auto i : v.short_elements)
      if (std::find(it->witnesses.begin(), it->witnesses.end(), ball.words[i]) == it->witnesses.end())
        it->witnesses.push_back(ball.words[i]);
  }

  // merge components whose keys are related by a ball element
  const std::size_t n = r.components.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (find(a) == find(b)) continue;
      for (const auto& h : ball.elements)
        if (related_by(h, r.components[a], r.components[b], key_tol)) {
          parent[find(b)] = find(a);
          break;
        }
    }
  std::vector<ThinComponentReport> merged;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t root = find(a);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = merged.size();
      merged.push_back(r.components[a]);
      continue;
    }
    auto& m = merged[slot[root]];
    const auto& c = r.components[a];
    m.samples.insert(m.samples.end(), c.samples.begin(), c.samples.end());
    for (const auto& w : c.witnesses)
      if (std::find(m.witnesses.begin(), m.witnesses.end(), w) == m.witnesses.end()) m.witnesses.push_back(w);
    m.core_length = std::min(m.core_length, c.core_length);
  }
  for (auto& m : merged) std::sort(m.samples.begin(), m.samples.end());
  r.components = std::move(merged);
  if (!r.unresolved.empty()) r.note = "unresolved - increase L";
  return r;
}

// ---------------------------------------------------------------------------
// psi

double bump(double t, double eps, BumpKind kind) {
  if (!(t > 0.0)) throw DomainError("bump: argument must be positive");
  if (t >= eps) return 0.0;
  if (kind == BumpKind::Plateau) return 1.0;
  return (eps - t) * (eps - t) / t;
}

PsiContext psi_context(const MoebiusGroup& group, double eps, int radius, BumpKind kind, Exec exec) {
  if (!(eps > 0.0)) throw PreconditionError("psi_context: eps must be positive");
  if (radius < 1) throw PreconditionError("psi_context: radius must be >= 1");
  const auto ball = word_ball(group, radius, 1000000, exec);
  const auto lengths = kernels::map(exec, ball.size(), [&](std::size_t i) {
    return i == 0 ? 0.0 : hyp::translation_length(ball.elements[i]).value;
  });
  PsiContext ctx;
  ctx.epsilon = eps;
  ctx.radius = radius;
  ctx.bump = kind;
  for (std::size_t i = 1; i < ball.size(); ++i) {
    if (lengths[i] > eps) continue;
    ctx.elements.push_back(ball.elements[i]);
    ctx.lengths.push_back(lengths[i]);
    ctx.words.push_back(ball.words[i]);
  }
  return ctx;
}

double psi_value(const PsiContext& ctx, const HPoint& x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ctx.elements.size(); ++i) {
    const double t = hyp::displacement(ctx.elements[i], x) - ctx.lengths[i];
    if (t <= ctx.domain_tol) throw DomainError("psi: point lies on the min-set of " + word_to_string(ctx.words[i]));
    sum += bump(t, ctx.epsilon, ctx.bump);
  }
  return sum;
}

std::vector<std::size_t> psi_disagreements(const PsiContext& ctx, const HPoint& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ctx.elements.size(); ++i)
    if (hyp::displacement(ctx.elements[i], x) >= ctx.epsilon) out.push_back(i);
  return out;
}

Eigen::VectorXd psi_gradient(const PsiContext& ctx, const HPoint& x, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw PreconditionError("psi_gradient: step must be positive");
  const std::vector<double> c = x.coords();
  Eigen::VectorXd g(static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    std::vector<double> plus = c, minus = c;
    plus[k] += h;
    minus[k] -= h;
    g(static_cast<Eigen::Index>(k)) =
        (psi_value(ctx, HPoint::from_coords(plus)) - psi_value(ctx, HPoint::from_coords(minus))) / (2.0 * h);
  }
  return g;
}

GradientLemmaReport gradient_lemma_check(const PsiContext& ctx, const std::vector<HPoint>& samples, double h,
                                         double tol, double grad_tol, Exec exec) {
  struct Eval {
    double psi, grad;
    bool disagree;
  };
  const auto values = kernels::map(exec, samples.size(), [&](std::size_t s) {
    return Eval{psi_value(ctx, samples[s]), psi_gradient(ctx, samples[s], h).norm(),
                !psi_disagreements(ctx, samples[s]).empty()};
  });
  GradientLemmaReport r;
  r.tol = tol;
  r.grad_tol = grad_tol;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto [psi, grad, disagree] = values[s];
    if (disagree) ++r.disagreeing_samples;
    if (psi > tol && psi < 2.0 * tol) {
      ++r.borderline;
      continue;
    }
    ++r.evaluated;
    const bool ok = psi <= tol ? grad <= grad_tol : grad > grad_tol;
    if (!ok) r.violations.push_back({s, psi, grad});
  }
  return r;
}

// ---------------------------------------------------------------------------
// recurrence

RecurrenceReport recurrence_search(const Eigen::VectorXd& v, double eps, long n_max) {
  if (!(eps > 0.0)) throw PreconditionError("recurrence_search: eps must be positive");
  if (n_max < 1) throw PreconditionError("recurrence_search: N must be >= 1");
  RecurrenceReport r;
  for (long n = 1; n <= n_max; ++n) {
    const Eigen::VectorXd p = static_cast<double>(n) * v;
    if ((p - p.array().round().matrix()).norm() < 2.0 * eps) r.hits.push_back(n);
  }
  return r;
}

RecurrenceReport recurrence_search(const Eigen::Matrix2d& g, double eps, long n_max) {
  if (!(eps > 0.0)) throw PreconditionError("recurrence_search: eps must be positive");
  if (n_max < 1) throw PreconditionError("recurrence_search: N must be >= 1");
  if (std::abs(g.determinant() - 1.0) > 1e-9) throw PreconditionError("recurrence_search: g must lie in SL2(R)");
  RecurrenceReport r;
  Eigen::Matrix2d p = Eigen::Matrix2d::Identity();
  for (long n = 1; n <= n_max; ++n) {
    p = p * g;
    if (!p.allFinite() || p.cwiseAbs().maxCoeff() > 1e15) break;
    Eigen::Matrix2i gamma;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) gamma(i, j) = static_cast<int>(std::llround(p(i, j)));
    const long long det = static_cast<long long>(gamma(0, 0)) * gamma(1, 1) -
                          static_cast<long long>(gamma(0, 1)) * gamma(1, 0);
    if (det != 1) continue;
    if ((gamma.cast<double>() - p).norm() < 2.0 * eps) {
      r.hits.push_back(n);
      r.witnesses.push_back(gamma);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// span

SpanReport span_check(const MoebiusGroup& group, int radius, Exec exec) {
  if (radius < 1) throw PreconditionError("span_check: radius must be >= 1");
  const auto ball = word_ball(group, radius, 1000000, exec);
  const bool real = std::all_of(ball.elements.begin(), ball.elements.end(),
                                [](const MoebiusIsometry& m) { return m.is_real(); });
  const Eigen::Index rows = real ? 4 : 8;
  Eigen::MatrixXd cols(rows, static_cast<Eigen::Index>(ball.size()));
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto& m = ball.elements[i].matrix();
    for (int k = 0; k < 4; ++k) {
      cols(k, static_cast<Eigen::Index>(i)) = m(k / 2, k % 2).real();
      if (!real) cols(4 + k, static_cast<Eigen::Index>(i)) = m(k / 2, k % 2).imag();
    }
  }
  SpanReport r;
  r.radius = radius;
  r.ball_size = ball.size();
  r.dimension = euc::numerical_rank(cols);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto tr = ball.elements[i].trace();
    if (std::abs(tr * tr - 4.0) > 1e-9) {
      r.regular_witness = ball.words[i];
      break;
    }
  }
  return r;
}

}  // namespace latlab::lab
