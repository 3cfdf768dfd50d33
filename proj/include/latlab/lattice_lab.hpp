#pragma once

// Discrete-group computations on word balls: injectivity radius, thick-thin
// decomposition, the psi function and its gradient lemma, covolumes,
// recurrence and the span of a lattice.

#include "latlab/common.hpp"
#include "latlab/exact.hpp"
#include "latlab/hyp_geom.hpp"
#include "latlab/kernels.hpp"
#include "latlab/word_ball.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace latlab::lab {

using MoebiusGroup = FinitelyGeneratedGroup<hyp::MoebiusIsometry>;

struct InjectivityRadius {
  int radius = 0;
  std::size_t ball_size = 0;
  double value = 0.0;
  Word minimizer;
  /// The minimizing word is shorter than the radius.
  bool stabilized = false;
};

/// Half the least displacement at x over the nontrivial ball elements.
template <class E>
InjectivityRadius injectivity_radius(const FinitelyGeneratedGroup<E>& group, const typename GroupTraits<E>::Point& x,
                                     int radius, Exec exec = Exec::Parallel) {
  if (radius < 1) throw PreconditionError("injectivity_radius: radius must be >= 1");
  const auto ball = word_ball(group, radius, 1000000, exec);
  if (ball.size() < 2) throw PreconditionError("injectivity_radius: ball has no nontrivial element");
  const auto best = kernels::argmin(exec, ball.size() - 1, [&](std::size_t i) {
    return GroupTraits<E>::displacement(ball.elements[i + 1], x);
  });
  InjectivityRadius r;
  r.radius = radius;
  r.ball_size = ball.size();
  r.value = 0.5 * best.value;
  r.minimizer = ball.words[best.index + 1];
  r.stabilized = static_cast<int>(r.minimizer.size()) < radius;
  return r;
}

// ---------------------------------------------------------------------------
// sampling

/// Halton point in [0,1)^2 with bases 2 and 3.
std::pair<double, double> halton2(std::uint64_t i);

enum class RegionKind { ModularDomain, Annulus, Octagon };

struct SampleRegion {
  RegionKind kind = RegionKind::ModularDomain;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  /// ModularDomain: height cap. Annulus: log of the outer radius.
  double parameter = 20.0;
};

/// Quasi-random points (Halton with a seeded Cranley-Patterson shift):
/// |x| <= 1/2, |z| >= 1, y <= cap; or 1 <= |z| <= e^l in H^2; or the
/// genus-2 octagon carried to the half-plane.
std::vector<hyp::HPoint> sample_region(const SampleRegion& region);

// ---------------------------------------------------------------------------
// thick-thin

enum class ComponentKind { Tube, Cusp };
std::string to_string(ComponentKind k);

struct ThinComponentReport {
  ComponentKind kind = ComponentKind::Cusp;
  double core_length = 0.0;  // Tube
  std::optional<std::pair<hyp::BoundaryPoint, hyp::BoundaryPoint>> axis;
  std::optional<hyp::BoundaryPoint> fixed_point;
  std::vector<Word> witnesses;
  std::vector<std::size_t> samples;
};

struct ThickThinReport {
  int radius = 0;
  double epsilon = 0.0;
  std::size_t ball_size = 0;
  std::vector<hyp::HPoint> points;
  std::vector<std::size_t> thick;
  /// Thin only through elliptic elements: near a cone point, not part of a tube or cusp.
  std::vector<std::size_t> cone;
  std::vector<std::size_t> unresolved;  // witnesses neither share an axis nor a fixed point
  std::vector<ThinComponentReport> components;
  std::string note;
};

/// A sample is thin when some nontrivial ball element moves it by less than
/// eps. Thin samples are grouped by the axis or fixed point of their
/// non-elliptic witnesses; groups related by a ball element are merged.
ThickThinReport thick_thin_scan(const MoebiusGroup& group, double eps, const std::vector<hyp::HPoint>& points,
                                int radius, Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------
// psi

enum class BumpKind {
  Standard,  // ((eps - t)_+)^2 / t
  Plateau    // 1 on (0, eps): not strictly decreasing, for the negative control
};

double bump(double t, double eps, BumpKind kind = BumpKind::Standard);

/// Ball elements with |gamma| <= eps and their translation lengths.
struct PsiContext {
  double epsilon = 0.0;
  int radius = 0;
  BumpKind bump = BumpKind::Standard;
  std::vector<hyp::MoebiusIsometry> elements;
  std::vector<double> lengths;
  std::vector<Word> words;
  /// tol on d_gamma(x) - |gamma| below which x counts as lying on a min-set.
  double domain_tol = 1e-12;
};

PsiContext psi_context(const MoebiusGroup& group, double eps, int radius, BumpKind bump = BumpKind::Standard,
                       Exec exec = Exec::Parallel);

/// sum of f(d_gamma(x) - |gamma|). Throws DomainError on a min-set.
double psi_value(const PsiContext& ctx, const hyp::HPoint& x);
/// Context elements with d_gamma(x) >= eps: short by |gamma| <= eps but not
/// by displacement at x. They contribute zero to psi either way.
std::vector<std::size_t> psi_disagreements(const PsiContext& ctx, const hyp::HPoint& x);
/// Central differences in the coordinates (x, y) or (x1, x2, y).
Eigen::VectorXd psi_gradient(const PsiContext& ctx, const hyp::HPoint& x, double h);

struct GradientViolation {
  std::size_t sample = 0;
  double psi = 0.0;
  double gradient_norm = 0.0;
};

struct GradientLemmaReport {
  std::vector<GradientViolation> violations;
  std::size_t evaluated = 0;
  std::size_t borderline = 0;  // psi in (tol, 2 tol)
  std::size_t disagreeing_samples = 0;  // psi_disagreements nonempty
  double tol = 0.0;
  double grad_tol = 0.0;
};

/// At each sample either psi <= tol with a gradient below grad_tol, or psi > tol with a gradient above it.
GradientLemmaReport gradient_lemma_check(const PsiContext& ctx, const std::vector<hyp::HPoint>& samples, double h,
                                         double tol = 1e-10, double grad_tol = 1e-8, Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------
// covolume

/// Area of {|x| <= 1/2, |z| >= 1} under dx dy / y^2 by adaptive quadrature.
double covolume_sl2z_domain();
/// (n - 2) pi - sum of angles. Throws PreconditionError when negative.
double covolume_polygon(const std::vector<double>& angles);
/// Angles as rational multiples of pi; the result is the coefficient of pi.
Rational covolume_polygon_exact(const std::vector<Rational>& angles_over_pi);
/// Vertices of a convex polygon in the upper half-plane, in order; ideal vertices allowed.
double covolume_polygon(const std::vector<std::variant<hyp::HPoint, hyp::BoundaryPoint>>& vertices);
/// Interior angle at a finite vertex between geodesics toward two points.
double vertex_angle(const hyp::HPoint& v, const std::variant<hyp::HPoint, hyp::BoundaryPoint>& a,
                    const std::variant<hyp::HPoint, hyp::BoundaryPoint>& b);
/// 2 pi (2g - 2), and its coefficient of pi.
double covolume_genus(int g);
Rational covolume_genus_exact(int g);

// ---------------------------------------------------------------------------
// recurrence

struct RecurrenceReport {
  std::vector<long> hits;
  /// SL2(Z) case: the lattice element found for each hit.
  std::vector<Eigen::Matrix2i> witnesses;
};

/// n <= N with dist(n v, Z^k) < 2 eps.
RecurrenceReport recurrence_search(const Eigen::VectorXd& v, double eps, long n_max);
/// n <= N with an integer matrix of determinant 1 within 2 eps of g^n in Frobenius norm.
RecurrenceReport recurrence_search(const Eigen::Matrix2d& g, double eps, long n_max);

// ---------------------------------------------------------------------------
// span

struct SpanReport {
  int radius = 0;
  std::size_t ball_size = 0;
  int dimension = 0;
  std::optional<Word> regular_witness;  // distinct eigenvalues
};

SpanReport span_check(const MoebiusGroup& group, int radius, Exec exec = Exec::Parallel);

}  // namespace latlab::lab
