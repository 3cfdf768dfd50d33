#include "latlab/euc_geom.hpp"

#include "latlab/word_ball.hpp"

#include <cmath>
#include <sstream>

namespace latlab::euc {

EuclideanIsometry::EuclideanIsometry(Eigen::MatrixXd linear, Eigen::VectorXd translation)
    : o_(std::move(linear)), t_(std::move(translation)) {
  if (o_.rows() != o_.cols() || o_.rows() != t_.size())
    throw PreconditionError("EuclideanIsometry: dimension mismatch");
  const auto n = o_.rows();
  if ((o_.transpose() * o_ - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-9)
    throw PreconditionError("EuclideanIsometry: linear part is not orthogonal");
}

EuclideanIsometry EuclideanIsometry::identity(int n) {
  return {Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n)};
}

EuclideanIsometry EuclideanIsometry::translation(Eigen::VectorXd t) {
  const auto n = t.size();
  return {Eigen::MatrixXd::Identity(n, n), std::move(t)};
}

EuclideanIsometry EuclideanIsometry::rotation(int n, int i, int j, double theta) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw PreconditionError("rotation: plane out of range");
  Eigen::MatrixXd o = Eigen::MatrixXd::Identity(n, n);
  o(i, i) = o(j, j) = std::cos(theta);
  o(i, j) = -std::sin(theta);
  o(j, i) = std::sin(theta);
  return {o, Eigen::VectorXd::Zero(n)};
}

Eigen::VectorXd EuclideanIsometry::apply(const Eigen::VectorXd& x) const {
  if (x.size() != t_.size()) throw PreconditionError("EuclideanIsometry: dimension mismatch");
  return o_ * x + t_;
}

EuclideanIsometry EuclideanIsometry::operator*(const EuclideanIsometry& o) const {
  if (o.dim() != dim()) throw PreconditionError("EuclideanIsometry: dimension mismatch");
  return {o_ * o.o_, o_ * o.t_ + t_};
}

EuclideanIsometry EuclideanIsometry::inverse() const {
  const Eigen::MatrixXd ot = o_.transpose();
  return {ot, -(ot * t_)};
}

bool EuclideanIsometry::approx_equal(const EuclideanIsometry& o, double tol) const {
  if (o.dim() != dim()) return false;
  return (o_ - o.o_).cwiseAbs().maxCoeff() <= tol && (t_ - o.t_).cwiseAbs().maxCoeff() <= tol;
}

double displacement(const EuclideanIsometry& g, const Eigen::VectorXd& x) { return (g.apply(x) - x).norm(); }

// ---------------------------------------------------------------------------
// linear algebra helpers

int numerical_rank(const Eigen::MatrixXd& columns, double tol) {
  if (columns.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * scale) ++r;
  return r;
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd& columns, double tol) {
  if (columns.cols() == 0) return Eigen::MatrixXd(columns.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns, Eigen::ComputeFullU);
  const int r = numerical_rank(columns, tol);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * scale) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

Eigen::VectorXd AffineSubspace::project(const Eigen::VectorXd& x) const {
  return base + directions * (directions.transpose() * (x - base));
}

bool AffineSubspace::contains(const Eigen::VectorXd& x, double tol) const { return (project(x) - x).norm() <= tol; }

// ---------------------------------------------------------------------------
// min-sets

MinSet min_set(const EuclideanIsometry& g) {
  const int n = g.dim();
  const Eigen::MatrixXd a = g.linear() - Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd fix = null_space(a, 1e-9);
  const Eigen::VectorXd t_par = fix * (fix.transpose() * g.translation());
  const Eigen::VectorXd t_perp = g.translation() - t_par;
  // minimum-norm least squares solution lies in the row space = Fix(O)^perp
  const Eigen::VectorXd base = a.completeOrthogonalDecomposition().solve(-t_perp);
  MinSet out;
  out.subspace = {base, fix};
  out.translation = t_par;
  out.translation_length = t_par.norm();
  return out;
}

FixedPointResult has_fixed_point(const EuclideanIsometry& g) {
  const int n = g.dim();
  const Eigen::MatrixXd a = g.linear() - Eigen::MatrixXd::Identity(n, n);
  const MinSet ms = min_set(g);
  FixedPointResult out;
  out.residual = (a * ms.subspace.base + g.translation()).norm();
  out.has_fixed_point = ms.translation_length <= 1e-9 * std::max(1.0, g.translation().norm());
  if (out.has_fixed_point) out.witness = ms.subspace.base;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-9 && s(i) < 1e-6) {
      out.ill_conditioned = true;
      std::ostringstream os;
      os << "O - I is nearly singular (singular value " << s(i) << "); residual " << out.residual;
      out.warning = os.str();
    }
  return out;
}

std::optional<AffineSubspace> intersect(const AffineSubspace& a, const AffineSubspace& b, double tol) {
  const auto n = a.base.size();
  if (b.base.size() != n) throw PreconditionError("intersect: dimension mismatch");
  const auto ka = a.directions.cols(), kb = b.directions.cols();
  Eigen::MatrixXd m(n, ka + kb);
  m << a.directions, -b.directions;
  const Eigen::VectorXd rhs = b.base - a.base;
  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(ka + kb);
  if (ka + kb > 0) coeff = m.completeOrthogonalDecomposition().solve(rhs);
  const Eigen::VectorXd residual = (ka + kb > 0 ? Eigen::VectorXd(m * coeff) : Eigen::VectorXd::Zero(n)) - rhs;
  if (residual.norm() > tol * std::max(1.0, rhs.norm())) return std::nullopt;
  AffineSubspace out;
  out.base = a.base + a.directions * coeff.head(ka);
  if (ka + kb == 0) {
    out.directions = Eigen::MatrixXd(n, 0);
    return out;
  }
  const Eigen::MatrixXd ker = null_space(m, 1e-9);
  out.directions = column_space(a.directions * ker.topRows(ka), 1e-9);
  return out;
}

AffineSubspace commuting_min_intersection(std::span<const EuclideanIsometry> gs, double commute_tol) {
  if (gs.empty()) throw PreconditionError("commuting_min_intersection: empty family");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (min_set(gs[i]).translation_length <= 1e-9)
      throw PreconditionError("commuting_min_intersection: element " + std::to_string(i) + " is elliptic");
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (!(gs[i] * gs[j]).approx_equal(gs[j] * gs[i], commute_tol))
        throw PreconditionError("commuting_min_intersection: elements " + std::to_string(i) + " and " +
                                std::to_string(j) + " do not commute");
  }
  AffineSubspace acc = min_set(gs[0]).subspace;
  for (std::size_t i = 1; i < gs.size(); ++i) {
    auto next = intersect(acc, min_set(gs[i]).subspace);
    if (!next) throw std::logic_error("commuting_min_intersection: min-sets of commuting isometries are disjoint");
    acc = *next;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// crystallographic structure

CrystallographicReport crystallographic_analysis(std::span<const EuclideanIsometry> gens, int cutoff,
                                                 const CrystallographicOptions& opts) {
  if (cutoff < 1) throw PreconditionError("crystallographic_analysis: cutoff must be >= 1");
  if (gens.empty()) throw PreconditionError("crystallographic_analysis: no generators");
  FinitelyGeneratedGroup<EuclideanIsometry> group{{gens.begin(), gens.end()}, false, "crystallographic"};
  bool capped = false;
  const auto ball = word_ball(group, cutoff, opts.ball_cap, opts.exec, &capped);

  const int n = gens.front().dim();
  CrystallographicReport out;
  out.cutoff = cutoff;
  out.elements = ball.size();
  out.capped = capped;

  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> linear_parts;
  std::vector<Eigen::VectorXd> translations;
  for (const auto& e : ball.elements) {
    ElementKey k;
    for (Eigen::Index i = 0; i < e.linear().size(); ++i) k.q.push_back(quantise(e.linear().data()[i], 1e-8));
    if (linear_parts.emplace(k, out.point_group.size()).second) {
      out.point_group.push_back(e.linear());
      if (out.point_group.size() > opts.point_group_cap)
        throw PreconditionError("crystallographic_analysis: orthogonal parts exceed the cap; not discrete at this tolerance");
    }
    if ((e.linear() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8 &&
        e.translation().norm() > 1e-8)
      translations.push_back(e.translation());
  }
  Eigen::MatrixXd cols(n, static_cast<Eigen::Index>(translations.size()));
  for (std::size_t i = 0; i < translations.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = translations[i];
  out.translation_rank = numerical_rank(cols);
  out.translation_basis = column_space(cols);
  out.point_group_order = out.point_group.size();
  out.abelian_index = out.point_group_order;
  return out;
}

}  // namespace latlab::euc
