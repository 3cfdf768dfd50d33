#pragma once

// Isometries x -> Ox + t of R^n.

#include "latlab/common.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace latlab::euc {

class EuclideanIsometry {
public:
  EuclideanIsometry() = default;
  /// Validates ||O^T O - I|| <= 1e-9.
  EuclideanIsometry(Eigen::MatrixXd linear, Eigen::VectorXd translation);
  static EuclideanIsometry identity(int n);
  static EuclideanIsometry translation(Eigen::VectorXd t);
  /// Rotation by theta in the (i, j) coordinate plane about the origin.
  static EuclideanIsometry rotation(int n, int i, int j, double theta);

  int dim() const { return static_cast<int>(t_.size()); }
  const Eigen::MatrixXd& linear() const { return o_; }
  const Eigen::VectorXd& translation() const { return t_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  EuclideanIsometry operator*(const EuclideanIsometry& o) const;
  EuclideanIsometry inverse() const;
  bool approx_equal(const EuclideanIsometry& o, double tol = 1e-8) const;

private:
  Eigen::MatrixXd o_;
  Eigen::VectorXd t_;
};

double displacement(const EuclideanIsometry& g, const Eigen::VectorXd& x);

/// base + span(directions); directions orthonormal (columns).
struct AffineSubspace {
  Eigen::VectorXd base;
  Eigen::MatrixXd directions;

  int dim() const { return static_cast<int>(directions.cols()); }
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  bool contains(const Eigen::VectorXd& x, double tol = 1e-8) const;
};

struct MinSet {
  AffineSubspace subspace;
  /// g restricted to the subspace is translation by this vector.
  Eigen::VectorXd translation;
  double translation_length = 0.0;
};

/// Eigenspace of O for eigenvalue 1 gives the directions; the base point
/// solves (O - I)x = -t_perp in the orthogonal complement.
MinSet min_set(const EuclideanIsometry& g);

struct FixedPointResult {
  bool has_fixed_point = false;
  std::optional<Eigen::VectorXd> witness;
  double residual = 0.0;
  /// Smallest nonzero singular value of O - I is tiny: the verdict is fragile.
  bool ill_conditioned = false;
  std::string warning;
};

FixedPointResult has_fixed_point(const EuclideanIsometry& g);

/// Intersection of affine subspaces; nullopt when empty.
std::optional<AffineSubspace> intersect(const AffineSubspace& a, const AffineSubspace& b, double tol = 1e-8);

/// Common min-set of a commuting family of non-elliptic isometries.
/// Throws PreconditionError for non-commuting input or an elliptic member.
AffineSubspace commuting_min_intersection(std::span<const EuclideanIsometry> gs, double commute_tol = 1e-8);

struct CrystallographicOptions {
  std::size_t ball_cap = 10000;
  std::size_t point_group_cap = 1000;
  Exec exec = Exec::Parallel;
};

struct CrystallographicReport {
  int cutoff = 0;
  std::size_t elements = 0;
  bool capped = false;
  int translation_rank = 0;
  std::size_t point_group_order = 0;
  /// [Gamma : translations] as observed in the ball, equal to the point-group order.
  std::size_t abelian_index = 0;
  std::vector<Eigen::MatrixXd> point_group;
  Eigen::MatrixXd translation_basis;  // columns
};

/// Word-ball closure up to `cutoff`; every count is a lower bound that
/// stabilises as the cutoff grows. Throws PreconditionError when the
/// orthogonal parts exceed `point_group_cap` (not discrete at this tolerance).
CrystallographicReport crystallographic_analysis(std::span<const EuclideanIsometry> gens, int cutoff,
                                                 const CrystallographicOptions& opts = {});

/// Numerical rank of a set of column vectors.
int numerical_rank(const Eigen::MatrixXd& columns, double tol = 1e-8);
/// Orthonormal basis of the column span.
Eigen::MatrixXd column_space(const Eigen::MatrixXd& columns, double tol = 1e-8);
/// Orthonormal basis of the null space of m.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double tol = 1e-8);

}  // namespace latlab::euc
