#pragma once

// Hyperboloid model of H^n for arbitrary n, acted on by SO(n,1)^+.
// Form Q = diag(-1, 1, ..., 1).

#include "latlab/hyp_geom.hpp"

#include <Eigen/Dense>

#include <optional>
#include <utility>

namespace latlab::hyp {

double minkowski(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// x with <x,x> = -1 and x_0 > 0.
class HyperboloidPoint {
public:
  explicit HyperboloidPoint(Eigen::VectorXd x);
  static HyperboloidPoint origin(int n);
  /// From Poincare-ball coordinates (|p| < 1).
  static HyperboloidPoint from_ball(const Eigen::VectorXd& p);

  int dim() const { return static_cast<int>(x_.size()) - 1; }
  const Eigen::VectorXd& vector() const { return x_; }
  Eigen::VectorXd to_ball() const;

private:
  Eigen::VectorXd x_;
};

double distance(const HyperboloidPoint& p, const HyperboloidPoint& q);

class LorentzIsometry {
public:
  /// Validates ||A^T Q A - Q|| <= 1e-8 and A_00 > 0.
  explicit LorentzIsometry(Eigen::MatrixXd a);
  static LorentzIsometry identity(int n);
  /// Boost of rapidity t in the (x_0, x_axis) plane.
  static LorentzIsometry boost(int n, int axis, double t);
  /// Rotation by theta in the (x_i, x_j) plane, 1 <= i, j <= n.
  static LorentzIsometry rotation(int n, int i, int j, double theta);

  int dim() const { return static_cast<int>(a_.rows()) - 1; }
  const Eigen::MatrixXd& matrix() const { return a_; }
  LorentzIsometry operator*(const LorentzIsometry& o) const;
  LorentzIsometry inverse() const;
  HyperboloidPoint apply(const HyperboloidPoint& p) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return a_ * v; }

private:
  Eigen::MatrixXd a_;
};

double displacement(const LorentzIsometry& g, const HyperboloidPoint& p);
LorentzIsometry conjugate(const LorentzIsometry& g, const LorentzIsometry& h);

struct LorentzScanOptions {
  int grid_per_axis = 7;      // displacement grid over the Poincare ball
  double ball_radius = 0.9;   // grid extent in ball coordinates
  int refine_steps = 200;     // pattern-search refinement of the best grid point
  int ray_depth = 40;         // geodesic ray towards a fixed boundary point
  double tolerance = 1e-7;    // eigenvalue / null-space tolerance
  double parabolic_tolerance = 1e-6;
  Exec exec = Exec::Parallel;
};

struct LorentzClass {
  IsometryKind kind = IsometryKind::Identity;
  double translation_length = 0.0;
  bool infimum_attained = true;
  /// Parabolicity in floating point is numerical, never certified.
  bool certified = true;
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> axis;  // points on S^{n-1}
  std::optional<Eigen::VectorXd> boundary_fixed_point;
  std::optional<HyperboloidPoint> interior_fixed_point;
  double observed_min_displacement = 0.0;
};

/// Eigenvector analysis at the boundary, confirmed by displacement
/// minimisation over a grid. Throws BorderlineError when the spectral
/// radius is within the tolerance band of 1.
LorentzClass classify(const LorentzIsometry& g, const LorentzScanOptions& opts = {});
TranslationLength translation_length(const LorentzIsometry& g, const LorentzScanOptions& opts = {});

/// Minimum of the displacement over a grid in the Poincare ball followed by
/// pattern-search refinement.
double min_displacement_scan(const LorentzIsometry& g, const LorentzScanOptions& opts);

/// The SO(2,1) image of a PSL(2,R) element, compatible with `to_hyperboloid`.
LorentzIsometry to_lorentz(const MoebiusIsometry& g);
HyperboloidPoint to_hyperboloid(const HPoint& p);
HPoint to_half_plane(const HyperboloidPoint& p);

}  // namespace latlab::hyp
