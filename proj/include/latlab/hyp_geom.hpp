#pragma once

// Hyperbolic plane and space in the upper half-space model, acted on by
// PSL(2,R) / PSL(2,C) through Moebius transformations.

#include "latlab/common.hpp"
#include "latlab/exact.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace latlab::hyp {

using Complex = std::complex<double>;

/// Point of H^2 (x, y) or H^3 (x1, x2, y); the height y is strictly positive.
class HPoint {
public:
  static HPoint plane(double x, double y);
  static HPoint space(double x1, double x2, double y);
  /// Accepts 2 or 3 coordinates, height last.
  static HPoint from_coords(std::span<const double> c);

  int dim() const { return dim_; }
  Complex horizontal() const { return z_; }
  double height() const { return y_; }
  std::vector<double> coords() const;

private:
  HPoint(Complex z, double y, int dim) : z_(z), y_(y), dim_(dim) {}
  Complex z_;
  double y_ = 1.0;
  int dim_ = 2;
};

/// Point of the sphere at infinity: a complex number or infinity.
struct BoundaryPoint {
  bool at_infinity = false;
  Complex value{};

  static BoundaryPoint infinity() { return {true, {}}; }
  static BoundaryPoint finite(Complex z) { return {false, z}; }
};

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol = 1e-8);
/// Unordered comparison of two endpoint pairs.
bool same_axis(const std::pair<BoundaryPoint, BoundaryPoint>& a,
               const std::pair<BoundaryPoint, BoundaryPoint>& b, double tol = 1e-8);
std::string to_string(const BoundaryPoint& p);

/// Element of PSL(2,R) (when real) or PSL(2,C). Stored with determinant 1
/// and the sign fixed so the first nonzero entry has positive real part.
class MoebiusIsometry {
public:
  MoebiusIsometry();

  static MoebiusIsometry real(double a, double b, double c, double d);
  static MoebiusIsometry complex(Complex a, Complex b, Complex c, Complex d);
  /// Row-major entries: 4 reals, or 8 reals (re, im pairs) for a complex matrix.
  static MoebiusIsometry from_row_major(std::span<const double> entries);
  static MoebiusIsometry from_matrix(const Eigen::Matrix2cd& m, bool real);

  const Eigen::Matrix2cd& matrix() const { return m_; }
  bool is_real() const { return real_; }
  Complex trace() const { return m_(0, 0) + m_(1, 1); }

  MoebiusIsometry operator*(const MoebiusIsometry& o) const;
  MoebiusIsometry inverse() const;

  HPoint apply(const HPoint& p) const;
  BoundaryPoint apply(const BoundaryPoint& p) const;

  /// Equality in PSL: m and -m are identified.
  bool approx_equal(const MoebiusIsometry& o, double tol = 1e-8) const;
  bool is_identity(double tol = 1e-12) const;
  std::vector<double> row_major() const;

private:
  void normalize();
  Eigen::Matrix2cd m_;
  bool real_ = true;
};

enum class IsometryKind { Identity, Elliptic, Parabolic, Hyperbolic };
std::string to_string(IsometryKind k);

struct IsometryClass {
  IsometryKind kind = IsometryKind::Identity;
  double translation_length = 0.0;
  /// False for parabolics: the infimum of the displacement is not attained.
  bool infimum_attained = true;
  std::optional<std::pair<BoundaryPoint, BoundaryPoint>> axis;
  std::optional<BoundaryPoint> boundary_fixed_point;
  std::optional<HPoint> interior_fixed_point;
  int boundary_fixed_count = 0;
};

struct ClassifyTolerances {
  /// | |tr| - 2 | below this (but above `exact`) is undecidable.
  double borderline = 1e-7;
  /// | |tr| - 2 | below this is treated as exactly 2.
  double exact = 1e-12;
  /// Displacement below this at an axis point means the point is fixed.
  double fixed_point = 1e-9;
};

/// Throws PreconditionError for a non-positive height or mixed dimensions.
double distance(const HPoint& p, const HPoint& q);
double displacement(const MoebiusIsometry& g, const HPoint& p);

/// Classification from the boundary fixed points of g, cross-checked against
/// the trace. Throws BorderlineError inside the ambiguity band or when the
/// two routes disagree.
IsometryClass classify(const MoebiusIsometry& g, const ClassifyTolerances& tol = {});
/// Trace-only classification, used as the independent route.
IsometryKind classify_by_trace(const MoebiusIsometry& g, const ClassifyTolerances& tol = {});

struct TranslationLength {
  double value = 0.0;
  bool attained = true;
};
TranslationLength translation_length(const MoebiusIsometry& g, const ClassifyTolerances& tol = {});

/// A point on the geodesic joining two boundary points.
HPoint geodesic_point(const BoundaryPoint& a, const BoundaryPoint& b, int dim);

/// h g h^-1.
MoebiusIsometry conjugate(const MoebiusIsometry& g, const MoebiusIsometry& h);
RationalMatrix conjugate(const RationalMatrix& g, const RationalMatrix& h);

struct ContractionWitness {
  std::vector<double> norms;  // ||g_n gamma g_n^-1 - 1||_F
  bool escaping = false;
};

/// Frobenius distance to the identity of g_n gamma g_n^-1 along the sequence.
/// `escaping` is set when the norms decrease strictly to below 1% of the first.
ContractionWitness sequence_contraction_witness(std::span<const Eigen::Matrix2d> gs,
                                                const Eigen::Matrix2d& gamma);

struct ExactContractionWitness {
  std::vector<RationalMatrix> conjugates;
  bool escaping = false;
};
ExactContractionWitness sequence_contraction_witness(std::span<const RationalMatrix> gs,
                                                     const RationalMatrix& gamma);

double frobenius_distance_to_identity(const Eigen::MatrixXd& m);

}  // namespace latlab::hyp
