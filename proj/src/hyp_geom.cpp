#include "latlab/hyp_geom.hpp"

#include <cmath>
#include <sstream>

namespace latlab::hyp {

namespace {

constexpr double kZero = 1e-14;

}  // namespace

// ---------------------------------------------------------------------------
// points

HPoint HPoint::plane(double x, double y) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw DomainError("HPoint: height coordinate must be positive and finite");
  return HPoint(Complex(x, 0.0), y, 2);
}

HPoint HPoint::space(double x1, double x2, double y) {
  if (!(y > 0.0) || !std::isfinite(x1) || !std::isfinite(x2) || !std::isfinite(y))
    throw DomainError("HPoint: height coordinate must be positive and finite");
  return HPoint(Complex(x1, x2), y, 3);
}

HPoint HPoint::from_coords(std::span<const double> c) {
  if (c.size() == 2) return plane(c[0], c[1]);
  if (c.size() == 3) return space(c[0], c[1], c[2]);
  throw PreconditionError("HPoint: expected 2 or 3 coordinates");
}

std::vector<double> HPoint::coords() const {
  if (dim_ == 2) return {z_.real(), y_};
  return {z_.real(), z_.imag(), y_};
}

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol) {
  if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
  return std::abs(a.value - b.value) <= tol * std::max(1.0, std::abs(a.value));
}

bool same_axis(const std::pair<BoundaryPoint, BoundaryPoint>& a,
               const std::pair<BoundaryPoint, BoundaryPoint>& b, double tol) {
  return (same_boundary_point(a.first, b.first, tol) && same_boundary_point(a.second, b.second, tol)) ||
         (same_boundary_point(a.first, b.second, tol) && same_boundary_point(a.second, b.first, tol));
}

std::string to_string(const BoundaryPoint& p) {
  if (p.at_infinity) return "inf";
  std::ostringstream os;
  os.precision(12);
  os << p.value.real() + 0.0;
  if (p.value.imag() != 0.0) os << (p.value.imag() < 0 ? "-" : "+") << std::abs(p.value.imag()) << "i";
  return os.str();
}

// ---------------------------------------------------------------------------
// Moebius isometries

MoebiusIsometry::MoebiusIsometry() : m_(Eigen::Matrix2cd::Identity()), real_(true) {}

MoebiusIsometry MoebiusIsometry::real(double a, double b, double c, double d) {
  Eigen::Matrix2cd m;
  m << a, b, c, d;
  return from_matrix(m, true);
}

MoebiusIsometry MoebiusIsometry::complex(Complex a, Complex b, Complex c, Complex d) {
  Eigen::Matrix2cd m;
  m << a, b, c, d;
  return from_matrix(m, false);
}

MoebiusIsometry MoebiusIsometry::from_row_major(std::span<const double> e) {
  if (e.size() == 4) return real(e[0], e[1], e[2], e[3]);
  if (e.size() == 8)
    return complex({e[0], e[1]}, {e[2], e[3]}, {e[4], e[5]}, {e[6], e[7]});
  throw PreconditionError("MoebiusIsometry: expected 4 real or 8 (re,im) entries");
}

MoebiusIsometry MoebiusIsometry::from_matrix(const Eigen::Matrix2cd& m, bool real) {
  MoebiusIsometry g;
  g.m_ = m;
  g.real_ = real;
  g.normalize();
  return g;
}

void MoebiusIsometry::normalize() {
  if (!m_.allFinite()) throw PreconditionError("MoebiusIsometry: non-finite entry");
  if (real_) m_ = m_.real().cast<Complex>();
  const Complex det = m_.determinant();
  if (std::abs(det) < 1e-300) throw PreconditionError("MoebiusIsometry: singular matrix");
  if (real_ && det.real() <= 0.0)
    throw PreconditionError("MoebiusIsometry: real matrix must have positive determinant");
  m_ /= std::sqrt(det);
  if (real_) m_ = m_.real().cast<Complex>();
  for (int k = 0; k < 4; ++k) {
    const Complex e = m_(k / 2, k % 2);
    if (std::abs(e) <= 1e-12) continue;
    const bool flip = std::abs(e.real()) > 1e-12 ? e.real() < 0.0 : e.imag() < 0.0;
    if (flip) m_ = -m_;
    break;
  }
}

MoebiusIsometry MoebiusIsometry::operator*(const MoebiusIsometry& o) const {
  return from_matrix(m_ * o.m_, real_ && o.real_);
}

MoebiusIsometry MoebiusIsometry::inverse() const {
  Eigen::Matrix2cd inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return from_matrix(inv, real_);
}

HPoint MoebiusIsometry::apply(const HPoint& p) const {
  if (p.dim() == 2 && !real_)
    throw PreconditionError("MoebiusIsometry: complex isometry cannot act on H^2");
  const Complex a = m_(0, 0), b = m_(0, 1), c = m_(1, 0), d = m_(1, 1);
  const Complex z = p.horizontal();
  const double t = p.height();
  const Complex czd = c * z + d;
  const double den = std::norm(czd) + std::norm(c) * t * t;
  const Complex zn = ((a * z + b) * std::conj(czd) + a * std::conj(c) * t * t) / den;
  if (p.dim() == 2) return HPoint::plane(zn.real(), t / den);
  return HPoint::space(zn.real(), zn.imag(), t / den);
}

BoundaryPoint MoebiusIsometry::apply(const BoundaryPoint& p) const {
  const Complex a = m_(0, 0), b = m_(0, 1), c = m_(1, 0), d = m_(1, 1);
  if (p.at_infinity) {
    if (std::abs(c) <= kZero) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(a / c);
  }
  const Complex den = c * p.value + d;
  if (std::abs(den) <= kZero) return BoundaryPoint::infinity();
  return BoundaryPoint::finite((a * p.value + b) / den);
}

bool MoebiusIsometry::approx_equal(const MoebiusIsometry& o, double tol) const {
  return (m_ - o.m_).cwiseAbs().maxCoeff() <= tol || (m_ + o.m_).cwiseAbs().maxCoeff() <= tol;
}

bool MoebiusIsometry::is_identity(double tol) const { return approx_equal(MoebiusIsometry(), tol); }

std::vector<double> MoebiusIsometry::row_major() const {
  std::vector<double> out;
  for (int k = 0; k < 4; ++k) {
    const Complex e = m_(k / 2, k % 2);
    out.push_back(e.real());
    if (!real_) out.push_back(e.imag());
  }
  return out;
}

std::string to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Identity: return "identity";
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// metric

double distance(const HPoint& p, const HPoint& q) {
  if (p.dim() != q.dim()) throw PreconditionError("distance: points of different dimension");
  const double num = std::norm(p.horizontal() - q.horizontal()) +
                     (p.height() - q.height()) * (p.height() - q.height());
  return 2.0 * std::asinh(std::sqrt(num) / (2.0 * std::sqrt(p.height() * q.height())));
}

double displacement(const MoebiusIsometry& g, const HPoint& p) { return distance(g.apply(p), p); }

HPoint geodesic_point(const BoundaryPoint& a, const BoundaryPoint& b, int dim) {
  if (a.at_infinity && b.at_infinity) throw PreconditionError("geodesic_point: coincident endpoints");
  Complex centre;
  double height = 1.0;
  if (a.at_infinity || b.at_infinity) {
    centre = a.at_infinity ? b.value : a.value;
  } else {
    centre = 0.5 * (a.value + b.value);
    height = 0.5 * std::abs(a.value - b.value);
    if (height <= 0.0) throw PreconditionError("geodesic_point: coincident endpoints");
  }
  if (dim == 2) return HPoint::plane(centre.real(), height);
  return HPoint::space(centre.real(), centre.imag(), height);
}

// ---------------------------------------------------------------------------
// classification

IsometryKind classify_by_trace(const MoebiusIsometry& g, const ClassifyTolerances& tol) {
  if (g.is_identity(tol.exact)) return IsometryKind::Identity;
  const Complex tr = g.trace();
  const std::vector<std::string> candidates_ph{"parabolic", "elliptic", "hyperbolic"};
  if (g.is_real() || std::abs(tr.imag()) <= tol.exact) {
    const double gap = std::abs(std::abs(tr.real()) - 2.0);
    if (gap <= tol.exact) return IsometryKind::Parabolic;
    if (gap < tol.borderline) {
      std::ostringstream os;
      os.precision(17);
      os << "classify: |tr| = " << std::abs(tr.real()) << " lies in the borderline band around 2";
      throw BorderlineError(os.str(), candidates_ph);
    }
    return std::abs(tr.real()) < 2.0 ? IsometryKind::Elliptic : IsometryKind::Hyperbolic;
  }
  // genuinely complex trace
  const double gap = std::min(std::abs(tr - 2.0), std::abs(tr + 2.0));
  if (gap < tol.borderline) throw BorderlineError("classify: trace within borderline band of +-2", candidates_ph);
  if (std::abs(tr.imag()) < tol.borderline && std::abs(tr.real()) < 2.0)
    throw BorderlineError("classify: trace is nearly real inside (-2, 2)", {"elliptic", "hyperbolic"});
  return IsometryKind::Hyperbolic;
}

namespace {

double hyperbolic_length_from_trace(const MoebiusIsometry& g) {
  const Complex tr = g.trace();
  if (g.is_real() || std::abs(tr.imag()) <= 1e-12) return 4.0 * std::asinh(std::sqrt((std::abs(tr.real()) - 2.0) / 4.0));
  return 2.0 * std::abs(std::acosh(tr / 2.0).real());
}

}  // namespace

IsometryClass classify(const MoebiusIsometry& g, const ClassifyTolerances& tol) {
  const IsometryKind by_trace = classify_by_trace(g, tol);
  IsometryClass out;
  if (by_trace == IsometryKind::Identity) {
    out.kind = IsometryKind::Identity;
    return out;
  }
  const int dim = g.is_real() ? 2 : 3;
  const Eigen::Matrix2cd& m = g.matrix();
  const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const Complex disc = (a + d) * (a + d) - 4.0;

  // Fixed points of z -> (az+b)/(cz+d) on the sphere at infinity solve
  // c z^2 + (d - a) z - b = 0.
  std::vector<BoundaryPoint> fixed;
  std::optional<HPoint> interior;
  if (std::abs(c) <= kZero) {
    fixed.push_back(BoundaryPoint::infinity());
    if (std::abs(d - a) > 1e-12) fixed.push_back(BoundaryPoint::finite(b / (d - a)));
  } else if (std::abs(disc) <= 4.0 * tol.exact) {
    fixed.push_back(BoundaryPoint::finite((a - d) / (2.0 * c)));
  } else if (g.is_real() && disc.real() < 0.0) {
    // complex-conjugate roots: the one in the upper half-plane is fixed
    const Complex root = ((a - d) + Complex(0.0, std::sqrt(-disc.real()))) / (2.0 * c);
    const Complex z = root.imag() > 0.0 ? root : std::conj(root);
    interior = HPoint::plane(z.real(), z.imag());
  } else {
    const Complex sq = std::sqrt(disc);
    fixed.push_back(BoundaryPoint::finite((a - d + sq) / (2.0 * c)));
    fixed.push_back(BoundaryPoint::finite((a - d - sq) / (2.0 * c)));
  }
  out.boundary_fixed_count = static_cast<int>(fixed.size());

  IsometryKind by_fixed;
  if (interior) {
    by_fixed = IsometryKind::Elliptic;
    out.interior_fixed_point = interior;
  } else if (fixed.size() == 1) {
    by_fixed = IsometryKind::Parabolic;
    out.boundary_fixed_point = fixed.front();
    out.infimum_attained = false;
  } else {
    const HPoint on_geodesic = geodesic_point(fixed[0], fixed[1], dim);
    const double disp = displacement(g, on_geodesic);
    if (disp <= tol.fixed_point) {
      by_fixed = IsometryKind::Elliptic;
      out.interior_fixed_point = on_geodesic;
    } else {
      by_fixed = IsometryKind::Hyperbolic;
      out.axis = std::make_pair(fixed[0], fixed[1]);
      out.translation_length = hyperbolic_length_from_trace(g);
      if (std::abs(out.translation_length - disp) > 1e-6 * std::max(1.0, disp))
        throw BorderlineError("classify: axis displacement disagrees with trace length", {"hyperbolic"});
    }
  }
  if (by_fixed != by_trace)
    throw BorderlineError("classify: fixed-point and trace routes disagree",
                          {to_string(by_fixed), to_string(by_trace)});
  out.kind = by_fixed;
  return out;
}

TranslationLength translation_length(const MoebiusIsometry& g, const ClassifyTolerances& tol) {
  const IsometryClass c = classify(g, tol);
  return {c.translation_length, c.infimum_attained};
}

// ---------------------------------------------------------------------------
// conjugation and escape witnesses

MoebiusIsometry conjugate(const MoebiusIsometry& g, const MoebiusIsometry& h) { return h * g * h.inverse(); }

RationalMatrix conjugate(const RationalMatrix& g, const RationalMatrix& h) { return h * g * h.inverse(); }

double frobenius_distance_to_identity(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw PreconditionError("frobenius_distance_to_identity: matrix must be square");
  return (m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).norm();
}

ContractionWitness sequence_contraction_witness(std::span<const Eigen::Matrix2d> gs, const Eigen::Matrix2d& gamma) {
  ContractionWitness w;
  for (const auto& g : gs) {
    if (std::abs(g.determinant()) < 1e-300) throw PreconditionError("sequence_contraction_witness: singular g_n");
    w.norms.push_back(frobenius_distance_to_identity(g * gamma * g.inverse()));
  }
  bool decreasing = w.norms.size() >= 2;
  for (std::size_t i = 1; i < w.norms.size(); ++i) decreasing = decreasing && w.norms[i] < w.norms[i - 1];
  w.escaping = decreasing && w.norms.front() > 0.0 && w.norms.back() < 0.01 * w.norms.front();
  return w;
}

ExactContractionWitness sequence_contraction_witness(std::span<const RationalMatrix> gs, const RationalMatrix& gamma) {
  ExactContractionWitness w;
  std::vector<Rational> sq;
  for (const auto& g : gs) {
    if (g.dim() != gamma.dim()) throw PreconditionError("sequence_contraction_witness: dimension mismatch");
    w.conjugates.push_back(conjugate(gamma, g));
    const RationalMatrix diff = w.conjugates.back() - RationalMatrix::identity(g.dim());
    Rational s = 0;
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) s += diff(i, j) * diff(i, j);
    sq.push_back(s);
  }
  bool decreasing = sq.size() >= 2;
  for (std::size_t i = 1; i < sq.size(); ++i) decreasing = decreasing && sq[i] < sq[i - 1];
  w.escaping = decreasing && sq.front() > 0 && sq.back() * 10000 < sq.front();
  return w;
}

}  // namespace latlab::hyp
