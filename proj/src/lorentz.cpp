#include "latlab/lorentz.hpp"

#include "latlab/kernels.hpp"

#include <cmath>

namespace latlab::hyp {

namespace {

Eigen::MatrixXd form(int n) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n + 1, n + 1);
  q(0, 0) = -1.0;
  return q;
}

// Spectral radius above 1 + this is unambiguously hyperbolic; unipotent
// Jordan blocks perturb eigenvalues by roughly eps^(1/3).
constexpr double kHyperbolicGap = 1e-4;

Eigen::VectorXd boundary_direction(const Eigen::VectorXd& v) {
  Eigen::VectorXd w = v / v(0);
  return w.tail(w.size() - 1);
}

}  // namespace

double minkowski(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw PreconditionError("minkowski: dimension mismatch");
  return -u(0) * v(0) + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

HyperboloidPoint::HyperboloidPoint(Eigen::VectorXd x) : x_(std::move(x)) {
  if (x_.size() < 2) throw PreconditionError("HyperboloidPoint: need at least 2 coordinates");
  const double q = minkowski(x_, x_);
  if (!(x_(0) > 0.0) || std::abs(q + 1.0) > 1e-8 * std::max(1.0, x_(0) * x_(0)))
    throw DomainError("HyperboloidPoint: not on the upper sheet <x,x> = -1");
}

HyperboloidPoint HyperboloidPoint::origin(int n) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n + 1);
  x(0) = 1.0;
  return HyperboloidPoint(x);
}

HyperboloidPoint HyperboloidPoint::from_ball(const Eigen::VectorXd& p) {
  const double r2 = p.squaredNorm();
  if (!(r2 < 1.0)) throw DomainError("HyperboloidPoint: ball coordinates must have norm < 1");
  Eigen::VectorXd x(p.size() + 1);
  x(0) = (1.0 + r2) / (1.0 - r2);
  x.tail(p.size()) = 2.0 * p / (1.0 - r2);
  return HyperboloidPoint(x);
}

Eigen::VectorXd HyperboloidPoint::to_ball() const { return x_.tail(x_.size() - 1) / (1.0 + x_(0)); }

double distance(const HyperboloidPoint& p, const HyperboloidPoint& q) {
  if (p.dim() != q.dim()) throw PreconditionError("distance: dimension mismatch");
  const Eigen::VectorXd w = p.vector() - q.vector();
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, minkowski(w, w))) / 2.0);
}

LorentzIsometry::LorentzIsometry(Eigen::MatrixXd a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() < 2) throw PreconditionError("LorentzIsometry: matrix must be square, n >= 1");
  const int n = dim();
  const Eigen::MatrixXd q = form(n);
  const double scale = std::max(1.0, a_.squaredNorm());
  if ((a_.transpose() * q * a_ - q).norm() > 1e-8 * scale)
    throw PreconditionError("LorentzIsometry: matrix does not preserve the Minkowski form");
  if (!(a_(0, 0) > 0.0)) throw PreconditionError("LorentzIsometry: matrix swaps the sheets of the hyperboloid");
}

LorentzIsometry LorentzIsometry::identity(int n) { return LorentzIsometry(Eigen::MatrixXd::Identity(n + 1, n + 1)); }

LorentzIsometry LorentzIsometry::boost(int n, int axis, double t) {
  if (axis < 1 || axis > n) throw PreconditionError("boost: axis out of range");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n + 1, n + 1);
  a(0, 0) = a(axis, axis) = std::cosh(t);
  a(0, axis) = a(axis, 0) = std::sinh(t);
  return LorentzIsometry(a);
}

LorentzIsometry LorentzIsometry::rotation(int n, int i, int j, double theta) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) throw PreconditionError("rotation: plane out of range");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n + 1, n + 1);
  a(i, i) = a(j, j) = std::cos(theta);
  a(i, j) = -std::sin(theta);
  a(j, i) = std::sin(theta);
  return LorentzIsometry(a);
}

LorentzIsometry LorentzIsometry::operator*(const LorentzIsometry& o) const {
  if (o.dim() != dim()) throw PreconditionError("LorentzIsometry: dimension mismatch");
  return LorentzIsometry(a_ * o.a_);
}

LorentzIsometry LorentzIsometry::inverse() const {
  const Eigen::MatrixXd q = form(dim());
  return LorentzIsometry(q * a_.transpose() * q);
}

HyperboloidPoint LorentzIsometry::apply(const HyperboloidPoint& p) const {
  if (p.dim() != dim()) throw PreconditionError("LorentzIsometry: dimension mismatch");
  return HyperboloidPoint(a_ * p.vector());
}

double displacement(const LorentzIsometry& g, const HyperboloidPoint& p) { return distance(g.apply(p), p); }

LorentzIsometry conjugate(const LorentzIsometry& g, const LorentzIsometry& h) { return h * g * h.inverse(); }

double min_displacement_scan(const LorentzIsometry& g, const LorentzScanOptions& opts) {
  const int n = g.dim();
  const int k = std::max(2, opts.grid_per_axis);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(k);

  auto grid_point = [&](std::size_t idx) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) {
      const auto c = static_cast<double>(idx % static_cast<std::size_t>(k));
      idx /= static_cast<std::size_t>(k);
      p(i) = opts.ball_radius * (2.0 * c / (k - 1) - 1.0);
    }
    return p;
  };
  auto value = [&](const Eigen::VectorXd& p) {
    if (p.squaredNorm() >= 0.999999) return std::numeric_limits<double>::infinity();
    return displacement(g, HyperboloidPoint::from_ball(p));
  };
  const kernels::ArgMin best =
      kernels::argmin(opts.exec, total, [&](std::size_t i) { return value(grid_point(i)); });

  Eigen::VectorXd x = grid_point(best.index);
  double fx = best.value;
  double step = opts.ball_radius / (k - 1);
  for (int it = 0; it < opts.refine_steps && step > 1e-12; ++it) {
    bool moved = false;
    for (int i = 0; i < n; ++i)
      for (double s : {step, -step}) {
        Eigen::VectorXd y = x;
        y(i) += s;
        const double fy = value(y);
        if (fy < fx) {
          x = y;
          fx = fy;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  return fx;
}

LorentzClass classify(const LorentzIsometry& g, const LorentzScanOptions& opts) {
  const int n = g.dim();
  const Eigen::MatrixXd& a = g.matrix();
  const Eigen::MatrixXd q = form(n);
  const double scale = std::max(1.0, a.norm());
  LorentzClass out;
  if ((a - Eigen::MatrixXd::Identity(n + 1, n + 1)).norm() <= opts.tolerance * 1e-3 * scale) {
    out.kind = IsometryKind::Identity;
    return out;
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  const Eigen::VectorXcd ev = es.eigenvalues();
  Eigen::Index imax = 0, imin = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > std::abs(ev(imax))) imax = i;
    if (std::abs(ev(i)) < std::abs(ev(imin))) imin = i;
  }
  const double rho = std::abs(ev(imax));

  auto hyperbolic = [&]() {
    out.kind = IsometryKind::Hyperbolic;
    out.translation_length = std::log(rho);
    const Eigen::VectorXd vplus = es.eigenvectors().col(imax).real();
    const Eigen::VectorXd vminus = es.eigenvectors().col(imin).real();
    out.axis = std::make_pair(boundary_direction(vplus), boundary_direction(vminus));
    out.observed_min_displacement = min_displacement_scan(g, opts);
  };

  if (rho > 1.0 + kHyperbolicGap) {
    hyperbolic();
    return out;
  }

  // Fixed vectors: null space of A - I.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a - Eigen::MatrixXd::Identity(n + 1, n + 1), Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  int nullity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= opts.tolerance * scale) ++nullity;
  if (nullity > 0) {
    const Eigen::MatrixXd basis = svd.matrixV().rightCols(nullity);
    const Eigen::MatrixXd restricted = basis.transpose() * q * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> se(restricted);
    const double lowest = se.eigenvalues()(0);
    Eigen::VectorXd w = basis * se.eigenvectors().col(0);
    if (w(0) < 0.0) w = -w;
    if (lowest < -1e-9) {
      out.kind = IsometryKind::Elliptic;
      out.interior_fixed_point = HyperboloidPoint(w / std::sqrt(-minkowski(w, w)));
      out.observed_min_displacement = displacement(g, *out.interior_fixed_point);
      return out;
    }
    if (std::abs(lowest) <= 1e-6 && std::abs(w(0)) > 1e-12) {
      // lightlike fixed vector: walk along the geodesic ray towards it
      const Eigen::VectorXd xi = boundary_direction(w);
      double best = std::numeric_limits<double>::infinity();
      for (int s = 0; s <= opts.ray_depth; ++s) {
        Eigen::VectorXd x(n + 1);
        x(0) = std::cosh(static_cast<double>(s));
        x.tail(n) = std::sinh(static_cast<double>(s)) * xi.normalized();
        best = std::min(best, displacement(g, HyperboloidPoint(x)));
      }
      out.observed_min_displacement = std::min(best, min_displacement_scan(g, opts));
      if (out.observed_min_displacement > opts.parabolic_tolerance) {
        if (rho > 1.0 + opts.tolerance) {
          hyperbolic();
          return out;
        }
        throw BorderlineError("classify: lightlike fixed vector but displacement does not approach 0",
                              {"parabolic", "hyperbolic"});
      }
      out.kind = IsometryKind::Parabolic;
      out.boundary_fixed_point = xi.normalized();
      out.infimum_attained = false;
      out.certified = false;
      return out;
    }
  }
  if (rho > 1.0 + opts.tolerance) {
    hyperbolic();
    return out;
  }
  throw BorderlineError("classify: spectral radius within tolerance of 1 and no fixed vector resolved",
                        {"elliptic", "parabolic", "hyperbolic"});
}

TranslationLength translation_length(const LorentzIsometry& g, const LorentzScanOptions& opts) {
  const LorentzClass c = classify(g, opts);
  return {c.translation_length, c.infimum_attained};
}

HyperboloidPoint to_hyperboloid(const HPoint& p) {
  if (p.dim() != 2) throw PreconditionError("to_hyperboloid: only H^2 points");
  const double x = p.horizontal().real(), y = p.height();
  Eigen::Vector3d v((1.0 + x * x + y * y) / (2.0 * y), (1.0 - x * x - y * y) / (2.0 * y), -x / y);
  return HyperboloidPoint(v);
}

HPoint to_half_plane(const HyperboloidPoint& p) {
  if (p.dim() != 2) throw PreconditionError("to_half_plane: only H^2 points");
  const Eigen::VectorXd& v = p.vector();
  const double y = 1.0 / (v(0) + v(1));
  return HPoint::plane(-v(2) * y, y);
}

LorentzIsometry to_lorentz(const MoebiusIsometry& g) {
  if (!g.is_real()) throw PreconditionError("to_lorentz: only PSL(2,R) elements");
  const Eigen::Matrix2d m = g.matrix().real();
  // X(z) transforms as X(gz) = g^{-T} X(z) g^{-1}
  const Eigen::Matrix2d h = m.inverse().transpose();
  Eigen::Matrix3d out;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e(k) = 1.0;
    Eigen::Matrix2d x;
    x << e(0) + e(1), e(2), e(2), e(0) - e(1);
    const Eigen::Matrix2d y = h * x * h.transpose();
    out.col(k) = Eigen::Vector3d(0.5 * (y(0, 0) + y(1, 1)), 0.5 * (y(0, 0) - y(1, 1)), y(0, 1));
  }
  return LorentzIsometry(out);
}

}  // namespace latlab::hyp
