#include "latlab/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latlab::presets {

using Complex = std::complex<double>;

MoebiusGroup sl2z() {
  return {{hyp::MoebiusIsometry::real(0, -1, 1, 0), hyp::MoebiusIsometry::real(1, 1, 0, 1)}, true, "sl2z"};
}

MoebiusGroup cusp_model() { return {{hyp::MoebiusIsometry::real(1, 1, 0, 1)}, true, "cusp-model"}; }

MoebiusGroup cyclic_hyperbolic(double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw PreconditionError("cyclic-hyperbolic: length must be positive");
  const double s = std::exp(ell / 2.0);
  return {{hyp::MoebiusIsometry::real(s, 0, 0, 1.0 / s)}, false, "cyclic-hyperbolic"};
}

double octagon_inradius() { return std::acosh(1.0 + std::numbers::sqrt2); }
double octagon_circumradius() { return std::acosh(3.0 + 2.0 * std::numbers::sqrt2); }

Complex disk_to_half_plane(Complex w) { return Complex(0, 1) * (1.0 + w) / (1.0 - w); }
Complex half_plane_to_disk(Complex z) { return (z - Complex(0, 1)) / (z + Complex(0, 1)); }

MoebiusGroup octagon_genus2() {
  const double r = octagon_inradius();
  Eigen::Matrix2cd t;
  t << std::cosh(r), std::sinh(r), std::sinh(r), std::cosh(r);
  Eigen::Matrix2cd cayley;
  cayley << Complex(0, 1), Complex(0, 1), -1.0, 1.0;
  const Eigen::Matrix2cd cayley_inv = cayley.inverse();
  MoebiusGroup g{{}, false, "octagon-genus2"};
  for (int k = 0; k < 4; ++k) {
    const double theta = k * std::numbers::pi / 4.0;
    Eigen::Matrix2cd rot = Eigen::Matrix2cd::Zero();
    rot(0, 0) = std::polar(1.0, theta / 2.0);
    rot(1, 1) = std::polar(1.0, -theta / 2.0);
    const Eigen::Matrix2cd h = cayley * rot * t * rot.adjoint() * cayley_inv;
    if (h.imag().norm() > 1e-9) throw std::logic_error("octagon pairing is not real");
    g.generators.push_back(hyp::MoebiusIsometry::from_matrix(h, true));
  }
  return g;
}

bool in_octagon(Complex w, double slack) {
  if (std::abs(w) >= 1.0) return false;
  const double r = octagon_inradius();
  const double n = 1.0 - std::norm(w);
  // hyperboloid lift of w
  const double x0 = (1.0 + std::norm(w)) / n, x1 = 2.0 * w.real() / n, x2 = 2.0 * w.imag() / n;
  for (int k = 0; k < 8; ++k) {
    const double theta = k * std::numbers::pi / 4.0;
    const double side = -std::sinh(r) * x0 + std::cosh(r) * (std::cos(theta) * x1 + std::sin(theta) * x2);
    if (side > slack) return false;
  }
  return true;
}

MoebiusGroup moebius_preset(const std::string& name) {
  if (name == "sl2z") return sl2z();
  if (name == "sl2z-T" || name == "cusp-model") {
    auto g = cusp_model();
    g.name = name;
    return g;
  }
  if (name == "octagon-genus2") return octagon_genus2();
  const std::string prefix = "cyclic-hyperbolic";
  if (name.rfind(prefix, 0) == 0) {
    double ell = 0.05;
    if (name.size() > prefix.size()) {
      if (name[prefix.size()] != '(' || name.back() != ')')
        throw PreconditionError("preset: expected cyclic-hyperbolic(l)");
      const std::string arg = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
      std::size_t used = 0;
      try {
        ell = std::stod(arg, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != arg.size()) throw PreconditionError("preset: bad length in " + name);
    }
    auto g = cyclic_hyperbolic(ell);
    g.name = name;
    return g;
  }
  throw PreconditionError("unknown hyperbolic preset: " + name);
}

EuclideanGroup zn_translations(int n) {
  if (n < 1) throw PreconditionError("zn_translations: n must be >= 1");
  EuclideanGroup g{{}, true, "z" + std::to_string(n)};
  for (int i = 0; i < n; ++i) g.generators.push_back(euc::EuclideanIsometry::translation(Eigen::VectorXd::Unit(n, i)));
  return g;
}

EuclideanGroup p2_wallpaper() {
  auto g = zn_translations(2);
  g.generators.push_back(euc::EuclideanIsometry(-Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2)));
  g.name = "p2";
  return g;
}

EuclideanGroup screw_motion(double angle) {
  EuclideanGroup g{{}, false, "screw"};
  g.generators.push_back(euc::EuclideanIsometry::translation(Eigen::VectorXd::Unit(3, 0)));
  g.generators.push_back(euc::EuclideanIsometry::translation(Eigen::VectorXd::Unit(3, 1)));
  const auto rot = euc::EuclideanIsometry::rotation(3, 0, 1, angle);
  g.generators.push_back(euc::EuclideanIsometry(rot.linear(), Eigen::VectorXd::Unit(3, 2)));
  return g;
}

EuclideanGroup euclidean_preset(const std::string& name) {
  if (name == "z2") return zn_translations(2);
  if (name == "z3") return zn_translations(3);
  if (name == "p2") return p2_wallpaper();
  if (name == "screw") return screw_motion(std::numbers::pi / 2.0);
  throw PreconditionError("unknown Euclidean preset: " + name);
}

Eigen::MatrixXcd so3_rotation(Eigen::Vector3d axis, double angle) {
  if (axis.norm() == 0.0) throw PreconditionError("so3_rotation: zero axis");
  const Eigen::Matrix3d r = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  return r.cast<Complex>();
}

std::vector<Eigen::MatrixXcd> a5_generators() {
  const double phi = std::numbers::phi;
  return {so3_rotation({0.0, 1.0, phi}, 2.0 * std::numbers::pi / 5.0),
          so3_rotation({1.0, 1.0, 1.0}, 2.0 * std::numbers::pi / 3.0)};
}

std::vector<Eigen::MatrixXcd> q8_generators() {
  Eigen::MatrixXcd i(2, 2), j(2, 2);
  i << Complex(0, 1), 0.0, 0.0, Complex(0, -1);
  j << 0.0, 1.0, -1.0, 0.0;
  return {i, j};
}

}  // namespace latlab::presets
