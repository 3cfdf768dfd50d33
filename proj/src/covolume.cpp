#include "latlab/lattice_lab.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace latlab::lab {

namespace {

using Complex = std::complex<double>;
using Vertex = std::variant<hyp::HPoint, hyp::BoundaryPoint>;

// Direction of the geodesic from v toward p, measured after moving v to the
// centre of the disk, where geodesics through the centre are diameters.
double direction_from(const hyp::HPoint& v, const Vertex& p) {
  const Complex zv = v.horizontal();
  const double yv = v.height();
  auto to_disk = [](Complex z) { return (z - Complex(0, 1)) / (z + Complex(0, 1)); };
  Complex w;
  if (const auto* q = std::get_if<hyp::HPoint>(&p)) {
    if (q->dim() != 2) throw PreconditionError("vertex_angle: polygon must lie in H^2");
    w = to_disk(Complex(q->horizontal().real() - zv.real(), q->height()) / yv);
  } else {
    const auto& b = std::get<hyp::BoundaryPoint>(p);
    if (b.at_infinity) {
      w = 1.0;
    } else {
      if (std::abs(b.value.imag()) > 1e-12) throw PreconditionError("vertex_angle: boundary point must be real");
      w = to_disk(Complex((b.value.real() - zv.real()) / yv, 0.0));
    }
  }
  if (std::abs(w) < 1e-15) throw PreconditionError("vertex_angle: repeated vertex");
  return std::arg(w);
}

}  // namespace

double covolume_sl2z_domain() {
  using boost::math::quadrature::gauss_kronrod;
  // inner integral over u = 1/y in [0, 1/sqrt(1 - x^2)]
  auto inner = [](double x) {
    const double top = 1.0 / std::sqrt(1.0 - x * x);
    return gauss_kronrod<double, 15>::integrate([](double) { return 1.0; }, 0.0, top, 5, 1e-14);
  };
  return gauss_kronrod<double, 61>::integrate(inner, -0.5, 0.5, 15, 1e-14);
}

double covolume_polygon(const std::vector<double>& angles) {
  if (angles.size() < 3) throw PreconditionError("covolume_polygon: need at least 3 vertices");
  double sum = 0.0;
  for (double a : angles) {
    if (!(a >= 0.0) || a >= std::numbers::pi) throw PreconditionError("covolume_polygon: angle outside [0, pi)");
    sum += a;
  }
  const double area = static_cast<double>(angles.size() - 2) * std::numbers::pi - sum;
  if (area < -1e-12) throw PreconditionError("covolume_polygon: angle sum too large, polygon is not hyperbolic");
  return std::max(area, 0.0);
}

Rational covolume_polygon_exact(const std::vector<Rational>& angles_over_pi) {
  if (angles_over_pi.size() < 3) throw PreconditionError("covolume_polygon: need at least 3 vertices");
  Rational sum = 0;
  for (const auto& a : angles_over_pi) {
    if (a < 0 || a >= 1) throw PreconditionError("covolume_polygon: angle outside [0, pi)");
    sum += a;
  }
  const Rational area = Rational(static_cast<long>(angles_over_pi.size()) - 2) - sum;
  if (area < 0) throw PreconditionError("covolume_polygon: angle sum too large, polygon is not hyperbolic");
  return area;
}

double vertex_angle(const hyp::HPoint& v, const Vertex& a, const Vertex& b) {
  if (v.dim() != 2) throw PreconditionError("vertex_angle: polygon must lie in H^2");
  double d = std::abs(direction_from(v, a) - direction_from(v, b));
  if (d > std::numbers::pi) d = 2.0 * std::numbers::pi - d;
  return d;
}

double covolume_polygon(const std::vector<Vertex>& vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw PreconditionError("covolume_polygon: need at least 3 vertices");
  std::vector<double> angles;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::holds_alternative<hyp::BoundaryPoint>(vertices[i])) {
      angles.push_back(0.0);
      continue;
    }
    angles.push_back(vertex_angle(std::get<hyp::HPoint>(vertices[i]), vertices[(i + n - 1) % n],
                                  vertices[(i + 1) % n]));
  }
  return covolume_polygon(angles);
}

double covolume_genus(int g) {
  if (g < 2) throw PreconditionError("covolume_genus: a hyperbolic surface needs genus >= 2");
  return 2.0 * std::numbers::pi * (2.0 * g - 2.0);
}

Rational covolume_genus_exact(int g) {
  if (g < 2) throw PreconditionError("covolume_genus: a hyperbolic surface needs genus >= 2");
  return Rational(2 * (2 * g - 2));
}

}  // namespace latlab::lab
