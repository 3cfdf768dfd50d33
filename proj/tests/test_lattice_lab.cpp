#include "latlab/lattice_lab.hpp"
#include "latlab/presets.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace latlab;
using namespace latlab::lab;
using hyp::HPoint;

TEST_CASE("injectivity radius of SL2(Z) at 2i") {
  const double expected = 0.5 * std::acosh(1.125);
  for (int L : {6, 8}) {
    const auto r = injectivity_radius(presets::sl2z(), HPoint::plane(0, 2), L);
    CHECK(std::abs(r.value - expected) <= 1e-10);
    CHECK(r.minimizer.size() == 1);
    CHECK(r.stabilized);
  }
  const auto serial = injectivity_radius(presets::sl2z(), HPoint::plane(0, 2), 6, Exec::Serial);
  CHECK(std::abs(serial.value - expected) <= 1e-10);
}

TEST_CASE("injectivity radius high in the cusp and for Z^2") {
  const auto r = injectivity_radius(presets::sl2z(), HPoint::plane(0, 10), 6);
  CHECK(std::abs(r.value - 0.5 * std::acosh(1.0 + 1.0 / 200.0)) <= 1e-10);
  const auto z = injectivity_radius(presets::zn_translations(2), Eigen::VectorXd(Eigen::Vector2d(0.3, 0.7)), 3);
  CHECK(std::abs(z.value - 0.5) <= 1e-12);
  CHECK_THROWS_AS(injectivity_radius(presets::sl2z(), HPoint::plane(0, 2), 0), PreconditionError);
}

TEST_CASE("thick-thin for SL2(Z): a single cusp") {
  SampleRegion region;
  region.count = 1000;
  const auto rep = thick_thin_scan(presets::sl2z(), 0.2, sample_region(region), 5);
  REQUIRE(rep.components.size() == 1);
  const auto& c = rep.components[0];
  CHECK(c.kind == ComponentKind::Cusp);
  REQUIRE(c.fixed_point);
  CHECK(c.fixed_point->at_infinity);
  for (auto i : c.samples) CHECK(rep.points[i].height() > 1.0);
  CHECK(rep.unresolved.empty());
  CHECK(rep.thick.size() + rep.cone.size() + c.samples.size() == rep.points.size());
}

TEST_CASE("thick-thin for a cyclic hyperbolic group: one tube") {
  const auto g = presets::cyclic_hyperbolic(0.05);
  SampleRegion region{RegionKind::Annulus, 500, 1, 0.05};
  const auto rep = thick_thin_scan(g, 0.2, sample_region(region), 3);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].kind == ComponentKind::Tube);
  CHECK(std::abs(rep.components[0].core_length - 0.05) <= 1e-9);
  REQUIRE(rep.components[0].axis);
  CHECK(hyp::same_axis(*rep.components[0].axis,
                       {hyp::BoundaryPoint::finite(0.0), hyp::BoundaryPoint::infinity()}));
}

TEST_CASE("thick-thin for the octagon with small epsilon: everything thick") {
  SampleRegion region{RegionKind::Octagon, 300, 2, 0.0};
  const auto rep = thick_thin_scan(presets::octagon_genus2(), 0.1, sample_region(region), 3);
  CHECK(rep.components.empty());
  CHECK(rep.thick.size() == rep.points.size());
}

TEST_CASE("thick-thin scans agree across execution paths") {
  SampleRegion region;
  region.count = 300;
  const auto pts = sample_region(region);
  const auto a = thick_thin_scan(presets::sl2z(), 0.2, pts, 4, Exec::Serial);
  const auto b = thick_thin_scan(presets::sl2z(), 0.2, pts, 4, Exec::Parallel);
  CHECK(a.thick == b.thick);
  CHECK(a.cone == b.cone);
  REQUIRE(a.components.size() == b.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) CHECK(a.components[i].samples == b.components[i].samples);
}

TEST_CASE("samples stay in their regions") {
  SampleRegion m;
  m.count = 500;
  for (const auto& p : sample_region(m)) {
    CHECK(std::abs(p.horizontal().real()) <= 0.5 + 1e-12);
    CHECK(std::norm(p.horizontal()) + p.height() * p.height() >= 1.0 - 1e-12);
    CHECK(p.height() <= 20.0 + 1e-12);
  }
  SampleRegion o{RegionKind::Octagon, 200, 0, 0.0};
  for (const auto& p : sample_region(o)) {
    const auto w = presets::half_plane_to_disk(std::complex<double>(p.horizontal().real(), p.height()));
    CHECK(presets::in_octagon(w, 1e-9));
  }
}

TEST_CASE("psi in the cusp") {
  const auto ctx = psi_context(presets::cusp_model(), 0.3, 3);
  CHECK_FALSE(ctx.elements.empty());
  const auto x = HPoint::plane(0, 5);
  const double v = psi_value(ctx, x);
  CHECK(v > 0.0);
  const auto g = psi_gradient(ctx, x, 1e-4);
  CHECK(g(1) > 0.0);
  const auto g2 = psi_gradient(ctx, x, 1e-5);
  CHECK((g - g2).norm() <= 1e-6 * std::max(1.0, g.norm()));
  CHECK(psi_value(ctx, HPoint::plane(0, 1)) == 0.0);

  // T^3 has |T^3| = 0 but moves 5i by about 0.6
  const auto d = psi_disagreements(ctx, x);
  CHECK_FALSE(d.empty());
  for (auto i : d) CHECK(hyp::displacement(ctx.elements[i], x) >= 0.3);
  CHECK(psi_disagreements(ctx, HPoint::plane(0, 1)).size() == ctx.elements.size());
}

TEST_CASE("psi near a short closed geodesic") {
  const auto ctx = psi_context(presets::cyclic_hyperbolic(0.1), 0.5, 3);
  CHECK(ctx.elements.size() == 6);
  const auto right = psi_gradient(ctx, HPoint::plane(0.05, 1), 1e-5);
  const auto left = psi_gradient(ctx, HPoint::plane(-0.05, 1), 1e-5);
  // psi grows toward the axis x = 0
  CHECK(right(0) < 0.0);
  CHECK(left(0) > 0.0);
  CHECK(right.norm() > 0.0);
  CHECK_THROWS_AS(psi_value(ctx, HPoint::plane(0, 2)), DomainError);
}

TEST_CASE("psi gradient agrees with a finer stencil") {
  const auto ctx = psi_context(presets::cusp_model(), 0.3, 3);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(1.5, 10.0);
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const auto x = HPoint::plane(ux(rng), uy(rng));
    CHECK((psi_gradient(ctx, x, h) - psi_gradient(ctx, x, h / 10)).norm() <= 10 * h * h);
  }
}

TEST_CASE("gradient lemma on the cusp model and the plateau control") {
  std::vector<HPoint> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(HPoint::plane(0, 0.5 + 9.5 * i / 99.0));
  const auto ok = gradient_lemma_check(psi_context(presets::cusp_model(), 0.3, 3), samples, 1e-4);
  CHECK(ok.violations.empty());
  CHECK(ok.evaluated == samples.size());
  const auto bad =
      gradient_lemma_check(psi_context(presets::cusp_model(), 0.3, 3, BumpKind::Plateau), samples, 1e-4);
  CHECK_FALSE(bad.violations.empty());
}

TEST_CASE("bump function") {
  CHECK(bump(0.5, 0.3) == 0.0);
  CHECK(bump(0.1, 0.3) == doctest::Approx(0.04 / 0.1));
  CHECK(bump(0.1, 0.3) > bump(0.2, 0.3));
  CHECK(bump(0.1, 0.3, BumpKind::Plateau) == bump(0.2, 0.3, BumpKind::Plateau));
}

TEST_CASE("covolumes") {
  CHECK(std::abs(covolume_sl2z_domain() - std::numbers::pi / 3) <= 1e-8);
  CHECK(std::abs(covolume_polygon(std::vector<double>{0, 0, 0}) - std::numbers::pi) <= 1e-12);
  std::vector<std::variant<HPoint, hyp::BoundaryPoint>> ideal = {
      hyp::BoundaryPoint::finite(-1.0), hyp::BoundaryPoint::finite(1.0), hyp::BoundaryPoint::infinity()};
  CHECK(std::abs(covolume_polygon(ideal) - std::numbers::pi) <= 1e-9);
  std::vector<std::variant<HPoint, hyp::BoundaryPoint>> modular = {
      HPoint::plane(-0.5, std::sqrt(3.0) / 2), HPoint::plane(0.5, std::sqrt(3.0) / 2), hyp::BoundaryPoint::infinity()};
  CHECK(std::abs(covolume_polygon(modular) - std::numbers::pi / 3) <= 1e-9);
  CHECK(covolume_polygon_exact(std::vector<Rational>(8, Rational(1, 4))) == 4);
  CHECK(covolume_genus_exact(2) == 4);
  CHECK(std::abs(covolume_genus(2) - 4 * std::numbers::pi) <= 1e-12);
  CHECK_THROWS_AS(covolume_polygon(std::vector<double>{3.0, 3.0, 3.0}), PreconditionError);
}

TEST_CASE("recurrence") {
  const auto r = recurrence_search(Eigen::VectorXd(Eigen::VectorXd::Constant(1, std::sqrt(2.0) - 1)), 0.05, 100);
  std::vector<long> expected;
  for (long n = 1; n <= 100; ++n) {
    const double x = static_cast<double>(n) * (std::sqrt(2.0) - 1);
    if (std::abs(x - std::round(x)) < 0.1) expected.push_back(n);
  }
  CHECK(r.hits == expected);
  REQUIRE_FALSE(r.hits.empty());
  CHECK(r.hits.front() == 5);

  Eigen::Matrix2d rot;
  rot << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0);
  const auto rr = recurrence_search(rot, 0.05, 10000);
  CHECK_FALSE(rr.hits.empty());
  REQUIRE(rr.witnesses.size() == rr.hits.size());
  for (const auto& w : rr.witnesses) CHECK(w.determinant() == 1);

  Eigen::Matrix2d t;
  t << 1, 1, 0, 1;
  CHECK(recurrence_search(t, 0.05, 50).hits.size() == 50);
}

TEST_CASE("span of a lattice") {
  CHECK(span_check(presets::sl2z(), 3).dimension == 4);
  CHECK(span_check(presets::sl2z(), 3).regular_witness.has_value());
  CHECK(span_check(presets::cusp_model(), 3).dimension == 2);
  CHECK(span_check(presets::cyclic_hyperbolic(1.0), 3).dimension == 2);
}
