#include "latlab/hyp_geom.hpp"
#include "latlab/lorentz.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace latlab;
using namespace latlab::hyp;

namespace {

MoebiusIsometry random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const double a = n(rng), b = n(rng), c = n(rng), d = n(rng);
    const double det = a * d - b * c;
    if (det > 0.05) return MoebiusIsometry::real(a, b, c, d);
  }
}

HPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-3.0, 3.0), y(-2.0, 2.0);
  return HPoint::plane(x(rng), std::exp(y(rng)));
}

}  // namespace

TEST_CASE("distance oracles") {
  CHECK(distance(HPoint::plane(0, 1), HPoint::plane(0, 1)) == 0.0);
  CHECK(distance(HPoint::plane(0, 1), HPoint::plane(0, std::numbers::e)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(distance(HPoint::plane(0, 2), HPoint::plane(1, 2)) - std::acosh(1.125)) < 1e-12);
  CHECK(std::abs(distance(HPoint::space(0, 0, 1), HPoint::space(0, 0, 4)) - std::log(4.0)) < 1e-12);
  CHECK_THROWS_AS(HPoint::plane(0, 0), PreconditionError);
  CHECK_THROWS_AS(distance(HPoint::plane(0, 1), HPoint::space(0, 0, 1)), PreconditionError);
}

TEST_CASE("displacement oracles") {
  const auto t = MoebiusIsometry::real(1, 1, 0, 1);
  CHECK(displacement(MoebiusIsometry(), HPoint::plane(0.3, 2)) == 0.0);
  CHECK(std::abs(displacement(t, HPoint::plane(0, 1)) - std::acosh(1.5)) < 1e-12);
  CHECK(std::abs(displacement(MoebiusIsometry::real(2, 0, 0, 0.5), HPoint::plane(0, 1)) - std::log(4.0)) < 1e-12);
}

TEST_CASE("classification oracles") {
  const auto t = classify(MoebiusIsometry::real(1, 1, 0, 1));
  CHECK(t.kind == IsometryKind::Parabolic);
  REQUIRE(t.boundary_fixed_point);
  CHECK(t.boundary_fixed_point->at_infinity);
  CHECK_FALSE(t.infimum_attained);

  const auto h = classify(MoebiusIsometry::real(2, 0, 0, 0.5));
  CHECK(h.kind == IsometryKind::Hyperbolic);
  CHECK(std::abs(h.translation_length - 2.0 * std::log(2.0)) < 1e-9);
  REQUIRE(h.axis);
  CHECK(same_axis(*h.axis, {BoundaryPoint::finite(0.0), BoundaryPoint::infinity()}));

  const double th = std::numbers::pi / 8;
  const auto e = classify(MoebiusIsometry::real(std::cos(th), std::sin(th), -std::sin(th), std::cos(th)));
  CHECK(e.kind == IsometryKind::Elliptic);
  REQUIRE(e.interior_fixed_point);
  CHECK(distance(*e.interior_fixed_point, HPoint::plane(0, 1)) < 1e-9);

  CHECK(classify(MoebiusIsometry()).kind == IsometryKind::Identity);
}

TEST_CASE("borderline traces are reported, not guessed") {
  const auto g = MoebiusIsometry::real(1.00001, 0, 0, 1.0 / 1.00001);
  try {
    classify(g);
    FAIL("expected BorderlineError");
  } catch (const BorderlineError& b) {
    CHECK(b.candidates().size() >= 2);
  }
}

TEST_CASE("translation length oracles") {
  CHECK(translation_length(MoebiusIsometry()).value == 0.0);
  CHECK(std::abs(translation_length(MoebiusIsometry::real(3, 0, 0, 1.0 / 3)).value - 2.0 * std::log(3.0)) < 1e-9);
  const auto p = translation_length(MoebiusIsometry::real(1, 1, 0, 1));
  CHECK(p.value == 0.0);
  CHECK_FALSE(p.attained);
}

TEST_CASE("escape witness in exact mode") {
  std::vector<RationalMatrix> gs;
  for (int n = 1; n <= 1000; ++n) gs.push_back(RationalMatrix{{n, 0}, {0, Rational(1, n)}});
  const RationalMatrix gamma{{1, 0}, {1, 1}};
  const auto w = sequence_contraction_witness(gs, gamma);
  REQUIRE(w.conjugates.size() == 1000);
  bool exact = true;
  for (int n = 1; n <= 1000; ++n) {
    const auto& c = w.conjugates[static_cast<std::size_t>(n - 1)];
    exact = exact && c(1, 0) == Rational(1, n * n) && c(0, 0) == 1 && c(0, 1) == 0 && c(1, 1) == 1;
  }
  CHECK(exact);
  CHECK(w.escaping);
  CHECK(w.conjugates[2] == RationalMatrix{{1, 0}, {Rational(1, 9), 1}});
}

TEST_CASE("contraction witness negatives") {
  std::vector<Eigen::Matrix2d> ids(5, Eigen::Matrix2d::Identity());
  const auto w = sequence_contraction_witness(ids, Eigen::Matrix2d::Identity());
  for (double v : w.norms) CHECK(v == 0.0);
  CHECK_FALSE(w.escaping);

  std::vector<Eigen::Matrix2d> rot;
  for (int k = 0; k < 360; ++k) {
    const double t = k * std::numbers::pi / 180.0;
    Eigen::Matrix2d r;
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    rot.push_back(r);
  }
  Eigen::Matrix2d gamma;
  gamma << 1, 0, 1, 1;
  const auto wr = sequence_contraction_witness(rot, gamma);
  CHECK(*std::min_element(wr.norms.begin(), wr.norms.end()) > 0.5);
  CHECK_FALSE(wr.escaping);
}

TEST_CASE("classification is conjugation invariant") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_sl2(rng);
    const auto h = random_sl2(rng);
    try {
      const auto a = classify(g);
      const auto b = classify(conjugate(g, h));
      CHECK(a.kind == b.kind);
      CHECK(std::abs(a.translation_length - b.translation_length) < 1e-8);
      ++checked;
    } catch (const BorderlineError&) {
    }
  }
  CHECK(checked > 950);
}

TEST_CASE("hyperbolic displacement exceeds the translation length off the axis and is convex") {
  std::mt19937_64 rng(12);
  const auto g = conjugate(MoebiusIsometry::real(2, 0, 0, 0.5), MoebiusIsometry::real(1, 0.3, 0.2, 1.06));
  const double len = translation_length(g).value;
  for (int i = 0; i < 100; ++i) CHECK(displacement(g, random_point(rng)) > len - 1e-12);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_point(rng), q = random_point(rng);
    // midpoint of the geodesic segment through the hyperboloid model
    const auto a = to_hyperboloid(p).vector(), b = to_hyperboloid(q).vector();
    const Eigen::VectorXd s = a + b;
    const double norm = std::sqrt(s(0) * s(0) - s(1) * s(1) - s(2) * s(2));
    const auto m = to_half_plane(HyperboloidPoint(s / norm));
    CHECK(displacement(g, m) <= 0.5 * (displacement(g, p) + displacement(g, q)) + 1e-9);
  }
}

TEST_CASE("commuting elements share an axis or a fixed point") {
  const auto h = MoebiusIsometry::real(1, 0.5, -0.2, 0.9);
  const auto g1 = conjugate(MoebiusIsometry::real(2, 0, 0, 0.5), h);
  const auto g2 = conjugate(MoebiusIsometry::real(3, 0, 0, 1.0 / 3), h);
  CHECK((g1 * g2).approx_equal(g2 * g1));
  CHECK(same_axis(*classify(g1).axis, *classify(g2).axis));

  const auto p1 = conjugate(MoebiusIsometry::real(1, 1, 0, 1), h);
  const auto p2 = conjugate(MoebiusIsometry::real(1, 2.5, 0, 1), h);
  CHECK(same_boundary_point(*classify(p1).boundary_fixed_point, *classify(p2).boundary_fixed_point));
}

TEST_CASE("trace route agrees with the fixed-point route") {
  std::mt19937_64 rng(13);
  int agreed = 0, total = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_sl2(rng);
    const double gap = std::abs(std::abs(g.trace().real()) - 2.0);
    if (gap < 1e-6) continue;
    ++total;
    agreed += classify(g).kind == classify_by_trace(g);
  }
  CHECK(agreed == total);
}

TEST_CASE("lorentz model agrees with the half-plane") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_point(rng), q = random_point(rng);
    CHECK(std::abs(distance(to_hyperboloid(p), to_hyperboloid(q)) - distance(p, q)) < 1e-9);
    const auto g = random_sl2(rng);
    CHECK(std::abs(displacement(to_lorentz(g), to_hyperboloid(p)) - displacement(g, p)) < 1e-7);
  }
}

TEST_CASE("complex isometries act on upper half-space") {
  using C = std::complex<double>;
  const auto g = MoebiusIsometry::complex(C(2, 0), C(0, 0), C(0, 0), C(0.5, 0));
  const auto p = HPoint::space(0, 0, 1);
  CHECK(std::abs(displacement(g, p) - std::log(4.0)) < 1e-12);
  const auto loxo = MoebiusIsometry::complex(C(0, 2), C(0, 0), C(0, 0), C(0, -0.5));
  const auto c = classify(loxo);
  CHECK(c.kind == IsometryKind::Hyperbolic);
  CHECK(std::abs(c.translation_length - std::log(4.0)) < 1e-9);
}
