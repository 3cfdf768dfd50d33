#include "latlab/presets.hpp"
#include "latlab/smallness.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace latlab;
using namespace latlab::small;

namespace {

Eigen::MatrixXd unit_plus(int d, int i, int j, double t) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
  m(i, j) += t;
  return m;
}

}  // namespace

TEST_CASE("commutator oracles") {
  const auto a = unit_plus(2, 0, 1, 0.1), b = unit_plus(2, 1, 0, 0.1);
  CHECK(distance_to_identity(commutator(a, Eigen::MatrixXd::Identity(2, 2))) < 1e-15);
  CHECK(distance_to_identity(commutator(a, a)) < 1e-15);
  const double c = distance_to_identity(commutator(a, b));
  CHECK(c == doctest::Approx(0.0143).epsilon(0.01));
  CHECK(c <= 8 * 0.1 * 0.1);
  CHECK_THROWS_AS(commutator(Eigen::MatrixXd::Zero(2, 2), a), PreconditionError);
}

TEST_CASE("sub-multiplicative contraction on random pairs") {
  const auto t = commutator_contraction_trial(3, 0.1, 1000, 5, Exec::Parallel);
  CHECK(t.pairs == 1000);
  CHECK(t.violations == 0);
  CHECK(t.max_ratio <= 8.0);
  const auto u = commutator_contraction_trial(3, 0.1, 1000, 5, Exec::Serial);
  CHECK(u.max_ratio == t.max_ratio);

  // different radii for a and b
  const auto as = random_near_identity(3, 200, 0.125, 31);
  const auto bs = random_near_identity(3, 200, 0.05, 32);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < 200; ++i)
    if (distance_to_identity(commutator(as[i], bs[i])) > 8.0 * 0.125 * 0.05) ++violations;
  CHECK(violations == 0);
  for (const auto& a : as) CHECK(distance_to_identity(a) <= 0.125 + 1e-15);
}

TEST_CASE("commutator ladder decays under the bound") {
  const auto s = MatrixSet::floating({unit_plus(2, 0, 1, 0.05), unit_plus(2, 1, 0, 0.05)});
  const auto l = commutator_ladder(s, 5);
  CHECK(l.bound_asserted);
  CHECK(l.bound_holds);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(l.max_distance[n] <= 0.05 * std::pow(0.4, static_cast<double>(n)) + 1e-15);

  const auto id = MatrixSet::floating({Eigen::MatrixXd::Identity(2, 2)});
  for (double m : commutator_ladder(id, 3).max_distance) CHECK(m == 0.0);

  Eigen::MatrixXd big(2, 2);
  big << 2, 0, 0, 0.5;
  const auto l2 = commutator_ladder(MatrixSet::floating({big, unit_plus(2, 0, 1, 1.0)}), 3);
  CHECK_FALSE(l2.bound_asserted);
}

TEST_CASE("ladder recursion: incremental equals from scratch") {
  const auto s = MatrixSet::exact({RationalMatrix{{1, Rational(1, 20)}, {0, 1}}, RationalMatrix{{1, 0}, {Rational(1, 20), 1}}});
  const auto l = commutator_ladder(s, 3, Exec::Parallel);
  MatrixSet level = s;
  for (int n = 1; n <= 3; ++n) {
    level = next_commutator_level(s, level, Exec::Serial);
    CHECK(level.exact_elements() == l.levels[static_cast<std::size_t>(n)].exact_elements());
  }
  const auto f = MatrixSet::floating(random_near_identity(3, 3, 0.1, 9));
  const auto lf = commutator_ladder(f, 3, Exec::Parallel);
  MatrixSet fl = f;
  for (int n = 1; n <= 3; ++n) {
    fl = next_commutator_level(f, fl, Exec::Serial);
    const auto& a = fl.float_elements();
    const auto& b = lf.levels[static_cast<std::size_t>(n)].float_elements();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() <= 1e-10);
  }
}

TEST_CASE("nilpotency class") {
  RationalMatrix x = RationalMatrix::identity(3), y = RationalMatrix::identity(3);
  x(0, 1) = 1;
  y(1, 2) = 1;
  CHECK(nilpotency_class(MatrixSet::exact({x, y}), 5) == 2);

  RationalMatrix d1{{2, 0}, {0, Rational(1, 2)}}, d2{{3, 0}, {0, Rational(1, 3)}};
  CHECK(nilpotency_class(MatrixSet::exact({d1, d2}), 5) == 1);

  RationalMatrix h1{{2, 1}, {1, 1}}, h2{{1, 2}, {1, 3}};
  CHECK_FALSE(nilpotency_class(MatrixSet::exact({h1, h2}), 4).has_value());
}

TEST_CASE("Jordan index for A5") {
  const auto f = finite_closure(presets::a5_generators());
  REQUIRE(f.order() == 60);
  const auto j = jordan_abelian_index(f, 0.1);
  CHECK(j.subgroup_order == 1);
  CHECK(j.index == 60);
  CHECK(j.oracle_max_abelian_order == 5);
  CHECK(j.oracle_best_index == 12);
  CHECK(j.abelian);
  for (auto a : j.subgroup)
    for (auto b : j.subgroup) CHECK(f.product(a, b) == f.product(b, a));
}

TEST_CASE("Jordan index for Q8 and cyclic groups") {
  const auto q = finite_closure(presets::q8_generators());
  REQUIRE(q.order() == 8);
  CHECK(jordan_abelian_index(q, 0.1).oracle_best_index == 2);

  const auto r = presets::so3_rotation(Eigen::Vector3d(0, 0, 1), 2 * std::numbers::pi / 7);
  const std::vector<Eigen::MatrixXcd> gens = {r};
  const auto c = finite_closure(gens);
  CHECK(c.order() == 7);
  const auto j = jordan_abelian_index(c, identity_distance(r, IdentityMetric::Frobenius) + 1e-9);
  CHECK(j.index == 1);
  CHECK(j.abelian);
}

TEST_CASE("quasi-morphism defects") {
  const std::size_t n = 12;
  const auto z = cyclic_group(n);
  std::vector<std::complex<double>> hom(n), pert(n), constant(n);
  const double delta = 0.01;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-delta, delta);
  const std::complex<double> c = std::polar(1.0, 0.7);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    hom[k] = std::polar(1.0, ang);
    pert[k] = std::polar(1.0, ang + u(rng));
    constant[k] = c;
  }
  CHECK(quasi_morphism_defect(z, hom) < 1e-12);
  CHECK(quasi_morphism_defect(z, pert) <= 3 * delta + 1e-12);
  CHECK(std::abs(quasi_morphism_defect(z, constant) - circle_distance(c, c * c)) < 1e-12);
  CHECK(quasi_morphism_defect(z, pert, Exec::Serial) == quasi_morphism_defect(z, pert, Exec::Parallel));
}

TEST_CASE("Margulis short subgroup") {
  const auto g = presets::sl2z();
  const auto high = margulis_short_subgroup(g, hyp::HPoint::plane(0, 10), 0.1, 4);
  CHECK_FALSE(high.short_words.empty());
  for (double d : high.displacements) CHECK(d <= 0.1);
  CHECK(high.verdict.kind == ElementaryKind::Cusp);
  REQUIRE(high.verdict.fixed_point);
  CHECK(high.verdict.fixed_point->at_infinity);

  const auto low = margulis_short_subgroup(g, hyp::HPoint::plane(0.2, 1.5), 0.01, 4);
  CHECK(low.short_words.empty());
  CHECK(low.verdict.kind == ElementaryKind::Trivial);

  // S fixes i
  const auto at_i = margulis_short_subgroup(g, hyp::HPoint::plane(0, 1), 0.01, 4);
  CHECK_FALSE(at_i.short_words.empty());
  CHECK(at_i.verdict.kind == ElementaryKind::Finite);

  const auto tube = margulis_short_subgroup(presets::cyclic_hyperbolic(0.05), hyp::HPoint::plane(0, 1), 0.2, 4);
  CHECK(tube.verdict.kind == ElementaryKind::Tube);
  REQUIRE(tube.verdict.axis);
}
