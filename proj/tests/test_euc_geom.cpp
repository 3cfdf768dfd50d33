#include "latlab/euc_geom.hpp"
#include "latlab/presets.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace latlab;
using namespace latlab::euc;

namespace {

EuclideanIsometry screw(double angle, double shift) {
  Eigen::Matrix3d o;
  o << std::cos(angle), -std::sin(angle), 0, std::sin(angle), std::cos(angle), 0, 0, 0, 1;
  return EuclideanIsometry(o, Eigen::Vector3d(0, 0, shift));
}

EuclideanIsometry random_isometry(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t(i) = g(rng);
  return EuclideanIsometry(q, t);
}

}  // namespace

TEST_CASE("min-set oracles") {
  const auto t = min_set(EuclideanIsometry::translation(Eigen::Vector2d(1.5, -2)));
  CHECK(t.subspace.dim() == 2);
  CHECK((t.translation - Eigen::Vector2d(1.5, -2)).norm() < 1e-12);

  const auto r = min_set(EuclideanIsometry::rotation(2, 0, 1, std::numbers::pi / 2));
  CHECK(r.subspace.dim() == 0);
  CHECK(r.subspace.base.norm() < 1e-12);
  CHECK(r.translation_length < 1e-12);

  const auto s = min_set(screw(std::numbers::pi / 2, 1.0));
  CHECK(s.subspace.dim() == 1);
  CHECK(std::abs(std::abs(s.subspace.directions(2, 0)) - 1.0) < 1e-12);
  CHECK(s.subspace.base.head<2>().norm() < 1e-12);
  CHECK(std::abs(s.translation_length - 1.0) < 1e-12);
}

TEST_CASE("fixed points") {
  const auto r = has_fixed_point(EuclideanIsometry::rotation(2, 0, 1, 1.0));
  CHECK(r.has_fixed_point);
  REQUIRE(r.witness);
  CHECK(r.witness->norm() < 1e-12);
  CHECK_FALSE(has_fixed_point(EuclideanIsometry::translation(Eigen::Vector2d(1, 0))).has_fixed_point);

  Eigen::Matrix2d reflect;
  reflect << 1, 0, 0, -1;
  const EuclideanIsometry glide(reflect, Eigen::Vector2d(1, 0));
  CHECK_FALSE(has_fixed_point(glide).has_fixed_point);
  const auto m = min_set(glide);
  CHECK(m.subspace.dim() == 1);
  CHECK(m.subspace.contains(Eigen::Vector2d(3.0, 0.0)));
  CHECK_FALSE(m.subspace.contains(Eigen::Vector2d(0.0, 0.5)));
}

TEST_CASE("commuting min-set intersection") {
  std::vector<EuclideanIsometry> two = {EuclideanIsometry::translation(Eigen::Vector2d(1, 0)),
                                        EuclideanIsometry::translation(Eigen::Vector2d(0, 1))};
  CHECK(commuting_min_intersection(two).dim() == 2);

  std::vector<EuclideanIsometry> sc = {screw(std::numbers::pi / 2, 1.0),
                                       EuclideanIsometry::translation(Eigen::Vector3d(0, 0, 1))};
  const auto a = commuting_min_intersection(sc);
  CHECK(a.dim() == 1);
  CHECK(a.contains(Eigen::Vector3d(0, 0, 5)));
  for (const auto& g : sc) {
    const Eigen::VectorXd x = a.base;
    const Eigen::VectorXd gx = g.apply(x);
    CHECK(a.contains(gx));
  }

  std::vector<EuclideanIsometry> elliptic = {EuclideanIsometry::rotation(2, 0, 1, 0.5)};
  CHECK_THROWS_AS(commuting_min_intersection(elliptic), PreconditionError);
  std::vector<EuclideanIsometry> noncommuting = {screw(std::numbers::pi / 2, 1.0),
                                                 EuclideanIsometry::translation(Eigen::Vector3d(1, 0, 0))};
  CHECK_THROWS_AS(commuting_min_intersection(noncommuting), PreconditionError);
}

TEST_CASE("projection to the min-set does not increase displacement") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + i % 3;
    const auto iso = random_isometry(rng, n);
    const auto m = min_set(iso);
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x(k) = g(rng);
    CHECK(displacement(iso, m.subspace.project(x)) <= displacement(iso, x) + 1e-9);
    CHECK(std::abs(displacement(iso, m.subspace.base) - m.translation_length) < 1e-8);
  }
}

TEST_CASE("crystallographic analysis") {
  const auto z2 = presets::zn_translations(2);
  auto r = crystallographic_analysis(z2.generators, 6);
  CHECK(r.translation_rank == 2);
  CHECK(r.point_group_order == 1);
  CHECK(r.abelian_index == 1);

  const auto p2 = presets::p2_wallpaper();
  r = crystallographic_analysis(p2.generators, 6);
  CHECK(r.translation_rank == 2);
  CHECK(r.point_group_order == 2);
  CHECK(r.abelian_index == 2);
  CHECK(r.point_group.size() == 2);

  std::vector<EuclideanIsometry> screw_pi = {screw(std::numbers::pi, 1.0)};
  r = crystallographic_analysis(screw_pi, 6);
  CHECK(r.translation_rank == 1);
  CHECK(r.point_group_order == 2);
  CHECK(r.translation_rank <= 3);
}

TEST_CASE("crystallographic analysis is the same serially and in parallel") {
  const auto g = presets::screw_motion(std::numbers::pi / 2);
  CrystallographicOptions s, p;
  s.exec = Exec::Serial;
  p.exec = Exec::Parallel;
  const auto a = crystallographic_analysis(g.generators, 5, s);
  const auto b = crystallographic_analysis(g.generators, 5, p);
  CHECK(a.elements == b.elements);
  CHECK(a.translation_rank == b.translation_rank);
  CHECK(a.point_group_order == b.point_group_order);
  CHECK(a.point_group_order == 4);
}

TEST_CASE("non-discrete rotation is rejected") {
  std::vector<EuclideanIsometry> irrational = {EuclideanIsometry::rotation(2, 0, 1, 1.0)};
  CrystallographicOptions o;
  o.point_group_cap = 50;
  CHECK_THROWS_AS(crystallographic_analysis(irrational, 40, o), PreconditionError);
}
