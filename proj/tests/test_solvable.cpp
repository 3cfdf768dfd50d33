#include "latlab/solvable.hpp"

#include <doctest.h>

#include <random>

using namespace latlab;
using namespace latlab::solv;

TEST_CASE("primes") {
  CHECK(first_primes(5) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
  CHECK_FALSE(is_prime(1));
}

TEST_CASE("Gamma is a subgroup, the corrupted map is not") {
  CHECK(gamma_closure_check({5}, 1000, 0));
  CHECK(gamma_closure_check({5, 7, 11}, 1000, 0));
  CHECK(gamma_closure_check({101}, 1000, 3));
  CHECK_FALSE(gamma_closure_check({5}, 1000, 0, GammaMap::Corrupted));
}

TEST_CASE("truncated group arithmetic") {
  const TruncatedGroup g({5, 7}, 2);
  CHECK(g.order() == 4 * 6 * 5 * 7);
  const AffineElement x{{2, 3}, {1, 4}};
  const auto e = g.multiply(x, g.inverse(x));
  CHECK(e.a == g.identity().a);
  CHECK(e.b == g.identity().b);
  CHECK(g.in_gamma(AffineElement{{3, 5}, {2, 4}}));
  CHECK_FALSE(g.in_gamma(AffineElement{{3, 5}, {3, 4}}));
  for (std::uint64_t c = 0; c < 840; c += 37) CHECK(g.encode(g.decode(c)) == c);
}

TEST_CASE("successive indices") {
  const auto r = indices({5, 7, 11}, 2);
  CHECK(r.g_index == 7);
  CHECK(r.gamma_index == 6);
  CHECK(r.enumerated);
  const auto first = indices({5, 7, 11}, 1);
  CHECK(first.g_index == 5);
  CHECK(first.gamma_index == 4);
  const auto two = indices({2, 3}, 1);
  CHECK(two.g_index == 2);
  CHECK(two.gamma_index == 1);
  const auto shortcut = indices({5, 7, 11}, 3, 0, 10);
  CHECK_FALSE(shortcut.enumerated);
  CHECK(shortcut.g_index == 11);
  CHECK(shortcut.gamma_index == 10);
}

TEST_CASE("covolume of the truncations") {
  CHECK(covolume_product({5, 7, 11}, 3) == Rational(77, 48));
  CHECK(covolume_product({5, 7, 11}, 0) == 1);
  CHECK(covolume_product({5, 7, 11}, 1) == Rational(5, 4));
  CHECK_THROWS_AS(covolume_product({5, 7}, 3), PreconditionError);
}

TEST_CASE("finite model reproduces the covolume") {
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto f = finite_model_count({5, 7, 11}, m);
    CHECK(f.ratio == covolume_product({5, 7, 11}, m));
  }
  const auto f = finite_model_count({5, 7, 11}, 3);
  CHECK(f.group_order == 92400);
  CHECK(f.gamma_order == 240);
  CHECK(f.compact_order == 240);
}

TEST_CASE("lattice certificate") {
  const auto c = lattice_certificate({5, 7, 11}, 2);
  CHECK(c.strictly_increasing);
  CHECK(c.series == Rational(31, 60));
  CHECK(c.covolumes.back() == Rational(77, 48));
  CHECK(c.verdict == "consistent with non-uniform lattice");
  CHECK(lattice_certificate({5}, 2).stabilizes_at == 1);
  CHECK(lattice_certificate({2, 3, 5}, Rational(1, 2)).verdict == "not a lattice candidate for this list");
  CHECK_THROWS_AS(lattice_certificate({4}, 2), PreconditionError);
}

TEST_CASE("certificates for longer prime lists") {
  const auto small = lattice_certificate(first_primes(12), 2);
  CHECK(small.strictly_increasing);
  for (std::size_t k = 1; k < small.covolumes.size(); ++k) CHECK(small.covolumes[k] > small.covolumes[k - 1]);

  const auto sparse = lattice_certificate({5, 11, 23, 47, 97, 193}, 2);
  CHECK(sparse.strictly_increasing);
  CHECK(sparse.series < 1);
  CHECK(sparse.verdict == "consistent with non-uniform lattice");

  const auto all = lattice_certificate(first_primes(1000), 2);
  CHECK(all.series > 2);
  CHECK(all.verdict == "not a lattice candidate for this list");
}

TEST_CASE("Heisenberg reduction") {
  const Heisenberg g{Rational(7, 3), Rational(-5, 2), Rational(11, 4)};
  const auto r = heisenberg_reduce(g);
  CHECK(r.gamma == Heisenberg{2, -3, 1});
  CHECK(r.rest == Heisenberg{Rational(1, 3), Rational(1, 2), Rational(3, 4)});
  CHECK(heisenberg_multiply(r.gamma, r.rest) == g);
  const Heisenberg h{Rational(5, 2), Rational(-3, 4), Rational(13, 4)};
  const auto rh = heisenberg_reduce(h);
  CHECK(rh.gamma == Heisenberg{2, -1, 2});
  CHECK(rh.rest == Heisenberg{Rational(1, 2), Rational(1, 4), Rational(3, 4)});
  CHECK(heisenberg_multiply(rh.gamma, rh.rest) == h);
  CHECK(floor_rational(Rational(-1, 3)) == -1);
  CHECK(floor_rational(Rational(4)) == 4);
}

TEST_CASE("Heisenberg reduction round-trips exactly") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
  for (int i = 0; i < 1000; ++i) {
    const Heisenberg g{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
    const auto r = heisenberg_reduce(g);
    CHECK(heisenberg_multiply(r.gamma, r.rest) == g);
    for (int k = 0; k < 3; ++k) {
      CHECK(denominator(r.gamma[static_cast<std::size_t>(k)]) == 1);
      CHECK(r.rest[static_cast<std::size_t>(k)] >= 0);
      CHECK(r.rest[static_cast<std::size_t>(k)] < 1);
    }
  }
}
