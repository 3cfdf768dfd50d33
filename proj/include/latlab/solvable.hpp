#pragma once

// The metabelian group G = (prod F*_p) x| (sum F_p) with its non-uniform
// lattice Gamma = {(a, a - 1)}, modelled in finite truncations, and the
// integral Heisenberg lattice. All arithmetic is exact.

#include "latlab/common.hpp"
#include "latlab/exact.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace latlab::solv {

bool is_prime(std::uint64_t n);
/// First k primes.
std::vector<std::uint64_t> first_primes(std::size_t k);

/// Element of the truncated group: multiplicative part on all M coordinates,
/// additive part on the first m.
struct AffineElement {
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
};

/// Truncation G_m inside level M: the compact factor is prod_{n <= M} F*_{p_n}.
class TruncatedGroup {
public:
  TruncatedGroup(std::vector<std::uint64_t> primes, std::size_t m);

  std::size_t level() const { return primes_.size(); }
  std::size_t additive_support() const { return m_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  BigInt order() const;

  AffineElement multiply(const AffineElement& x, const AffineElement& y) const;
  AffineElement inverse(const AffineElement& x) const;
  AffineElement identity() const;
  /// b_n = a_n - 1 on every coordinate, with a_n = 1 beyond the additive support.
  bool in_gamma(const AffineElement& x) const;

  /// Mixed-radix code of an element and its inverse map.
  std::uint64_t encode(const AffineElement& x) const;
  AffineElement decode(std::uint64_t code) const;

private:
  std::vector<std::uint64_t> primes_;
  std::size_t m_;
};

enum class GammaMap { Standard, Corrupted };

/// Closure, inverses and identity of {(a, a - 1)} in F*_p x| F_p: exhaustive
/// for p <= 13, sampled above. `Corrupted` uses {(a, a)} as a negative control.
bool gamma_closure_check(const std::vector<std::uint64_t>& primes, std::size_t samples, std::uint64_t seed,
                         GammaMap map = GammaMap::Standard);

struct IndexReport {
  std::uint64_t g_index = 0;      // [G_m : G_{m-1}]
  std::uint64_t gamma_index = 0;  // [Gamma_m : Gamma_{m-1}]
  bool enumerated = false;        // false: orbit-stabilizer shortcut
  std::string note;
};

/// Coset enumeration at truncation level M = max(m, level); the shortcut
/// applies when |G_m| exceeds `cap`.
IndexReport indices(const std::vector<std::uint64_t>& primes, std::size_t m, std::size_t level = 0,
                    std::uint64_t cap = 5000000);

/// prod_{n <= m} p_n / (p_n - 1).
Rational covolume_product(const std::vector<std::uint64_t>& primes, std::size_t m);

struct FiniteModelCount {
  BigInt group_order;  // |G_m| at level M = m, counted
  BigInt gamma_order;  // |Gamma_m|, counted
  BigInt compact_order;  // |prod F*_p|, counted
  /// |G_m| / (|Gamma_m| |K_m|): the covolume with the compact factor of measure 1.
  Rational ratio;
};

/// Enumerates G_m at level M = m and counts the elements of Gamma and of the compact factor.
FiniteModelCount finite_model_count(const std::vector<std::uint64_t>& primes, std::size_t m,
                                    std::uint64_t cap = 20000000);

struct LatticeCertificate {
  std::vector<Rational> covolumes;  // m = 1..k
  bool strictly_increasing = false;
  Rational series;                  // sum 1/(p_n - 1), bounds log of the product
  Rational bound;
  std::size_t stabilizes_at = 0;    // nonzero when the truncation is constant from that level
  std::string verdict;
};

LatticeCertificate lattice_certificate(const std::vector<std::uint64_t>& primes, const Rational& bound);

/// (x, y, z) for [[1, x, z], [0, 1, y], [0, 0, 1]].
using Heisenberg = std::array<Rational, 3>;
Heisenberg heisenberg_multiply(const Heisenberg& g, const Heisenberg& h);

struct HeisenbergReduction {
  Heisenberg gamma;  // integer entries
  Heisenberg rest;   // entries in [0, 1)
};

/// g = gamma * rest with gamma in H(Z) and rest in [0,1)^3.
HeisenbergReduction heisenberg_reduce(const Heisenberg& g);

/// Largest integer <= q.
BigInt floor_rational(const Rational& q);

}  // namespace latlab::solv
