#include "latlab/solvable.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <random>
#include <unordered_set>

namespace latlab::solv {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> first_primes(std::size_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < k; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // a^(p-2)
  std::uint64_t r = 1, e = p - 2, x = a % p;
  while (e) {
    if (e & 1) r = mul_mod(r, x, p);
    x = mul_mod(x, x, p);
    e >>= 1;
  }
  return r;
}

void check_primes(const std::vector<std::uint64_t>& primes) {
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw PreconditionError("composite modulus " + std::to_string(primes[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (primes[j] == primes[i]) throw PreconditionError("primes must be distinct");
  }
}

}  // namespace

TruncatedGroup::TruncatedGroup(std::vector<std::uint64_t> primes, std::size_t m) : primes_(std::move(primes)), m_(m) {
  check_primes(primes_);
  if (m_ > primes_.size()) throw PreconditionError("TruncatedGroup: additive support exceeds the level");
}

BigInt TruncatedGroup::order() const {
  BigInt n = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) n *= primes_[i] - 1;
  for (std::size_t i = 0; i < m_; ++i) n *= primes_[i];
  return n;
}

AffineElement TruncatedGroup::multiply(const AffineElement& x, const AffineElement& y) const {
  AffineElement r{std::vector<std::uint64_t>(primes_.size()), std::vector<std::uint64_t>(m_)};
  for (std::size_t i = 0; i < primes_.size(); ++i) r.a[i] = mul_mod(x.a[i], y.a[i], primes_[i]);
  for (std::size_t i = 0; i < m_; ++i) r.b[i] = (mul_mod(x.a[i], y.b[i], primes_[i]) + x.b[i]) % primes_[i];
  return r;
}

AffineElement TruncatedGroup::inverse(const AffineElement& x) const {
  AffineElement r{std::vector<std::uint64_t>(primes_.size()), std::vector<std::uint64_t>(m_)};
  for (std::size_t i = 0; i < primes_.size(); ++i) r.a[i] = inv_mod(x.a[i], primes_[i]);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::uint64_t p = primes_[i];
    r.b[i] = (p - mul_mod(r.a[i], x.b[i], p)) % p;
  }
  return r;
}

AffineElement TruncatedGroup::identity() const {
  return {std::vector<std::uint64_t>(primes_.size(), 1), std::vector<std::uint64_t>(m_, 0)};
}

bool TruncatedGroup::in_gamma(const AffineElement& x) const {
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const std::uint64_t p = primes_[i];
    const std::uint64_t b = i < m_ ? x.b[i] : 0;
    if (b != (x.a[i] + p - 1) % p) return false;
  }
  return true;
}

std::uint64_t TruncatedGroup::encode(const AffineElement& x) const {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < primes_.size(); ++i) c = c * (primes_[i] - 1) + (x.a[i] - 1);
  for (std::size_t i = 0; i < m_; ++i) c = c * primes_[i] + x.b[i];
  return c;
}

AffineElement TruncatedGroup::decode(std::uint64_t c) const {
  AffineElement x{std::vector<std::uint64_t>(primes_.size()), std::vector<std::uint64_t>(m_)};
  for (std::size_t i = m_; i-- > 0;) {
    x.b[i] = c % primes_[i];
    c /= primes_[i];
  }
  for (std::size_t i = primes_.size(); i-- > 0;) {
    x.a[i] = c % (primes_[i] - 1) + 1;
    c /= primes_[i] - 1;
  }
  return x;
}

bool gamma_closure_check(const std::vector<std::uint64_t>& primes, std::size_t samples, std::uint64_t seed,
                         GammaMap map) {
  check_primes(primes);
  std::mt19937_64 rng(seed);
  for (std::uint64_t p : primes) {
    auto member = [&](std::uint64_t a) {
      return std::pair{a, map == GammaMap::Standard ? (a + p - 1) % p : a};
    };
    auto in_set = [&](std::pair<std::uint64_t, std::uint64_t> e) { return e == member(e.first); };
    auto check = [&](std::uint64_t a, std::uint64_t a2) {
      const auto [x, bx] = member(a);
      const auto [y, by] = member(a2);
      const std::pair prod{mul_mod(x, y, p), (mul_mod(x, by, p) + bx) % p};
      const std::uint64_t xi = inv_mod(x, p);
      const std::pair inv{xi, (p - mul_mod(xi, bx, p)) % p};
      return in_set(prod) && in_set(inv);
    };
    if (!in_set({1, 0})) return false;
    if (p <= 13) {
      for (std::uint64_t a = 1; a < p; ++a)
        for (std::uint64_t a2 = 1; a2 < p; ++a2)
          if (!check(a, a2)) return false;
    } else {
      std::uniform_int_distribution<std::uint64_t> unit(1, p - 1);
      for (std::size_t s = 0; s < samples; ++s)
        if (!check(unit(rng), unit(rng))) return false;
    }
  }
  return true;
}

namespace {

// left cosets of the subgroup (given by a membership test) among `elements`
std::uint64_t count_cosets(const TruncatedGroup& g, const std::vector<std::uint64_t>& elements,
                           const std::vector<AffineElement>& subgroup) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(elements.size() * 2);
  std::uint64_t cosets = 0;
  for (std::uint64_t code : elements) {
    if (seen.count(code)) continue;
    ++cosets;
    const AffineElement x = g.decode(code);
    for (const auto& h : subgroup) seen.insert(g.encode(g.multiply(x, h)));
  }
  return cosets;
}

std::vector<AffineElement> embed(const TruncatedGroup& small, const TruncatedGroup& big,
                                 const std::vector<std::uint64_t>& codes) {
  std::vector<AffineElement> out;
  for (auto c : codes) {
    AffineElement x = small.decode(c);
    x.b.resize(big.additive_support(), 0);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

IndexReport indices(const std::vector<std::uint64_t>& primes, std::size_t m, std::size_t level, std::uint64_t cap) {
  if (m < 1) throw PreconditionError("indices: m must be >= 1");
  if (m > primes.size()) throw PreconditionError("indices: m exceeds the number of primes");
  const std::size_t M = std::max(m, std::min(level, primes.size()));
  const std::vector<std::uint64_t> ps(primes.begin(), primes.begin() + static_cast<long>(M));
  const TruncatedGroup gm(ps, m), gm1(ps, m - 1);
  IndexReport r;
  if (gm.order() > cap) {
    // G_m / G_{m-1} is in bijection with the orbit of 0 in F_{p_m} under the
    // additive translations, and Gamma_m / Gamma_{m-1} with F*_{p_m}.
    r.g_index = primes[m - 1];
    r.gamma_index = primes[m - 1] - 1;
    r.note = "orbit-stabilizer: G_m/G_{m-1} ~ F_{p_m}, Gamma_m/Gamma_{m-1} ~ F*_{p_m}";
    return r;
  }
  const std::uint64_t n = gm.order().convert_to<std::uint64_t>();
  std::vector<std::uint64_t> all(n), gamma_m, gamma_m1_codes, g_m1_codes;
  for (std::uint64_t c = 0; c < n; ++c) {
    all[c] = c;
    const AffineElement x = gm.decode(c);
    if (gm.in_gamma(x)) gamma_m.push_back(c);
  }
  const std::uint64_t n1 = gm1.order().convert_to<std::uint64_t>();
  for (std::uint64_t c = 0; c < n1; ++c) {
    g_m1_codes.push_back(c);
    if (gm1.in_gamma(gm1.decode(c))) gamma_m1_codes.push_back(c);
  }
  r.g_index = count_cosets(gm, all, embed(gm1, gm, g_m1_codes));
  r.gamma_index = count_cosets(gm, gamma_m, embed(gm1, gm, gamma_m1_codes));
  r.enumerated = true;
  r.note = "coset enumeration at level " + std::to_string(M);
  return r;
}

Rational covolume_product(const std::vector<std::uint64_t>& primes, std::size_t m) {
  if (m > primes.size()) throw PreconditionError("covolume_product: m exceeds the number of primes");
  check_primes(primes);
  Rational v = 1;
  for (std::size_t i = 0; i < m; ++i) v *= Rational(BigInt(primes[i]), BigInt(primes[i] - 1));
  return v;
}

FiniteModelCount finite_model_count(const std::vector<std::uint64_t>& primes, std::size_t m, std::uint64_t cap) {
  if (m > primes.size()) throw PreconditionError("finite_model_count: m exceeds the number of primes");
  const TruncatedGroup g(std::vector<std::uint64_t>(primes.begin(), primes.begin() + static_cast<long>(m)), m);
  if (g.order() > cap) throw CapExceeded("finite_model_count: truncated group too large to enumerate");
  const std::uint64_t n = g.order().convert_to<std::uint64_t>();
  FiniteModelCount f;
  for (std::uint64_t c = 0; c < n; ++c) {
    const auto x = g.decode(c);
    f.group_order += 1;
    if (g.in_gamma(x)) f.gamma_order += 1;
    if (std::all_of(x.b.begin(), x.b.end(), [](std::uint64_t b) { return b == 0; })) f.compact_order += 1;
  }
  // the compact factor has measure 1, so each element weighs 1 / |K_m|
  f.ratio = Rational(f.group_order, f.gamma_order * f.compact_order);
  return f;
}

LatticeCertificate lattice_certificate(const std::vector<std::uint64_t>& primes, const Rational& bound) {
  if (primes.empty()) throw PreconditionError("lattice_certificate: empty prime list");
  check_primes(primes);
  LatticeCertificate c;
  c.bound = bound;
  Rational v = 1;
  c.strictly_increasing = true;
  for (auto p : primes) {
    const Rational next = v * Rational(BigInt(p), BigInt(p - 1));
    c.strictly_increasing = c.strictly_increasing && next > v;
    v = next;
    c.covolumes.push_back(v);
    c.series += Rational(BigInt(1), BigInt(p - 1));
  }
  if (primes.size() == 1) {
    c.stabilizes_at = 1;
    c.verdict = "stabilizes at m = 1: uniform in the truncation";
  } else if (c.series < bound) {
    c.verdict = "consistent with non-uniform lattice";
  } else {
    c.verdict = "not a lattice candidate for this list";
  }
  return c;
}

Heisenberg heisenberg_multiply(const Heisenberg& g, const Heisenberg& h) {
  return {g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]};
}

BigInt floor_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  BigInt f = num / den;
  if (f * den != num && num < 0) f -= 1;
  return f;
}

HeisenbergReduction heisenberg_reduce(const Heisenberg& g) {
  const BigInt a = floor_rational(g[0]), b = floor_rational(g[1]);
  const Rational u = g[0] - Rational(a), v = g[1] - Rational(b);
  const Rational zc = g[2] - Rational(a) * v;
  const BigInt c = floor_rational(zc);
  HeisenbergReduction r{{Rational(a), Rational(b), Rational(c)}, {u, v, zc - Rational(c)}};
  if (heisenberg_multiply(r.gamma, r.rest) != g) throw std::logic_error("heisenberg_reduce: recomposition failed");
  return r;
}

}  // namespace latlab::solv
