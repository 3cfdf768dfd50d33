#include "latlab/nerve.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latlab::nerve {

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest nonzero entry of the remaining block becomes the pivot
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return diag;
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const BigInt q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        clean = clean && m[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const BigInt q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        clean = clean && m[t][j] == 0;
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(m[t][t]));
  }
  return diag;
}

Abelianization abelianization(const Presentation& p) {
  std::vector<std::vector<BigInt>> m(p.relators.size(), std::vector<BigInt>(p.generators, 0));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int l : p.relators[r]) {
      const auto g = static_cast<std::size_t>(std::abs(l) - 1);
      if (g >= p.generators) throw PreconditionError("abelianization: relator uses an unknown generator");
      m[r][g] += l > 0 ? 1 : -1;
    }
  const auto diag = smith_diagonal(std::move(m));
  Abelianization a;
  a.rank = p.generators - diag.size();
  for (const auto& d : diag)
    if (d > 1) a.torsion.push_back(d);
  return a;
}

BigInt word_count(long g) {
  if (g < 0) throw PreconditionError("word_count: negative generator count");
  const BigInt l = 2 * g;
  return l + l * l + l * l * l;
}

namespace {

BigInt binomial(const BigInt& n, long k) {
  if (k < 0 || n < k) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long ceil_times(const Rational& c, long v) {
  const Rational x = c * v;
  const BigInt num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (q * den != num && num > 0) q += 1;
  return q.convert_to<long>();
}

}  // namespace

BigInt count_presentations(const Rational& c, long v) {
  if (c <= 0) throw PreconditionError("count_presentations: c must be positive");
  if (v < 1) throw PreconditionError("count_presentations: v must be >= 1");
  const long bound = ceil_times(c, v);
  BigInt total = 0;
  for (long g = 0; g <= bound; ++g) {
    const BigInt w = word_count(g);
    // multisets of size k from w words: C(w + k - 1, k)
    for (long k = 0; k <= bound; ++k) total += k == 0 ? BigInt(1) : binomial(w + k - 1, k);
  }
  return total;
}

double log_big(const BigInt& n) {
  if (n <= 0) throw PreconditionError("log_big: argument must be positive");
  const auto bits = boost::multiprecision::msb(n);
  if (bits < 60) return std::log(n.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits - 60);
  const BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
}

std::vector<GrowthRow> growth_profile(const Rational& c, const std::vector<long>& vs) {
  std::vector<GrowthRow> rows;
  for (long v : vs) {
    if (v < 2) throw PreconditionError("growth_profile: v must be >= 2 for log v > 0");
    GrowthRow r;
    r.v = v;
    r.count = count_presentations(c, v);
    r.log_ratio = log_big(r.count) / (static_cast<double>(v) * std::log(static_cast<double>(v)));
    rows.push_back(std::move(r));
  }
  return rows;
}

GrowthWindow growth_window(const std::vector<GrowthRow>& rows) {
  if (rows.empty()) throw PreconditionError("growth_window: empty profile");
  GrowthWindow w;
  w.low = w.high = rows.front().log_ratio;
  bool up = true, down = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    w.low = std::min(w.low, rows[i].log_ratio);
    w.high = std::max(w.high, rows[i].log_ratio);
    if (i == 0) continue;
    const double a = rows[i - 1].log_ratio, b = rows[i].log_ratio;
    up = up && b >= a;
    down = down && b <= a;
    w.max_step_drift = std::max(w.max_step_drift, std::abs(b - a) / a);
  }
  w.monotone = up || down;
  w.total_drift = std::abs(rows.back().log_ratio - rows.front().log_ratio) / rows.front().log_ratio;
  return w;
}

}  // namespace latlab::nerve
