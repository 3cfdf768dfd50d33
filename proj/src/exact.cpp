#include "latlab/exact.hpp"

#include "latlab/common.hpp"

#include <cmath>

namespace latlab {

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : n_(rows.size()), a_() {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw PreconditionError("RationalMatrix: rows must form a square matrix");
    for (const auto& v : r) a_.push_back(v);
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (o.n_ != n_) throw PreconditionError("RationalMatrix: dimension mismatch");
  RationalMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const Rational& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  if (o.n_ != n_) throw PreconditionError("RationalMatrix: dimension mismatch");
  RationalMatrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Rational RationalMatrix::determinant() const {
  RationalMatrix m = *this;
  Rational det = 1;
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t p = c;
    while (p < n_ && m(p, c) == 0) ++p;
    if (p == n_) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n_; ++r) {
      if (m(r, c) == 0) continue;
      const Rational f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n_; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

RationalMatrix RationalMatrix::inverse() const {
  RationalMatrix m = *this;
  RationalMatrix inv = identity(n_);
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t p = c;
    while (p < n_ && m(p, c) == 0) ++p;
    if (p == n_) throw PreconditionError("RationalMatrix: singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational piv = m(c, c);
    for (std::size_t j = 0; j < n_; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == c || m(r, c) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t j = 0; j < n_; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

bool RationalMatrix::is_identity() const { return *this == identity(n_); }

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).convert_to<double>();
  return m;
}

RationalMatrix RationalMatrix::from_double(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw PreconditionError("RationalMatrix: matrix must be square");
  RationalMatrix r(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      int e = 0;
      const double frac = std::frexp(m(i, j), &e);
      // frac * 2^53 is an exact integer
      const auto mant = static_cast<long long>(std::ldexp(frac, 53));
      Rational q(mant);
      const int shift = e - 53;
      if (shift >= 0)
        q *= Rational(BigInt(1) << shift);
      else
        q /= Rational(BigInt(1) << (-shift));
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = q;
    }
  return r;
}

}  // namespace latlab
