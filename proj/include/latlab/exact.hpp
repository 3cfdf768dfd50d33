#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace latlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);
double to_double(const Rational& q);

/// Dense square matrix over the rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const = default;

  Rational determinant() const;
  /// Throws PreconditionError when singular.
  RationalMatrix inverse() const;
  bool is_identity() const;

  Eigen::MatrixXd to_double() const;
  /// Entrywise exact conversion of a double matrix (every double is a dyadic rational).
  static RationalMatrix from_double(const Eigen::MatrixXd& m);

private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

}  // namespace latlab
