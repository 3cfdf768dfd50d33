#pragma once

// Closed subgroups V + Lambda of R^n, lattice reduction, the truncated
// Hausdorff distance standing in for the Chabauty topology, limits of
// sequences and Mahler-style subsequence extraction.

#include "latlab/common.hpp"
#include "latlab/exact.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace latlab::chab {

/// V + Lambda with V spanned by orthonormal columns and Lambda by independent
/// columns orthogonal to V, stored in reduced form.
class ClosedSubgroup {
public:
  /// Projects the lattice generators off V and reduces them. Throws
  /// PreconditionError when the projected generators are dependent.
  ClosedSubgroup(int n, Eigen::MatrixXd connected, Eigen::MatrixXd lattice);
  static ClosedSubgroup lattice(Eigen::MatrixXd basis);
  static ClosedSubgroup whole(int n);
  static ClosedSubgroup trivial(int n);

  int dim() const { return n_; }
  const Eigen::MatrixXd& connected() const { return v_; }
  const Eigen::MatrixXd& discrete() const { return l_; }

private:
  int n_;
  Eigen::MatrixXd v_;
  Eigen::MatrixXd l_;
};

/// |det B| for a full-rank basis (columns). Throws on rank deficiency.
double covolume(const Eigen::MatrixXd& basis);
Rational covolume(const RationalMatrix& basis);

/// LLL with delta = 3/4 on the columns; Lagrange-Gauss when n = 2.
Eigen::MatrixXd reduce_basis(const Eigen::MatrixXd& basis);

struct ShortestVectors {
  double length = 0.0;
  Eigen::VectorXd vector;
  std::vector<Eigen::VectorXd> minimal;  // every vector of minimal length, up to 1e-9
};

/// Exhaustive enumeration inside the ball of radius |b_1| of the reduced basis.
ShortestVectors shortest_vectors(const Eigen::MatrixXd& basis);

/// Lattice points B c with |B c| <= R. Throws CapExceeded above `cap`.
std::vector<Eigen::VectorXd> lattice_points_in_ball(const Eigen::MatrixXd& basis, double R, std::size_t cap = 2000000);

// ---------------------------------------------------------------------------
// compact sets avoiding the lattice

struct Candidate {
  enum class Kind { Box, Disk } kind = Kind::Box;
  Eigen::VectorXd half_widths;  // Box, centred at 0, open; its size is the dimension for a Disk too
  double radius = 0.0;          // Disk, centred at 0, open
  double volume() const;
  std::string describe() const;
};

struct SupFormulaReport {
  double covolume = 0.0;
  double best_volume = 0.0;
  std::optional<std::size_t> best;
  std::vector<bool> admissible;
  double gap = 0.0;
};

/// (K - K) meets Lambda only in 0.
bool admissible(const Eigen::MatrixXd& basis, const Candidate& k);
SupFormulaReport sup_formula_check(const Eigen::MatrixXd& basis, const std::vector<Candidate>& candidates);
/// Axis-aligned boxes of every aspect ratio on a log grid, each scaled to the largest admissible size.
std::vector<Candidate> box_sweep(const Eigen::MatrixXd& basis, int steps = 64);

// ---------------------------------------------------------------------------
// distance and limits

/// Hausdorff distance between the truncations to the closed R-ball.
/// Pieces of dimension 0 and 1 are handled exactly up to root finding;
/// higher-dimensional pieces are sampled.
double chabauty_distance(const ClosedSubgroup& a, const ClosedSubgroup& b, double R);

struct LimitReport {
  bool found = false;
  std::optional<ClosedSubgroup> limit;
  std::vector<long> indices;
  std::vector<double> radii;
  std::vector<std::vector<double>> distances;  // [radius][index]
  bool verified = false;
  std::string witness;  // why no limit was accepted
};

using SubgroupSequence = std::function<ClosedSubgroup(long)>;

/// Proposes the limit from the canonical data at three consecutive probe
/// indices (vectors shorter than tol merge into V) and checks the truncation
/// distances from the listed indices to the proposal: on every radius the
/// sup over the second half of the indices is at most half the sup over the
/// first half, or below tol.
LimitReport chabauty_limit(const SubgroupSequence& seq, const std::vector<long>& indices,
                           const std::vector<double>& radii, double tol = 1e-6, long probe = 10000000,
                           Exec exec = Exec::Parallel);

struct MahlerReport {
  std::vector<std::size_t> subsequence;
  Eigen::MatrixXd limit;
  double limit_covolume = 0.0;
  double limit_shortest = 0.0;
  double basis_bound = 0.0;
  double box_diameter = 0.0;
  bool verified = false;
};

/// Throws PreconditionError naming the first lattice with covolume above v or a vector shorter than r.
MahlerReport mahler_subsequence(const std::vector<Eigen::MatrixXd>& seq, double v, double r, double target = 1e-3,
                                double tol = 1e-6);

}  // namespace latlab::chab
