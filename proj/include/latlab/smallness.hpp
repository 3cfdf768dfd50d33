#pragma once

// Commutator contraction near the identity and its consequences: nilpotency
// of small-generated groups, Jordan's abelian-index bound, quasi-morphism
// defects and the Margulis short subgroup at a point.

#include "latlab/common.hpp"
#include "latlab/exact.hpp"
#include "latlab/hyp_geom.hpp"
#include "latlab/word_ball.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace latlab::small {

/// Invertible d x d matrices, either exact or floating.
class MatrixSet {
public:
  static MatrixSet exact(std::vector<RationalMatrix> m);
  static MatrixSet floating(std::vector<Eigen::MatrixXd> m);

  bool is_exact() const { return exact_flag_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return exact_flag_ ? exact_.size() : float_.size(); }
  const std::vector<RationalMatrix>& exact_elements() const { return exact_; }
  const std::vector<Eigen::MatrixXd>& float_elements() const { return float_; }

private:
  bool exact_flag_ = false;
  std::size_t dim_ = 0;
  std::vector<RationalMatrix> exact_;
  std::vector<Eigen::MatrixXd> float_;
};

/// a b a^-1 b^-1. Throws PreconditionError on singular input.
Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// ||m - 1||_F.
double distance_to_identity(const Eigen::MatrixXd& m);
double distance_to_identity(const RationalMatrix& m);

/// S^(0) = S, S^(n) = {[s, u] : s in S, u in S^(n-1)}, deduplicated.
struct CommutatorLadder {
  std::vector<MatrixSet> levels;
  std::vector<double> max_distance;  // m_n
  double epsilon = 0.0;              // m_0
  /// m_0 < 1/8 and every inverse has Frobenius norm <= 2.
  bool bound_asserted = false;
  std::vector<double> bound;  // eps (8 eps)^n, filled when asserted
  bool bound_holds = true;
};

CommutatorLadder commutator_ladder(const MatrixSet& s, int levels, Exec exec = Exec::Parallel);

struct ContractionTrial {
  std::size_t pairs = 0;
  std::size_t violations = 0;  // ||[a,b] - 1|| > 8 ||a - 1|| ||b - 1||
  double max_ratio = 0.0;      // of ||[a,b] - 1|| to ||a - 1|| ||b - 1||
};

/// Random d x d matrices with ||a - 1||_F uniform in (0, eps]. Deterministic in the seed.
std::vector<Eigen::MatrixXd> random_near_identity(int d, std::size_t count, double eps, std::uint64_t seed);
ContractionTrial commutator_contraction_trial(int d, double eps, std::size_t pairs, std::uint64_t seed,
                                              Exec exec = Exec::Parallel);

/// One ladder level computed from S and the previous level.
MatrixSet next_commutator_level(const MatrixSet& s, const MatrixSet& previous, Exec exec = Exec::Parallel);

/// Least N <= cutoff with S^(N) = {1}; nullopt when it exceeds the cutoff.
/// Floating sets use `tol` on ||s - 1||_F.
std::optional<int> nilpotency_class(const MatrixSet& s, int cutoff, double tol = 1e-9);

// ---------------------------------------------------------------------------
// finite groups

/// Finite group of complex matrices with its multiplication table.
struct FiniteMatrixGroup {
  std::vector<Eigen::MatrixXcd> elements;  // elements[0] is the identity
  std::vector<std::size_t> table;          // table[i * n + j] = index of e_i e_j

  std::size_t order() const { return elements.size(); }
  std::size_t product(std::size_t i, std::size_t j) const { return table[i * elements.size() + j]; }
};

/// Closure of the generators under multiplication. Throws CapExceeded above `cap`.
FiniteMatrixGroup finite_closure(std::span<const Eigen::MatrixXcd> gens, std::size_t cap = 100000);
/// Uses the elements as given; throws PreconditionError when they are not closed.
FiniteMatrixGroup finite_group_from_elements(std::span<const Eigen::MatrixXcd> elements);

enum class IdentityMetric { Frobenius, Angle };
/// Angle metric: rotation angle for SO(3), geodesic angle on S^3 for SU(2).
double identity_distance(const Eigen::MatrixXcd& g, IdentityMetric metric);

struct JordanResult {
  std::size_t group_order = 0;
  std::size_t subgroup_order = 0;
  std::size_t index = 0;
  std::vector<std::size_t> subgroup;  // element indices of A = <F cap Omega_eps>
  bool abelian = false;
  /// Brute-force oracle: largest abelian subgroup of F.
  std::size_t oracle_max_abelian_order = 0;
  std::size_t oracle_best_index = 0;
};

JordanResult jordan_abelian_index(const FiniteMatrixGroup& f, double eps,
                                  IdentityMetric metric = IdentityMetric::Frobenius);
/// Exhaustive search over abelian subgroups.
std::size_t max_abelian_subgroup_order(const FiniteMatrixGroup& f);
/// Subgroup generated by the given element indices.
std::vector<std::size_t> generated_subgroup(const FiniteMatrixGroup& f, std::span<const std::size_t> gens);

/// Multiplication table of an abstract finite group.
struct GroupTable {
  std::size_t order = 0;
  std::vector<std::size_t> mul;
  std::size_t product(std::size_t a, std::size_t b) const { return mul[a * order + b]; }
};

GroupTable cyclic_group(std::size_t n);
GroupTable table_of(const FiniteMatrixGroup& f);

/// Angle between unit complex numbers.
double circle_distance(std::complex<double> a, std::complex<double> b);

/// max over a, b of d(f(ab), f(a) f(b)) for a map into the circle group.
double quasi_morphism_defect(const GroupTable& domain, std::span<const std::complex<double>> f,
                             Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------
// Margulis short subgroup

enum class ElementaryKind { Trivial, Finite, Cusp, Tube, NotElementary };
std::string to_string(ElementaryKind k);

struct ElementaryVerdict {
  ElementaryKind kind = ElementaryKind::Trivial;
  std::optional<hyp::BoundaryPoint> fixed_point;
  std::optional<std::pair<hyp::BoundaryPoint, hyp::BoundaryPoint>> axis;
  double min_translation_length = 0.0;
};

/// Elementarity of the group generated by the given elements, decided by
/// pairwise agreement of axes / fixed points within `tol`.
ElementaryVerdict elementary_kind(std::span<const hyp::IsometryClass> classes, double tol = 1e-7);

struct ShortSubgroupReport {
  int word_cutoff = 0;
  std::size_t ball_size = 0;
  std::vector<Word> short_words;
  std::vector<double> displacements;
  ElementaryVerdict verdict;
};

/// Word-ball elements moving x by at most eps, and the elementarity of the
/// subgroup they generate.
ShortSubgroupReport margulis_short_subgroup(const FinitelyGeneratedGroup<hyp::MoebiusIsometry>& group,
                                            const hyp::HPoint& x, double eps, int word_cutoff,
                                            Exec exec = Exec::Parallel);

}  // namespace latlab::small
