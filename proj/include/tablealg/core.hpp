#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tablealg/errors.hpp"

namespace tablealg {

inline constexpr double kDefaultTol = 1e-9;

/// A finite-dimensional associative algebra with a distinguished basis
/// b_0 = 1, ..., b_{d-1}, nonnegative structure constants
/// b_i b_j = sum_k lambda(i,j,k) b_k, an involution * permuting the basis,
/// and the (unique) positive degree homomorphism.
///
/// Index 0 is always the identity. Instances are immutable after
/// construction and safe to share across threads.
class TableAlgebra {
public:
  /// Empty placeholder; every usable instance comes from build().
  TableAlgebra() = default;

  /// Validates every defining axiom and computes the degree map.
  /// Entries of `lambda` in (-tol, 0) are clamped to zero first.
  /// Throws NegativeConstant or AxiomViolation on failure.
  static TableAlgebra build(int rank, std::vector<std::string> labels,
                            std::vector<double> lambda, std::vector<int> star,
                            double tol = kDefaultTol);

  int rank() const { return rank_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& star() const { return star_; }
  int star(int i) const { return star_[i]; }
  double tol() const { return tol_; }

  double lambda(int i, int j, int k) const {
    return lambda_[(static_cast<size_t>(i) * rank_ + j) * rank_ + k];
  }
  const std::vector<double>& lambda_tensor() const { return lambda_; }

  /// Degree of basis element i (value of the degree homomorphism).
  double degree(int i) const { return degrees_[i]; }
  const Eigen::VectorXd& degrees() const { return degrees_; }

  /// o(B), the sum of all basis degrees.
  double order() const { return degrees_.sum(); }
  /// o(N) for a subset of basis indices.
  double order(const std::vector<int>& subset) const;

  /// Left multiplication matrix L_i with (L_i)(k,j) = lambda(i,j,k).
  Eigen::MatrixXd left_matrix(int i) const;
  /// Left multiplication by an arbitrary element given by coefficients.
  Eigen::MatrixXd left_matrix(const Eigen::VectorXd& coeffs) const;
  /// Right multiplication matrix R_i with (R_i)(k,j) = lambda(j,i,k).
  Eigen::MatrixXd right_matrix(const Eigen::VectorXd& coeffs) const;

  /// Threshold below which a coefficient does not count as support.
  double support_threshold() const { return supp_threshold_; }
  double max_lambda() const { return max_lambda_; }

  /// Supp(b_i b_j) using the support threshold.
  std::vector<int> product_support(int i, int j) const;

  /// True when lambda(i, i*, 0) == degree(i) for every i.
  bool is_standard() const;

private:
  void validate() const;
  void validate_degrees() const;
  void compute_degrees();

  int rank_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> lambda_;
  std::vector<int> star_;
  Eigen::VectorXd degrees_;
  double tol_ = kDefaultTol;
  double max_lambda_ = 0.0;
  double supp_threshold_ = 0.0;
};

/// Computes the degree map of a not-yet-validated tensor: the unique
/// strictly positive common eigenvector of the transposed left-regular
/// matrices, normalized so the identity coordinate is 1. Throws
/// NoPositiveCharacter when the Perron vector is not strictly positive or
/// fails the homomorphism property.
Eigen::VectorXd degree_map(int rank, const std::vector<double>& lambda,
                           double tol = kDefaultTol);

/// Rescales to the standard basis (degree(i) == lambda(i,i*,0)).
/// Returns the rescaled algebra and the scaling vector applied to each
/// basis element; the degree map is unchanged.
std::pair<TableAlgebra, Eigen::VectorXd> rescale_to_standard(
    const TableAlgebra& a);

/// A star-stable basis subset N containing the identity with
/// Supp(N* N) contained in N. Kept as a sorted index list; validity is
/// established by the factory functions below.
struct ClosedSubset {
  std::vector<int> indices;

  bool contains(int i) const;
  size_t size() const { return indices.size(); }
  bool operator==(const ClosedSubset& o) const { return indices == o.indices; }
};

/// Validates that `indices` is closed in `a`; throws NotClosed otherwise.
ClosedSubset closed_subset(const TableAlgebra& a, std::vector<int> indices);

/// Union of Supp(b_i b_j) over i in s, j in t.
std::vector<int> complex_product(const TableAlgebra& a,
                                 const std::vector<int>& s,
                                 const std::vector<int>& t);

/// Least closed subset containing `seed`.
ClosedSubset closure(const TableAlgebra& a, const std::vector<int>& seed);

/// Every closed subset, sorted by size then lexicographically.
/// Throws RankCapExceeded when rank(a) > cap.
std::vector<ClosedSubset> all_closed_subsets(const TableAlgebra& a,
                                             int cap = 16);

/// True iff b N = N b (as complex products) for every basis element b.
bool is_normal(const TableAlgebra& a, const ClosedSubset& n);

/// St_H(U) = {x in H : x b = |x| b = b x for all b in U}, verified closed.
/// An empty U yields all of H.
ClosedSubset stabilizer(const TableAlgebra& a, const ClosedSubset& h,
                        const std::vector<int>& u);

}  // namespace tablealg
