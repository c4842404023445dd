#pragma once

#include <optional>
#include <utility>

#include "tablealg/core.hpp"

namespace tablealg {

/// Partition of the basis into double cosets N b N.
struct DoubleCosetPartition {
  ClosedSubset n;
  std::vector<std::vector<int>> blocks;  // sorted; block 0 is N itself
  std::vector<int> representatives;     // smallest index of each block
  std::vector<int> block_of;            // basis index -> block index
};

DoubleCosetPartition double_cosets(const TableAlgebra& a,
                                   const ClosedSubset& n);

/// Quotient algebra together with the basis projection (block_of).
struct QuotientResult {
  TableAlgebra algebra;
  DoubleCosetPartition cosets;
};

/// A//N on the double-coset sums b//N = o(N)^{-1} (N b N)+ with the
/// gamma structure constants. N must be closed (normality not required).
/// The gamma formula is evaluated for every element of the target coset
/// and the values must agree; GammaInconsistent otherwise.
QuotientResult quotient(const TableAlgebra& a, const ClosedSubset& n);

/// phi(b_i) = scalar_i * d_{index_i}; phi(1) = 1 with scalar 1.
/// source and target are stored by value (instances are small).
struct AlgebraHom {
  TableAlgebra source;
  TableAlgebra target;
  std::vector<int> image_index;
  std::vector<double> image_scalar;
};

struct HomCheck {
  bool ok = true;
  int witness_i = -1;
  int witness_j = -1;
  std::string detail;
};

/// Multiplicativity, identity and star-compatibility of phi within tol.
HomCheck validate_hom(const AlgebraHom& phi);

/// {i : phi(b_i) is a scalar multiple of 1}; asserted to be a normal
/// closed subset of the source basis (KernelNotNormal otherwise).
ClosedSubset hom_kernel(const AlgebraHom& phi);

/// The hom b -> |b| * 1_target.
AlgebraHom trivial_hom(const TableAlgebra& source, const TableAlgebra& target);

/// pi(b) = (|b| / |b//N|) (b//N) onto quotient(a, n); requires N normal.
AlgebraHom canonical_epi(const TableAlgebra& a, const ClosedSubset& n);

/// Checks B // ker(phi) ~ phi(B): builds the induced map from the
/// quotient onto the image basis and compares structure constants under
/// it (with the induced scalars folded in).
bool first_isomorphism_check(const AlgebraHom& phi);

/// The table algebra (C N, N) spanned by a closed subset, with the
/// restricted constants, star and labels.
TableAlgebra span_subalgebra(const TableAlgebra& a, const ClosedSubset& n);

}  // namespace tablealg
