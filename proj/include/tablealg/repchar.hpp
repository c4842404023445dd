#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "tablealg/core.hpp"

namespace tablealg {

using Complex = std::complex<double>;

/// Irreducible character: one complex value per basis element.
/// values[0] is the degree chi(1); multiplicity is the standard feasible
/// multiplicity zeta_chi once standard_multiplicities has run.
struct Character {
  Eigen::VectorXcd values;
  std::optional<double> multiplicity;

  double degree() const { return values[0].real(); }
};

/// Matrix representation; matrices[0] is the identity and
/// M_i M_j = sum_k lambda(i,j,k) M_k within tolerance.
struct Representation {
  int dimension = 0;
  std::vector<Eigen::MatrixXcd> matrices;
};

/// The left-regular representation L with (L_i)(k,j) = lambda(i,j,k).
Representation regular_representation(const TableAlgebra& a);

/// Real coefficient vectors spanning {z : z x = x z for all x}.
std::vector<Eigen::VectorXd> center_basis(const TableAlgebra& a);

/// All irreducible characters, computed by splitting the regular module
/// into isotypic components with seeded random central elements.
/// Canonical order: the degree character first, then ascending by
/// (degree, lexicographic value comparison). Throws SplitFailure after
/// the retry cap, NonIntegerDegree on an isotypic of non-square size.
std::vector<Character> irr_characters(const TableAlgebra& a,
                                      std::uint64_t seed = 0);

/// Solves sum_chi zeta_chi chi(b_i) = delta_{i,0} o(B) in the
/// least-squares sense and attaches the multiplicities. Throws
/// ResidualTooLarge or ZeroMultiplicity.
void standard_multiplicities(const TableAlgebra& a,
                             std::vector<Character>& chars);

/// ker_B(chi) = {b : chi(b) = |b| chi(1)}, verified closed.
ClosedSubset char_kernel(const TableAlgebra& a, const Character& chi);

/// Characters of A//N among chars: those with N inside their kernel.
/// Cross-checked against the center dimension of the quotient algebra.
std::vector<Character> irr_of_quotient(const TableAlgebra& a,
                                       const ClosedSubset& n,
                                       const std::vector<Character>& chars);

/// [chi, phi] = o(B)^{-1} sum_i chi(b_i) conj(phi(b_i)) / lambda(i,i*,0)
/// for a standard algebra (NotStandard otherwise).
Complex inner_product(const TableAlgebra& a, const Character& chi,
                      const Character& phi);

/// One irreducible matrix representation per character, in the same
/// canonical order as irr_characters; rank must not exceed cap.
std::vector<Representation> irr_representations(const TableAlgebra& a,
                                                std::uint64_t seed = 0,
                                                int cap = 32);

namespace detail {

/// Isotypic decomposition of the regular module, in coordinates where
/// the basis involution acts by the matrix adjoint. Shared by
/// irr_characters and irr_representations.
struct IsotypicDecomposition {
  Eigen::VectorXd w_sqrt;      // sqrt(lambda(i,i*,0))
  std::vector<Eigen::MatrixXcd> blocks;  // orthonormal columns per isotypic
  std::vector<Eigen::MatrixXd> l_tilde;  // conjugated left-regular matrices
};

IsotypicDecomposition isotypic_decomposition(const TableAlgebra& a,
                                             std::uint64_t seed);

}  // namespace detail

}  // namespace tablealg
