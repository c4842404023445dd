#pragma once

#include <array>

#include "tablealg/homquot.hpp"
#include "tablealg/repchar.hpp"

namespace tablealg {

/// Where a wedge basis element came from.
struct BasisOrigin {
  enum Kind { FromD, FromBbar } kind;
  int index;  // basis index in the originating factor
};

/// The wedge product of (C,D) and (A,B) relative to an epimorphism
/// phi from C onto the span of a closed subset N of B. The result basis
/// is D followed by {o(K) b : b not in N}, K = ker phi.
struct WedgeProduct {
  TableAlgebra algebra;
  TableAlgebra factor_d;  // (C,D)
  TableAlgebra factor_b;  // (A,B)
  AlgebraHom phi;
  ClosedSubset k;  // kernel of phi, inside D
  ClosedSubset n;  // image support of phi, inside B
  double order_k = 1.0;
  std::vector<BasisOrigin> basis_origin;
  std::vector<int> result_of_d;  // D index -> result index
  std::vector<int> result_of_b;  // B index -> result index, -1 inside N
};

/// Builds the wedge product. phi must be a valid hom from c_d into a_b
/// whose image support is a closed subset; throws ImageNotClosed,
/// InvalidHom or IdentificationInconsistent.
WedgeProduct wedge_product(const TableAlgebra& c_d, const TableAlgebra& a_b,
                           const AlgebraHom& phi);

/// Wedge along the trivial hom d -> |d| 1; every d in D then satisfies
/// d x = |d| x = x d for x outside D.
WedgeProduct wreath_product(const TableAlgebra& c_d, const TableAlgebra& a_b);

/// All pairs (K, D) of closed subsets with {1} != K normal in B,
/// K <= D != B, K inside St_B(B \ D); each pair's reconstruction as a
/// wedge of (span D, D) with (A//K, B//K) is verified against the input
/// constants (ReconstructionMismatch on failure, which the theorem rules
/// out for exact input).
std::vector<std::pair<ClosedSubset, ClosedSubset>> detect_wedge(
    const TableAlgebra& a_b, int cap = 16);

/// Rebuilds A from (K, D) per the wedge criterion and compares structure
/// constants under the natural relabeling; empty result on success,
/// otherwise a human-readable mismatch witness.
std::optional<std::string> try_reconstruct_wedge(const TableAlgebra& a_b,
                                                 const ClosedSubset& k,
                                                 const ClosedSubset& d);

enum class LiftFactor { FromBFactor, FromDFactor };

/// Lifts a representation of one factor to the wedge:
///   B factor:  M(b-bar) = o(K) M(b),  M(d) = (|d|/|h|) M(h), h = Supp phi(d)
///   D factor:  M(b-bar) = 0,          M(d) = M(d)
/// The D-factor lift requires K not inside ker(rep) (KernelContainsK).
Representation lift_representation(const WedgeProduct& w,
                                   const Representation& rep,
                                   LiftFactor which);

/// Same formulas at the character level.
Character lift_character(const WedgeProduct& w, const Character& chi,
                         LiftFactor which);

/// Lifts a complete character set of both factors: every character of
/// the B factor, plus the D-factor characters whose kernel does not
/// contain K. Completeness (sum of squared degrees = rank) is asserted.
std::vector<Character> lift_all_characters(const WedgeProduct& w,
                                           const std::vector<Character>& irr_b,
                                           const std::vector<Character>& irr_d);

/// The four equivalent wedge-decomposition conditions, evaluated
/// independently.
struct Main2Report {
  bool normal_and_stabilized = false;   // (i)
  bool reconstruction = false;          // (ii)
  bool restriction_and_vanishing = false;  // (iii)
  bool multiplicity_ratio = false;      // (iv)
  bool equivalent = false;              // all four agree
  std::string witness;                  // first failure seen, if any
  // (chi index, zeta_chi, zeta_psi) for the characters outside
  // Irr(B//K), as used by (iv)
  std::vector<std::array<double, 3>> multiplicity_pairs;

  bool all_true() const {
    return normal_and_stabilized && reconstruction &&
           restriction_and_vanishing && multiplicity_ratio;
  }
};

/// Evaluates conditions (i)-(iv) for closed subsets K <= D of B, with
/// `chars` the complete character set of a_b (multiplicities attached).
Main2Report verify_main2(const TableAlgebra& a_b, const ClosedSubset& k,
                         const ClosedSubset& d,
                         const std::vector<Character>& chars,
                         std::uint64_t seed = 0);

}  // namespace tablealg
