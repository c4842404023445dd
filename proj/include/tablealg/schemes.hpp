#pragma once

#include "tablealg/wedge.hpp"

namespace tablealg {

/// An association scheme given by its relation matrix: relmat(x,y) is the
/// index of the relation containing (x, y), relation 0 is the diagonal.
/// Validated exhaustively (identity, pairing, regularity) on build.
struct Scheme {
  int npoints = 0;
  int nrels = 0;
  std::vector<int> relmat;    // row-major npoints x npoints
  std::vector<int> rel_star;  // pairing g -> g*
  std::vector<int> valencies;

  int rel(int x, int y) const {
    return relmat[static_cast<size_t>(x) * npoints + y];
  }
};

/// Validates the three scheme axioms by exhaustive counting; throws
/// AxiomViolation with witness (g,h,k,x,y) on a regularity failure.
Scheme make_scheme(int npoints, std::vector<int> relmat);

/// Intersection numbers lambda(g,h,k), counted from the relation matrix.
std::vector<double> scheme_intersection_numbers(const Scheme& s);

/// Adjacency table algebra: integer constants, standard by construction
/// (degrees equal valencies).
TableAlgebra scheme_to_algebra(const Scheme& s, double tol = kDefaultTol);

/// Point-and-relation surjection preserving incidence.
struct SchemeEpimorphism {
  Scheme source;
  Scheme target;
  std::vector<int> point_map;
  std::vector<int> rel_map;
};

/// Checks the epimorphism conditions; throws CompatibilityFailure.
void validate_scheme_epimorphism(const SchemeEpimorphism& e);

/// Quotient scheme over a closed relation subset H: points are the
/// blocks xH, relations the H-double-cosets. Returns the scheme and the
/// canonical epimorphism. Throws PartitionInconsistent when the xH do
/// not partition the points.
std::pair<Scheme, SchemeEpimorphism> scheme_quotient(
    const Scheme& s, const std::vector<int>& h);

/// Subscheme induced on the block xH, relations renumbered to H's order.
Scheme subscheme(const Scheme& s, const std::vector<int>& h, int x);

/// Input bundle for the general (heterogeneous-fiber) wedge of schemes.
/// Fiber i maps onto the subscheme induced on the i-th block of the
/// D-quotient of the base; relations of that subscheme are labeled by
/// the position of their relation in D (so the epsilon relabelings are
/// identities). phis[0] must be the identity.
struct SchemeWedgeSpec {
  Scheme base;
  std::vector<int> d;                  // closed relation subset of base
  std::vector<Scheme> fibers;          // one per block of base//D
  std::vector<SchemeEpimorphism> psis; // fiber -> subscheme on block i
  std::vector<std::vector<int>> phis;  // relation bijection fiber 0 -> i
};

/// Result of the wedge of schemes together with its table-algebra bridge.
struct SchemeWedge {
  Scheme scheme;
  WedgeProduct bridge;           // wedge of (fiber-0 algebra, base algebra)
  std::vector<int> block_offset; // first global point of each fiber
};

/// Builds the wedge of schemes over the base along D. Validates every
/// hypothesis (normal epimorphisms, algebraic isomorphisms, the
/// compatibility equation), revalidates the output by full regularity
/// counting, and checks that the output's adjacency algebra is the wedge
/// product of the factor algebras.
SchemeWedge scheme_wedge(const SchemeWedgeSpec& spec);

/// All fibers are copies of one scheme, phis are identities. The given
/// isomorphism (point_iso, rel_iso) identifies the quotient of the fiber
/// by K with the subscheme on the first block; blocks must be aligned by
/// sorted position (CompatibilityFailure otherwise — use scheme_wedge
/// with explicit data for unaligned bases).
SchemeWedge uniform_scheme_wedge(const Scheme& base, const std::vector<int>& d,
                                 const Scheme& fiber, const std::vector<int>& k,
                                 const std::vector<int>& point_iso,
                                 const std::vector<int>& rel_iso);

/// Scheme-level wedge-decomposition report: verify_main2 on the
/// adjacency algebra plus the scheme form of condition (i),
/// A(s) A(K)+ = n_K A(s) = A(K)+ A(s) for s outside B.
struct SchemeWedgeCharReport {
  Main2Report main2;
  bool sum_condition = false;
  bool trivial_k = false;
};

SchemeWedgeCharReport verify_scheme_wedge_chars(const Scheme& s,
                                                const std::vector<int>& k,
                                                const std::vector<int>& b,
                                                std::uint64_t seed = 0);

}  // namespace tablealg
