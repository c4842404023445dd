#include "tablealg/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace tablealg {

namespace {

std::string tup(std::initializer_list<int> v) {
  std::string s = "(";
  for (int x : v) s += std::to_string(x) + ",";
  s.back() = ')';
  return s;
}

}  // namespace

Scheme make_scheme(int npoints, std::vector<int> relmat) {
  if (npoints <= 0 || relmat.size() != static_cast<size_t>(npoints) * npoints)
    throw FormatError("relation matrix has wrong size");
  Scheme s;
  s.npoints = npoints;
  s.relmat = std::move(relmat);
  int r = 0;
  for (int v : s.relmat) {
    if (v < 0) throw FormatError("negative relation index");
    r = std::max(r, v + 1);
  }
  s.nrels = r;
  std::vector<int> seen(r, 0);
  for (int v : s.relmat) seen[v] = 1;
  for (int g = 0; g < r; ++g)
    if (!seen[g])
      throw FormatError("relation " + std::to_string(g) + " is empty");

  // Axiom I: relation 0 is exactly the diagonal.
  for (int x = 0; x < npoints; ++x)
    for (int y = 0; y < npoints; ++y) {
      if ((x == y) != (s.rel(x, y) == 0))
        throw AxiomViolation("scheme-identity", {s.rel(x, y), x, y},
                             "relation 0 must be exactly the diagonal");
    }

  // Axiom II: a pairing with relmat(y,x) = relmat(x,y)*.
  s.rel_star.assign(r, -1);
  for (int x = 0; x < npoints; ++x)
    for (int y = 0; y < npoints; ++y) {
      int g = s.rel(x, y), gs = s.rel(y, x);
      if (s.rel_star[g] == -1)
        s.rel_star[g] = gs;
      else if (s.rel_star[g] != gs)
        throw AxiomViolation("scheme-pairing", {g, x, y},
                             "transpose relation is not well defined");
    }
  for (int g = 0; g < r; ++g)
    if (s.rel_star[s.rel_star[g]] != g)
      throw AxiomViolation("scheme-pairing", {g}, "pairing is not involutive");

  // Axiom III: regularity, checked by exhaustive counting.
  std::vector<long long> counts(static_cast<size_t>(r) * r, 0);
  std::vector<long long> reference(static_cast<size_t>(r) * r * r, -1);
  for (int x = 0; x < npoints; ++x)
    for (int y = 0; y < npoints; ++y) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int z = 0; z < npoints; ++z)
        ++counts[static_cast<size_t>(s.rel(x, z)) * r + s.rel(z, y)];
      int k = s.rel(x, y);
      for (int g = 0; g < r; ++g)
        for (int h = 0; h < r; ++h) {
          long long& ref =
              reference[(static_cast<size_t>(g) * r + h) * r + k];
          long long c = counts[static_cast<size_t>(g) * r + h];
          if (ref == -1)
            ref = c;
          else if (ref != c)
            throw AxiomViolation("scheme-regularity", {g, h, k, x, y},
                                 "intersection number is not constant");
        }
    }

  s.valencies.resize(r);
  for (int g = 0; g < r; ++g)
    s.valencies[g] = static_cast<int>(
        reference[(static_cast<size_t>(g) * r + s.rel_star[g]) * r + 0]);
  long long total = std::accumulate(s.valencies.begin(), s.valencies.end(),
                                    0LL);
  if (total != npoints)
    throw AxiomViolation("scheme-valency", {},
                         "valencies do not sum to the point count");
  return s;
}

std::vector<double> scheme_intersection_numbers(const Scheme& s) {
  const int r = s.nrels;
  std::vector<double> lam(static_cast<size_t>(r) * r * r, 0.0);
  // one witness pair per relation suffices once regularity is validated
  std::vector<int> wx(r, -1), wy(r, -1);
  for (int x = 0; x < s.npoints; ++x)
    for (int y = 0; y < s.npoints; ++y) {
      int k = s.rel(x, y);
      if (wx[k] < 0) {
        wx[k] = x;
        wy[k] = y;
      }
    }
  for (int k = 0; k < r; ++k)
    for (int z = 0; z < s.npoints; ++z) {
      int g = s.rel(wx[k], z), h = s.rel(z, wy[k]);
      lam[(static_cast<size_t>(g) * r + h) * r + k] += 1.0;
    }
  return lam;
}

TableAlgebra scheme_to_algebra(const Scheme& s, double tol) {
  std::vector<std::string> labels(s.nrels);
  for (int g = 0; g < s.nrels; ++g) labels[g] = "r" + std::to_string(g);
  return TableAlgebra::build(s.nrels, std::move(labels),
                             scheme_intersection_numbers(s), s.rel_star, tol);
}

void validate_scheme_epimorphism(const SchemeEpimorphism& e) {
  const Scheme& src = e.source;
  const Scheme& tgt = e.target;
  if (static_cast<int>(e.point_map.size()) != src.npoints ||
      static_cast<int>(e.rel_map.size()) != src.nrels)
    throw CompatibilityFailure("epimorphism maps have wrong length");
  std::vector<int> pts(tgt.npoints, 0), rels(tgt.nrels, 0);
  for (int p : e.point_map) {
    if (p < 0 || p >= tgt.npoints)
      throw CompatibilityFailure("point image out of range");
    pts[p] = 1;
  }
  for (int g : e.rel_map) {
    if (g < 0 || g >= tgt.nrels)
      throw CompatibilityFailure("relation image out of range");
    rels[g] = 1;
  }
  if (std::find(pts.begin(), pts.end(), 0) != pts.end() ||
      std::find(rels.begin(), rels.end(), 0) != rels.end())
    throw CompatibilityFailure("epimorphism is not surjective");
  for (int x = 0; x < src.npoints; ++x)
    for (int y = 0; y < src.npoints; ++y)
      if (tgt.rel(e.point_map[x], e.point_map[y]) != e.rel_map[src.rel(x, y)])
        throw CompatibilityFailure(
            "incidence is not preserved at point pair " + tup({x, y}));

  // the kernel spans a closed subset and the point fibers are its blocks
  std::vector<int> ker;
  for (int g = 0; g < src.nrels; ++g)
    if (e.rel_map[g] == 0) ker.push_back(g);
  TableAlgebra src_alg = scheme_to_algebra(src);
  try {
    closed_subset(src_alg, ker);
  } catch (const NotClosed& err) {
    throw CompatibilityFailure(std::string("kernel is not closed: ") +
                               err.what());
  }
  for (int x = 0; x < src.npoints; ++x)
    for (int y = 0; y < src.npoints; ++y) {
      bool same_fiber = e.point_map[x] == e.point_map[y];
      bool in_kernel = e.rel_map[src.rel(x, y)] == 0;
      if (same_fiber != in_kernel)
        throw CompatibilityFailure(
            "point fibers do not match the kernel blocks at " + tup({x, y}));
    }
}

std::pair<Scheme, SchemeEpimorphism> scheme_quotient(
    const Scheme& s, const std::vector<int>& h) {
  TableAlgebra alg = scheme_to_algebra(s);
  ClosedSubset hs = closed_subset(alg, h);

  // blocks xH
  std::vector<int> block_of(s.npoints, -1);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < s.npoints; ++x) {
    if (block_of[x] >= 0) continue;
    std::vector<int> blk;
    for (int y = 0; y < s.npoints; ++y)
      if (hs.contains(s.rel(x, y))) blk.push_back(y);
    int id = static_cast<int>(blocks.size());
    for (int y : blk) {
      if (block_of[y] >= 0)
        throw PartitionInconsistent("blocks xH overlap at point " +
                                    std::to_string(y));
      block_of[y] = id;
    }
    blocks.push_back(std::move(blk));
  }

  // relation double cosets H g H
  DoubleCosetPartition part = double_cosets(alg, hs);

  const int m = static_cast<int>(blocks.size());
  std::vector<int> relmat(static_cast<size_t>(m) * m, -1);
  for (int x = 0; x < s.npoints; ++x)
    for (int y = 0; y < s.npoints; ++y) {
      int q = part.block_of[s.rel(x, y)];
      int& cell = relmat[static_cast<size_t>(block_of[x]) * m + block_of[y]];
      if (cell == -1)
        cell = q;
      else if (cell != q)
        throw PartitionInconsistent(
            "quotient relation is not constant on block pair " +
            tup({block_of[x], block_of[y]}));
    }

  Scheme out = make_scheme(m, std::move(relmat));
  SchemeEpimorphism epi;
  epi.source = s;
  epi.target = out;
  epi.point_map = std::move(block_of);
  epi.rel_map = part.block_of;
  validate_scheme_epimorphism(epi);
  return {std::move(out), std::move(epi)};
}

Scheme subscheme(const Scheme& s, const std::vector<int>& h, int x) {
  TableAlgebra alg = scheme_to_algebra(s);
  ClosedSubset hs = closed_subset(alg, h);
  std::vector<int> pts;
  for (int y = 0; y < s.npoints; ++y)
    if (hs.contains(s.rel(x, y))) pts.push_back(y);
  std::vector<int> relpos(s.nrels, -1);
  for (size_t p = 0; p < hs.indices.size(); ++p)
    relpos[hs.indices[p]] = static_cast<int>(p);
  const int m = static_cast<int>(pts.size());
  std::vector<int> relmat(static_cast<size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      relmat[static_cast<size_t>(a) * m + b] = relpos[s.rel(pts[a], pts[b])];
  return make_scheme(m, std::move(relmat));
}

SchemeWedge scheme_wedge(const SchemeWedgeSpec& spec) {
  const Scheme& base = spec.base;
  TableAlgebra base_alg = scheme_to_algebra(base);
  ClosedSubset d_sub = closed_subset(base_alg, spec.d);

  // blocks of base // D, in order of smallest point
  std::vector<int> block_of(base.npoints, -1);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < base.npoints; ++x) {
    if (block_of[x] >= 0) continue;
    std::vector<int> blk;
    for (int y = 0; y < base.npoints; ++y)
      if (d_sub.contains(base.rel(x, y))) blk.push_back(y);
    for (int y : blk) {
      if (block_of[y] >= 0)
        throw PartitionInconsistent("xD blocks overlap");
      block_of[y] = static_cast<int>(blocks.size());
    }
    blocks.push_back(std::move(blk));
  }
  const int m = static_cast<int>(blocks.size());
  if (static_cast<int>(spec.fibers.size()) != m ||
      static_cast<int>(spec.psis.size()) != m ||
      static_cast<int>(spec.phis.size()) != m)
    throw CompatibilityFailure("expected one fiber/psi/phi per block (" +
                               std::to_string(m) + " blocks)");

  const int nb = spec.fibers[0].nrels;
  // phi_0 must be the identity; each phi_i a constant-preserving bijection.
  std::vector<double> lam0 = scheme_intersection_numbers(spec.fibers[0]);
  for (int i = 0; i < m; ++i) {
    const std::vector<int>& phi = spec.phis[i];
    const Scheme& fib = spec.fibers[i];
    if (fib.nrels != nb || static_cast<int>(phi.size()) != nb)
      throw CompatibilityFailure("phi_" + std::to_string(i) +
                                 " is not a relation bijection");
    std::vector<int> seen(nb, 0);
    for (int v : phi) {
      if (v < 0 || v >= nb || seen[v]++)
        throw CompatibilityFailure("phi_" + std::to_string(i) +
                                   " is not a bijection");
    }
    if (i == 0)
      for (int g = 0; g < nb; ++g)
        if (phi[g] != g)
          throw CompatibilityFailure("phi_0 must be the identity");
    if (phi[0] != 0)
      throw CompatibilityFailure("phi_" + std::to_string(i) +
                                 " does not fix the diagonal relation");
    std::vector<double> lami = scheme_intersection_numbers(fib);
    for (int g = 0; g < nb; ++g)
      for (int hh = 0; hh < nb; ++hh)
        for (int k = 0; k < nb; ++k) {
          double a = lam0[(static_cast<size_t>(g) * nb + hh) * nb + k];
          double b = lami[(static_cast<size_t>(phi[g]) * nb + phi[hh]) * nb +
                          phi[k]];
          if (a != b)
            throw CompatibilityFailure(
                "phi_" + std::to_string(i) +
                " does not preserve structure constants at " +
                tup({g, hh, k}));
        }
  }

  // validate each psi_i: epimorphism onto the subscheme of block i with
  // relations labeled by their position in D, and a normal kernel.
  for (int i = 0; i < m; ++i) {
    Scheme sub = subscheme(base, spec.d, blocks[i].front());
    const SchemeEpimorphism& psi = spec.psis[i];
    if (psi.target.npoints != sub.npoints || psi.target.nrels != sub.nrels ||
        psi.target.relmat != sub.relmat)
      throw CompatibilityFailure("psi_" + std::to_string(i) +
                                 " does not target the block subscheme");
    validate_scheme_epimorphism(psi);
    // kernel must be closed and normal at the algebra level
    TableAlgebra fib_alg = scheme_to_algebra(spec.fibers[i]);
    std::vector<int> ker;
    for (int g = 0; g < spec.fibers[i].nrels; ++g)
      if (psi.rel_map[g] == 0) ker.push_back(g);
    ClosedSubset ker_sub;
    try {
      ker_sub = closed_subset(fib_alg, ker);
    } catch (const NotClosed& e) {
      throw NotNormalEpimorphism(std::string("kernel of psi_") +
                                 std::to_string(i) + " is not closed: " +
                                 e.what());
    }
    if (!is_normal(fib_alg, ker_sub))
      throw NotNormalEpimorphism("kernel of psi_" + std::to_string(i) +
                                 " is not normal");
  }

  // compatibility psi_i phi_i = eps_i eps_1^{-1} psi_1 (the eps are
  // identities in our labeling)
  for (int i = 0; i < m; ++i)
    for (int g = 0; g < nb; ++g)
      if (spec.psis[i].rel_map[spec.phis[i][g]] != spec.psis[0].rel_map[g])
        throw CompatibilityFailure("psi_" + std::to_string(i) +
                                   " phi_" + std::to_string(i) +
                                   " != psi_0 at relation " +
                                   std::to_string(g));

  // assemble the disjoint union
  SchemeWedge out;
  out.block_offset.resize(m);
  int total = 0;
  for (int i = 0; i < m; ++i) {
    out.block_offset[i] = total;
    total += spec.fibers[i].npoints;
  }
  std::vector<int> inv_phi(static_cast<size_t>(m) * nb);
  for (int i = 0; i < m; ++i)
    for (int g = 0; g < nb; ++g) inv_phi[static_cast<size_t>(i) * nb + spec.phis[i][g]] = g;

  // relation labels: 0..nb-1 are the b-tilde, then G \ D in order
  std::vector<int> cross_label(base.nrels, -1);
  int next = nb;
  for (int g = 0; g < base.nrels; ++g)
    if (!d_sub.contains(g)) cross_label[g] = next++;

  std::vector<int> relmat(static_cast<size_t>(total) * total, -1);
  for (int i = 0; i < m; ++i) {
    const Scheme& fib = spec.fibers[i];
    for (int u = 0; u < fib.npoints; ++u)
      for (int v = 0; v < fib.npoints; ++v)
        relmat[static_cast<size_t>(out.block_offset[i] + u) * total +
               (out.block_offset[i] + v)] =
            inv_phi[static_cast<size_t>(i) * nb + fib.rel(u, v)];
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const Scheme& fj = spec.fibers[j];
      for (int u = 0; u < fib.npoints; ++u)
        for (int v = 0; v < fj.npoints; ++v) {
          int gx = blocks[i][spec.psis[i].point_map[u]];
          int gy = blocks[j][spec.psis[j].point_map[v]];
          int g = base.rel(gx, gy);
          if (cross_label[g] < 0)
            throw ResultNotScheme("cross-fiber pair lands in D");
          relmat[static_cast<size_t>(out.block_offset[i] + u) * total +
                 (out.block_offset[j] + v)] = cross_label[g];
        }
    }
  }

  try {
    out.scheme = make_scheme(total, std::move(relmat));
  } catch (const AxiomViolation& e) {
    throw ResultNotScheme(e.what());
  }
  if (out.scheme.nrels != nb + base.nrels - static_cast<int>(spec.d.size()))
    throw ResultNotScheme("unexpected relation count");

  // algebra bridge: the adjacency algebra of the result is the wedge
  // product of the fiber algebra and the base algebra along
  // phi(A(b)) = (n_b / n_{psi(b)}) A(d).
  TableAlgebra fib_alg = scheme_to_algebra(spec.fibers[0]);
  AlgebraHom phi;
  phi.source = fib_alg;
  phi.target = base_alg;
  phi.image_index.resize(nb);
  phi.image_scalar.resize(nb);
  for (int b = 0; b < nb; ++b) {
    int dg = d_sub.indices[spec.psis[0].rel_map[b]];
    phi.image_index[b] = dg;
    phi.image_scalar[b] = double(spec.fibers[0].valencies[b]) /
                          double(base.valencies[dg]);
  }
  out.bridge = wedge_product(fib_alg, base_alg, phi);

  TableAlgebra result_alg = scheme_to_algebra(out.scheme);
  // result relation r maps to FromD(r) for r < nb, else FromBbar(g)
  std::vector<int> to_bridge(out.scheme.nrels, -1);
  for (int r = 0; r < nb; ++r) to_bridge[r] = out.bridge.result_of_d[r];
  for (int g = 0; g < base.nrels; ++g)
    if (cross_label[g] >= 0)
      to_bridge[cross_label[g]] = out.bridge.result_of_b[g];
  double atol = 1e-9 * std::max(1.0, result_alg.max_lambda()) * 100.0;
  for (int i = 0; i < result_alg.rank(); ++i)
    for (int j = 0; j < result_alg.rank(); ++j)
      for (int k = 0; k < result_alg.rank(); ++k)
        if (std::abs(result_alg.lambda(i, j, k) -
                     out.bridge.algebra.lambda(to_bridge[i], to_bridge[j],
                                               to_bridge[k])) > atol)
          throw ResultNotScheme(
              "adjacency algebra does not match the wedge product at " +
              tup({i, j, k}));
  return out;
}

SchemeWedge uniform_scheme_wedge(const Scheme& base, const std::vector<int>& d,
                                 const Scheme& fiber,
                                 const std::vector<int>& k,
                                 const std::vector<int>& point_iso,
                                 const std::vector<int>& rel_iso) {
  auto [qs, epi] = scheme_quotient(fiber, k);

  TableAlgebra base_alg = scheme_to_algebra(base);
  ClosedSubset d_sub = closed_subset(base_alg, d);
  std::vector<int> block_of(base.npoints, -1);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < base.npoints; ++x) {
    if (block_of[x] >= 0) continue;
    std::vector<int> blk;
    for (int y = 0; y < base.npoints; ++y)
      if (d_sub.contains(base.rel(x, y))) blk.push_back(y);
    for (int y : blk) block_of[y] = static_cast<int>(blocks.size());
    blocks.push_back(std::move(blk));
  }
  const int m = static_cast<int>(blocks.size());

  Scheme sub1 = subscheme(base, d, blocks[0].front());
  if (static_cast<int>(point_iso.size()) != qs.npoints ||
      static_cast<int>(rel_iso.size()) != qs.nrels ||
      qs.npoints != sub1.npoints || qs.nrels != sub1.nrels)
    throw CompatibilityFailure(
        "iso does not match quotient/subscheme dimensions");
  for (int p = 0; p < qs.npoints; ++p)
    for (int q = 0; q < qs.npoints; ++q)
      if (rel_iso[qs.rel(p, q)] != sub1.rel(point_iso[p], point_iso[q]))
        throw CompatibilityFailure(
            "given maps are not a scheme isomorphism at point pair " +
            tup({p, q}));

  // blocks must be position-aligned copies of block 0
  for (int i = 1; i < m; ++i) {
    if (blocks[i].size() != blocks[0].size())
      throw CompatibilityFailure("blocks of base//D have unequal sizes");
    for (size_t a = 0; a < blocks[0].size(); ++a)
      for (size_t b = 0; b < blocks[0].size(); ++b)
        if (base.rel(blocks[i][a], blocks[i][b]) !=
            base.rel(blocks[0][a], blocks[0][b]))
          throw CompatibilityFailure(
              "blocks of base//D are not position-aligned; use "
              "scheme_wedge with explicit per-block data");
  }

  SchemeWedgeSpec spec;
  spec.base = base;
  spec.d = d_sub.indices;
  for (int i = 0; i < m; ++i) {
    spec.fibers.push_back(fiber);
    SchemeEpimorphism psi;
    psi.source = fiber;
    psi.target = sub1;  // identical for every aligned block
    psi.point_map.resize(fiber.npoints);
    for (int u = 0; u < fiber.npoints; ++u)
      psi.point_map[u] = point_iso[epi.point_map[u]];
    psi.rel_map.resize(fiber.nrels);
    for (int g = 0; g < fiber.nrels; ++g)
      psi.rel_map[g] = rel_iso[epi.rel_map[g]];
    spec.psis.push_back(std::move(psi));
    std::vector<int> id(fiber.nrels);
    std::iota(id.begin(), id.end(), 0);
    spec.phis.push_back(std::move(id));
  }
  return scheme_wedge(spec);
}

SchemeWedgeCharReport verify_scheme_wedge_chars(const Scheme& s,
                                                const std::vector<int>& k,
                                                const std::vector<int>& b,
                                                std::uint64_t seed) {
  TableAlgebra alg = scheme_to_algebra(s);
  ClosedSubset ks = closed_subset(alg, k);
  ClosedSubset bs = closed_subset(alg, b);

  SchemeWedgeCharReport rep;
  rep.trivial_k = ks.indices.size() <= 1;

  std::vector<Character> chars = irr_characters(alg, seed);
  standard_multiplicities(alg, chars);
  rep.main2 = verify_main2(alg, ks, bs, chars, seed);

  // scheme form of (i): A(s) A(K)+ = n_K A(s) = A(K)+ A(s) outside B
  double nk = alg.order(ks.indices);
  double atol = alg.tol() * std::max(1.0, alg.max_lambda()) * alg.rank();
  rep.sum_condition = true;
  for (int g = 0; g < alg.rank(); ++g) {
    if (bs.contains(g)) continue;
    for (int t = 0; t < alg.rank(); ++t) {
      double lhs = 0.0, rhs = 0.0;
      for (int kk : ks.indices) {
        lhs += alg.lambda(g, kk, t);
        rhs += alg.lambda(kk, g, t);
      }
      double want = (t == g) ? nk : 0.0;
      if (std::abs(lhs - want) > atol || std::abs(rhs - want) > atol)
        rep.sum_condition = false;
    }
  }
  return rep;
}

}  // namespace tablealg
