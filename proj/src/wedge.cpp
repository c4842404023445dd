#include "tablealg/wedge.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tablealg {

namespace {

// Expansion of o(K) b_h over the D part of the wedge basis, via the
// identification d K+ = (|d|/|h|) h-bar with d the smallest-index
// preimage of h. Every other preimage must give the same vector.
Eigen::VectorXd identification_vector(const TableAlgebra& c_d,
                                      const AlgebraHom& phi,
                                      const std::vector<int>& kernel,
                                      int h, double atol) {
  const int n = c_d.rank();
  Eigen::VectorXd out;
  bool have = false;
  for (int d = 0; d < n; ++d) {
    if (phi.image_index[d] != h) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int k : kernel)
      for (int z = 0; z < n; ++z) v[z] += c_d.lambda(d, k, z);
    v *= phi.target.degree(h) / c_d.degree(d);
    if (!have) {
      out = std::move(v);
      have = true;
    } else if ((v - out).lpNorm<Eigen::Infinity>() > atol) {
      throw IdentificationInconsistent(
          "preimages of basis element " + std::to_string(h) +
          " expand d K+ differently");
    }
  }
  if (!have)
    throw ImageNotClosed("no preimage for image element " +
                         std::to_string(h));
  return out;
}

}  // namespace

WedgeProduct wedge_product(const TableAlgebra& c_d, const TableAlgebra& a_b,
                           const AlgebraHom& phi) {
  HomCheck hc = validate_hom(phi);
  if (!hc.ok)
    throw InvalidHom("phi is not a table algebra homomorphism (witness " +
                     std::to_string(hc.witness_i) + "," +
                     std::to_string(hc.witness_j) + "): " + hc.detail);

  // Image support must be a closed subset of B.
  std::vector<int> image(phi.image_index.begin(), phi.image_index.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  ClosedSubset n_sub;
  try {
    n_sub = closed_subset(a_b, image);
  } catch (const NotClosed& e) {
    throw ImageNotClosed(e.what());
  }
  ClosedSubset k_sub = hom_kernel(phi);

  const int nd = c_d.rank();
  const int mb = a_b.rank();
  const int nn = static_cast<int>(n_sub.indices.size());
  const int rank = nd + mb - nn;
  const double ok = c_d.order(k_sub.indices);

  WedgeProduct w;
  w.factor_d = c_d;
  w.factor_b = a_b;
  w.phi = phi;
  w.k = k_sub;
  w.n = n_sub;
  w.order_k = ok;

  // Basis: all of D first, then b-bar for b outside N in B's order.
  w.result_of_d.resize(nd);
  w.result_of_b.assign(mb, -1);
  for (int i = 0; i < nd; ++i) {
    w.result_of_d[i] = i;
    w.basis_origin.push_back({BasisOrigin::FromD, i});
  }
  {
    int next = nd;
    for (int b = 0; b < mb; ++b) {
      if (n_sub.contains(b)) continue;
      w.result_of_b[b] = next++;
      w.basis_origin.push_back({BasisOrigin::FromBbar, b});
    }
  }

  const double atol = c_d.tol() * std::max(1.0, c_d.max_lambda()) *
                      std::max(1.0, a_b.degrees().maxCoeff()) * nd;
  // eta[h] = expansion of o(K) b_h over D, for h in N
  std::vector<Eigen::VectorXd> eta(mb);
  for (int h : n_sub.indices)
    eta[h] = identification_vector(c_d, phi, k_sub.indices, h, atol);

  std::vector<double> lam(static_cast<size_t>(rank) * rank * rank, 0.0);
  auto at = [&](int i, int j, int k) -> double& {
    return lam[(static_cast<size_t>(i) * rank + j) * rank + k];
  };

  // Rule (i): products inside D use D's constants.
  for (int i = 0; i < nd; ++i)
    for (int j = 0; j < nd; ++j)
      for (int z = 0; z < nd; ++z) at(i, j, z) = c_d.lambda(i, j, z);

  // Rule (ii): b-bar_i b-bar_j = sum over t of o(K) lambda_{ijt} b-bar_t,
  // with the t in N re-expressed over D via the identification.
  for (int bi = 0; bi < mb; ++bi) {
    if (w.result_of_b[bi] < 0) continue;
    for (int bj = 0; bj < mb; ++bj) {
      if (w.result_of_b[bj] < 0) continue;
      int ri = w.result_of_b[bi], rj = w.result_of_b[bj];
      for (int t = 0; t < mb; ++t) {
        double c = ok * a_b.lambda(bi, bj, t);
        if (c == 0.0) continue;
        if (w.result_of_b[t] >= 0) {
          at(ri, rj, w.result_of_b[t]) += c;
        } else {
          for (int z = 0; z < nd; ++z) at(ri, rj, z) += c * eta[t][z];
        }
      }
    }
  }

  // Rule (iii): d b-bar = (|d|/|h|) sum_t lambda_{h b t} b-bar_t (and the
  // mirrored product); for b outside N the support stays outside N.
  for (int di = 0; di < nd; ++di) {
    int h = phi.image_index[di];
    double c = phi.image_scalar[di];
    for (int bj = 0; bj < mb; ++bj) {
      if (w.result_of_b[bj] < 0) continue;
      int rj = w.result_of_b[bj];
      for (int t = 0; t < mb; ++t) {
        double left = c * a_b.lambda(h, bj, t);
        double right = c * a_b.lambda(bj, h, t);
        if (left == 0.0 && right == 0.0) continue;
        if (w.result_of_b[t] < 0) {
          if (std::abs(left) > atol || std::abs(right) > atol)
            throw IdentificationInconsistent(
                "mixed product leaks into the image span");
          continue;
        }
        at(di, rj, w.result_of_b[t]) += left;
        at(rj, di, w.result_of_b[t]) += right;
      }
    }
  }

  std::vector<std::string> labels(rank);
  std::vector<int> star(rank);
  std::set<std::string> used;
  for (int r = 0; r < rank; ++r) {
    const BasisOrigin& o = w.basis_origin[r];
    std::string base = (o.kind == BasisOrigin::FromD)
                           ? c_d.labels()[o.index]
                           : a_b.labels()[o.index] + "~";
    while (used.count(base)) base += "'";
    used.insert(base);
    labels[r] = base;
    star[r] = (o.kind == BasisOrigin::FromD)
                  ? w.result_of_d[c_d.star(o.index)]
                  : w.result_of_b[a_b.star(o.index)];
  }

  w.algebra = TableAlgebra::build(rank, std::move(labels), std::move(lam),
                                  std::move(star),
                                  std::max(c_d.tol(), a_b.tol()));
  return w;
}

WedgeProduct wreath_product(const TableAlgebra& c_d,
                            const TableAlgebra& a_b) {
  return wedge_product(c_d, a_b, trivial_hom(c_d, a_b));
}

std::optional<std::string> try_reconstruct_wedge(const TableAlgebra& a_b,
                                                 const ClosedSubset& k,
                                                 const ClosedSubset& d) {
  try {
    TableAlgebra span_d = span_subalgebra(a_b, d);
    // positions of K inside D
    std::vector<int> kpos;
    for (size_t p = 0; p < d.indices.size(); ++p)
      if (k.contains(d.indices[p])) kpos.push_back(static_cast<int>(p));
    ClosedSubset k_in_d = closed_subset(span_d, kpos);

    QuotientResult q = quotient(a_b, k);
    AlgebraHom pi = canonical_epi(span_d, k_in_d);

    // Re-target pi into the big quotient: the coset of d inside D maps to
    // the coset of d inside B.
    AlgebraHom phi;
    phi.source = span_d;
    phi.target = q.algebra;
    phi.image_scalar = pi.image_scalar;
    phi.image_index.resize(span_d.rank());
    for (int p = 0; p < span_d.rank(); ++p)
      phi.image_index[p] = q.cosets.block_of[d.indices[p]];

    WedgeProduct w = wedge_product(span_d, q.algebra, phi);
    if (w.algebra.rank() != a_b.rank())
      return "reconstructed rank " + std::to_string(w.algebra.rank()) +
             " != " + std::to_string(a_b.rank());

    // Relabel result indices back into A: D part by inclusion, b-bar part
    // by its (necessarily singleton) K-double-coset.
    std::vector<int> to_a(w.algebra.rank(), -1);
    for (int p = 0; p < span_d.rank(); ++p)
      to_a[w.result_of_d[p]] = d.indices[p];
    for (int qb = 0; qb < q.algebra.rank(); ++qb) {
      if (w.result_of_b[qb] < 0) continue;
      const auto& block = q.cosets.blocks[qb];
      if (block.size() != 1)
        return "coset of block " + std::to_string(qb) +
               " is not a singleton outside D";
      to_a[w.result_of_b[qb]] = block.front();
    }
    std::vector<int> seen(a_b.rank(), 0);
    for (int r : to_a)
      if (r < 0 || seen[r]++) return "relabeling is not a bijection";

    double atol = a_b.tol() * std::max(1.0, a_b.max_lambda()) * 100.0;
    for (int i = 0; i < a_b.rank(); ++i)
      for (int j = 0; j < a_b.rank(); ++j)
        for (int t = 0; t < a_b.rank(); ++t) {
          double got = w.algebra.lambda(i, j, t);
          double want = a_b.lambda(to_a[i], to_a[j], to_a[t]);
          if (std::abs(got - want) > atol)
            return "constant mismatch at (" + std::to_string(i) + "," +
                   std::to_string(j) + "," + std::to_string(t) + "): " +
                   std::to_string(got) + " vs " + std::to_string(want);
        }
    return std::nullopt;
  } catch (const Error& e) {
    return std::string(e.what());
  }
}

std::vector<std::pair<ClosedSubset, ClosedSubset>> detect_wedge(
    const TableAlgebra& a_b, int cap) {
  std::vector<std::pair<ClosedSubset, ClosedSubset>> out;
  std::vector<ClosedSubset> subs = all_closed_subsets(a_b, cap);
  ClosedSubset whole;
  for (int i = 0; i < a_b.rank(); ++i) whole.indices.push_back(i);

  for (const ClosedSubset& d : subs) {
    if (d.indices.size() == static_cast<size_t>(a_b.rank())) continue;
    std::vector<int> outside;
    for (int i = 0; i < a_b.rank(); ++i)
      if (!d.contains(i)) outside.push_back(i);
    ClosedSubset stab = stabilizer(a_b, whole, outside);
    for (const ClosedSubset& k : subs) {
      if (k.indices.size() <= 1) continue;  // K = {1} is always a wedge
      if (!std::includes(d.indices.begin(), d.indices.end(),
                         k.indices.begin(), k.indices.end()))
        continue;
      if (!is_normal(a_b, k)) continue;
      if (!std::includes(stab.indices.begin(), stab.indices.end(),
                         k.indices.begin(), k.indices.end()))
        continue;
      if (auto err = try_reconstruct_wedge(a_b, k, d))
        throw ReconstructionMismatch(*err);
      out.emplace_back(k, d);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.indices != y.first.indices)
      return x.first.indices < y.first.indices;
    return x.second.indices < y.second.indices;
  });
  return out;
}

Representation lift_representation(const WedgeProduct& w,
                                   const Representation& rep,
                                   LiftFactor which) {
  const int rank = w.algebra.rank();
  Representation out;
  out.dimension = rep.dimension;
  out.matrices.resize(rank);
  if (which == LiftFactor::FromBFactor) {
    for (int r = 0; r < rank; ++r) {
      const BasisOrigin& o = w.basis_origin[r];
      if (o.kind == BasisOrigin::FromBbar) {
        out.matrices[r] = w.order_k * rep.matrices[o.index];
      } else {
        int h = w.phi.image_index[o.index];
        out.matrices[r] = w.phi.image_scalar[o.index] * rep.matrices[h];
      }
    }
  } else {
    // K must act nontrivially somewhere.
    bool nontrivial = false;
    for (int kk : w.k.indices) {
      Eigen::MatrixXcd diff =
          rep.matrices[kk] -
          w.factor_d.degree(kk) *
              Eigen::MatrixXcd::Identity(rep.dimension, rep.dimension);
      if (diff.cwiseAbs().maxCoeff() > 1e-9) nontrivial = true;
    }
    if (!nontrivial)
      throw KernelContainsK(
          "representation restricts trivially to the kernel");
    for (int r = 0; r < rank; ++r) {
      const BasisOrigin& o = w.basis_origin[r];
      out.matrices[r] =
          (o.kind == BasisOrigin::FromD)
              ? rep.matrices[o.index]
              : Eigen::MatrixXcd::Zero(rep.dimension, rep.dimension);
    }
  }

  // the lift must be multiplicative over the wedge constants
  const TableAlgebra& alg = w.algebra;
  const double atol = 1e-7 * std::max(1.0, alg.max_lambda()) *
                      std::max(1.0, w.order_k) * rank;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Eigen::MatrixXcd lhs = out.matrices[i] * out.matrices[j];
      Eigen::MatrixXcd rhs =
          Eigen::MatrixXcd::Zero(out.dimension, out.dimension);
      for (int k = 0; k < rank; ++k)
        if (alg.lambda(i, j, k) != 0.0)
          rhs += alg.lambda(i, j, k) * out.matrices[k];
      if ((lhs - rhs).cwiseAbs().maxCoeff() > atol)
        throw InvalidHom("lifted representation is not multiplicative at (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return out;
}

Character lift_character(const WedgeProduct& w, const Character& chi,
                         LiftFactor which) {
  const int rank = w.algebra.rank();
  Character out;
  out.values.resize(rank);
  if (which == LiftFactor::FromBFactor) {
    for (int r = 0; r < rank; ++r) {
      const BasisOrigin& o = w.basis_origin[r];
      if (o.kind == BasisOrigin::FromBbar)
        out.values[r] = w.order_k * chi.values[o.index];
      else
        out.values[r] =
            w.phi.image_scalar[o.index] * chi.values[w.phi.image_index[o.index]];
    }
  } else {
    for (int r = 0; r < rank; ++r) {
      const BasisOrigin& o = w.basis_origin[r];
      out.values[r] = (o.kind == BasisOrigin::FromD) ? chi.values[o.index]
                                                     : Complex(0, 0);
    }
  }
  return out;
}

std::vector<Character> lift_all_characters(
    const WedgeProduct& w, const std::vector<Character>& irr_b,
    const std::vector<Character>& irr_d) {
  std::vector<Character> out;
  for (const Character& chi : irr_b)
    out.push_back(lift_character(w, chi, LiftFactor::FromBFactor));
  for (const Character& psi : irr_d) {
    // keep psi exactly when K is not inside its kernel
    ClosedSubset ker = char_kernel(w.factor_d, psi);
    bool k_in_ker = std::includes(ker.indices.begin(), ker.indices.end(),
                                  w.k.indices.begin(), w.k.indices.end());
    if (k_in_ker) continue;
    out.push_back(lift_character(w, psi, LiftFactor::FromDFactor));
  }
  double sq = 0.0;
  for (const Character& chi : out) sq += chi.degree() * chi.degree();
  if (std::abs(sq - w.algebra.rank()) > 1e-6 * w.algebra.rank())
    throw CompletenessFailure(
        "lifted characters have squared-degree sum " + std::to_string(sq) +
        ", rank is " + std::to_string(w.algebra.rank()));
  return out;
}

Main2Report verify_main2(const TableAlgebra& a_b, const ClosedSubset& k,
                         const ClosedSubset& d,
                         const std::vector<Character>& chars,
                         std::uint64_t seed) {
  Main2Report rep;
  TableAlgebra span_d = span_subalgebra(a_b, d);
  {
    std::vector<int> kpos;
    for (size_t p = 0; p < d.indices.size(); ++p)
      if (k.contains(d.indices[p])) kpos.push_back(static_cast<int>(p));
    ClosedSubset k_in_d = closed_subset(span_d, kpos);
    if (!is_normal(span_d, k_in_d))
      throw NotNormal("K is not normal in D");
  }

  // (i) K normal in B and K inside St_B(B \ D)
  {
    std::vector<int> outside;
    for (int i = 0; i < a_b.rank(); ++i)
      if (!d.contains(i)) outside.push_back(i);
    ClosedSubset whole{std::vector<int>(a_b.rank())};
    for (int i = 0; i < a_b.rank(); ++i) whole.indices[i] = i;
    bool stab_ok = true;
    try {
      ClosedSubset stab = stabilizer(a_b, whole, outside);
      stab_ok = std::includes(stab.indices.begin(), stab.indices.end(),
                              k.indices.begin(), k.indices.end());
    } catch (const NotClosed&) {
      stab_ok = false;
    }
    rep.normal_and_stabilized = is_normal(a_b, k) && stab_ok;
    if (!rep.normal_and_stabilized && rep.witness.empty())
      rep.witness = "(i) normality or stabilizer condition fails";
  }

  // (ii) reconstruction
  {
    auto err = try_reconstruct_wedge(a_b, k, d);
    rep.reconstruction = !err.has_value();
    if (err && rep.witness.empty()) rep.witness = "(ii) " + *err;
  }

  // characters outside Irr(B//K)
  std::vector<int> outside_chars;
  for (size_t c = 0; c < chars.size(); ++c) {
    ClosedSubset ker = char_kernel(a_b, chars[c]);
    bool k_in_ker = std::includes(ker.indices.begin(), ker.indices.end(),
                                  k.indices.begin(), k.indices.end());
    if (!k_in_ker) outside_chars.push_back(static_cast<int>(c));
  }

  std::vector<Character> irr_d = irr_characters(span_d, seed);
  standard_multiplicities(span_d, irr_d);

  const double match_tol = 1e-7 * std::max(1.0, a_b.degrees().maxCoeff()) *
                           std::max(1.0, a_b.order());
  bool iii = true, iv = true;
  for (int c : outside_chars) {
    const Character& chi = chars[c];
    // restriction to D
    Character chi_d;
    chi_d.values.resize(span_d.rank());
    for (int p = 0; p < span_d.rank(); ++p)
      chi_d.values[p] = chi.values[d.indices[p]];
    // nearest irreducible of D
    double best = 1e300;
    int pick = -1;
    for (size_t t = 0; t < irr_d.size(); ++t) {
      double dist = (chi_d.values - irr_d[t].values).cwiseAbs().maxCoeff();
      if (dist < best) {
        best = dist;
        pick = static_cast<int>(t);
      }
    }
    bool restr_irreducible = best < match_tol;
    if (restr_irreducible && span_d.is_standard()) {
      // second certificate: [chi_D, chi_D] = psi(1) / zeta_psi
      Complex ip = inner_product(span_d, chi_d, chi_d);
      double want = irr_d[pick].degree() / *irr_d[pick].multiplicity;
      if (std::abs(ip - Complex(want, 0)) > match_tol)
        restr_irreducible = false;
    }
    bool vanishes = true;
    for (int i = 0; i < a_b.rank(); ++i)
      if (!d.contains(i) && std::abs(chi.values[i]) > match_tol)
        vanishes = false;
    if (!(restr_irreducible && vanishes)) {
      iii = false;
      if (rep.witness.empty())
        rep.witness = "(iii) character " + std::to_string(c) +
                      (vanishes ? " does not restrict irreducibly"
                                : " does not vanish outside D");
    }
    if (restr_irreducible && chi.multiplicity &&
        irr_d[pick].multiplicity) {
      double zchi = *chi.multiplicity;
      double zpsi = *irr_d[pick].multiplicity;
      double want = a_b.order() / span_d.order() * zpsi;
      rep.multiplicity_pairs.push_back({double(c), zchi, zpsi});
      if (std::abs(zchi - want) > match_tol) {
        iv = false;
        if (rep.witness.empty())
          rep.witness = "(iv) zeta ratio fails for character " +
                        std::to_string(c);
      }
    } else {
      iv = false;
      if (rep.witness.empty())
        rep.witness = "(iv) no matching irreducible restriction for "
                      "character " +
                      std::to_string(c);
    }
  }
  rep.restriction_and_vanishing = iii;
  rep.multiplicity_ratio = iv;
  rep.equivalent =
      (rep.normal_and_stabilized == rep.reconstruction) &&
      (rep.reconstruction == rep.restriction_and_vanishing) &&
      (rep.restriction_and_vanishing == rep.multiplicity_ratio);
  return rep;
}

}  // namespace tablealg
