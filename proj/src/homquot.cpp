#include "tablealg/homquot.hpp"

#include <algorithm>
#include <cmath>

namespace tablealg {

DoubleCosetPartition double_cosets(const TableAlgebra& a,
                                   const ClosedSubset& n) {
  DoubleCosetPartition part;
  part.n = n;
  part.block_of.assign(a.rank(), -1);
  for (int i = 0; i < a.rank(); ++i) {
    if (part.block_of[i] >= 0) continue;
    std::vector<int> block =
        complex_product(a, n.indices, complex_product(a, {i}, n.indices));
    int id = static_cast<int>(part.blocks.size());
    for (int x : block) part.block_of[x] = id;
    part.representatives.push_back(block.front());
    part.blocks.push_back(std::move(block));
  }
  return part;
}

QuotientResult quotient(const TableAlgebra& a, const ClosedSubset& n) {
  DoubleCosetPartition part = double_cosets(a, n);
  const int q = static_cast<int>(part.blocks.size());
  const double on = a.order(n.indices);
  const double scale = std::max(1.0, a.max_lambda()) * a.rank() * a.rank();

  std::vector<double> gamma(static_cast<size_t>(q) * q * q, 0.0);
  for (int bi = 0; bi < q; ++bi)
    for (int bj = 0; bj < q; ++bj) {
      // sum over the two source cosets, then read the constant off any
      // element t of the target coset; all choices of t must agree.
      std::vector<double> coeff(a.rank(), 0.0);
      for (int r : part.blocks[bi])
        for (int s : part.blocks[bj])
          for (int t = 0; t < a.rank(); ++t) coeff[t] += a.lambda(r, s, t);
      for (int bk = 0; bk < q; ++bk) {
        double first = coeff[part.blocks[bk].front()] / on;
        for (int t : part.blocks[bk]) {
          double v = coeff[t] / on;
          if (std::abs(v - first) > a.tol() * scale)
            throw GammaInconsistent(
                "gamma(" + std::to_string(bi) + "," + std::to_string(bj) +
                "," + std::to_string(bk) + ") differs across coset elements");
        }
        double avg = 0.0;
        for (int t : part.blocks[bk]) avg += coeff[t] / on;
        avg /= static_cast<double>(part.blocks[bk].size());
        gamma[(static_cast<size_t>(bi) * q + bj) * q + bk] = avg;
      }
    }

  std::vector<std::string> labels(q);
  std::vector<int> star(q);
  for (int b = 0; b < q; ++b) {
    labels[b] = a.labels()[part.representatives[b]] + "//N";
    star[b] = part.block_of[a.star(part.representatives[b])];
  }
  TableAlgebra qa =
      TableAlgebra::build(q, std::move(labels), std::move(gamma),
                          std::move(star), a.tol());
  return {std::move(qa), std::move(part)};
}

HomCheck validate_hom(const AlgebraHom& phi) {
  const TableAlgebra& src = phi.source;
  const TableAlgebra& tgt = phi.target;
  HomCheck res;
  if (static_cast<int>(phi.image_index.size()) != src.rank() ||
      static_cast<int>(phi.image_scalar.size()) != src.rank()) {
    res.ok = false;
    res.detail = "image arrays have wrong length";
    return res;
  }
  if (phi.image_index[0] != 0 || std::abs(phi.image_scalar[0] - 1.0) >
                                     src.tol() * 10) {
    res.ok = false;
    res.witness_i = 0;
    res.detail = "phi(1) != 1";
    return res;
  }
  for (int i = 0; i < src.rank(); ++i) {
    if (phi.image_index[i] < 0 || phi.image_index[i] >= tgt.rank() ||
        !(phi.image_scalar[i] > 0)) {
      res.ok = false;
      res.witness_i = i;
      res.detail = "image is not a positive multiple of a basis element";
      return res;
    }
    if (phi.image_index[src.star(i)] != tgt.star(phi.image_index[i]) ||
        std::abs(phi.image_scalar[src.star(i)] - phi.image_scalar[i]) >
            src.tol() * std::max(1.0, phi.image_scalar[i])) {
      res.ok = false;
      res.witness_i = i;
      res.detail = "phi does not commute with star";
      return res;
    }
  }
  const double scale =
      std::max(1.0, src.max_lambda()) *
      std::max(1.0, tgt.max_lambda());
  double maxsc = 1.0;
  for (double c : phi.image_scalar) maxsc = std::max(maxsc, c * c);
  const double atol = src.tol() * scale * maxsc * src.rank();
  for (int i = 0; i < src.rank(); ++i)
    for (int j = 0; j < src.rank(); ++j) {
      // lhs = phi(b_i) phi(b_j), rhs = phi(b_i b_j), both over the target.
      Eigen::VectorXd lhs = Eigen::VectorXd::Zero(tgt.rank());
      int hi = phi.image_index[i], hj = phi.image_index[j];
      for (int m = 0; m < tgt.rank(); ++m)
        lhs[m] = phi.image_scalar[i] * phi.image_scalar[j] *
                 tgt.lambda(hi, hj, m);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(tgt.rank());
      for (int k = 0; k < src.rank(); ++k)
        rhs[phi.image_index[k]] += src.lambda(i, j, k) * phi.image_scalar[k];
      if ((lhs - rhs).lpNorm<Eigen::Infinity>() > atol) {
        res.ok = false;
        res.witness_i = i;
        res.witness_j = j;
        res.detail = "phi(b_i)phi(b_j) != phi(b_i b_j)";
        return res;
      }
    }
  return res;
}

ClosedSubset hom_kernel(const AlgebraHom& phi) {
  std::vector<int> ker;
  for (int i = 0; i < phi.source.rank(); ++i)
    if (phi.image_index[i] == 0) ker.push_back(i);
  ClosedSubset k;
  try {
    k = closed_subset(phi.source, ker);
  } catch (const NotClosed& e) {
    throw KernelNotNormal(std::string("kernel is not closed: ") + e.what());
  }
  if (!is_normal(phi.source, k))
    throw KernelNotNormal("kernel is not normal in the source basis");
  return k;
}

AlgebraHom trivial_hom(const TableAlgebra& source,
                       const TableAlgebra& target) {
  AlgebraHom phi;
  phi.source = source;
  phi.target = target;
  phi.image_index.assign(source.rank(), 0);
  phi.image_scalar.resize(source.rank());
  for (int i = 0; i < source.rank(); ++i)
    phi.image_scalar[i] = source.degree(i);
  return phi;
}

AlgebraHom canonical_epi(const TableAlgebra& a, const ClosedSubset& n) {
  if (!is_normal(a, n))
    throw NotNormal("canonical epimorphism requires a normal closed subset");
  QuotientResult q = quotient(a, n);
  AlgebraHom phi;
  phi.image_index.resize(a.rank());
  phi.image_scalar.resize(a.rank());
  for (int i = 0; i < a.rank(); ++i) {
    int block = q.cosets.block_of[i];
    phi.image_index[i] = block;
    phi.image_scalar[i] = a.degree(i) / q.algebra.degree(block);
  }
  phi.source = a;
  phi.target = std::move(q.algebra);
  return phi;
}

bool first_isomorphism_check(const AlgebraHom& phi) {
  const TableAlgebra& src = phi.source;
  const TableAlgebra& tgt = phi.target;
  ClosedSubset ker = hom_kernel(phi);
  QuotientResult q = quotient(src, ker);
  const int nq = q.algebra.rank();

  // The induced map sends b//ker to s_p * d_{h_p}; it must be well
  // defined on blocks and bijective onto the image basis.
  std::vector<int> h(nq, -1);
  std::vector<double> s(nq, 0.0);
  double on = src.order(ker.indices);
  for (int p = 0; p < nq; ++p) {
    for (int x : q.cosets.blocks[p]) {
      if (h[p] < 0)
        h[p] = phi.image_index[x];
      else if (h[p] != phi.image_index[x])
        return false;  // not constant on a double coset
      s[p] += phi.image_scalar[x];
    }
    s[p] /= on;
  }
  std::vector<int> seen(tgt.rank(), 0);
  for (int p = 0; p < nq; ++p) {
    if (seen[h[p]]++) return false;  // not injective on blocks
  }

  const double atol = src.tol() * std::max(1.0, src.max_lambda()) *
                      std::max(1.0, tgt.max_lambda()) * 100.0;
  for (int p = 0; p < nq; ++p)
    for (int r = 0; r < nq; ++r) {
      // image coefficients must vanish outside the image basis
      for (int m = 0; m < tgt.rank(); ++m) {
        double mu = tgt.lambda(h[p], h[r], m);
        if (!seen[m] && mu > atol) return false;
      }
      for (int t = 0; t < nq; ++t) {
        double gamma = q.algebra.lambda(p, r, t);
        double mu = tgt.lambda(h[p], h[r], h[t]);
        if (std::abs(gamma - s[p] * s[r] / s[t] * mu) > atol) return false;
      }
    }
  return true;
}

TableAlgebra span_subalgebra(const TableAlgebra& a, const ClosedSubset& n) {
  const int m = static_cast<int>(n.indices.size());
  std::vector<int> pos(a.rank(), -1);
  for (int p = 0; p < m; ++p) pos[n.indices[p]] = p;

  std::vector<double> lam(static_cast<size_t>(m) * m * m, 0.0);
  const double atol = a.tol() * std::max(1.0, a.max_lambda());
  for (int p = 0; p < m; ++p)
    for (int r = 0; r < m; ++r) {
      for (int k = 0; k < a.rank(); ++k) {
        double v = a.lambda(n.indices[p], n.indices[r], k);
        if (pos[k] >= 0)
          lam[(static_cast<size_t>(p) * m + r) * m + pos[k]] = v;
        else if (v > atol)
          throw NotClosed("product leaves the subset at index " +
                          std::to_string(k));
      }
    }
  std::vector<std::string> labels(m);
  std::vector<int> star(m);
  for (int p = 0; p < m; ++p) {
    labels[p] = a.labels()[n.indices[p]];
    star[p] = pos[a.star(n.indices[p])];
  }
  return TableAlgebra::build(m, std::move(labels), std::move(lam),
                             std::move(star), a.tol());
}

}  // namespace tablealg
