#include "tablealg/repchar.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tablealg/homquot.hpp"

namespace tablealg {

namespace {

constexpr double kClusterTol = 1e-6;  // relative eigenvalue gap
constexpr int kMaxRetries = 8;

// Coefficient vector of x* given the coefficient vector of x.
Eigen::VectorXcd star_vector(const TableAlgebra& a,
                             const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  for (int i = 0; i < v.size(); ++i) out[a.star(i)] = std::conj(v[i]);
  return out;
}

// Splits each subspace (orthonormal columns) along the eigenspaces of a
// Hermitian operator, clustering eigenvalues whose gap is below the
// relative tolerance.
void refine_by_hermitian(std::vector<Eigen::MatrixXcd>& blocks,
                         const Eigen::MatrixXcd& h, double scale) {
  std::vector<Eigen::MatrixXcd> next;
  const double gap = kClusterTol * std::max(1.0, scale);
  for (const auto& q : blocks) {
    if (q.cols() == 1) {
      next.push_back(q);
      continue;
    }
    Eigen::MatrixXcd s = q.adjoint() * h * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
    const auto& ev = es.eigenvalues();
    int begin = 0;
    for (int i = 1; i <= ev.size(); ++i) {
      if (i == ev.size() || ev[i] - ev[i - 1] > gap) {
        next.push_back(q * es.eigenvectors().middleCols(begin, i - begin));
        begin = i;
      }
    }
  }
  blocks = std::move(next);
}

// Largest deviation of q^H op q from a scalar matrix.
double scalar_defect(const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& op) {
  Eigen::MatrixXcd t = q.adjoint() * op * q;
  Complex mu = t.trace() / static_cast<double>(t.cols());
  t.diagonal().array() -= mu;
  return t.cwiseAbs().maxCoeff();
}

struct CharOrder {
  bool operator()(const Character& x, const Character& y) const {
    double dx = x.degree(), dy = y.degree();
    if (std::abs(dx - dy) > 1e-7) return dx < dy;
    for (int i = 0; i < x.values.size(); ++i) {
      double rx = x.values[i].real(), ry = y.values[i].real();
      if (std::abs(rx - ry) > 1e-7) return rx < ry;
      double ix = x.values[i].imag(), iy = y.values[i].imag();
      if (std::abs(ix - iy) > 1e-7) return ix < iy;
    }
    return false;
  }
};

}  // namespace

Representation regular_representation(const TableAlgebra& a) {
  Representation rep;
  rep.dimension = a.rank();
  rep.matrices.reserve(a.rank());
  for (int i = 0; i < a.rank(); ++i)
    rep.matrices.push_back(a.left_matrix(i).cast<Complex>());
  return rep;
}

std::vector<Eigen::VectorXd> center_basis(const TableAlgebra& a) {
  const int d = a.rank();
  // Stack the commutator conditions [L_z, L_i] = 0 into one linear system
  // in the coefficients of z and take its null space.
  std::vector<Eigen::MatrixXd> l(d);
  for (int i = 0; i < d; ++i) l[i] = a.left_matrix(i);
  Eigen::MatrixXd sys(d * d * d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Eigen::MatrixXd c = l[j] * l[i] - l[i] * l[j];
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          sys((static_cast<Eigen::Index>(i) * d + p) * d + q, j) = c(p, q);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double thresh = 1e-10 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int null_dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] <= thresh) ++null_dim;
  null_dim += static_cast<int>(d - sv.size());
  std::vector<Eigen::VectorXd> basis;
  for (int i = d - null_dim; i < d; ++i)
    basis.push_back(svd.matrixV().col(i));
  return basis;
}

namespace detail {

IsotypicDecomposition isotypic_decomposition(const TableAlgebra& a,
                                             std::uint64_t seed) {
  const int d = a.rank();
  IsotypicDecomposition dec;
  dec.w_sqrt.resize(d);
  for (int i = 0; i < d; ++i)
    dec.w_sqrt[i] = std::sqrt(a.lambda(i, a.star(i), 0));

  // In coordinates rescaled by sqrt(w) the regular representation is a
  // *-representation: the matrix of b* is the adjoint of the matrix of b.
  dec.l_tilde.resize(d);
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXd l = a.left_matrix(i);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        l(p, q) *= dec.w_sqrt[p] / dec.w_sqrt[q];
    dec.l_tilde[i] = std::move(l);
  }
  auto op_of = [&](const Eigen::VectorXcd& z) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i)
      if (z[i] != Complex(0, 0)) m += z[i] * dec.l_tilde[i];
    return m;
  };

  std::vector<Eigen::VectorXd> center = center_basis(a);
  const int c = static_cast<int>(center.size());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<Eigen::MatrixXcd> blocks{Eigen::MatrixXcd::Identity(d, d)};
    // A random central element, taken apart into its self-adjoint and
    // anti-self-adjoint pieces so each split works on a Hermitian matrix.
    auto refine_with = [&](const Eigen::VectorXcd& z) {
      Eigen::VectorXcd zs = star_vector(a, z);
      Eigen::VectorXcd sym = z + zs;
      Eigen::VectorXcd anti = Complex(0, 1) * (z - zs);
      for (const auto& part : {sym, anti}) {
        if (part.cwiseAbs().maxCoeff() < 1e-14) continue;
        Eigen::MatrixXcd h = op_of(part);
        refine_by_hermitian(blocks, h, h.cwiseAbs().maxCoeff());
      }
    };

    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(d);
    for (int j = 0; j < c; ++j) z += unif(rng) * center[j].cast<Complex>();
    refine_with(z);
    if (attempt >= kMaxRetries / 2) {
      // slower fallback: every center direction separately
      for (int j = 0; j < c; ++j) refine_with(center[j].cast<Complex>());
    }

    if (static_cast<int>(blocks.size()) != c) continue;
    bool scalars = true;
    for (const auto& q : blocks) {
      for (int j = 0; j < c && scalars; ++j) {
        Eigen::MatrixXcd zc = op_of(center[j].cast<Complex>());
        if (scalar_defect(q, zc) >
            kClusterTol * std::max(1.0, zc.cwiseAbs().maxCoeff()) * 10)
          scalars = false;
      }
      if (!scalars) break;
    }
    if (!scalars) continue;
    dec.blocks = std::move(blocks);
    return dec;
  }
  throw SplitFailure("central splitting failed after " +
                     std::to_string(kMaxRetries) + " reseeds");
}

}  // namespace detail

std::vector<Character> irr_characters(const TableAlgebra& a,
                                      std::uint64_t seed) {
  const int d = a.rank();
  detail::IsotypicDecomposition dec = detail::isotypic_decomposition(a, seed);

  std::vector<Character> chars;
  int dim_total = 0;
  for (const auto& q : dec.blocks) {
    int k = static_cast<int>(q.cols());
    double nf = std::sqrt(static_cast<double>(k));
    int n = static_cast<int>(std::lround(nf));
    if (std::abs(nf - n) > 1e-3)
      throw NonIntegerDegree("isotypic block of size " + std::to_string(k));
    dim_total += k;
    Character chi;
    chi.values.resize(d);
    for (int i = 0; i < d; ++i) {
      Complex tr = (q.adjoint() * dec.l_tilde[i].cast<Complex>() * q).trace();
      chi.values[i] = tr / static_cast<double>(n);
    }
    chars.push_back(std::move(chi));
  }
  if (dim_total != d)
    throw SplitFailure("isotypic dimensions do not add up to the rank");

  // Canonical order with the degree character first.
  Eigen::VectorXcd degv = a.degrees().cast<Complex>();
  auto is_degree_char = [&](const Character& chi) {
    return (chi.values - degv).cwiseAbs().maxCoeff() <
           1e-6 * std::max(1.0, a.degrees().maxCoeff());
  };
  std::stable_sort(chars.begin(), chars.end(), CharOrder{});
  auto it = std::find_if(chars.begin(), chars.end(), is_degree_char);
  if (it != chars.end()) std::rotate(chars.begin(), it, it + 1);
  return chars;
}

void standard_multiplicities(const TableAlgebra& a,
                             std::vector<Character>& chars) {
  const int d = a.rank();
  const int c = static_cast<int>(chars.size());
  double sq = 0.0;
  for (const auto& chi : chars) sq += chi.degree() * chi.degree();
  if (std::abs(sq - d) > 1e-6 * d)
    throw CompletenessFailure("sum of squared degrees != rank");

  Eigen::MatrixXcd v(d, c);
  for (int j = 0; j < c; ++j) v.col(j) = chars[j].values;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d);
  rhs[0] = a.order();
  Eigen::VectorXcd zeta = v.colPivHouseholderQr().solve(rhs);
  double resid = (v * zeta - rhs).norm();
  if (resid > 1e-8 * std::max(1.0, a.order()))
    throw ResidualTooLarge("zeta system residual " + std::to_string(resid));
  for (int j = 0; j < c; ++j) {
    if (std::abs(zeta[j]) < 1e-8)
      throw ZeroMultiplicity("character " + std::to_string(j));
    if (std::abs(zeta[j].imag()) > 1e-7 * std::max(1.0, std::abs(zeta[j])))
      throw ResidualTooLarge("multiplicity has an imaginary part");
    chars[j].multiplicity = zeta[j].real();
  }
}

ClosedSubset char_kernel(const TableAlgebra& a, const Character& chi) {
  std::vector<int> ker;
  double scale = std::max(1.0, chi.values.cwiseAbs().maxCoeff()) *
                 std::max(1.0, a.degrees().maxCoeff());
  for (int i = 0; i < a.rank(); ++i)
    if (std::abs(chi.values[i] - a.degree(i) * chi.values[0]) <
        1e-7 * scale)
      ker.push_back(i);
  try {
    return closed_subset(a, ker);
  } catch (const NotClosed& e) {
    throw NotClosed(std::string("character kernel is not closed: ") +
                    e.what());
  }
}

std::vector<Character> irr_of_quotient(const TableAlgebra& a,
                                       const ClosedSubset& n,
                                       const std::vector<Character>& chars) {
  std::vector<Character> out;
  for (const auto& chi : chars) {
    ClosedSubset ker = char_kernel(a, chi);
    bool contains = std::includes(ker.indices.begin(), ker.indices.end(),
                                  n.indices.begin(), n.indices.end());
    if (contains) out.push_back(chi);
  }
  // center dimension of the quotient = number of its irreducibles
  QuotientResult q = quotient(a, n);
  size_t want = center_basis(q.algebra).size();
  if (want != out.size())
    throw CountMismatch("kernel filter found " + std::to_string(out.size()) +
                        " characters, center of quotient has " +
                        std::to_string(want));
  return out;
}

Complex inner_product(const TableAlgebra& a, const Character& chi,
                      const Character& phi) {
  if (!a.is_standard())
    throw NotStandard("inner product requires a standard table algebra");
  Complex sum(0, 0);
  for (int i = 0; i < a.rank(); ++i)
    sum += chi.values[i] * std::conj(phi.values[i]) /
           a.lambda(i, a.star(i), 0);
  return sum / a.order();
}

std::vector<Representation> irr_representations(const TableAlgebra& a,
                                                std::uint64_t seed,
                                                int cap) {
  if (a.rank() > cap) throw RankCapExceeded(a.rank(), cap);
  const int d = a.rank();
  detail::IsotypicDecomposition dec = detail::isotypic_decomposition(a, seed);
  std::vector<Character> chars = irr_characters(a, seed);

  // transformed right-multiplication operator for the element with
  // coefficient vector v
  auto right_op = [&](const Eigen::VectorXcd& v) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      if (v[i] == Complex(0, 0)) continue;
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          m(p, q) += v[i] * a.lambda(q, i, p) * dec.w_sqrt[p] / dec.w_sqrt[q];
    }
    return m;
  };

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  std::vector<Representation> reps;
  for (const auto& q : dec.blocks) {
    int k = static_cast<int>(q.cols());
    int n = static_cast<int>(std::lround(std::sqrt(double(k))));
    Eigen::MatrixXcd v;
    if (n == 1) {
      v = q;
    } else {
      // Split the isotypic block into minimal left ideals along the
      // eigenspaces of right multiplications (they commute with the left
      // action); a generic element splits it into n pieces of size n.
      bool done = false;
      for (int attempt = 0; attempt < kMaxRetries && !done; ++attempt) {
        std::vector<Eigen::MatrixXcd> sub{q};
        Eigen::VectorXcd r(d);
        for (int i = 0; i < d; ++i) r[i] = unif(rng);
        Eigen::VectorXcd rs = star_vector(a, r);
        for (const Eigen::VectorXcd& part :
             {Eigen::VectorXcd(r + rs),
              Eigen::VectorXcd(Complex(0, 1) * (r - rs))}) {
          Eigen::MatrixXcd h = right_op(part);
          refine_by_hermitian(sub, h, h.cwiseAbs().maxCoeff());
        }
        if (static_cast<int>(sub.size()) == n) {
          bool all_n = true;
          for (const auto& s : sub) all_n &= (s.cols() == n);
          if (all_n) {
            v = sub.front();
            done = true;
          }
        }
      }
      if (!done)
        throw SplitFailure("could not split an isotypic block of size " +
                           std::to_string(k));
    }

    Representation rep;
    rep.dimension = static_cast<int>(v.cols());
    for (int i = 0; i < d; ++i)
      rep.matrices.push_back(v.adjoint() * dec.l_tilde[i].cast<Complex>() *
                             v);
    reps.push_back(std::move(rep));
  }

  // Order representations to match the canonical character order via
  // their traces, and verify multiplicativity and the trace identity.
  std::vector<Representation> ordered(chars.size());
  std::vector<bool> used(reps.size(), false);
  for (size_t ci = 0; ci < chars.size(); ++ci) {
    double best = 1e300;
    size_t pick = 0;
    for (size_t ri = 0; ri < reps.size(); ++ri) {
      if (used[ri]) continue;
      double dist = 0.0;
      for (int i = 0; i < d; ++i)
        dist = std::max(dist, std::abs(reps[ri].matrices[i].trace() -
                                       chars[ci].values[i]));
      if (dist < best) {
        best = dist;
        pick = ri;
      }
    }
    if (best > 1e-6 * std::max(1.0, a.max_lambda()))
      throw SplitFailure("representation trace does not match any character");
    used[pick] = true;
    ordered[ci] = std::move(reps[pick]);
  }

  const double atol = 1e-7 * std::max(1.0, a.max_lambda()) * d;
  for (const auto& rep : ordered) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Eigen::MatrixXcd lhs = rep.matrices[i] * rep.matrices[j];
        Eigen::MatrixXcd rhs =
            Eigen::MatrixXcd::Zero(rep.dimension, rep.dimension);
        for (int k = 0; k < d; ++k)
          if (a.lambda(i, j, k) != 0.0) rhs += a.lambda(i, j, k) * rep.matrices[k];
        if ((lhs - rhs).cwiseAbs().maxCoeff() > atol)
          throw SplitFailure("extracted representation is not multiplicative");
      }
  }
  return ordered;
}

}  // namespace tablealg
