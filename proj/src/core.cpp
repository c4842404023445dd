#include "tablealg/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tablealg {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

TableAlgebra TableAlgebra::build(int rank, std::vector<std::string> labels,
                                 std::vector<double> lambda,
                                 std::vector<int> star, double tol) {
  if (rank <= 0) throw FormatError("rank must be positive");
  if (static_cast<int>(labels.size()) != rank)
    throw FormatError("expected " + std::to_string(rank) + " labels");
  if (lambda.size() != static_cast<size_t>(rank) * rank * rank)
    throw FormatError("lambda tensor has wrong size");
  if (static_cast<int>(star.size()) != rank)
    throw FormatError("star permutation has wrong size");
  {
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (static_cast<int>(distinct.size()) != rank)
      throw FormatError("labels must be distinct");
  }
  if (star[0] != 0)
    throw AxiomViolation("star-fixes-identity", {0}, "star(0) != 0");
  for (int i = 0; i < rank; ++i) {
    if (star[i] < 0 || star[i] >= rank || star[star[i]] != i)
      throw AxiomViolation("star-involution", {i},
                           "star is not an involutory permutation");
  }

  TableAlgebra a;
  a.rank_ = rank;
  a.labels_ = std::move(labels);
  a.star_ = std::move(star);
  a.tol_ = tol;

  // Axiom I: nonnegative constants; clamp tiny negatives from upstream
  // floating-point arithmetic.
  for (size_t idx = 0; idx < lambda.size(); ++idx) {
    double v = lambda[idx];
    if (v < 0.0) {
      if (v <= -tol) {
        int k = static_cast<int>(idx % rank);
        int j = static_cast<int>((idx / rank) % rank);
        int i = static_cast<int>(idx / (static_cast<size_t>(rank) * rank));
        throw NegativeConstant(i, j, k, v);
      }
      lambda[idx] = 0.0;
    }
  }
  a.lambda_ = std::move(lambda);
  a.max_lambda_ = 0.0;
  for (double v : a.lambda_) a.max_lambda_ = std::max(a.max_lambda_, v);
  a.supp_threshold_ = tol * std::max(1.0, a.max_lambda_);

  // structural axioms first; the degree map assumes they hold
  a.validate();
  a.compute_degrees();
  a.validate_degrees();
  return a;
}

double TableAlgebra::order(const std::vector<int>& subset) const {
  double o = 0.0;
  for (int i : subset) o += degrees_[i];
  return o;
}

Eigen::MatrixXd TableAlgebra::left_matrix(int i) const {
  Eigen::MatrixXd m(rank_, rank_);
  for (int k = 0; k < rank_; ++k)
    for (int j = 0; j < rank_; ++j) m(k, j) = lambda(i, j, k);
  return m;
}

Eigen::MatrixXd TableAlgebra::left_matrix(const Eigen::VectorXd& coeffs) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rank_, rank_);
  for (int i = 0; i < rank_; ++i) {
    if (coeffs[i] == 0.0) continue;
    for (int k = 0; k < rank_; ++k)
      for (int j = 0; j < rank_; ++j) m(k, j) += coeffs[i] * lambda(i, j, k);
  }
  return m;
}

Eigen::MatrixXd TableAlgebra::right_matrix(
    const Eigen::VectorXd& coeffs) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rank_, rank_);
  for (int i = 0; i < rank_; ++i) {
    if (coeffs[i] == 0.0) continue;
    for (int k = 0; k < rank_; ++k)
      for (int j = 0; j < rank_; ++j) m(k, j) += coeffs[i] * lambda(j, i, k);
  }
  return m;
}

std::vector<int> TableAlgebra::product_support(int i, int j) const {
  std::vector<int> supp;
  for (int k = 0; k < rank_; ++k)
    if (lambda(i, j, k) > supp_threshold_) supp.push_back(k);
  return supp;
}

bool TableAlgebra::is_standard() const {
  double scale = std::max(1.0, max_lambda_);
  for (int i = 0; i < rank_; ++i)
    if (std::abs(lambda(i, star_[i], 0) - degrees_[i]) > tol_ * scale)
      return false;
  return true;
}

void TableAlgebra::compute_degrees() {
  degrees_ = degree_map(rank_, lambda_, tol_);
}

void TableAlgebra::validate() const {
  const int d = rank_;
  const double scale = std::max(1.0, max_lambda_);
  const double atol = tol_ * scale;
  // sums of up to d products of constants
  const double atol_sum = tol_ * std::max(1.0, max_lambda_ * max_lambda_) * d;

  // 1_A is a two-sided identity.
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double want = (j == k) ? 1.0 : 0.0;
      if (std::abs(lambda(0, j, k) - want) > atol)
        throw AxiomViolation("identity", {0, j, k},
                             "lambda(0,j,k) != delta_jk");
      if (std::abs(lambda(j, 0, k) - want) > atol)
        throw AxiomViolation("identity", {j, 0, k},
                             "lambda(j,0,k) != delta_jk");
    }

  // Axiom III: lambda(i,j,0) vanishes unless j = i*, and lambda(i,i*,0) > 0.
  // The coefficient of 1 in b b* and b* b must also agree (the feasible
  // trace zeta(xy) = zeta(yx) depends on it).
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (j != star_[i] && lambda(i, j, 0) > atol)
        throw AxiomViolation("axiom-III", {i, j, 0},
                             "lambda(i,j,0) != 0 for j != i*");
    }
    if (lambda(i, star_[i], 0) <= atol)
      throw AxiomViolation("axiom-III", {i, star_[i], 0},
                           "lambda(i,i*,0) is not positive");
    if (std::abs(lambda(i, star_[i], 0) - lambda(star_[i], i, 0)) > atol)
      throw AxiomViolation("axiom-III", {i, star_[i], 0},
                           "lambda(i,i*,0) != lambda(i*,i,0)");
  }

  // * is a semilinear anti-automorphism on the constants.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (std::abs(lambda(i, j, k) -
                     lambda(star_[j], star_[i], star_[k])) > atol)
          throw AxiomViolation("star-antiautomorphism", {i, j, k},
                               "lambda(i,j,k) != lambda(j*,i*,k*)");

  // Associativity.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m) {
          double lhs = 0.0, rhs = 0.0;
          for (int t = 0; t < d; ++t) {
            lhs += lambda(i, j, t) * lambda(t, k, m);
            rhs += lambda(j, k, t) * lambda(i, t, m);
          }
          if (std::abs(lhs - rhs) > atol_sum)
            throw AxiomViolation("associativity", {i, j, k, m},
                                 "two-sided products disagree");
        }
}

void TableAlgebra::validate_degrees() const {
  const int d = rank_;
  // Degree map is a homomorphism, star-symmetric, with degree(1) = 1.
  double dscale = std::max(1.0, degrees_.maxCoeff());
  if (std::abs(degrees_[0] - 1.0) > tol_ * dscale)
    throw AxiomViolation("degree", {0}, "degree of identity is not 1");
  for (int i = 0; i < d; ++i) {
    if (degrees_[i] <= tol_)
      throw AxiomViolation("degree", {i}, "degree is not positive");
    if (std::abs(degrees_[i] - degrees_[star_[i]]) > tol_ * dscale)
      throw AxiomViolation("degree", {i}, "degree(i) != degree(i*)");
    for (int j = 0; j < d; ++j) {
      double sum = 0.0;
      for (int k = 0; k < d; ++k) sum += lambda(i, j, k) * degrees_[k];
      if (std::abs(sum - degrees_[i] * degrees_[j]) >
          tol_ * std::max(1.0, max_lambda_ * dscale) * d)
        throw AxiomViolation("degree", {i, j},
                             "degree map is not multiplicative");
    }
  }
}

Eigen::VectorXd degree_map(int rank, const std::vector<double>& lambda,
                           double tol) {
  const int d = rank;
  auto lam = [&](int i, int j, int k) {
    return lambda[(static_cast<size_t>(i) * d + j) * d + k];
  };
  // P = transpose of left multiplication by B+; strictly positive for a
  // table algebra, so power iteration converges to the Perron vector,
  // which is the degree vector.
  Eigen::MatrixXd p(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += lam(i, j, k);
      p(j, k) = s;
    }

  Eigen::VectorXd v = Eigen::VectorXd::Ones(d);
  bool converged = false;
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::VectorXd w = p * v;
    double norm = w.norm();
    if (!(norm > 0.0)) break;
    w /= norm;
    if ((w - v).lpNorm<Eigen::Infinity>() < 1e-15) {
      v = w;
      converged = true;
      break;
    }
    v = w;
  }
  if (!converged)
    throw NoPositiveCharacter("Perron iteration did not converge");
  if (!(std::abs(v[0]) > tol))
    throw NoPositiveCharacter("identity coordinate of Perron vector is zero");
  v /= v[0];
  for (int i = 0; i < d; ++i)
    if (!(v[i] > tol))
      throw NoPositiveCharacter("Perron eigenvector is not strictly positive");

  // Read each degree as a Rayleigh quotient and polish it to the exact
  // eigenvalue relation.
  Eigen::VectorXd deg(d);
  double vv = v.squaredNorm();
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd li_t_v(d);
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += lam(i, j, k) * v[k];
      li_t_v[j] = s;
    }
    deg[i] = v.dot(li_t_v) / vv;
    double resid = (li_t_v - deg[i] * v).lpNorm<Eigen::Infinity>();
    double scale = std::max(1.0, deg.head(i + 1).cwiseAbs().maxCoeff());
    if (resid > 1e-6 * scale * std::max(1.0, p.maxCoeff()))
      throw NoPositiveCharacter(
          "basis element " + std::to_string(i) +
          " has no positive eigenvalue on the Perron vector");
  }
  return deg;
}

std::pair<TableAlgebra, Eigen::VectorXd> rescale_to_standard(
    const TableAlgebra& a) {
  const int d = a.rank();
  Eigen::VectorXd scaling(d);
  for (int i = 0; i < d; ++i)
    scaling[i] = a.degree(i) / a.lambda(i, a.star(i), 0);
  scaling[0] = 1.0;
  for (int i = 0; i < d; ++i) {
    if (std::abs(scaling[i] - scaling[a.star(i)]) >
        a.tol() * std::max(1.0, scaling.cwiseAbs().maxCoeff()))
      throw AxiomViolation("rescale", {i},
                           "scaling is not star-symmetric");
  }
  std::vector<double> lam(static_cast<size_t>(d) * d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        lam[(static_cast<size_t>(i) * d + j) * d + k] =
            a.lambda(i, j, k) * scaling[i] * scaling[j] / scaling[k];
  TableAlgebra out = TableAlgebra::build(d, a.labels(), std::move(lam),
                                         a.star(), a.tol());
  return {std::move(out), std::move(scaling)};
}

bool ClosedSubset::contains(int i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

ClosedSubset closed_subset(const TableAlgebra& a, std::vector<int> indices) {
  indices = sorted_unique(std::move(indices));
  if (indices.empty() || indices[0] != 0)
    throw NotClosed("subset does not contain the identity");
  ClosedSubset n{indices};
  for (int i : indices)
    if (!n.contains(a.star(i)))
      throw NotClosed("subset is not star-stable at index " +
                      std::to_string(i));
  for (int i : indices)
    for (int j : indices)
      for (int k : a.product_support(a.star(i), j))
        if (!n.contains(k))
          throw NotClosed("Supp(b_" + std::to_string(a.star(i)) + " b_" +
                          std::to_string(j) + ") leaves the subset");
  return n;
}

std::vector<int> complex_product(const TableAlgebra& a,
                                 const std::vector<int>& s,
                                 const std::vector<int>& t) {
  std::set<int> out;
  for (int i : s)
    for (int j : t)
      for (int k : a.product_support(i, j)) out.insert(k);
  return {out.begin(), out.end()};
}

ClosedSubset closure(const TableAlgebra& a, const std::vector<int>& seed) {
  std::set<int> cur(seed.begin(), seed.end());
  cur.insert(0);
  for (int i : seed) cur.insert(a.star(i));
  for (;;) {
    std::vector<int> v(cur.begin(), cur.end());
    std::vector<int> prod = complex_product(a, v, v);
    size_t before = cur.size();
    cur.insert(prod.begin(), prod.end());
    if (cur.size() == before) break;
  }
  return ClosedSubset{{cur.begin(), cur.end()}};
}

std::vector<ClosedSubset> all_closed_subsets(const TableAlgebra& a, int cap) {
  if (a.rank() > cap) throw RankCapExceeded(a.rank(), cap);
  std::set<std::vector<int>> found;
  for (int i = 0; i < a.rank(); ++i) found.insert(closure(a, {i}).indices);
  // The lattice of closed subsets is generated by singleton closures
  // under closure-of-union; iterate joins to a fixed point.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> current(found.begin(), found.end());
    for (size_t x = 0; x < current.size(); ++x)
      for (size_t y = x + 1; y < current.size(); ++y) {
        std::vector<int> u = current[x];
        u.insert(u.end(), current[y].begin(), current[y].end());
        auto joined = closure(a, u).indices;
        if (found.insert(joined).second) grew = true;
      }
  }
  std::vector<ClosedSubset> out;
  for (auto& v : found) out.push_back(ClosedSubset{v});
  std::sort(out.begin(), out.end(),
            [](const ClosedSubset& x, const ClosedSubset& y) {
              if (x.indices.size() != y.indices.size())
                return x.indices.size() < y.indices.size();
              return x.indices < y.indices;
            });
  return out;
}

bool is_normal(const TableAlgebra& a, const ClosedSubset& n) {
  for (int i = 0; i < a.rank(); ++i) {
    if (complex_product(a, {i}, n.indices) !=
        complex_product(a, n.indices, {i}))
      return false;
  }
  return true;
}

ClosedSubset stabilizer(const TableAlgebra& a, const ClosedSubset& h,
                        const std::vector<int>& u) {
  const double atol = a.tol() * std::max(1.0, a.max_lambda()) *
                      std::max(1.0, a.degrees().maxCoeff());
  std::vector<int> st;
  for (int x : h.indices) {
    bool ok = true;
    for (int b : u) {
      for (int k = 0; k < a.rank() && ok; ++k) {
        double want = (k == b) ? a.degree(x) : 0.0;
        if (std::abs(a.lambda(x, b, k) - want) > atol ||
            std::abs(a.lambda(b, x, k) - want) > atol)
          ok = false;
      }
      if (!ok) break;
    }
    if (ok) st.push_back(x);
  }
  try {
    return closed_subset(a, st);
  } catch (const NotClosed& e) {
    throw NotClosed(std::string("stabilizer is not closed (") + e.what() +
                    ")");
  }
}

}  // namespace tablealg
