#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/corpus.hpp"
#include "tablealg/io.hpp"
#include "tablealg/wedge.hpp"

using namespace tablealg;
namespace ts = tablealg::testsupport;

namespace {

TableAlgebra z2() { return ts::thin_algebra(ts::cyclic_group(2), {"1", "g"}); }
TableAlgebra z3() {
  return ts::thin_algebra(ts::cyclic_group(3), {"1", "g", "g2"});
}
TableAlgebra s3class() {
  return ts::class_algebra(ts::symmetric3(), {0, 1, 4}, {"1", "t", "c"});
}

}  // namespace

TEST_CASE("Z/2 wr Z/2 is the K_{2,2} algebra, expanded by hand") {
  WedgeProduct w = wreath_product(z2(), z2());
  const TableAlgebra& a = w.algebra;
  REQUIRE(a.rank() == 3);
  CHECK(w.order_k == doctest::Approx(2.0));

  // d^2 = 1, d b = b d = b, b^2 = 2*1 + 2d  (basis order 1, d, b)
  CHECK(a.lambda(1, 1, 0) == doctest::Approx(1.0));
  CHECK(a.lambda(1, 2, 2) == doctest::Approx(1.0));
  CHECK(a.lambda(2, 1, 2) == doctest::Approx(1.0));
  CHECK(a.lambda(2, 2, 0) == doctest::Approx(2.0));
  CHECK(a.lambda(2, 2, 1) == doctest::Approx(2.0));
  CHECK(a.degrees()[1] == doctest::Approx(1.0));
  CHECK(a.degrees()[2] == doctest::Approx(2.0));

  // matches the shipped K_{2,2} file
  TableAlgebra k22 = load_ta(ts::data_path("k22.ta"));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(a.lambda(i, j, k) == doctest::Approx(k22.lambda(i, j, k)));
}

TEST_CASE("injective phi gives back the B factor") {
  TableAlgebra e = s3class();
  ClosedSubset n = closure(e, {1});  // whole basis
  TableAlgebra span = span_subalgebra(e, n);
  AlgebraHom phi{span, e, n.indices, std::vector<double>(3, 1.0)};
  WedgeProduct w = wedge_product(span, e, phi);
  CHECK(w.order_k == doctest::Approx(1.0));
  REQUIRE(w.algebra.rank() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(w.algebra.lambda(i, j, k) == doctest::Approx(e.lambda(i, j, k)));
}

TEST_CASE("rank-1 wreath rank-1") {
  TableAlgebra one = quotient(z2(), closure(z2(), {1})).algebra;
  WedgeProduct w = wreath_product(one, one);
  CHECK(w.algebra.rank() == 1);
  std::vector<Character> lifted = lift_all_characters(
      w, irr_characters(one), irr_characters(one));
  REQUIRE(lifted.size() == 1);
  CHECK(std::abs(lifted[0].values[0] - 1.0) < 1e-12);
}

TEST_CASE("rank-1 wreath A is A unchanged") {
  TableAlgebra one = quotient(z2(), closure(z2(), {1})).algebra;
  TableAlgebra a = s3class();
  WedgeProduct w = wreath_product(one, a);
  REQUIRE(w.algebra.rank() == 3);
  CHECK(w.order_k == doctest::Approx(1.0));
  // o(K) = 1, so the b-bar part carries A's constants verbatim
  std::vector<int> m(3);  // result index of each original basis element
  m[0] = 0;
  for (int b = 1; b < 3; ++b) m[b] = w.result_of_b[b];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(w.algebra.lambda(m[i], m[j], m[k]) ==
              doctest::Approx(a.lambda(i, j, k)));
}

TEST_CASE("Z/3 wr Z/2") {
  WedgeProduct w = wreath_product(z3(), z2());
  REQUIRE(w.algebra.rank() == 4);
  Eigen::VectorXd want(4);
  want << 1, 1, 1, 3;
  CHECK((w.algebra.degrees() - want).lpNorm<Eigen::Infinity>() < 1e-9);
  // b-bar^2 = 3 K+ = 3(1 + d + d^2)
  CHECK(w.algebra.lambda(3, 3, 0) == doctest::Approx(3.0));
  CHECK(w.algebra.lambda(3, 3, 1) == doctest::Approx(3.0));
  CHECK(w.algebra.lambda(3, 3, 2) == doctest::Approx(3.0));
}

TEST_CASE("wreath stabilizer law") {
  for (auto [c, a] : {std::pair{z2(), s3class()}, std::pair{z3(), z2()},
                      std::pair{s3class(), z3()}}) {
    WedgeProduct w = wreath_product(c, a);
    const TableAlgebra& alg = w.algebra;
    int nd = c.rank();
    for (int d = 0; d < nd; ++d)
      for (int x = nd; x < alg.rank(); ++x)
        for (int k = 0; k < alg.rank(); ++k) {
          double want = (k == x) ? alg.degree(d) : 0.0;
          CHECK(alg.lambda(d, x, k) == doctest::Approx(want));
          CHECK(alg.lambda(x, d, k) == doctest::Approx(want));
        }
  }
}

TEST_CASE("randomized wedges: rank, order and standardness bookkeeping") {
  std::vector<ts::WedgeInstance> inst = ts::random_wedges(50, 2024);
  for (const auto& i : inst) {
    INFO(i.description);
    int expect_rank = i.w.factor_b.rank() + i.w.factor_d.rank() -
                      static_cast<int>(i.w.n.indices.size());
    CHECK(i.w.algebra.rank() == expect_rank);
    CHECK(i.w.algebra.order() ==
          doctest::Approx(i.w.order_k * i.w.factor_b.order()).epsilon(1e-9));
    CHECK(i.w.algebra.is_standard());

    // degrees by origin
    for (size_t r = 0; r < i.w.basis_origin.size(); ++r) {
      const BasisOrigin& o = i.w.basis_origin[r];
      double want = (o.kind == BasisOrigin::FromD)
                        ? i.w.factor_d.degree(o.index)
                        : i.w.order_k * i.w.factor_b.degree(o.index);
      CHECK(i.w.algebra.degree(static_cast<int>(r)) ==
            doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("detect_wedge on the corpus examples") {
  TableAlgebra k22 = load_ta(ts::data_path("k22.ta"));
  auto pairs = detect_wedge(k22);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].first.indices == std::vector<int>{0, 1});
  CHECK(pairs[0].second.indices == std::vector<int>{0, 1});

  auto s3pairs = detect_wedge(s3class());
  REQUIRE(s3pairs.size() == 1);
  CHECK(s3pairs[0].first.indices == std::vector<int>{0, 2});

  TableAlgebra z4 =
      ts::thin_algebra(ts::cyclic_group(4), {"1", "g", "g2", "g3"});
  CHECK(detect_wedge(z4).empty());
}

TEST_CASE("detect_wedge is empty on prime cyclic group algebras") {
  for (int p : {2, 3, 5}) {
    std::vector<std::string> labels;
    for (int i = 0; i < p; ++i) labels.push_back("g" + std::to_string(i));
    TableAlgebra zp = ts::thin_algebra(ts::cyclic_group(p), labels);
    CHECK(detect_wedge(zp).empty());
  }
}

TEST_CASE("detect_wedge recovers the constructing pair") {
  std::vector<ts::WedgeInstance> inst = ts::random_wedges(25, 77);
  for (const auto& i : inst) {
    if (!i.nontrivial_k) continue;
    INFO(i.description);
    // constructing K inside the D part, D part itself
    std::vector<int> kidx;
    for (size_t p = 0; p < i.w.k.indices.size(); ++p)
      kidx.push_back(i.w.result_of_d[i.w.k.indices[p]]);
    std::sort(kidx.begin(), kidx.end());
    std::vector<int> didx;
    for (int p = 0; p < i.w.factor_d.rank(); ++p)
      didx.push_back(i.w.result_of_d[p]);
    std::sort(didx.begin(), didx.end());

    bool found = false;
    for (const auto& [k, d] : detect_wedge(i.w.algebra))
      found |= (k.indices == kidx && d.indices == didx);
    CHECK(found);
  }
}

TEST_CASE("lifted representations of the K_{2,2} wreath") {
  TableAlgebra c = z2(), a = z2();
  WedgeProduct w = wreath_product(c, a);

  std::vector<Representation> reps_b = irr_representations(a, 0);
  std::vector<Representation> reps_d = irr_representations(c, 0);

  // B-factor sign representation lifts to (1, 1, -2)
  Representation sign_b = lift_representation(w, reps_b[1],
                                              LiftFactor::FromBFactor);
  CHECK(std::abs(sign_b.matrices[0](0, 0) - 1.0) < 1e-9);
  CHECK(std::abs(sign_b.matrices[1](0, 0) - 1.0) < 1e-9);
  CHECK(std::abs(sign_b.matrices[2](0, 0) + 2.0) < 1e-9);

  // D-factor sign representation lifts to (1, -1, 0)
  Representation sign_d = lift_representation(w, reps_d[1],
                                              LiftFactor::FromDFactor);
  CHECK(std::abs(sign_d.matrices[1](0, 0) + 1.0) < 1e-9);
  CHECK(std::abs(sign_d.matrices[2](0, 0)) < 1e-9);

  // trivial B-factor representation lifts to the degree map
  Representation triv = lift_representation(w, reps_b[0],
                                            LiftFactor::FromBFactor);
  for (int r = 0; r < 3; ++r)
    CHECK(std::abs(triv.matrices[r](0, 0) - w.algebra.degree(r)) < 1e-9);

  // the D-factor trivial representation contains K in its kernel
  CHECK_THROWS_AS(
      lift_representation(w, reps_d[0], LiftFactor::FromDFactor),
      KernelContainsK);
}

TEST_CASE("lifted character table of the K_{2,2} wreath") {
  TableAlgebra c = z2(), a = z2();
  WedgeProduct w = wreath_product(c, a);
  std::vector<Character> lifted = lift_all_characters(
      w, irr_characters(a), irr_characters(c));
  REQUIRE(lifted.size() == 3);

  std::vector<Character> want(3);
  want[0].values.resize(3);
  want[0].values << 1, 1, 2;
  want[1].values.resize(3);
  want[1].values << 1, 1, -2;
  want[2].values.resize(3);
  want[2].values << 1, -1, 0;
  CHECK(ts::match_characters(lifted, want) < 1e-9);
}

TEST_CASE("S3 as a wedge reproduces its class algebra characters") {
  TableAlgebra a = s3class();
  ClosedSubset k = closure(a, {2});  // {1, c}
  TableAlgebra span_d = span_subalgebra(a, k);
  QuotientResult q = quotient(a, k);

  // canonical epimorphism of the span by all of itself, retargeted
  AlgebraHom pi = canonical_epi(span_d, closure(span_d, {1}));
  AlgebraHom phi;
  phi.source = span_d;
  phi.target = q.algebra;
  phi.image_scalar = pi.image_scalar;
  phi.image_index = {q.cosets.block_of[0], q.cosets.block_of[2]};
  WedgeProduct w = wedge_product(span_d, q.algebra, phi);
  REQUIRE(w.algebra.rank() == 3);

  // result basis is (1, c, t-bar); the S3 table in that order
  std::vector<Character> lifted = lift_all_characters(
      w, irr_characters(q.algebra), irr_characters(span_d));
  std::vector<Character> want(3);
  want[0].values.resize(3);
  want[0].values << 1, 2, 3;
  want[1].values.resize(3);
  want[1].values << 1, 2, -3;
  want[2].values.resize(3);
  want[2].values << 1, -1, 0;
  CHECK(ts::match_characters(lifted, want) < 1e-9);

  // and the reconstruction equals the original algebra
  CHECK_FALSE(try_reconstruct_wedge(a, k, k).has_value());
}

TEST_CASE("lift and engine agree on randomized wedges") {
  std::vector<ts::WedgeInstance> inst = ts::random_wedges(20, 5150);
  for (const auto& i : inst) {
    INFO(i.description);
    std::vector<Character> lifted = lift_all_characters(
        i.w, irr_characters(i.w.factor_b, 3), irr_characters(i.w.factor_d, 3));
    std::vector<Character> engine = irr_characters(i.w.algebra, 3);
    CHECK(ts::match_characters(lifted, engine) < 1e-7);

    int sq = 0;
    for (const auto& c : lifted) {
      int deg = static_cast<int>(std::lround(c.degree()));
      sq += deg * deg;
    }
    CHECK(sq == i.w.algebra.rank());
  }
}

TEST_CASE("verify_main2 on the three reference cases") {
  // K_{2,2}: all four true, zeta ratio 2 = (4/2) * 1
  TableAlgebra k22 = load_ta(ts::data_path("k22.ta"));
  std::vector<Character> ck = irr_characters(k22);
  standard_multiplicities(k22, ck);
  ClosedSubset kd = closure(k22, {1});
  Main2Report r1 = verify_main2(k22, kd, kd, ck);
  CHECK(r1.normal_and_stabilized);
  CHECK(r1.reconstruction);
  CHECK(r1.restriction_and_vanishing);
  CHECK(r1.multiplicity_ratio);
  CHECK(r1.equivalent);
  REQUIRE(r1.multiplicity_pairs.size() == 1);
  CHECK(r1.multiplicity_pairs[0][1] == doctest::Approx(2.0));
  CHECK(r1.multiplicity_pairs[0][2] == doctest::Approx(1.0));

  // S3: all four true, zeta_omega = 4 = (6/3) * 2
  TableAlgebra s3 = s3class();
  std::vector<Character> cs = irr_characters(s3);
  standard_multiplicities(s3, cs);
  ClosedSubset kc = closure(s3, {2});
  Main2Report r2 = verify_main2(s3, kc, kc, cs);
  CHECK(r2.equivalent);
  CHECK(r2.normal_and_stabilized);
  REQUIRE(r2.multiplicity_pairs.size() == 1);
  CHECK(r2.multiplicity_pairs[0][1] == doctest::Approx(4.0));
  CHECK(r2.multiplicity_pairs[0][2] == doctest::Approx(2.0));

  // Z/4: all four false, still equivalent
  TableAlgebra z4 =
      ts::thin_algebra(ts::cyclic_group(4), {"1", "g", "g2", "g3"});
  std::vector<Character> cz = irr_characters(z4);
  standard_multiplicities(z4, cz);
  ClosedSubset kz = closure(z4, {2});
  Main2Report r3 = verify_main2(z4, kz, kz, cz);
  CHECK_FALSE(r3.normal_and_stabilized);
  CHECK_FALSE(r3.reconstruction);
  CHECK_FALSE(r3.restriction_and_vanishing);
  CHECK_FALSE(r3.multiplicity_ratio);
  CHECK(r3.equivalent);
}

TEST_CASE("verify_main2 equivalence flag holds across corpus pairs") {
  for (const auto& [name, a] : ts::acceptance_corpus()) {
    INFO(name);
    std::vector<Character> chars = irr_characters(a, 17);
    standard_multiplicities(a, chars);
    std::vector<ClosedSubset> subs = all_closed_subsets(a);
    for (const ClosedSubset& k : subs) {
      if (k.indices.size() <= 1) continue;
      for (const ClosedSubset& d : subs) {
        if (!std::includes(d.indices.begin(), d.indices.end(),
                           k.indices.begin(), k.indices.end()))
          continue;
        // K must be normal inside D for the hypotheses to make sense
        TableAlgebra span = span_subalgebra(a, d);
        std::vector<int> kpos;
        for (size_t p = 0; p < d.indices.size(); ++p)
          if (k.contains(d.indices[p])) kpos.push_back(static_cast<int>(p));
        if (!is_normal(span, closed_subset(span, kpos))) continue;
        Main2Report r = verify_main2(a, k, d, chars, 17);
        INFO("K size ", k.indices.size(), " D size ", d.indices.size());
        CHECK(r.equivalent);
      }
    }
  }
}

TEST_CASE("verify_main2 with K normal in D but not in B") {
  // thin S3, K = D = {e, (01)}: the sign character restricts irreducibly
  // but does not vanish outside D, and the 2-dim character does not even
  // restrict irreducibly; every condition fails, coherently
  TableAlgebra s3 = ts::thin_algebra(
      ts::symmetric3(), {"e", "s01", "s02", "s12", "c012", "c021"});
  std::vector<Character> chars = irr_characters(s3, 19);
  standard_multiplicities(s3, chars);
  ClosedSubset kd = closure(s3, {1});
  REQUIRE(kd.indices == std::vector<int>{0, 1});
  Main2Report r = verify_main2(s3, kd, kd, chars, 19);
  CHECK_FALSE(r.normal_and_stabilized);
  CHECK_FALSE(r.reconstruction);
  CHECK_FALSE(r.restriction_and_vanishing);
  CHECK_FALSE(r.multiplicity_ratio);
  CHECK(r.equivalent);
}

TEST_CASE("irr_of_quotient cross-check rejects a non-normal subset") {
  // the kernel-filter count only matches the quotient center for normal
  // subsets; {e, (01)} in thin S3 trips the cross-check
  TableAlgebra s3 = ts::thin_algebra(
      ts::symmetric3(), {"e", "s01", "s02", "s12", "c012", "c021"});
  std::vector<Character> chars = irr_characters(s3, 19);
  CHECK_THROWS_AS(irr_of_quotient(s3, closure(s3, {1}), chars),
                  CountMismatch);
}

TEST_CASE("wedge error paths") {
  // an invalid hom is rejected
  TableAlgebra c = z2(), a = s3class();
  AlgebraHom bad{c, a, {0, 1}, {1.0, 1.0}};  // g -> t is not multiplicative
  CHECK_THROWS_AS(wedge_product(c, a, bad), InvalidHom);
}
