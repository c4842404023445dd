// Acceptance suite: one pass/fail line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "support/corpus.hpp"
#include "tablealg/cli.hpp"
#include "tablealg/io.hpp"
#include "tablealg/schemes.hpp"
#include "tablealg/wedge.hpp"

using namespace tablealg;
namespace ts = tablealg::testsupport;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<void(std::ostringstream&)> body;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------------

void criterion1(std::ostringstream& note) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, TableAlgebra>> algebras =
      ts::acceptance_corpus();
  // wedge/wreath constructions over the corpus join the suite
  std::vector<ts::WedgeInstance> wedges = ts::random_wedges(12, 1);
  for (auto& i : wedges)
    algebras.emplace_back(i.description, i.w.algebra);

  for (const auto& [name, a] : algebras) {
    // rebuild from the raw tensor at tol 1e-9: all axioms revalidated
    TableAlgebra rebuilt = TableAlgebra::build(
        a.rank(), a.labels(), a.lambda_tensor(), a.star(), 1e-9);
    require(rebuilt.rank() == a.rank(), name + ": rebuild changed rank");
    for (int i = 0; i < a.rank(); ++i)
      require(std::abs(rebuilt.degree(i) - a.degree(i)) < 1e-9,
              name + ": degree drift");
  }
  double ms = ms_since(t0);
  require(ms < 1000.0, "axiom suite took " + std::to_string(ms) + " ms");
  note << algebras.size() << " algebras validated in " << ms << " ms";
}

void criterion2(std::ostringstream& note) {
  int pairs = 0;
  for (const auto& [name, a] : ts::acceptance_corpus()) {
    for (const ClosedSubset& n : all_closed_subsets(a)) {
      QuotientResult q = quotient(a, n);
      double residual = 0.0;
      std::vector<double> gamma =
          ts::brute_force_quotient_gamma(a, q.cosets.blocks, &residual);
      require(residual < 1e-9, name + ": oracle fit residual");
      int r = q.algebra.rank();
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          for (int k = 0; k < r; ++k) {
            double want = gamma[(static_cast<size_t>(i) * r + j) * r + k];
            require(std::abs(q.algebra.lambda(i, j, k) - want) < 1e-9,
                    name + ": gamma mismatch");
          }
      ++pairs;
    }
  }
  note << pairs << " (algebra, N) pairs";
}

std::vector<ts::WedgeInstance> shared_wedges() {
  static std::vector<ts::WedgeInstance> inst = ts::random_wedges(50, 20240803);
  return inst;
}

void criterion3(std::ostringstream& note) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<ts::WedgeInstance> inst = shared_wedges();
  require(inst.size() == 50, "expected 50 instances");
  for (const auto& i : inst) {
    const WedgeProduct& w = i.w;
    // revalidate at tol 1e-9
    TableAlgebra::build(w.algebra.rank(), w.algebra.labels(),
                        w.algebra.lambda_tensor(), w.algebra.star(), 1e-9);
    int want_rank = w.factor_b.rank() + w.factor_d.rank() -
                    static_cast<int>(w.n.indices.size());
    require(w.algebra.rank() == want_rank, i.description + ": rank identity");
    require(std::abs(w.algebra.order() - w.order_k * w.factor_b.order()) <
                1e-9 * std::max(1.0, w.algebra.order()),
            i.description + ": order identity");
    require(w.factor_b.is_standard() && w.factor_d.is_standard(),
            i.description + ": factors not standard");
    require(w.algebra.is_standard(), i.description + ": result not standard");
  }
  double ms = ms_since(t0);
  require(ms < 5000.0, "wedge suite took " + std::to_string(ms) + " ms");
  note << "50 wedges in " << ms << " ms";
}

void criterion4(std::ostringstream& note) {
  int checked = 0;
  for (const auto& i : shared_wedges()) {
    std::vector<Character> lifted =
        lift_all_characters(i.w, irr_characters(i.w.factor_b, 4),
                            irr_characters(i.w.factor_d, 4));
    std::vector<Character> engine = irr_characters(i.w.algebra, 4);
    require(ts::match_characters(lifted, engine) < 1e-7,
            i.description + ": lift/engine disagree");
    long long sq = 0;
    for (const auto& c : lifted) {
      long long deg = std::llround(c.degree());
      sq += deg * deg;
    }
    require(sq == i.w.algebra.rank(), i.description + ": degree count");
    ++checked;
  }
  note << checked << " wedges";
}

void criterion5(std::ostringstream& note) {
  TableAlgebra s3 = load_ta(ts::data_path("s3class.ta"));
  std::vector<Character> cs = irr_characters(s3, 0);
  standard_multiplicities(s3, cs);
  const double golden_s3[3][3] = {{1, 3, 2}, {1, -3, 2}, {1, 0, -1}};
  const double golden_s3_mult[3] = {1, 1, 4};
  require(cs.size() == 3, "S3: wrong character count");
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c)
      require(std::abs(cs[r].values[c] - golden_s3[r][c]) < 1e-8,
              "S3: character value");
    require(std::abs(*cs[r].multiplicity - golden_s3_mult[r]) < 1e-8,
            "S3: multiplicity");
  }

  WedgeProduct k22 = wreath_product(
      ts::thin_algebra(ts::cyclic_group(2), {"1", "g"}),
      ts::thin_algebra(ts::cyclic_group(2), {"1", "g"}));
  std::vector<Character> ck = irr_characters(k22.algebra, 0);
  standard_multiplicities(k22.algebra, ck);
  // canonical order: degree character, then ascending lexicographically
  const double golden_k22[3][3] = {{1, 1, 2}, {1, -1, 0}, {1, 1, -2}};
  const double golden_k22_mult[3] = {1, 2, 1};
  require(ck.size() == 3, "K22: wrong character count");
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c)
      require(std::abs(ck[r].values[c] - golden_k22[r][c]) < 1e-8,
              "K22: character value");
    require(std::abs(*ck[r].multiplicity - golden_k22_mult[r]) < 1e-8,
            "K22: multiplicity");
  }
  note << "both tables within 1e-8";
}

void criterion6(std::ostringstream& note) {
  TableAlgebra k22 = load_ta(ts::data_path("k22.ta"));
  std::vector<Character> ck = irr_characters(k22, 0);
  standard_multiplicities(k22, ck);
  Main2Report r1 = verify_main2(k22, closure(k22, {1}), closure(k22, {1}), ck);
  require(r1.all_true() && r1.equivalent, "K22: expected all-four-true");
  require(r1.multiplicity_pairs.size() == 1, "K22: one excluded character");
  require(std::abs(r1.multiplicity_pairs[0][1] - 2.0) < 1e-8 &&
              std::abs((k22.order() / 2.0) * r1.multiplicity_pairs[0][2] -
                       r1.multiplicity_pairs[0][1]) < 1e-8,
          "K22: zeta ratio 2 = (4/2) * 1");

  TableAlgebra s3 = load_ta(ts::data_path("s3class.ta"));
  std::vector<Character> cs = irr_characters(s3, 0);
  standard_multiplicities(s3, cs);
  Main2Report r2 = verify_main2(s3, closure(s3, {2}), closure(s3, {2}), cs);
  require(r2.all_true() && r2.equivalent, "S3: expected all-four-true");
  require(std::abs(r2.multiplicity_pairs[0][1] - 4.0) < 1e-8 &&
              std::abs(2.0 * r2.multiplicity_pairs[0][2] - 4.0) < 1e-8,
          "S3: zeta ratio 4 = (6/3) * 2");

  TableAlgebra z4 = load_ta(ts::data_path("z4.ta"));
  std::vector<Character> cz = irr_characters(z4, 0);
  standard_multiplicities(z4, cz);
  Main2Report r3 = verify_main2(z4, closure(z4, {2}), closure(z4, {2}), cz);
  require(!r3.normal_and_stabilized && !r3.reconstruction &&
              !r3.restriction_and_vanishing && !r3.multiplicity_ratio,
          "Z4: expected all-four-false");
  require(r3.equivalent, "Z4: booleans must agree");

  // the equivalence flag is never mixed across the corpus
  int cases = 0;
  for (const auto& [name, a] : ts::acceptance_corpus()) {
    std::vector<Character> chars = irr_characters(a, 6);
    standard_multiplicities(a, chars);
    std::vector<ClosedSubset> subs = all_closed_subsets(a);
    for (const ClosedSubset& k : subs) {
      if (k.indices.size() <= 1) continue;
      for (const ClosedSubset& d : subs) {
        if (!std::includes(d.indices.begin(), d.indices.end(),
                           k.indices.begin(), k.indices.end()))
          continue;
        TableAlgebra span = span_subalgebra(a, d);
        std::vector<int> kpos;
        for (size_t p = 0; p < d.indices.size(); ++p)
          if (k.contains(d.indices[p])) kpos.push_back(static_cast<int>(p));
        if (!is_normal(span, closed_subset(span, kpos))) continue;
        Main2Report r = verify_main2(a, k, d, chars, 6);
        require(r.equivalent, name + ": mixed equivalence flag");
        ++cases;
      }
    }
  }
  note << cases + 3 << " (K,D) cases, flag never mixed";
}

void criterion7(std::ostringstream& note) {
  int checked = 0;
  for (const auto& i : shared_wedges()) {
    if (!i.nontrivial_k) continue;  // K = {1} is excluded by design
    std::vector<int> kidx;
    for (int p : i.w.k.indices) kidx.push_back(i.w.result_of_d[p]);
    std::sort(kidx.begin(), kidx.end());
    std::vector<int> didx;
    for (int p = 0; p < i.w.factor_d.rank(); ++p)
      didx.push_back(i.w.result_of_d[p]);
    std::sort(didx.begin(), didx.end());
    if (didx.size() == static_cast<size_t>(i.w.algebra.rank()))
      continue;  // D = B-tilde is excluded by design
    bool found = false;
    for (const auto& [k, d] : detect_wedge(i.w.algebra))
      found |= (k.indices == kidx && d.indices == didx);
    require(found, i.description + ": constructing pair not detected");
    ++checked;
  }
  require(checked > 0, "no nontrivial instances drawn");

  for (int p : {2, 3, 5}) {
    std::vector<std::string> labels;
    for (int i = 0; i < p; ++i) labels.push_back("g" + std::to_string(i));
    TableAlgebra zp = ts::thin_algebra(ts::cyclic_group(p), labels);
    require(detect_wedge(zp).empty(),
            "Z/" + std::to_string(p) + ": expected no decompositions");
  }
  note << checked << " constructing pairs recovered; Z/p all empty";
}

void criterion8(std::ostringstream& note) {
  // quotient / algebra-bridge commutation on the corpus schemes
  for (const char* name : {"p2.scm", "k22.scm", "z4thin.scm", "s3thin.scm"}) {
    Scheme s = load_scm(ts::data_path(name));
    TableAlgebra alg = scheme_to_algebra(s);
    for (const ClosedSubset& h : all_closed_subsets(alg)) {
      auto [q, epi] = scheme_quotient(s, h.indices);
      TableAlgebra qalg = scheme_to_algebra(q);
      QuotientResult qa = quotient(alg, h);
      require(qalg.rank() == qa.algebra.rank(),
              std::string(name) + ": bridge rank");
      for (int i = 0; i < qalg.rank(); ++i)
        for (int j = 0; j < qalg.rank(); ++j)
          for (int k = 0; k < qalg.rank(); ++k)
            require(std::abs(qalg.lambda(i, j, k) -
                             qa.algebra.lambda(i, j, k)) < 1e-9,
                    std::string(name) + ": bridge constants");
    }
  }

  // the 4-point uniform wedge reproduces the K_{2,2} scheme
  Scheme p2 = load_scm(ts::data_path("p2.scm"));
  SchemeWedge w = uniform_scheme_wedge(p2, {0}, p2, {0, 1}, {0}, {0});
  Scheme k22s = load_scm(ts::data_path("k22.scm"));
  require(w.scheme.relmat == k22s.relmat, "wedge != K22 scheme");

  TableAlgebra z2 = scheme_to_algebra(p2);
  WedgeProduct wreath = wreath_product(z2, z2);
  TableAlgebra walg = scheme_to_algebra(w.scheme);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        require(std::abs(walg.lambda(i, j, k) -
                         wreath.algebra.lambda(i, j, k)) < 1e-9,
                "wedge algebra != table-algebra wreath");

  SchemeWedgeCharReport rep =
      verify_scheme_wedge_chars(w.scheme, {0, 1}, {0, 1});
  require(rep.main2.all_true() && rep.sum_condition,
          "scheme wedge char report not all-true");
  require(rep.main2.multiplicity_pairs.size() == 1 &&
              std::abs(rep.main2.multiplicity_pairs[0][1] - 2.0) < 1e-8,
          "m_chi = (n_S/n_B) m_psi = 2");
  note << "bridge + K22 wedge + multiplicities";
}

void criterion9(std::ostringstream& note) {
  int files = 0;
  for (const char* name : {"z2.ta", "z3.ta", "z4.ta", "z6.ta", "s3class.ta",
                           "d4class.ta", "k22.ta"}) {
    std::string a, e1, b, e2;
    int c1 = cli::run({"chars", ts::data_path(name), "--seed", "42", "--json"},
                      a, e1);
    int c2 = cli::run({"chars", ts::data_path(name), "--seed", "42", "--json"},
                      b, e2);
    require(c1 == 0 && c2 == 0, std::string(name) + ": chars failed");
    require(a == b, std::string(name) + ": output not byte-identical");
    ++files;
  }
  note << files << " corpus files byte-identical";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "axiom suite over the corpus and its wedge/wreath closures",
       criterion1},
      {2, "gamma quotient equals the regular-representation oracle",
       criterion2},
      {3, "50 randomized wedges: validity, rank, order, standardness",
       criterion3},
      {4, "lift/engine character agreement on the randomized wedges",
       criterion4},
      {5, "golden character tables (S3 class algebra, K22 wreath)",
       criterion5},
      {6, "four-way wedge equivalence incl. zeta ratios", criterion6},
      {7, "detect_wedge completeness; empty on Z/p", criterion7},
      {8, "scheme bridge, uniform scheme wedge, scheme multiplicities",
       criterion8},
      {9, "seeded determinism of structured output", criterion9},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::ostringstream note;
    try {
      c.body(note);
      std::printf("[PASS] criterion %d: %s (%s)\n", c.number, c.title.c_str(),
                  note.str().c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %d: %s -- %s\n", c.number, c.title.c_str(),
                  e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
