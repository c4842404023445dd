#include "tablealg/cli.hpp"

#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "tablealg/io.hpp"
#include "tablealg/wedge.hpp"

namespace tablealg::cli {

namespace {

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

std::string index_list(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

NamedTable character_table(const TableAlgebra& a,
                           const std::vector<Character>& chars) {
  NamedTable t;
  t.name = "characters";
  t.col_labels = a.labels();
  for (size_t c = 0; c < chars.size(); ++c) {
    t.row_labels.push_back("chi" + std::to_string(c));
    std::vector<std::complex<double>> row;
    for (int i = 0; i < a.rank(); ++i) row.push_back(chars[c].values[i]);
    t.values.push_back(std::move(row));
  }
  return t;
}

NamedTable multiplicity_table(const std::vector<Character>& chars) {
  NamedTable t;
  t.name = "multiplicities";
  t.col_labels = {"zeta"};
  for (size_t c = 0; c < chars.size(); ++c) {
    t.row_labels.push_back("chi" + std::to_string(c));
    t.values.push_back({std::complex<double>(
        chars[c].multiplicity ? *chars[c].multiplicity : 0.0, 0.0)});
  }
  return t;
}

std::string origin_lines(const WedgeProduct& w) {
  std::ostringstream os;
  for (size_t r = 0; r < w.basis_origin.size(); ++r) {
    const BasisOrigin& o = w.basis_origin[r];
    os << r << " " << (o.kind == BasisOrigin::FromD ? "D" : "Bbar") << " "
       << o.index << "\n";
  }
  return os.str();
}

void add_main2_findings(Report& rep, const Main2Report& m) {
  rep.findings.push_back({"(i) K normal and K in St_B(B\\D)",
                          m.normal_and_stabilized, ""});
  rep.findings.push_back({"(ii) wedge reconstruction", m.reconstruction, ""});
  rep.findings.push_back({"(iii) restrictions irreducible, vanishing outside D",
                          m.restriction_and_vanishing, ""});
  rep.findings.push_back(
      {"(iv) zeta_chi = (o(B)/o(D)) zeta_psi", m.multiplicity_ratio, ""});
  rep.findings.push_back({"equivalence (four conditions agree)", m.equivalent,
                          m.equivalent ? "" : m.witness});
  if (!m.witness.empty() && !m.all_true()) {
    // attach the first witness to the first failing condition
    for (auto& f : rep.findings)
      if (!f.pass && f.witness.empty()) {
        f.witness = m.witness;
        break;
      }
  }
}

struct Options {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  bool json = false;
  std::string out_path;
};

void emit(const Report& rep, const Options& opt, std::ostream& out) {
  out << (opt.json ? rep.to_json() : rep.to_text());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"table algebra and association scheme toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options opt;
  app.add_option("--tol", opt.tol, "numerical tolerance");
  app.add_option("--seed", opt.seed, "seed for randomized computations");
  app.add_flag("--json", opt.json, "structured output");
  app.add_option("--out", opt.out_path, "write the produced .ta/.scm here");

  std::string file, file2, phi_path;
  std::string by, k_str, d_str, b_str, point_iso_str, rel_iso_str;
  int point = 0;

  CLI::App* c_validate = app.add_subcommand("validate", "axiom report");
  c_validate->add_option("file", file)->required();
  CLI::App* c_degrees = app.add_subcommand("degrees", "degree map");
  c_degrees->add_option("file", file)->required();
  CLI::App* c_closed =
      app.add_subcommand("closed", "closed subsets and normality");
  c_closed->add_option("file", file)->required();
  CLI::App* c_quotient = app.add_subcommand("quotient", "quotient algebra");
  c_quotient->add_option("file", file)->required();
  c_quotient->add_option("--by", by, "closed subset indices i,j,...")
      ->required();
  CLI::App* c_chars =
      app.add_subcommand("chars", "character table and multiplicities");
  c_chars->add_option("file", file)->required();
  CLI::App* c_wedge = app.add_subcommand("wedge", "wedge product");
  c_wedge->add_option("C", file)->required();
  c_wedge->add_option("A", file2)->required();
  c_wedge->add_option("--phi", phi_path, "phi map file")->required();
  CLI::App* c_wreath = app.add_subcommand("wreath", "wreath product");
  c_wreath->add_option("C", file)->required();
  c_wreath->add_option("A", file2)->required();
  CLI::App* c_detect =
      app.add_subcommand("detect-wedge", "wedge decompositions");
  c_detect->add_option("file", file)->required();
  CLI::App* c_main2 =
      app.add_subcommand("verify-main2", "four-condition report");
  c_main2->add_option("file", file)->required();
  c_main2->add_option("--K", k_str)->required();
  c_main2->add_option("--D", d_str)->required();
  CLI::App* c_s2ta = app.add_subcommand("scheme2ta", "adjacency algebra");
  c_s2ta->add_option("file", file)->required();
  CLI::App* c_squot = app.add_subcommand("scheme-quotient", "quotient scheme");
  c_squot->add_option("file", file)->required();
  c_squot->add_option("--by", by, "closed relation indices")->required();
  CLI::App* c_sub = app.add_subcommand("subscheme", "induced subscheme");
  c_sub->add_option("file", file)->required();
  c_sub->add_option("--by", by, "closed relation indices")->required();
  c_sub->add_option("--point", point, "base point");
  CLI::App* c_swedge =
      app.add_subcommand("scheme-wedge", "uniform wedge of schemes");
  c_swedge->add_option("base", file)->required();
  c_swedge->add_option("fiber", file2)->required();
  c_swedge->add_option("--D", d_str, "closed relations of the base")
      ->required();
  c_swedge->add_option("--K", k_str, "normal closed relations of the fiber")
      ->required();
  c_swedge->add_option("--point-iso", point_iso_str,
                       "quotient->subscheme point bijection (default id)");
  c_swedge->add_option("--rel-iso", rel_iso_str,
                       "quotient->subscheme relation bijection (default id)");
  CLI::App* c_sverify = app.add_subcommand(
      "verify-scheme-wedge", "scheme wedge character conditions");
  c_sverify->add_option("file", file)->required();
  c_sverify->add_option("--K", k_str)->required();
  c_sverify->add_option("--B", b_str)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  Report rep;
  int exit_code = 0;
  try {
    if (*c_validate) {
      rep.command = "validate";
      rep.inputs.emplace_back("file", file);
      try {
        if (ends_with(file, ".scm")) {
          Scheme s = load_scm(file);
          rep.findings.push_back({"scheme axioms", true, ""});
          rep.outputs.emplace_back(
              "valencies", index_list(s.valencies));
        } else {
          TableAlgebra a = load_ta(file, opt.tol);
          rep.findings.push_back({"table algebra axioms", true, ""});
        }
      } catch (const FormatError&) {
        throw;
      } catch (const Error& e) {
        rep.findings.push_back({"axioms", false, e.what()});
      }
    } else if (*c_degrees) {
      rep.command = "degrees";
      rep.inputs.emplace_back("file", file);
      TableAlgebra a = load_ta(file, opt.tol);
      NamedTable t;
      t.name = "degrees";
      t.col_labels = a.labels();
      t.row_labels = {"|b|"};
      std::vector<std::complex<double>> row;
      for (int i = 0; i < a.rank(); ++i) row.emplace_back(a.degree(i), 0.0);
      t.values.push_back(std::move(row));
      rep.tables.push_back(std::move(t));
      rep.findings.push_back({"degree map", true, ""});
    } else if (*c_closed) {
      rep.command = "closed";
      rep.inputs.emplace_back("file", file);
      TableAlgebra a = load_ta(file, opt.tol);
      std::vector<ClosedSubset> subs = all_closed_subsets(a);
      for (const auto& s : subs) {
        std::string label = "{" + index_list(s.indices) + "}";
        rep.outputs.emplace_back(
            label, is_normal(a, s) ? "normal" : "not normal");
      }
      rep.findings.push_back({"closed subsets enumerated", true, ""});
    } else if (*c_quotient) {
      rep.command = "quotient";
      rep.inputs.emplace_back("file", file);
      rep.inputs.emplace_back("by", by);
      TableAlgebra a = load_ta(file, opt.tol);
      ClosedSubset n = closed_subset(a, parse_index_list(by));
      QuotientResult q = quotient(a, n);
      std::string ta = write_ta(q.algebra);
      rep.outputs.emplace_back("ta", ta);
      rep.outputs.emplace_back("projection",
                               index_list(q.cosets.block_of));
      if (!opt.out_path.empty()) write_file(opt.out_path, ta);
      rep.findings.push_back({"quotient validated", true, ""});
    } else if (*c_chars) {
      rep.command = "chars";
      rep.inputs.emplace_back("file", file);
      rep.inputs.emplace_back("seed", std::to_string(opt.seed));
      TableAlgebra a = load_ta(file, opt.tol);
      std::vector<Character> chars = irr_characters(a, opt.seed);
      standard_multiplicities(a, chars);
      rep.tables.push_back(character_table(a, chars));
      rep.tables.push_back(multiplicity_table(chars));
      rep.findings.push_back({"characters complete", true, ""});
    } else if (*c_wedge || *c_wreath) {
      bool is_wreath = static_cast<bool>(*c_wreath);
      rep.command = is_wreath ? "wreath" : "wedge";
      rep.inputs.emplace_back("C", file);
      rep.inputs.emplace_back("A", file2);
      TableAlgebra c = load_ta(file, opt.tol);
      TableAlgebra a = load_ta(file2, opt.tol);
      WedgeProduct w;
      if (is_wreath) {
        w = wreath_product(c, a);
      } else {
        rep.inputs.emplace_back("phi", phi_path);
        AlgebraHom phi = parse_phi_map(read_file(phi_path), c, a);
        w = wedge_product(c, a, phi);
      }
      std::string ta = write_ta(w.algebra);
      rep.outputs.emplace_back("ta", ta);
      rep.outputs.emplace_back("provenance", origin_lines(w));
      rep.outputs.emplace_back("o(K)", format_double(w.order_k));
      if (!opt.out_path.empty()) write_file(opt.out_path, ta);
      rep.findings.push_back({"wedge validated", true, ""});
    } else if (*c_detect) {
      rep.command = "detect-wedge";
      rep.inputs.emplace_back("file", file);
      TableAlgebra a = load_ta(file, opt.tol);
      auto pairs = detect_wedge(a);
      for (size_t p = 0; p < pairs.size(); ++p)
        rep.outputs.emplace_back(
            "decomposition " + std::to_string(p),
            "K={" + index_list(pairs[p].first.indices) + "} D={" +
                index_list(pairs[p].second.indices) + "}");
      rep.findings.push_back(
          {"decompositions found: " + std::to_string(pairs.size()), true,
           ""});
    } else if (*c_main2) {
      rep.command = "verify-main2";
      rep.inputs.emplace_back("file", file);
      rep.inputs.emplace_back("K", k_str);
      rep.inputs.emplace_back("D", d_str);
      TableAlgebra a = load_ta(file, opt.tol);
      ClosedSubset k = closed_subset(a, parse_index_list(k_str));
      ClosedSubset d = closed_subset(a, parse_index_list(d_str));
      std::vector<Character> chars = irr_characters(a, opt.seed);
      standard_multiplicities(a, chars);
      Main2Report m = verify_main2(a, k, d, chars, opt.seed);
      add_main2_findings(rep, m);
      rep.tables.push_back(character_table(a, chars));
      rep.tables.push_back(multiplicity_table(chars));
      // the equivalence itself is the verdict; failing conditions on a
      // non-wedge are expected, so exit status tracks only equivalence
      exit_code = m.equivalent ? 0 : 1;
      emit(rep, opt, out);
      return exit_code;
    } else if (*c_s2ta) {
      rep.command = "scheme2ta";
      rep.inputs.emplace_back("file", file);
      Scheme s = load_scm(file);
      TableAlgebra a = scheme_to_algebra(s, opt.tol);
      std::string ta = write_ta(a);
      rep.outputs.emplace_back("ta", ta);
      if (!opt.out_path.empty()) write_file(opt.out_path, ta);
      rep.findings.push_back({"adjacency algebra validated", true, ""});
    } else if (*c_squot) {
      rep.command = "scheme-quotient";
      rep.inputs.emplace_back("file", file);
      rep.inputs.emplace_back("by", by);
      Scheme s = load_scm(file);
      auto [q, epi] = scheme_quotient(s, parse_index_list(by));
      std::string scm = write_scm(q);
      rep.outputs.emplace_back("scm", scm);
      rep.outputs.emplace_back("point_map", index_list(epi.point_map));
      rep.outputs.emplace_back("rel_map", index_list(epi.rel_map));
      if (!opt.out_path.empty()) write_file(opt.out_path, scm);
      rep.findings.push_back({"quotient scheme validated", true, ""});
    } else if (*c_sub) {
      rep.command = "subscheme";
      rep.inputs.emplace_back("file", file);
      rep.inputs.emplace_back("by", by);
      rep.inputs.emplace_back("point", std::to_string(point));
      Scheme s = load_scm(file);
      Scheme r = subscheme(s, parse_index_list(by), point);
      std::string scm = write_scm(r);
      rep.outputs.emplace_back("scm", scm);
      if (!opt.out_path.empty()) write_file(opt.out_path, scm);
      rep.findings.push_back({"subscheme validated", true, ""});
    } else if (*c_swedge) {
      rep.command = "scheme-wedge";
      rep.inputs.emplace_back("base", file);
      rep.inputs.emplace_back("fiber", file2);
      rep.inputs.emplace_back("D", d_str);
      rep.inputs.emplace_back("K", k_str);
      Scheme base = load_scm(file);
      Scheme fiber = load_scm(file2);
      std::vector<int> d = parse_index_list(d_str);
      std::vector<int> k = parse_index_list(k_str);
      auto [qs, epi] = scheme_quotient(fiber, k);
      std::vector<int> piso = point_iso_str.empty()
                                  ? std::vector<int>()
                                  : parse_index_list(point_iso_str);
      std::vector<int> riso = rel_iso_str.empty()
                                  ? std::vector<int>()
                                  : parse_index_list(rel_iso_str);
      if (piso.empty()) {
        piso.resize(qs.npoints);
        std::iota(piso.begin(), piso.end(), 0);
      }
      if (riso.empty()) {
        riso.resize(qs.nrels);
        std::iota(riso.begin(), riso.end(), 0);
      }
      SchemeWedge w = uniform_scheme_wedge(base, d, fiber, k, piso, riso);
      std::string scm = write_scm(w.scheme);
      rep.outputs.emplace_back("scm", scm);
      rep.outputs.emplace_back("bridge_ta", write_ta(w.bridge.algebra));
      if (!opt.out_path.empty()) write_file(opt.out_path, scm);
      rep.findings.push_back({"scheme wedge validated", true, ""});
    } else if (*c_sverify) {
      rep.command = "verify-scheme-wedge";
      rep.inputs.emplace_back("file", file);
      rep.inputs.emplace_back("K", k_str);
      rep.inputs.emplace_back("B", b_str);
      Scheme s = load_scm(file);
      SchemeWedgeCharReport r = verify_scheme_wedge_chars(
          s, parse_index_list(k_str), parse_index_list(b_str), opt.seed);
      add_main2_findings(rep, r.main2);
      rep.findings.push_back(
          {"scheme condition A(s)A(K)+ = n_K A(s) = A(K)+A(s)",
           r.sum_condition, ""});
      if (r.trivial_k)
        rep.outputs.emplace_back("note", "trivial K (report is vacuous)");
      exit_code = r.main2.equivalent ? 0 : 1;
      emit(rep, opt, out);
      return exit_code;
    }
  } catch (const FormatError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    rep.findings.push_back({"error", false, e.what()});
  }

  if (!rep.all_pass()) exit_code = 1;
  emit(rep, opt, out);
  return exit_code;
}

int run(const std::vector<std::string>& args, std::string& out_text,
        std::string& err_text) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  out_text = out.str();
  err_text = err.str();
  return code;
}

}  // namespace tablealg::cli
