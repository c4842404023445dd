#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tablealg/io.hpp"
#include "tablealg/wedge.hpp"

namespace py = pybind11;
using namespace tablealg;

namespace {

TableAlgebra build_from_nested(
    const std::vector<std::string>& labels,
    const std::vector<std::vector<std::vector<double>>>& lam,
    const std::vector<int>& star, double tol) {
  int d = static_cast<int>(labels.size());
  std::vector<double> flat(static_cast<size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        flat[(static_cast<size_t>(i) * d + j) * d + k] = lam.at(i).at(j).at(k);
  return TableAlgebra::build(d, labels, std::move(flat), star, tol);
}

py::dict main2_dict(const Main2Report& m) {
  py::dict d;
  d["normal_and_stabilized"] = m.normal_and_stabilized;
  d["reconstruction"] = m.reconstruction;
  d["restriction_and_vanishing"] = m.restriction_and_vanishing;
  d["multiplicity_ratio"] = m.multiplicity_ratio;
  d["equivalent"] = m.equivalent;
  d["witness"] = m.witness;
  return d;
}

}  // namespace

PYBIND11_MODULE(_tablealg, m) {
  m.doc() = "table algebras, association schemes and their wedge products";

  py::register_exception<Error>(m, "TableAlgError");

  py::class_<TableAlgebra>(m, "TableAlgebra")
      .def_property_readonly("rank", &TableAlgebra::rank)
      .def_property_readonly("labels",
                             [](const TableAlgebra& a) { return a.labels(); })
      .def_property_readonly("star",
                             [](const TableAlgebra& a) { return a.star(); })
      .def_property_readonly(
          "degrees",
          [](const TableAlgebra& a) -> Eigen::VectorXd { return a.degrees(); })
      .def("lam", &TableAlgebra::lambda, py::arg("i"), py::arg("j"),
           py::arg("k"))
      .def("order", [](const TableAlgebra& a) { return a.order(); })
      .def("is_standard", &TableAlgebra::is_standard)
      .def("__repr__", [](const TableAlgebra& a) {
        return "<TableAlgebra rank=" + std::to_string(a.rank()) + ">";
      });

  py::class_<ClosedSubset>(m, "ClosedSubset")
      .def_readonly("indices", &ClosedSubset::indices)
      .def("__repr__", [](const ClosedSubset& s) {
        std::string r = "<ClosedSubset {";
        for (size_t i = 0; i < s.indices.size(); ++i)
          r += (i ? "," : "") + std::to_string(s.indices[i]);
        return r + "}>";
      });

  py::class_<AlgebraHom>(m, "AlgebraHom")
      .def_readonly("image_index", &AlgebraHom::image_index)
      .def_readonly("image_scalar", &AlgebraHom::image_scalar)
      .def_property_readonly("source",
                             [](const AlgebraHom& h) { return h.source; })
      .def_property_readonly("target",
                             [](const AlgebraHom& h) { return h.target; });

  py::class_<Character>(m, "Character")
      .def_property_readonly(
          "values",
          [](const Character& c) -> Eigen::VectorXcd { return c.values; })
      .def_property_readonly("degree", &Character::degree)
      .def_property_readonly("multiplicity", [](const Character& c) {
        return c.multiplicity ? py::cast(*c.multiplicity)
                              : py::object(py::none());
      });

  py::class_<Representation>(m, "Representation")
      .def_readonly("dimension", &Representation::dimension)
      .def_readonly("matrices", &Representation::matrices);

  py::class_<WedgeProduct>(m, "WedgeProduct")
      .def_readonly("algebra", &WedgeProduct::algebra)
      .def_readonly("k", &WedgeProduct::k)
      .def_readonly("n", &WedgeProduct::n)
      .def_readonly("order_k", &WedgeProduct::order_k)
      .def_property_readonly("basis_origin", [](const WedgeProduct& w) {
        std::vector<std::pair<std::string, int>> out;
        for (const auto& o : w.basis_origin)
          out.emplace_back(o.kind == BasisOrigin::FromD ? "D" : "Bbar",
                           o.index);
        return out;
      });

  py::class_<Scheme>(m, "Scheme")
      .def_readonly("npoints", &Scheme::npoints)
      .def_readonly("nrels", &Scheme::nrels)
      .def_readonly("valencies", &Scheme::valencies)
      .def("rel", &Scheme::rel)
      .def("__repr__", [](const Scheme& s) {
        return "<Scheme points=" + std::to_string(s.npoints) +
               " relations=" + std::to_string(s.nrels) + ">";
      });

  py::class_<SchemeEpimorphism>(m, "SchemeEpimorphism")
      .def_readonly("point_map", &SchemeEpimorphism::point_map)
      .def_readonly("rel_map", &SchemeEpimorphism::rel_map);

  // construction and io
  m.def("build_algebra", &build_from_nested, py::arg("labels"),
        py::arg("lam"), py::arg("star"), py::arg("tol") = kDefaultTol,
        "validate a structure-constant tensor and build the algebra");
  m.def("parse_ta", &parse_ta, py::arg("text"), py::arg("tol") = kDefaultTol);
  m.def("load_ta", &load_ta, py::arg("path"), py::arg("tol") = kDefaultTol);
  m.def("write_ta", &write_ta);
  m.def("parse_scm", &parse_scm);
  m.def("load_scm", &load_scm);
  m.def("write_scm", &write_scm);
  m.def("make_scheme", [](int npoints, const std::vector<std::vector<int>>& rows) {
    std::vector<int> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return make_scheme(npoints, std::move(flat));
  });

  // core operations
  m.def("rescale_to_standard", [](const TableAlgebra& a) {
    auto [alg, scaling] = rescale_to_standard(a);
    return py::make_tuple(alg, Eigen::VectorXd(scaling));
  });
  m.def("closed_subset", &closed_subset);
  m.def("complex_product", &complex_product);
  m.def("closure", &closure);
  m.def("all_closed_subsets", &all_closed_subsets, py::arg("a"),
        py::arg("cap") = 16);
  m.def("is_normal", &is_normal);
  m.def("stabilizer", &stabilizer);

  // homomorphisms and quotients
  m.def("double_cosets", [](const TableAlgebra& a, const ClosedSubset& n) {
    DoubleCosetPartition p = double_cosets(a, n);
    return py::make_tuple(p.blocks, p.representatives, p.block_of);
  });
  m.def("quotient", [](const TableAlgebra& a, const ClosedSubset& n) {
    QuotientResult q = quotient(a, n);
    return py::make_tuple(q.algebra, q.cosets.block_of);
  });
  m.def("make_hom", [](const TableAlgebra& src, const TableAlgebra& tgt,
                       const std::vector<int>& idx,
                       const std::vector<double>& sc) {
    AlgebraHom h{src, tgt, idx, sc};
    HomCheck c = validate_hom(h);
    if (!c.ok) throw InvalidHom(c.detail);
    return h;
  });
  m.def("validate_hom", [](const AlgebraHom& h) {
    HomCheck c = validate_hom(h);
    return py::make_tuple(c.ok, c.witness_i, c.witness_j, c.detail);
  });
  m.def("hom_kernel", &hom_kernel);
  m.def("trivial_hom", &trivial_hom);
  m.def("canonical_epi", &canonical_epi);
  m.def("first_isomorphism_check", &first_isomorphism_check);
  m.def("span_subalgebra", &span_subalgebra);

  // characters and representations
  m.def("regular_representation", &regular_representation);
  m.def("center_basis", &center_basis);
  m.def("irr_characters", &irr_characters, py::arg("a"), py::arg("seed") = 0);
  m.def("standard_multiplicities",
        [](const TableAlgebra& a, std::vector<Character> chars) {
          standard_multiplicities(a, chars);
          return chars;
        });
  m.def("char_kernel", &char_kernel);
  m.def("irr_of_quotient", &irr_of_quotient);
  m.def("inner_product", &inner_product);
  m.def("irr_representations", &irr_representations, py::arg("a"),
        py::arg("seed") = 0, py::arg("cap") = 32);

  // wedge products
  m.def("wedge_product", &wedge_product);
  m.def("wreath_product", &wreath_product);
  m.def("detect_wedge", &detect_wedge, py::arg("a"), py::arg("cap") = 16);
  m.def("lift_character", [](const WedgeProduct& w, const Character& c,
                             const std::string& which) {
    return lift_character(w, c,
                          which == "D" ? LiftFactor::FromDFactor
                                       : LiftFactor::FromBFactor);
  });
  m.def("lift_all_characters", &lift_all_characters);
  m.def("verify_main2",
        [](const TableAlgebra& a, const ClosedSubset& k, const ClosedSubset& d,
           const std::vector<Character>& chars, std::uint64_t seed) {
          return main2_dict(verify_main2(a, k, d, chars, seed));
        },
        py::arg("a"), py::arg("k"), py::arg("d"), py::arg("chars"),
        py::arg("seed") = 0);

  // schemes
  m.def("scheme_to_algebra", &scheme_to_algebra, py::arg("s"),
        py::arg("tol") = kDefaultTol);
  m.def("scheme_quotient", [](const Scheme& s, const std::vector<int>& h) {
    auto [q, epi] = scheme_quotient(s, h);
    return py::make_tuple(q, epi);
  });
  m.def("subscheme", &subscheme);
  m.def("uniform_scheme_wedge",
        [](const Scheme& base, const std::vector<int>& d, const Scheme& fiber,
           const std::vector<int>& k, const std::vector<int>& piso,
           const std::vector<int>& riso) {
          SchemeWedge w = uniform_scheme_wedge(base, d, fiber, k, piso, riso);
          return py::make_tuple(w.scheme, w.bridge);
        });
  m.def("verify_scheme_wedge_chars",
        [](const Scheme& s, const std::vector<int>& k,
           const std::vector<int>& b, std::uint64_t seed) {
          SchemeWedgeCharReport r = verify_scheme_wedge_chars(s, k, b, seed);
          py::dict d = main2_dict(r.main2);
          d["sum_condition"] = r.sum_condition;
          d["trivial_k"] = r.trivial_k;
          return d;
        },
        py::arg("s"), py::arg("k"), py::arg("b"), py::arg("seed") = 0);
}
