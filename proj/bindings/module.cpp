#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "omlkit/accept.hpp"
#include "omlkit/equations.hpp"
#include "omlkit/freeoml.hpp"
#include "omlkit/hilbert.hpp"
#include "omlkit/model.hpp"
#include "omlkit/term.hpp"

namespace py = pybind11;
using namespace oml;

namespace {

Rel rel_from_string(const std::string& rel) {
    if (rel == "=" || rel == "==")
        return Rel::Equal;
    if (rel == "<=")
        return Rel::Leq;
    throw UnknownName("relation must be '=' or '<='");
}

Law law_from_string(const std::string& law) {
    if (law == "ortholattice")
        return Law::Ortholattice;
    if (law == "oml")
        return Law::Oml;
    if (law == "woml")
        return Law::Woml;
    throw UnknownName("law must be ortholattice, oml or woml");
}

} // namespace

PYBIND11_MODULE(omlkit, m) {
    m.doc() = "Two-generator free orthomodular lattice computations and finite "
              "ortholattice model checking";

    py::register_exception<ParseError>(m, "TermParseError");
    py::register_exception<FormatError>(m, "ModelFormatError");
    py::register_exception<NotALattice>(m, "NotALatticeError");
    py::register_exception<NotOrtholattice>(m, "NotOrtholatticeError");
    py::register_exception<UnknownName>(m, "UnknownNameError");
    py::register_exception<TooManyVariables>(m, "TooManyVariablesError");
    py::register_exception<DimensionMismatch>(m, "DimensionMismatchError");

    py::class_<Term>(m, "Term")
        .def("__str__", [](const Term& t) { return print(t); })
        .def("__repr__", [](const Term& t) { return "Term(" + print(t) + ")"; })
        .def("__eq__", [](const Term& a, const Term& b) { return a == b; })
        .def("expand", [](const Term& t) { return expand(t); })
        .def("variables", [](const Term& t) { return variables(t); })
        .def("connectives", [](const Term& t) { return connective_count(t); });

    m.def("parse", [](const std::string& text) { return parse(text); },
          "Parse a term from the ASCII grammar");
    m.def("print_term", [](const Term& t) { return print(t); });
    m.def("expand", [](const Term& t) { return expand(t); });
    m.def("variables", [](const Term& t) { return variables(t); });

    m.def("beran", [](const std::string& expr) { return beran_index(eval2(parse(expr))); },
          "Beran index (1..96) of a term with at most two variables");
    m.def("canonical_term", [](int n) { return canonical_term(n); },
          "Minimal term over a,b for a Beran index");
    m.def("product_table", [] {
        auto t = product_table();
        std::vector<std::vector<int>> out;
        for (const auto& row : t)
            out.emplace_back(row.begin(), row.end());
        return out;
    });
    m.def("closure",
          [](const std::vector<std::string>& seeds, const std::vector<std::string>& ops) {
              std::set<FreeElem> seed_elems;
              for (const std::string& s : seeds)
                  seed_elems.insert(eval_ab(parse(s)));
              std::vector<Term> op_terms;
              op_terms.reserve(ops.size());
              for (const std::string& o : ops)
                  op_terms.push_back(parse(o));
              std::set<int> out;
              for (const FreeElem& e : closure(seed_elems, op_terms))
                  out.insert(beran_index(e));
              return std::vector<int>(out.begin(), out.end());
          },
          "Beran indices reachable from seed terms under op terms (both over a,b)");

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("holds", &CheckResult::holds)
        .def_readonly("assignments_checked", &CheckResult::assignments_checked)
        .def_readonly("note", &CheckResult::note)
        .def_property_readonly("witness",
                               [](const CheckResult& r) -> py::object {
                                   if (!r.witness)
                                       return py::none();
                                   return py::cast(*r.witness);
                               })
        .def("__bool__", [](const CheckResult& r) { return r.holds; })
        .def("__repr__", [](const CheckResult& r) {
            return std::string("CheckResult(") + (r.holds ? "holds" : "fails") + ")";
        });

    py::class_<ThetaReport>(m, "ThetaReport")
        .def_readonly("index", &ThetaReport::index)
        .def_readonly("reflexive", &ThetaReport::reflexive)
        .def_readonly("symmetric", &ThetaReport::symmetric)
        .def_readonly("transitive", &ThetaReport::transitive)
        .def_readonly("meet_compatible", &ThetaReport::meet_compatible)
        .def_readonly("join_compatible", &ThetaReport::join_compatible)
        .def_readonly("ortho_compatible", &ThetaReport::ortho_compatible)
        .def_readonly("identity", &ThetaReport::identity)
        .def_readonly("pairs", &ThetaReport::pairs)
        .def_readonly("failures", &ThetaReport::failures)
        .def("is_equivalence", &ThetaReport::is_equivalence)
        .def("is_congruence", &ThetaReport::is_congruence);

    py::class_<Model>(m, "Model")
        .def_static("builtin", [](const std::string& name) { return Model::builtin(name); })
        .def_static("load", [](const std::string& source) { return Model::load(source); })
        .def_property_readonly("name", [](const Model& m_) { return m_.name(); })
        .def("__len__", [](const Model& m_) { return m_.size(); })
        .def_property_readonly("elements", [](const Model& m_) { return m_.elements(); })
        .def("check_equation",
             [](const Model& m_, const Term& lhs, const std::string& rel, const Term& rhs,
                const std::string& mode, std::uint64_t trials, std::uint64_t seed) {
                 CheckMode cm = mode == "random" ? CheckMode::random(trials, seed)
                                                 : CheckMode::exhaustive();
                 return m_.check_equation(lhs, rel_from_string(rel), rhs, cm);
             },
             py::arg("lhs"), py::arg("rel"), py::arg("rhs"), py::arg("mode") = "exhaustive",
             py::arg("trials") = 1000, py::arg("seed") = 0)
        .def("check_law", [](const Model& m_, const std::string& law) {
            return m_.check_law(law_from_string(law));
        })
        .def("iff_characterization", &Model::iff_characterization)
        .def("commutes",
             [](const Model& m_, const std::string& p, const std::string& q) {
                 return m_.commutes(m_.index_of(p), m_.index_of(q));
             })
        .def("foulis_holland", &Model::foulis_holland)
        .def("theta_relation", &Model::theta_relation)
        .def("evaluate",
             [](const Model& m_, const Term& t, const std::map<std::string, std::string>& asg) {
                 std::map<std::string, int> indices;
                 for (const auto& [var, id] : asg)
                     indices[var] = m_.index_of(id);
                 return m_.id(m_.evaluate(t, indices));
             })
        .def("__repr__", [](const Model& m_) {
            return "Model(" + m_.name() + ", " + std::to_string(m_.size()) + " elements)";
        });

    py::class_<Subspace>(m, "Subspace")
        .def_property_readonly("dim", &Subspace::dim)
        .def_property_readonly("ambient_dim", &Subspace::ambient_dim)
        .def("__eq__", [](const Subspace& a, const Subspace& b) { return a == b; })
        .def("__str__", &Subspace::to_string)
        .def("__repr__", &Subspace::to_string);

    m.def("random_subspace", &random_subspace, py::arg("n"), py::arg("seed"));
    m.def("subspace_meet", [](const Subspace& u, const Subspace& v) { return meet(u, v); });
    m.def("subspace_join", [](const Subspace& u, const Subspace& v) { return join(u, v); });
    m.def("subspace_ortho", [](const Subspace& u) { return ortho(u); });
    m.def("subspace_leq", [](const Subspace& u, const Subspace& v) { return leq(u, v); });

    py::class_<SubspaceCheckResult>(m, "SubspaceCheckResult")
        .def_readonly("holds", &SubspaceCheckResult::holds)
        .def_readonly("trials_checked", &SubspaceCheckResult::trials_checked)
        .def_property_readonly("witness",
                               [](const SubspaceCheckResult& r) {
                                   std::map<std::string, std::string> out;
                                   for (const auto& [var, sub] : r.witness)
                                       out[var] = sub.to_string();
                                   return out;
                               })
        .def("__bool__", [](const SubspaceCheckResult& r) { return r.holds; });

    m.def("check_equation_random",
          [](int n, const Term& lhs, const std::string& rel, const Term& rhs,
             std::uint64_t trials, std::uint64_t seed) {
              return check_equation_random(n, lhs, rel_from_string(rel), rhs, trials, seed);
          },
          py::arg("n"), py::arg("lhs"), py::arg("rel"), py::arg("rhs"),
          py::arg("trials") = 1000, py::arg("seed") = 0);

    m.def("builtin_equations", [] {
        std::vector<std::tuple<std::string, std::string, std::string, std::string>> out;
        for (const Equation& eq : builtin_equations())
            out.emplace_back(eq.name, eq.lhs_text, eq.rel == Rel::Equal ? "=" : "<=",
                             eq.rhs_text);
        return out;
    });

    m.def("run_acceptance",
          [](std::uint64_t seed) {
              AcceptanceOutcome outcome = run_acceptance(seed);
              py::dict out;
              out["all_pass"] = outcome.all_pass;
              out["report_body"] = outcome.report_body;
              py::list criteria;
              for (const CriterionResult& c : outcome.criteria)
                  criteria.append(py::make_tuple(c.number, c.name, c.pass, c.detail));
              out["criteria"] = criteria;
              return out;
          },
          py::arg("seed") = 0);
}
