#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gqtk/commands.hpp"
#include "gqtk/iso.hpp"

namespace py = pybind11;
using namespace gqtk;

namespace {

RunOptions run_options(bool verify_oracles, std::size_t budget) {
  RunOptions o;
  o.verify_oracles = verify_oracles;
  o.budget = budget;
  return o;
}

// Reports cross the boundary as JSON text; the Python layer decodes them.
std::pair<int, std::string> emit(const Report& r) { return {r.exit_code, r.body.dump()}; }

py::dict verdict(const Verdict& v) {
  py::dict d;
  d["holds"] = v.holds;
  d["witness"] = v.witness;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gqtk, m) {
  m.doc() = "Finite quantales, groupoids and selection bases";

  static py::exception<Error> error(m, "Error");
  static py::exception<InputError> input_error(m, "InputError", error.ptr());
  static py::exception<ValidationError> validation_error(m, "ValidationError", error.ptr());
  static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      py::set_error(input_error, e.what());
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.attr("DEFAULT_SIZE_BUDGET") = kDefaultSizeBudget;

  m.def("run_check", [](const std::string& doc, const std::string& kind, bool verify, std::size_t budget) {
    return emit(run_guarded("check", [&] { return cmd_check(parse_json(doc), kind, run_options(verify, budget)); }));
  });
  m.def("run_build_gq", [](const std::string& doc, bool verify, std::size_t budget) {
    return emit(run_guarded("build-gq", [&] { return cmd_build_gq(parse_json(doc), run_options(verify, budget)); }));
  });
  m.def("run_reconstruct", [](const std::string& doc, bool verify, std::size_t budget) {
    return emit(run_guarded("reconstruct", [&] { return cmd_reconstruct(parse_json(doc), run_options(verify, budget)); }));
  });
  m.def("run_roundtrip", [](const std::string& doc, bool verify, std::size_t budget) {
    return emit(run_guarded("roundtrip", [&] { return cmd_roundtrip(parse_json(doc), run_options(verify, budget)); }));
  });
  m.def("run_fixtures", [](const std::string& which, bool verify) {
    return emit(run_guarded("fixtures", [&] { return cmd_fixtures(which, run_options(verify, kDefaultSizeBudget)); }));
  });
  m.def("run_search", [](std::size_t max_size, std::size_t cap, std::size_t budget, unsigned threads) {
    SearchOptions s;
    s.max_size = max_size;
    s.cap = cap;
    s.budget = budget;
    s.threads = threads;
    return emit(run_guarded("search", [&] { return cmd_search(s, {}); }));
  });
  m.def("fixture_document", [](const std::string& name) { return find_fixture(name).doc.dump(); });
  m.def("fixture_names", [] {
    std::vector<std::string> names;
    for (const auto& f : builtin_fixtures()) names.push_back(f.name);
    return names;
  });

  py::class_<FiniteSpace>(m, "Space")
      .def(py::init([](const std::string& doc) { return parse_space(parse_json(doc)); }), py::arg("json"))
      .def_property_readonly("points", &FiniteSpace::points)
      .def_property_readonly("opens", &FiniteSpace::opens)
      .def("is_sober", [](const FiniteSpace& s) { return is_sober(s).sober; })
      .def("is_t0", [](const FiniteSpace& s) { return is_t0(s); })
      .def("is_t1", [](const FiniteSpace& s) { return is_t1(s); })
      .def("closure", [](const FiniteSpace& s, std::size_t p) { return closure(s, p).carrier; })
      .def("prime_opens", [](const FiniteSpace& s) {
        std::vector<std::pair<std::size_t, Mask>> out;
        for (const auto& p : prime_opens(s)) out.emplace_back(p.point, p.open);
        return out;
      })
      .def("is_union_of_locally_closed",
           [](const FiniteSpace& s, Mask y, bool verify) { return is_union_of_locally_closed(s, y, verify); },
           py::arg("subset"), py::arg("verify_oracles") = false)
      .def("to_json", [](const FiniteSpace& s) { return space_to_json(s).dump(); });

  py::class_<FiniteQuantale>(m, "Quantale")
      .def(py::init([](const std::string& doc) { return quantale_from_data(parse_quantale(parse_json(doc))); }),
           py::arg("json"))
      .def("__len__", &FiniteQuantale::size)
      .def("leq", &FiniteQuantale::leq)
      .def("join", &FiniteQuantale::join)
      .def("meet", &FiniteQuantale::meet)
      .def("mul", &FiniteQuantale::mul)
      .def("star", &FiniteQuantale::star)
      .def_property_readonly("unit", &FiniteQuantale::unit)
      .def_property_readonly("bottom", &FiniteQuantale::bottom)
      .def_property_readonly("top", &FiniteQuantale::top)
      .def("check_axioms",
           [](const FiniteQuantale& q, bool verify) {
             py::dict d;
             for (const auto& c : check_quantale_axioms(q, {.verify_oracles = verify}).checks) d[c.axiom.c_str()] = verdict(c.verdict);
             return d;
           },
           py::arg("verify_oracles") = false)
      .def("check_sg", [](const FiniteQuantale& q) { return verdict(check_sg(q)); })
      .def("check_sgf", [](const FiniteQuantale& q) {
        const SgfReport r = check_sgf(q);
        py::dict d;
        d["SGF1"] = verdict(r.sgf1);
        d["SGF2"] = verdict(r.sgf2);
        d["SGF3"] = verdict(r.sgf3);
        return d;
      })
      .def("partial_units", [](const FiniteQuantale& q) { return partial_units(q).partial_units; })
      .def("is_distributive_lattice", [](const FiniteQuantale& q) { return verdict(is_distributive_lattice(q)); })
      .def("isomorphic",
           [](const FiniteQuantale& a, const FiniteQuantale& b) -> py::object {
             const auto res = quantale_isomorphic(a, b);
             if (const auto* iso = std::get_if<QuantaleIso>(&res)) return py::cast(iso->map);
             return py::none();
           })
      .def("to_json", [](const FiniteQuantale& q) { return quantale_to_json(q).dump(); });
}
