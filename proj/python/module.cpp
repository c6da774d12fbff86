// Python bindings. Structured results cross the boundary as JSON text and are
// decoded by the package's __init__.py.

#include "flightgate/compliance.hpp"
#include "flightgate/explain.hpp"
#include "flightgate/justify.hpp"
#include "flightgate/oracle.hpp"
#include "flightgate/schema.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
namespace fg = flightgate;
using nlohmann::json;

namespace {

json changes_json(const std::vector<fg::ConditionChange>& changes) {
    json out = json::array();
    for (const auto& c : changes) out.push_back({{"condition", c.condition}, {"from", c.from}, {"to", c.to}});
    return out;
}

std::string query(const std::string& program_text, const std::string& query_text, std::size_t max_models) {
    const fg::DualProgram dp(fg::desugar_abducibles(fg::parse_program(program_text)));
    const fg::TemplateMap templates(dp.program());
    const auto literals = fg::parse_query(query_text, dp.program());
    json models = json::array();
    for (const auto& s : fg::solve(literals, dp, fg::SolveOptions{.limit = max_models})) {
        json m = fg::schema::model(s, dp.program(), templates);
        json text = json::array();
        for (const auto& root : s.justification) text.push_back(fg::render_text(root, templates));
        m["text"] = std::move(text);
        models.push_back(std::move(m));
    }
    return models.dump();
}

std::string validate(const std::string& program_text) {
    const auto p = fg::desugar_abducibles(fg::parse_program(program_text));
    const auto report = fg::validate(p);
    json atoms = json::array();
    for (auto a : report.odd_loop_atoms) atoms.push_back(p.atoms().name(a));
    return json{{"ok", report.ok()}, {"odd_loop_atoms", atoms}, {"warnings", report.warnings}}.dump();
}

std::string stable_models(const std::string& program_text) {
    const auto p = fg::parse_program(program_text);
    const auto models = fg::oracle::stable_models(p);
    const auto desugared = fg::desugar_abducibles(p);
    json out = json::array();
    for (const auto& m : models.as_atom_sets()) {
        json names = json::array();
        for (auto a : m) names.push_back(desugared.atoms().name(a));
        out.push_back(std::move(names));
    }
    return out.dump();
}

} // namespace

PYBIND11_MODULE(_flightgate, m) {
    m.doc() = "Goal-directed ASP compliance checking";

    static py::exception<fg::Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<fg::ParseError> parse_error(m, "ParseError", error.ptr());
    static py::exception<fg::QueryError> query_error(m, "QueryError", error.ptr());
    static py::exception<fg::OddLoopError> odd_loop_error(m, "OddLoopError", error.ptr());
    static py::exception<fg::PreconditionError> precondition_error(m, "PreconditionError", error.ptr());
    static py::exception<fg::AnswerError> answer_error(m, "AnswerError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const fg::ParseError& e) {
            parse_error(e.what());
        } catch (const fg::QueryError& e) {
            query_error(e.what());
        } catch (const fg::OddLoopError& e) {
            odd_loop_error(e.what());
        } catch (const fg::PreconditionError& e) {
            precondition_error(e.what());
        } catch (const fg::AnswerError& e) {
            answer_error(e.what());
        } catch (const fg::Error& e) {
            error(e.what());
        }
    });

    m.def("format_program", [](const std::string& text) { return fg::print_program(fg::parse_program(text)); });
    m.def("_validate", &validate);
    m.def("_query", &query, py::arg("program"), py::arg("query"), py::arg("max_models") = 1);
    m.def("_stable_models", &stable_models);

    py::class_<fg::ComplianceKb, std::shared_ptr<fg::ComplianceKb>>(m, "_KnowledgeBase")
        .def(py::init([](const std::filesystem::path& kb, const std::filesystem::path& questionnaire,
                         const std::filesystem::path& rules) {
                 return std::make_shared<fg::ComplianceKb>(fg::ComplianceKb::load(kb, questionnaire, rules));
             }),
             py::arg("kb"), py::arg("questionnaire"), py::arg("rules") = std::filesystem::path())
        .def("conditions", &fg::ComplianceKb::conditions)
        .def("violation_ids", &fg::ComplianceKb::violation_ids)
        .def("questionnaire", [](const fg::ComplianceKb& kb) { return fg::schema::questionnaire(kb).dump(); })
        .def("check",
             [](const fg::ComplianceKb& kb, const fg::AnswerSet& answers) {
                 fg::ComplianceReport report;
                 {
                     py::gil_scoped_release release;
                     report = fg::check_compliance(answers, kb);
                 }
                 return fg::schema::check_response(report, kb).dump();
             })
        .def("minimal_fix",
             [](const fg::ComplianceKb& kb, int id, const fg::AnswerSet& answers) {
                 return fg::schema::fix(fg::minimal_fix(id, answers, kb), kb).dump();
             })
        .def("full_compliance_fix",
             [](const fg::ComplianceKb& kb, const fg::AnswerSet& answers) {
                 return fg::schema::fix(fg::full_compliance_fix(answers, kb), kb).dump();
             })
        .def("fix_oracle", [](const fg::ComplianceKb& kb, int id, const fg::AnswerSet& answers) {
            const auto r = fg::fix_oracle(id, answers, kb);
            json sets = json::array();
            for (const auto& s : r.minimal_sets) sets.push_back(changes_json(s));
            return json{{"min_flips", r.min_flips ? json(*r.min_flips) : json(nullptr)}, {"minimal_sets", sets}}
                .dump();
        });
}
