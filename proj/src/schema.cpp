#include "flightgate/schema.hpp"

#include "flightgate/justify.hpp"

namespace flightgate::schema {

using nlohmann::json;

RequestError::RequestError(int status, std::string message, json details)
    : Error(std::move(message)), status_(status), details_(std::move(details)) {}

json RequestError::to_json() const {
    return {{"error", what()}, {"status", status_}, {"details", details_}};
}

json questionnaire(const ComplianceKb& kb) {
    json out = json::array();
    for (const auto& q : kb.questions()) {
        out.push_back({{"id", q.id}, {"condition", q.condition}, {"text", q.text}, {"display_order", q.display_order}});
    }
    return out;
}

AnswerSet parse_check_request(const json& body, const ComplianceKb& kb) {
    if (!body.is_object()) throw RequestError(422, "request body must be a JSON object");
    AnswerSet answers;
    if (body.contains("answers")) {
        const auto& a = body.at("answers");
        if (!a.is_object()) throw RequestError(422, "'answers' must be an object mapping conditions to booleans");
        json bad = json::array();
        for (const auto& [condition, value] : a.items()) {
            if (!value.is_boolean()) {
                bad.push_back({{"field", condition}, {"message", "answer must be true or false"}});
                continue;
            }
            answers[condition] = value.get<bool>();
        }
        if (!bad.empty()) throw RequestError(422, "answers must be booleans", bad);
    }
    try {
        kb.require_total(answers);
    } catch (const AnswerError& e) {
        json details = json::array();
        for (const auto& f : e.fields()) details.push_back({{"field", f.condition}, {"message", f.message}});
        throw RequestError(400, "answers must cover exactly the questionnaire conditions", details);
    }
    return answers;
}

json fix(const FixSuggestion& f, const ComplianceKb& kb) {
    json changes = json::array();
    for (const auto& c : f.changes) {
        const auto& t = kb.templates();
        const AtomId atom = kb.condition_atom(c.condition);
        changes.push_back({
            {"condition", c.condition},
            {"from", c.from},
            {"to", c.to},
            {"text", c.to ? t.text(atom) : t.literal_text(naf(atom))},
        });
    }
    json out = {{"available", f.available}, {"changes", std::move(changes)}};
    if (!f.diagnostic.empty()) out["diagnostic"] = f.diagnostic;
    return out;
}

json check_response(const ComplianceReport& report, const ComplianceKb& kb) {
    json findings = json::array();
    for (const auto& finding : report.findings) {
        findings.push_back({
            {"violation_id", finding.violation_id},
            {"rule_text", finding.rule_text},
            {"justification", render_structured(finding.proof, kb.templates())},
            {"fix", fix(finding.fix, kb)},
        });
    }
    return {
        {"schema_version", kVersion},
        {"compliant", report.compliant},
        {"elapsed_ms", report.elapsed_ms},
        {"findings", std::move(findings)},
    };
}

json model(const Solution& s, const Program& program, const TemplateMap& templates) {
    json literals = json::array();
    for (auto l : s.model.visible(program.atoms())) literals.push_back(program.literal_text(l));
    json abduced = json::array();
    for (auto l : s.model.abduced) abduced.push_back(program.literal_text(l));
    json trees = json::array();
    for (const auto& root : s.justification) {
        if (!templates.hidden(root.literal.atom)) trees.push_back(render_structured(root, templates));
    }
    json checks = json::array();
    for (const auto& root : s.constraint_checks) {
        if (!templates.hidden(root.literal.atom)) checks.push_back(render_structured(root, templates));
    }
    return {{"literals", std::move(literals)},
            {"abduced", std::move(abduced)},
            {"justification", std::move(trees)},
            {"constraint_checks", std::move(checks)}};
}

} // namespace flightgate::schema
