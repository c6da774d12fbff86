#include "flightgate/compliance.hpp"

#include <chrono>

namespace flightgate {

ComplianceReport check_compliance(const AnswerSet& answers, const ComplianceKb& kb) {
    kb.require_total(answers);
    const auto start = std::chrono::steady_clock::now();

    const DualProgram current(program_with_answers(answers, kb));
    ComplianceReport report;
    for (int id : kb.violation_ids()) {
        const Literal query[] = {pos(kb.violation_atom(id))};
        std::vector<Solution> found;
        try {
            found = solve(query, current, SolveOptions{.limit = 1});
        } catch (const Error& e) {
            throw Error("while checking violation_" + std::to_string(id) + ": " + e.what());
        }
        if (found.empty()) continue;

        const int targets[] = {id};
        report.findings.push_back(
            {id, kb.rule_text(id), std::move(found.front().justification.front()), fix_for(targets, answers, kb)});
    }
    report.compliant = report.findings.empty();

    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<int> active_violations(const AnswerSet& answers, const ComplianceKb& kb) {
    kb.require_total(answers);
    const DualProgram current(program_with_answers(answers, kb));
    std::vector<int> out;
    for (int id : kb.violation_ids())
        if (brave_entails(current, kb.violation_atom(id))) out.push_back(id);
    return out;
}

} // namespace flightgate
