#include "flightgate/explain.hpp"

#include "flightgate/oracle.hpp"

#include <algorithm>
#include <tuple>

namespace flightgate {

namespace {

struct Candidate {
    std::vector<ConditionChange> changes;
    bool retains_yes = false;
    std::size_t additions = 0;   // no -> yes
    PartialModel model;

    auto rank() const {
        std::vector<std::string> names;
        for (const auto& c : changes) names.push_back(c.condition);
        return std::make_tuple(changes.size(), !retains_yes, -static_cast<long>(additions), std::move(names));
    }
};

Candidate candidate_from(const PartialModel& model, const AnswerSet& answers, const ComplianceKb& kb) {
    Candidate c;
    c.model = model;
    bool any_yes = false;
    for (const auto& condition : kb.conditions()) {
        const bool user = answers.at(condition);
        const AtomId atom = kb.condition_atom(condition);
        bool value = user;
        if (model.holds(pos(atom))) {
            value = true;
        } else if (model.holds(naf(atom))) {
            value = false;
        }
        if (user) {
            any_yes = true;
            if (value) c.retains_yes = true;
        }
        if (value != user) {
            c.changes.push_back({condition, user, value});
            if (value) ++c.additions;
        }
    }
    if (!any_yes) c.retains_yes = true;   // vacuous when the user answered all no
    std::sort(c.changes.begin(), c.changes.end());
    return c;
}

bool proven(int violation_id, const DualProgram& dp, const ComplianceKb& kb) {
    return brave_entails(dp, kb.violation_atom(violation_id));
}

} // namespace

AnswerSet apply_changes(AnswerSet answers, std::span<const ConditionChange> changes) {
    for (const auto& c : changes) answers[c.condition] = c.to;
    return answers;
}

FixSuggestion fix_for(std::span<const int> targets, const AnswerSet& answers, const ComplianceKb& kb) {
    kb.require_total(answers);
    std::vector<Literal> query;
    for (int id : targets) query.push_back(naf(kb.violation_atom(id)));

    FixSuggestion out;
    std::optional<Candidate> best;
    const SolveOptions options{.limit = kFixCandidateCap};
    out.candidates_examined = solve(query, kb.abductive(), options, [&](const Solution& s) {
        Candidate c = candidate_from(s.model, answers, kb);
        if (!best || c.rank() < best->rank()) best = std::move(c);
        return true;
    });
    if (out.candidates_examined >= kFixCandidateCap) {
        out.diagnostic = "candidate enumeration stopped at " + std::to_string(kFixCandidateCap) +
                         " partial models; the suggestion is the best among those";
    }
    if (best) {
        out.available = true;
        out.changes = std::move(best->changes);
        out.resulting_model = std::move(best->model);
    }
    return out;
}

FixSuggestion minimal_fix(int violation_id, const AnswerSet& answers, const ComplianceKb& kb) {
    kb.require_total(answers);
    const DualProgram current(program_with_answers(answers, kb));
    if (!proven(violation_id, current, kb)) {
        throw PreconditionError("violation_" + std::to_string(violation_id) +
                                " does not hold for these answers; there is nothing to fix");
    }
    const int targets[] = {violation_id};
    return fix_for(targets, answers, kb);
}

FixSuggestion full_compliance_fix(const AnswerSet& answers, const ComplianceKb& kb) {
    kb.require_total(answers);
    const DualProgram current(program_with_answers(answers, kb));
    std::vector<int> active;
    for (int id : kb.violation_ids())
        if (proven(id, current, kb)) active.push_back(id);
    if (active.empty()) {
        FixSuggestion none;
        none.available = true;
        return none;
    }
    return fix_for(kb.violation_ids(), answers, kb);
}

// ── Exhaustive oracle ─────────────────────────────────────────────────────

FixOracleResult fix_oracle(std::span<const int> targets, const AnswerSet& answers, const ComplianceKb& kb) {
    kb.require_total(answers);
    const auto conditions = kb.conditions();
    const std::size_t n = conditions.size();
    if (n > kFixOracleMaxConditions) {
        throw PreconditionError("fix oracle supports at most " + std::to_string(kFixOracleMaxConditions) +
                                " conditions, questionnaire has " + std::to_string(n));
    }
    std::vector<AtomId> target_atoms;
    for (int id : targets) target_atoms.push_back(kb.violation_atom(id));

    auto compliant = [&](const AnswerSet& a) {
        const auto models = oracle::stable_models(program_with_answers(a, kb));
        for (auto atom : target_atoms)
            if (models.contains_model_with(atom)) return false;
        return true;
    };

    FixOracleResult out;
    for (std::size_t k = 0; k <= n && !out.min_flips; ++k) {
        // Every k-subset of conditions, via permutations of a selection mask.
        std::vector<bool> flip(n, false);
        std::fill(flip.begin(), flip.begin() + static_cast<long>(k), true);
        do {
            std::vector<ConditionChange> changes;
            for (std::size_t i = 0; i < n; ++i) {
                if (!flip[i]) continue;
                const bool user = answers.at(conditions[i]);
                changes.push_back({conditions[i], user, !user});
            }
            if (compliant(apply_changes(answers, changes))) {
                std::sort(changes.begin(), changes.end());
                out.minimal_sets.push_back(std::move(changes));
                out.min_flips = k;
            }
        } while (std::prev_permutation(flip.begin(), flip.end()));
    }
    std::sort(out.minimal_sets.begin(), out.minimal_sets.end());
    return out;
}

FixOracleResult fix_oracle(int violation_id, const AnswerSet& answers, const ComplianceKb& kb) {
    const int targets[] = {violation_id};
    return fix_oracle(targets, answers, kb);
}

} // namespace flightgate
