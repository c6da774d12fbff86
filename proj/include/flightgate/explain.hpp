#pragma once

#include "flightgate/engine.hpp"
#include "flightgate/knowledge_base.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flightgate {

struct ConditionChange {
    std::string condition;
    bool from = false;
    bool to = false;

    auto operator<=>(const ConditionChange&) const = default;
};

struct FixSuggestion {
    bool available = false;                 // false: no answer change avoids the violation
    std::vector<ConditionChange> changes;   // sorted by condition name
    PartialModel resulting_model;           // partial model of the chosen candidate
    std::size_t candidates_examined = 0;
    std::string diagnostic;                 // set when the candidate cap was hit
};

/// Upper bound on partial models examined per fix query.
inline constexpr std::size_t kFixCandidateCap = 1024;

/// Smallest set of answer flips that removes `violation_id`: every
/// questionnaire condition is made abducible, the partial models of
/// `not violation_n` are enumerated, conditions a model does not mention
/// keep the user's answer, and the candidate with the fewest flips wins.
/// Ties prefer keeping one of the user's yes answers, then more no->yes
/// changes, then condition names in lexicographic order.
/// Throws PreconditionError if the violation is not currently proven.
FixSuggestion minimal_fix(int violation_id, const AnswerSet& answers, const ComplianceKb& kb);

/// Same selection over the conjunction of `not violation_n` for every violation.
FixSuggestion full_compliance_fix(const AnswerSet& answers, const ComplianceKb& kb);

/// Minimal-fix selection without the precondition check; `targets` are the
/// violation ids that must all become unprovable.
FixSuggestion fix_for(std::span<const int> targets, const AnswerSet& answers, const ComplianceKb& kb);

AnswerSet apply_changes(AnswerSet answers, std::span<const ConditionChange> changes);

struct FixOracleResult {
    std::optional<std::size_t> min_flips;   // empty: no assignment is compliant
    std::vector<std::vector<ConditionChange>> minimal_sets;
};

inline constexpr std::size_t kFixOracleMaxConditions = 20;

/// Exhaustive ground truth for fixes: assignments are visited in order of
/// Hamming distance from `answers` and judged with the stable-model oracle;
/// the first distance with a compliant assignment is the minimum and every
/// assignment at that distance is reported. Supports at most
/// kFixOracleMaxConditions questionnaire conditions.
FixOracleResult fix_oracle(std::span<const int> targets, const AnswerSet& answers, const ComplianceKb& kb);
FixOracleResult fix_oracle(int violation_id, const AnswerSet& answers, const ComplianceKb& kb);

} // namespace flightgate
