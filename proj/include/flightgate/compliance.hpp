#pragma once

#include "flightgate/explain.hpp"
#include "flightgate/knowledge_base.hpp"
#include "flightgate/proof.hpp"

#include <string>
#include <vector>

namespace flightgate {

struct ViolationFinding {
    int violation_id = 0;
    std::string rule_text;
    ProofNode proof;   // rooted at violation_n
    FixSuggestion fix;
};

struct ComplianceReport {
    bool compliant = true;
    std::vector<ViolationFinding> findings;   // ascending violation_id
    double elapsed_ms = 0.0;                  // engine and fix time only
};

/// Queries every `violation_n` against the rule base plus the answer facts
/// and attaches a justification and a minimal fix to each one that holds.
ComplianceReport check_compliance(const AnswerSet& answers, const ComplianceKb& kb);

/// Ids of the violations that hold for `answers`, without proofs or fixes.
std::vector<int> active_violations(const AnswerSet& answers, const ComplianceKb& kb);

} // namespace flightgate
