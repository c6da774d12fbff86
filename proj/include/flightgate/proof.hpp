#pragma once

#include "flightgate/rulebase.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace flightgate {

/// Why a literal holds in a derivation.
enum class Reason : std::uint8_t {
    fact,
    rule,
    dual,                     // `not a`: every rule for a has a refuted body literal
    abduced,                  // assumed through an abducible's even loop
    coinductive_assumption,   // call met itself on the stack through an even loop
    ruleless_negation,        // `not a` for an atom with no rules
    proved_above,             // already established earlier in the same derivation
};

std::string_view reason_name(Reason r);

struct ProofNode {
    Literal literal;
    Reason reason = Reason::fact;
    std::optional<std::size_t> rule_index;   // index into Program::rules() for fact/rule nodes
    std::vector<ProofNode> children;

    std::size_t size() const;
};

} // namespace flightgate
