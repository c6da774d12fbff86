#pragma once

#include "flightgate/knowledge_base.hpp"

#include <initializer_list>
#include <string>

namespace flightgate::test {

inline std::string kb_path(const std::string& file) {
    return std::string(FLIGHTGATE_KB_DIR) + "/" + file;
}

inline const ComplianceKb& ama_kb() {
    static const ComplianceKb kb = ComplianceKb::load(kb_path("ama_general.lp"), kb_path("questionnaire.json"),
                                                      kb_path("ama_rules.json"));
    return kb;
}

/// Every condition answered no, except those listed.
inline AnswerSet answers_yes(const ComplianceKb& kb, std::initializer_list<std::string> yes = {}) {
    AnswerSet a;
    for (const auto& c : kb.conditions()) a[c] = false;
    for (const auto& c : yes) a.at(c) = true;
    return a;
}

} // namespace flightgate::test
