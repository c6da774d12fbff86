#pragma once

#include "flightgate/proof.hpp"
#include "flightgate/rulebase.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace flightgate {

/// English text per atom, from `#pred` directives. Atoms without a template
/// fall back to their name with underscores turned into spaces.
class TemplateMap {
public:
    explicit TemplateMap(const Program& program);

    const std::string& text(AtomId atom) const { return texts_[atom]; }
    bool hidden(AtomId atom) const { return hidden_[atom]; }
    /// "there is no evidence that ..." for naf literals.
    std::string literal_text(Literal lit) const;
    const std::string& atom_name(AtomId atom) const { return names_[atom]; }

private:
    std::vector<std::string> texts_;
    std::vector<std::string> names_;
    std::vector<bool> hidden_;
};

std::string humanize(std::string_view atom_name);

inline constexpr std::string_view kNoEvidencePrefix = "there is no evidence that ";

/// One line per node, two spaces of indentation per level, no trailing
/// newline. Subtrees rooted at hidden atoms are omitted.
std::string render_text(const ProofNode& root, const TemplateMap& templates);

/// `{text, literal, reason, children}` document with hidden atoms pruned;
/// rule nodes also carry `rule_index`.
nlohmann::json render_structured(const ProofNode& root, const TemplateMap& templates);

} // namespace flightgate
