#include "flightgate/justify.hpp"

#include <algorithm>

namespace flightgate {

std::string humanize(std::string_view atom_name) {
    std::string out(atom_name);
    std::replace(out.begin(), out.end(), '_', ' ');
    return out;
}

TemplateMap::TemplateMap(const Program& program) {
    const auto& atoms = program.atoms();
    for (AtomId a = 0; a < atoms.size(); ++a) {
        const std::string* t = program.template_for(a);
        texts_.push_back(t ? *t : humanize(atoms.name(a)));
        names_.push_back(atoms.name(a));
        hidden_.push_back(atoms.hidden(a));
    }
}

std::string TemplateMap::literal_text(Literal lit) const {
    return lit.positive() ? text(lit.atom) : std::string(kNoEvidencePrefix) + text(lit.atom);
}

namespace {

std::string_view annotation(Reason r) {
    switch (r) {
        case Reason::abduced: return " (it is assumed)";
        case Reason::coinductive_assumption: return " (by coinduction)";
        case Reason::proved_above: return " (proved above)";
        default: return "";
    }
}

void render_lines(const ProofNode& node, const TemplateMap& t, std::size_t depth, std::string& out) {
    if (t.hidden(node.literal.atom)) return;
    if (!out.empty()) out += '\n';
    out.append(2 * depth, ' ');
    out += t.literal_text(node.literal);
    out += annotation(node.reason);
    for (const auto& c : node.children) render_lines(c, t, depth + 1, out);
}

} // namespace

std::string render_text(const ProofNode& root, const TemplateMap& templates) {
    std::string out;
    render_lines(root, templates, 0, out);
    return out;
}

nlohmann::json render_structured(const ProofNode& root, const TemplateMap& t) {
    if (t.hidden(root.literal.atom)) return nullptr;
    nlohmann::json children = nlohmann::json::array();
    for (const auto& c : root.children) {
        if (!t.hidden(c.literal.atom)) children.push_back(render_structured(c, t));
    }
    const std::string literal =
        root.literal.positive() ? t.atom_name(root.literal.atom) : "not " + t.atom_name(root.literal.atom);
    nlohmann::json doc = {
        {"text", t.literal_text(root.literal) + std::string(annotation(root.reason))},
        {"literal", literal},
        {"reason", reason_name(root.reason)},
        {"children", std::move(children)},
    };
    if (root.rule_index && (root.reason == Reason::rule || root.reason == Reason::fact)) {
        doc["rule_index"] = *root.rule_index;
    }
    return doc;
}

} // namespace flightgate
