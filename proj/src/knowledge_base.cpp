#include "flightgate/knowledge_base.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace flightgate {

namespace {

std::string join_fields(const std::vector<AnswerError::Field>& fields) {
    std::string out = "invalid answers:";
    for (const auto& f : fields) out += " " + f.condition + ": " + f.message + ";";
    return out;
}

std::optional<int> violation_number(std::string_view name) {
    constexpr std::string_view prefix = "violation_";
    if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) return std::nullopt;
    int n = 0;
    for (char c : name.substr(prefix.size())) {
        if (c < '0' || c > '9') return std::nullopt;
        n = n * 10 + (c - '0');
    }
    return n;
}

std::vector<Question> parse_questions(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_array()) throw ProgramError("questionnaire must be a JSON array");
    std::vector<Question> out;
    for (const auto& q : doc) {
        out.push_back({q.at("id").get<std::string>(), q.at("condition").get<std::string>(),
                       q.at("text").get<std::string>(), q.at("display_order").get<int>()});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Question& a, const Question& b) { return a.display_order < b.display_order; });
    return out;
}

std::map<int, std::string> parse_rule_texts(std::string_view text) {
    std::map<int, std::string> out;
    if (text.empty()) return out;
    for (const auto& r : nlohmann::json::parse(text)) {
        out[r.at("violation_id").get<int>()] = r.at("text").get<std::string>();
    }
    return out;
}

} // namespace

AnswerError::AnswerError(std::vector<Field> fields) : Error(join_fields(fields)), fields_(std::move(fields)) {}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ComplianceKb::ComplianceKb(Program program, std::vector<Question> questions, std::map<int, std::string> rule_texts)
    : program_(desugar_abducibles(program)),
      templates_(program_),
      questions_(std::move(questions)),
      rule_texts_(std::move(rule_texts)) {
    const auto report = validate(program_);
    if (!report.ok()) {
        throw OddLoopError("knowledge base has odd loops through negation involving '" +
                           program_.atoms().name(report.odd_loop_atoms.front()) + "'");
    }

    std::set<std::string> ids;
    std::set<std::string> conditions;
    for (const auto& q : questions_) {
        if (!ids.insert(q.id).second) throw ProgramError("duplicate question id '" + q.id + "'");
        if (!conditions.insert(q.condition).second) {
            throw ProgramError("condition '" + q.condition + "' has more than one question");
        }
        if (!program_.atoms().find(q.condition)) {
            throw ProgramError("question '" + q.id + "' refers to unknown atom '" + q.condition + "'");
        }
    }

    for (const auto& r : program_.rules()) {
        if (!r.head) continue;
        if (auto n = violation_number(program_.atoms().name(*r.head)); n && !violation_atoms_.count(*n)) {
            violation_atoms_[*n] = *r.head;
            violation_ids_.push_back(*n);
        }
    }
    std::sort(violation_ids_.begin(), violation_ids_.end());

    Program abductive = program_;
    for (const auto& q : questions_) {
        abductive.add_directive({Directive::Kind::abducible, program_.atom(q.condition), {}});
    }
    abductive_ = std::make_shared<const DualProgram>(desugar_abducibles(abductive));
}

ComplianceKb ComplianceKb::from_sources(std::string_view kb_source, std::string_view questionnaire_json,
                                        std::string_view rule_texts_json) {
    Program program = parse_program(kb_source);
    try {
        return ComplianceKb(std::move(program), parse_questions(questionnaire_json),
                            parse_rule_texts(rule_texts_json));
    } catch (const nlohmann::json::exception& e) {
        throw ProgramError(std::string("malformed questionnaire or rule texts: ") + e.what());
    }
}

ComplianceKb ComplianceKb::load(const std::filesystem::path& kb, const std::filesystem::path& questionnaire,
                                const std::filesystem::path& rule_texts) {
    const std::string rules = rule_texts.empty() ? std::string() : read_text_file(rule_texts);
    return from_sources(read_text_file(kb), read_text_file(questionnaire), rules);
}

std::vector<std::string> ComplianceKb::conditions() const {
    std::vector<std::string> out;
    for (const auto& q : questions_) out.push_back(q.condition);
    return out;
}

AtomId ComplianceKb::condition_atom(const std::string& condition) const {
    return program_.atom(condition);
}

AtomId ComplianceKb::violation_atom(int id) const {
    auto it = violation_atoms_.find(id);
    if (it == violation_atoms_.end()) {
        throw QueryError("knowledge base has no rule for violation_" + std::to_string(id));
    }
    return it->second;
}

std::string ComplianceKb::rule_text(int id) const {
    if (auto it = rule_texts_.find(id); it != rule_texts_.end()) return it->second;
    return templates_.text(violation_atom(id));
}

void ComplianceKb::require_total(const AnswerSet& answers) const {
    std::vector<AnswerError::Field> problems;
    std::set<std::string> known;
    for (const auto& q : questions_) {
        known.insert(q.condition);
        if (!answers.count(q.condition)) problems.push_back({q.condition, "missing answer"});
    }
    for (const auto& [condition, value] : answers) {
        if (!known.count(condition)) problems.push_back({condition, "unknown condition"});
    }
    if (!problems.empty()) throw AnswerError(std::move(problems));
}

std::vector<Rule> answers_to_facts(const AnswerSet& answers, const ComplianceKb& kb) {
    std::vector<Rule> facts;
    std::vector<AnswerError::Field> unknown;
    const auto conditions = kb.conditions();
    for (const auto& [condition, yes] : answers) {
        if (std::find(conditions.begin(), conditions.end(), condition) == conditions.end()) {
            unknown.push_back({condition, "unknown condition"});
            continue;
        }
        if (yes) facts.push_back({kb.condition_atom(condition), {}, RuleOrigin::answer});
    }
    if (!unknown.empty()) throw AnswerError(std::move(unknown));
    return facts;
}

Program program_with_answers(const AnswerSet& answers, const ComplianceKb& kb) {
    Program p = kb.program();
    for (auto& f : answers_to_facts(answers, kb)) p.add_rule(std::move(f));
    return p;
}

} // namespace flightgate
