#pragma once

#include "flightgate/engine.hpp"
#include "flightgate/justify.hpp"
#include "flightgate/rulebase.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace flightgate {

struct Question {
    std::string id;
    std::string condition;   // atom name in the knowledge base
    std::string text;
    int display_order = 0;
};

/// Questionnaire answers: condition atom name -> yes/no.
using AnswerSet = std::map<std::string, bool>;

/// Answers that are incomplete or mention unknown conditions.
class AnswerError : public Error {
public:
    struct Field {
        std::string condition;
        std::string message;
    };

    explicit AnswerError(std::vector<Field> fields);
    const std::vector<Field>& fields() const { return fields_; }

private:
    std::vector<Field> fields_;
};

/// A rule base of `violation_n` rules plus its questionnaire. Immutable
/// once loaded; shared between concurrent checks.
class ComplianceKb {
public:
    ComplianceKb(Program program, std::vector<Question> questions, std::map<int, std::string> rule_texts);

    static ComplianceKb load(const std::filesystem::path& kb, const std::filesystem::path& questionnaire,
                             const std::filesystem::path& rule_texts = {});
    static ComplianceKb from_sources(std::string_view kb_source, std::string_view questionnaire_json,
                                     std::string_view rule_texts_json = {});

    /// The desugared rule base, without any answers.
    const Program& program() const { return program_; }
    const TemplateMap& templates() const { return templates_; }
    const std::vector<Question>& questions() const { return questions_; }
    std::vector<std::string> conditions() const;
    AtomId condition_atom(const std::string& condition) const;

    /// Ids n of every `violation_n` head, ascending.
    const std::vector<int>& violation_ids() const { return violation_ids_; }
    AtomId violation_atom(int id) const;
    /// AMA rule text, or the violation's template text when none was loaded.
    std::string rule_text(int id) const;

    /// The rule base with every questionnaire condition declared abducible.
    const DualProgram& abductive() const { return *abductive_; }

    /// Throws AnswerError unless `answers` covers exactly the questionnaire.
    void require_total(const AnswerSet& answers) const;

private:
    Program program_;
    TemplateMap templates_;
    std::vector<Question> questions_;
    std::map<int, std::string> rule_texts_;
    std::vector<int> violation_ids_;
    std::map<int, AtomId> violation_atoms_;
    std::shared_ptr<const DualProgram> abductive_;
};

/// One fact per yes answer; nothing for a no answer.
/// Throws AnswerError for conditions outside the questionnaire.
std::vector<Rule> answers_to_facts(const AnswerSet& answers, const ComplianceKb& kb);

/// The knowledge base plus the answer facts.
Program program_with_answers(const AnswerSet& answers, const ComplianceKb& kb);

std::string read_text_file(const std::filesystem::path& path);

} // namespace flightgate
