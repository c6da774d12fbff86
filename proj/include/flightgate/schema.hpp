#pragma once

#include "flightgate/compliance.hpp"
#include "flightgate/engine.hpp"
#include "flightgate/knowledge_base.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

// JSON documents exchanged by the REST service; the CLI's `--format json`
// uses the same functions.
namespace flightgate::schema {

inline constexpr int kVersion = 1;

/// Request bodies that cannot be used. `status` is the HTTP status to send.
class RequestError : public Error {
public:
    RequestError(int status, std::string message, nlohmann::json details = nlohmann::json::array());

    int status() const { return status_; }
    nlohmann::json to_json() const;

private:
    int status_;
    nlohmann::json details_;
};

nlohmann::json questionnaire(const ComplianceKb& kb);

/// `{"answers": {condition: bool}}`. Non-object answers or non-boolean
/// values raise 422; answers that are not exactly the questionnaire raise 400.
AnswerSet parse_check_request(const nlohmann::json& body, const ComplianceKb& kb);

nlohmann::json fix(const FixSuggestion& fix, const ComplianceKb& kb);
nlohmann::json check_response(const ComplianceReport& report, const ComplianceKb& kb);

/// `{"literals", "abduced", "justification", "constraint_checks"}` for one model.
nlohmann::json model(const Solution& solution, const Program& program, const TemplateMap& templates);

} // namespace flightgate::schema
