#pragma once

#include "flightgate/knowledge_base.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <string>
#include <string_view>

namespace flightgate {

struct HttpResponse {
    int status = 200;
    nlohmann::json body;
};

/// Result of an ad-hoc query over a rule base.
struct QueryResult {
    std::shared_ptr<const DualProgram> program;
    std::vector<Solution> solutions;
    bool exhausted = false;   // no further models exist
};

/// Parses, desugars and evaluates `query` against `program_text`.
/// Throws ParseError, QueryError, OddLoopError, ProgramError.
QueryResult run_query(std::string_view program_text, std::string_view query, std::size_t max_models);
QueryResult run_query(std::shared_ptr<const DualProgram> program, std::string_view query, std::size_t max_models);

/// Request handling for the REST API, independent of the HTTP transport.
/// Stateless: every response depends only on the request and the loaded KB.
class ComplianceService {
public:
    explicit ComplianceService(std::shared_ptr<const ComplianceKb> kb);

    /// GET /api/questionnaire
    HttpResponse questionnaire() const;
    /// POST /api/check
    HttpResponse check(std::string_view body, std::string_view content_type) const;
    /// POST /api/query
    HttpResponse query(std::string_view body, std::string_view content_type) const;

    const ComplianceKb& kb() const { return *kb_; }

private:
    std::shared_ptr<const ComplianceKb> kb_;
    std::shared_ptr<const DualProgram> kb_duals_;
};

inline constexpr std::size_t kMaxQueryModels = 100;

struct ServerOptions {
    std::string host = "0.0.0.0";
    int port = 8080;   // 0 picks a free port
    std::string cors_origin = "*";
};

/// HTTP transport over ComplianceService.
class HttpServer {
public:
    HttpServer(std::shared_ptr<const ComplianceService> service, ServerOptions options);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the socket and returns the port in use. Throws Error on failure.
    int bind();
    /// Serves until stop() is called. bind() must have succeeded.
    void listen();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace flightgate
