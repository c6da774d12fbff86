#include "flightgate/service.hpp"

#include "flightgate/compliance.hpp"
#include "flightgate/schema.hpp"

#include <httplib.h>

namespace flightgate {

using nlohmann::json;

QueryResult run_query(std::shared_ptr<const DualProgram> program, std::string_view query, std::size_t max_models) {
    const auto literals = parse_query(query, program->program());
    QueryResult out;
    out.program = std::move(program);
    // One model beyond the request tells whether the enumeration is complete.
    out.solutions = solve(literals, *out.program, SolveOptions{.limit = max_models + 1});
    out.exhausted = out.solutions.size() <= max_models;
    if (!out.exhausted) out.solutions.resize(max_models);
    return out;
}

QueryResult run_query(std::string_view program_text, std::string_view query, std::size_t max_models) {
    auto dp = std::make_shared<const DualProgram>(desugar_abducibles(parse_program(program_text)));
    return run_query(std::move(dp), query, max_models);
}

// ── ComplianceService ─────────────────────────────────────────────────────

namespace {

bool is_json(std::string_view content_type) {
    return content_type.substr(0, 16) == "application/json";
}

HttpResponse error(int status, const std::string& message, json details = json::array()) {
    return {status, schema::RequestError(status, message, std::move(details)).to_json()};
}

std::optional<HttpResponse> parse_body(std::string_view body, std::string_view content_type, json& out) {
    if (!is_json(content_type)) {
        return error(415, "Content-Type must be application/json");
    }
    try {
        out = json::parse(body);
    } catch (const json::parse_error& e) {
        return error(422, std::string("malformed JSON body: ") + e.what());
    }
    return std::nullopt;
}

} // namespace

ComplianceService::ComplianceService(std::shared_ptr<const ComplianceKb> kb)
    : kb_(std::move(kb)), kb_duals_(std::make_shared<const DualProgram>(kb_->program())) {}

HttpResponse ComplianceService::questionnaire() const {
    return {200, schema::questionnaire(*kb_)};
}

HttpResponse ComplianceService::check(std::string_view body, std::string_view content_type) const {
    json request;
    if (auto bad = parse_body(body, content_type, request)) return *bad;
    try {
        const AnswerSet answers = schema::parse_check_request(request, *kb_);
        return {200, schema::check_response(check_compliance(answers, *kb_), *kb_)};
    } catch (const schema::RequestError& e) {
        return {e.status(), e.to_json()};
    } catch (const Error& e) {
        return error(500, e.what());
    }
}

HttpResponse ComplianceService::query(std::string_view body, std::string_view content_type) const {
    json request;
    if (auto bad = parse_body(body, content_type, request)) return *bad;
    if (!request.is_object()) return error(422, "request body must be a JSON object");
    if (!request.contains("query") || !request["query"].is_string()) {
        return error(400, "'query' is required and must be a string", json::array({{{"field", "query"}}}));
    }
    std::size_t max_models = 1;
    if (request.contains("max_models")) {
        const auto& m = request["max_models"];
        if (!m.is_number_integer() || m.get<long long>() < 1) {
            return error(422, "'max_models' must be a positive integer");
        }
        max_models = std::min<std::size_t>(m.get<std::size_t>(), kMaxQueryModels);
    }
    if (request.contains("program") && !request["program"].is_string()) {
        return error(422, "'program' must be a string");
    }

    try {
        QueryResult result = request.contains("program")
                                 ? run_query(request["program"].get<std::string>(), request["query"].get<std::string>(),
                                             max_models)
                                 : run_query(kb_duals_, request["query"].get<std::string>(), max_models);
        const Program& program = result.program->program();
        const TemplateMap templates(program);
        json models = json::array();
        for (const auto& s : result.solutions) models.push_back(schema::model(s, program, templates));
        return {200,
                {{"schema_version", schema::kVersion}, {"models", std::move(models)}, {"exhausted", result.exhausted}}};
    } catch (const ParseError& e) {
        return error(400, e.what(), json::array({{{"line", e.line()}, {"column", e.column()}, {"token", e.token()}}}));
    } catch (const QueryError& e) {
        return error(400, e.what());
    } catch (const OddLoopError& e) {
        return error(422, e.what());
    } catch (const ProgramError& e) {
        return error(422, e.what());
    } catch (const SearchLimitError& e) {
        return error(422, e.what());
    } catch (const Error& e) {
        return error(500, e.what());
    }
}

// ── HttpServer ────────────────────────────────────────────────────────────

struct HttpServer::Impl {
    std::shared_ptr<const ComplianceService> service;
    ServerOptions options;
    httplib::Server server;
    int bound_port = -1;
};

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

} // namespace

HttpServer::HttpServer(std::shared_ptr<const ComplianceService> service, ServerOptions options)
    : impl_(std::make_unique<Impl>()) {
    impl_->service = std::move(service);
    impl_->options = std::move(options);

    auto& srv = impl_->server;
    const auto svc = impl_->service;
    srv.set_default_headers({
        {"Access-Control-Allow-Origin", impl_->options.cors_origin},
        {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
        {"Access-Control-Allow-Headers", "Content-Type"},
    });
    srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    srv.Get("/api/questionnaire",
            [svc](const httplib::Request&, httplib::Response& res) { reply(res, svc->questionnaire()); });
    srv.Post("/api/check", [svc](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc->check(req.body, req.get_header_value("Content-Type")));
    });
    srv.Post("/api/query", [svc](const httplib::Request& req, httplib::Response& res) {
        reply(res, svc->query(req.body, req.get_header_value("Content-Type")));
    });
}

HttpServer::~HttpServer() {
    stop();
}

int HttpServer::bind() {
    auto& o = impl_->options;
    if (o.port == 0) {
        impl_->bound_port = impl_->server.bind_to_any_port(o.host);
    } else {
        impl_->bound_port = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
    }
    if (impl_->bound_port < 0) {
        throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
    }
    return impl_->bound_port;
}

void HttpServer::listen() {
    impl_->server.listen_after_bind();
}

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::running() const {
    return impl_->server.is_running();
}

} // namespace flightgate
