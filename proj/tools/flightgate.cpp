#include "flightgate/compliance.hpp"
#include "flightgate/justify.hpp"
#include "flightgate/schema.hpp"
#include "flightgate/service.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <csignal>
#include <iostream>
#include <sstream>

namespace fg = flightgate;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFindings = 2;

struct KbPaths {
    std::string kb = "kb/ama_general.lp";
    std::string questionnaire = "kb/questionnaire.json";
    std::string rules = "kb/ama_rules.json";
};

void add_kb_options(CLI::App* cmd, KbPaths& paths) {
    cmd->add_option("--kb", paths.kb, "Rule base (.lp)")->envname("FLIGHTGATE_KB")->capture_default_str();
    cmd->add_option("--questionnaire", paths.questionnaire, "Questionnaire JSON")->capture_default_str();
    cmd->add_option("--rules", paths.rules, "Rule texts JSON (optional)")->capture_default_str();
}

fg::ComplianceKb load_kb(const KbPaths& p) {
    const std::filesystem::path rules = std::filesystem::exists(p.rules) ? p.rules : "";
    return fg::ComplianceKb::load(p.kb, p.questionnaire, rules);
}

std::string indent(const std::string& text, std::size_t spaces) {
    std::istringstream in(text);
    std::string line;
    std::string out;
    while (std::getline(in, line)) out += std::string(spaces, ' ') + line + "\n";
    return out;
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

void print_fix(std::ostream& os, const fg::FixSuggestion& fix, const fg::ComplianceKb& kb) {
    if (!fix.available) {
        os << "  No change of answers avoids this violation.\n";
        return;
    }
    os << "  To comply, change " << fix.changes.size() << (fix.changes.size() == 1 ? " answer:\n" : " answers:\n");
    for (const auto& c : fix.changes) {
        const auto atom = kb.condition_atom(c.condition);
        const auto& t = kb.templates();
        os << "    - " << c.condition << ": " << yes_no(c.from) << " -> " << yes_no(c.to) << "  ("
           << (c.to ? t.text(atom) : t.literal_text(fg::naf(atom))) << ")\n";
    }
    if (!fix.diagnostic.empty()) os << "  note: " << fix.diagnostic << "\n";
}

int run_check(const std::string& answers_file, const KbPaths& paths, const std::string& format, bool full_fix) {
    const auto kb = load_kb(paths);
    json doc;
    try {
        doc = json::parse(fg::read_text_file(answers_file));
    } catch (const json::parse_error& e) {
        throw fg::Error(answers_file + ": " + e.what());
    }
    if (!doc.is_object()) throw fg::Error(answers_file + ": expected a JSON object of condition -> boolean");
    // Accept both a bare map and a CheckRequest body.
    const json request = doc.contains("answers") ? doc : json{{"answers", doc}};
    const fg::AnswerSet answers = fg::schema::parse_check_request(request, kb);
    const auto report = fg::check_compliance(answers, kb);

    if (format == "json") {
        json out = fg::schema::check_response(report, kb);
        if (full_fix) out["full_fix"] = fg::schema::fix(fg::full_compliance_fix(answers, kb), kb);
        std::cout << out.dump(2) << "\n";
        return report.compliant ? kExitOk : kExitFindings;
    }

    if (report.compliant) {
        std::cout << "COMPLIANT: no violations found\n";
        return kExitOk;
    }
    std::cout << "NOT COMPLIANT: " << report.findings.size()
              << (report.findings.size() == 1 ? " violation" : " violations") << " found\n";
    for (const auto& f : report.findings) {
        std::cout << "\nRule " << f.violation_id << ": " << f.rule_text << "\n";
        std::cout << "  Why:\n" << indent(fg::render_text(f.proof, kb.templates()), 4);
        print_fix(std::cout, f.fix, kb);
    }
    if (full_fix) {
        std::cout << "\nTo clear every violation at once:\n";
        print_fix(std::cout, fg::full_compliance_fix(answers, kb), kb);
    }
    return kExitFindings;
}

int run_query(const std::string& program_file, const std::string& query, std::size_t models) {
    const auto result = fg::run_query(fg::read_text_file(program_file), query, models);
    const auto& program = result.program->program();
    const fg::TemplateMap templates(program);
    std::size_t n = 0;
    for (const auto& s : result.solutions) {
        if (n++) std::cout << "\n";
        std::cout << "Model " << n << ": " << s.model.to_string(program) << "\n";
        std::cout << "Justification:\n";
        for (const auto& root : s.justification) std::cout << indent(fg::render_text(root, templates), 2);
        if (!s.constraint_checks.empty()) {
            std::cout << "Constraints hold because:\n";
            for (const auto& root : s.constraint_checks) std::cout << indent(fg::render_text(root, templates), 2);
        }
    }
    if (result.solutions.empty()) {
        std::cout << "no models\n";
        return kExitFindings;
    }
    if (result.exhausted) std::cout << "\nno more models\n";
    return kExitOk;
}

int run_validate(const std::string& program_file) {
    const auto program = fg::desugar_abducibles(fg::parse_program(fg::read_text_file(program_file)));
    const auto report = fg::validate(program);
    for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
    if (report.ok()) {
        std::cout << "OK: " << program.rules().size() << " rules, no odd loops through negation\n";
        return kExitOk;
    }
    std::cout << "odd loops through negation involve:";
    for (auto a : report.odd_loop_atoms) std::cout << " " << program.atoms().name(a);
    std::cout << "\n";
    return kExitFindings;
}

fg::HttpServer* g_server = nullptr;

int run_serve(const KbPaths& paths, fg::ServerOptions options) {
    auto kb = std::make_shared<const fg::ComplianceKb>(load_kb(paths));
    auto service = std::make_shared<const fg::ComplianceService>(kb);
    fg::HttpServer server(service, options);
    const int port = server.bind();
    std::cerr << "flightgate: serving " << paths.kb << " on http://" << options.host << ":" << port << "\n";
    g_server = &server;
    std::signal(SIGINT, [](int) {
        if (g_server) g_server->stop();
    });
    std::signal(SIGTERM, [](int) {
        if (g_server) g_server->stop();
    });
    server.listen();
    g_server = nullptr;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compliance checking of model-aircraft flights against a goal-directed ASP rule base"};
    app.require_subcommand(1);

    KbPaths check_paths;
    std::string answers_file;
    std::string format = "text";
    bool full_fix = false;
    auto* check = app.add_subcommand("check", "Check questionnaire answers for violations");
    check->add_option("answers", answers_file, "JSON file mapping conditions to true/false")->required();
    add_kb_options(check, check_paths);
    check->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    check->add_flag("--full-fix", full_fix, "Also suggest one change set that clears every violation");

    std::string query_program = "kb/ama_general.lp";
    std::string query_text;
    std::size_t models = 1;
    auto* query = app.add_subcommand("query", "Run a query and print partial models with justifications");
    query->add_option("query", query_text, "Query, e.g. 'flies_tweety' or 'p, not q'")->required();
    query->add_option("--kb", query_program, "Program (.lp)")->envname("FLIGHTGATE_KB")->capture_default_str();
    query->add_option("--models", models, "Maximum number of models to print")->check(CLI::PositiveNumber);

    std::string validate_program = "kb/ama_general.lp";
    auto* validate = app.add_subcommand("validate", "Parse a program and report odd loops through negation");
    validate->add_option("program", validate_program, "Program (.lp)")->envname("FLIGHTGATE_KB");

    KbPaths serve_paths;
    fg::ServerOptions server_options;
    auto* serve = app.add_subcommand("serve", "Start the REST service");
    add_kb_options(serve, serve_paths);
    serve->add_option("--port", server_options.port, "TCP port")->envname("FLIGHTGATE_PORT")->capture_default_str();
    serve->add_option("--host", server_options.host, "Bind address")->capture_default_str();
    serve->add_option("--cors-origin", server_options.cors_origin, "Allowed CORS origin")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return run_check(answers_file, check_paths, format, full_fix);
        if (*query) return run_query(query_program, query_text, models);
        if (*validate) return run_validate(validate_program);
        if (*serve) return run_serve(serve_paths, server_options);
    } catch (const fg::schema::RequestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        const auto doc = e.to_json();
        for (const auto& d : doc["details"]) {
            std::cerr << "  " << d.value("field", std::string()) << ": " << d.value("message", std::string()) << "\n";
        }
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
