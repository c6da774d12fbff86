#include "flightgate/rulebase.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace flightgate {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column, std::string token)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      detail_(std::move(message)),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

// ── AtomTable / Program ───────────────────────────────────────────────────

AtomId AtomTable::intern(std::string_view name) {
    if (auto it = index_.find(std::string(name)); it != index_.end()) {
        return it->second;
    }
    auto id = static_cast<AtomId>(entries_.size());
    entries_.push_back({std::string(name), false, std::nullopt});
    index_.emplace(std::string(name), id);
    return id;
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

void AtomTable::link_abducible(AtomId atom, AtomId hidden_atom) {
    entries_[atom].partner = hidden_atom;
    entries_[hidden_atom].partner = atom;
    entries_[hidden_atom].hidden = true;
}

void Program::remove_directives(Directive::Kind kind) {
    std::erase_if(directives_, [kind](const Directive& d) { return d.kind == kind; });
}

AtomId Program::atom(std::string_view name) const {
    if (auto id = atoms_.find(name)) {
        return *id;
    }
    throw QueryError("unknown atom '" + std::string(name) + "'");
}

std::string Program::literal_text(Literal lit) const {
    return lit.positive() ? atoms_.name(lit.atom) : "not " + atoms_.name(lit.atom);
}

std::string Program::rule_text(const Rule& rule) const {
    std::string out;
    if (rule.head) {
        out = atoms_.name(*rule.head);
    }
    if (!rule.body.empty()) {
        out += rule.head ? " :- " : ":- ";
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            if (i) out += ", ";
            out += literal_text(rule.body[i]);
        }
    }
    return out + ".";
}

const std::string* Program::template_for(AtomId atom) const {
    for (const auto& d : directives_) {
        if (d.kind == Directive::Kind::template_text && d.atom == atom) {
            return &d.text;
        }
    }
    return nullptr;
}

std::vector<AtomId> Program::abducible_directives() const {
    std::vector<AtomId> out;
    for (const auto& d : directives_) {
        if (d.kind == Directive::Kind::abducible) {
            out.push_back(d.atom);
        }
    }
    return out;
}

namespace {

using NamedLiteral = std::pair<std::string, Sign>;

struct NamedRule {
    std::optional<std::string> head;
    std::vector<NamedLiteral> body;
    RuleOrigin origin;
    auto operator<=>(const NamedRule&) const = default;
};

std::vector<NamedRule> named_rules(const Program& p) {
    std::vector<NamedRule> out;
    for (const auto& r : p.rules()) {
        NamedRule nr{std::nullopt, {}, r.origin};
        if (r.head) nr.head = p.atoms().name(*r.head);
        for (auto l : r.body) nr.body.emplace_back(p.atoms().name(l.atom), l.sign);
        out.push_back(std::move(nr));
    }
    return out;
}

std::vector<std::tuple<int, std::string, std::string>> named_directives(const Program& p) {
    std::vector<std::tuple<int, std::string, std::string>> out;
    for (const auto& d : p.directives()) {
        out.emplace_back(static_cast<int>(d.kind), p.atoms().name(d.atom), d.text);
    }
    return out;
}

} // namespace

bool operator==(const Program& a, const Program& b) {
    return named_rules(a) == named_rules(b) && named_directives(a) == named_directives(b);
}

// ── Lexer ─────────────────────────────────────────────────────────────────

namespace {

enum class Tok { ident, kw_not, if_, query, dot, comma, double_colon, string, abducible, pred, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space();
        const std::size_t line = line_;
        const std::size_t col = col_;
        if (pos_ >= src_.size()) {
            return {Tok::end, "<end of input>", line, col};
        }
        const char c = src_[pos_];
        if (std::islower(static_cast<unsigned char>(c))) {
            std::string word = take_word();
            if (pos_ < src_.size() && src_[pos_] == '(') {
                fail("atoms must be ground propositions; write e.g. 'bird_tweety' instead of 'bird(tweety)'",
                     line_, col_, "(");
            }
            if (word == "not") return {Tok::kw_not, word, line, col};
            return {Tok::ident, word, line, col};
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            std::string word = take_word();
            fail("atom names must start with a lowercase letter (variables are not supported)", line, col, word);
        }
        if (c == '#') {
            advance();
            std::string word = take_word();
            if (word == "abducible") return {Tok::abducible, "#" + word, line, col};
            if (word == "pred") return {Tok::pred, "#" + word, line, col};
            fail("unknown directive", line, col, "#" + word);
        }
        if (c == '\'') {
            return {Tok::string, take_string(line, col), line, col};
        }
        if (starts_with(":-")) {
            advance(2);
            return {Tok::if_, ":-", line, col};
        }
        if (starts_with("::")) {
            advance(2);
            return {Tok::double_colon, "::", line, col};
        }
        if (starts_with("?-")) {
            advance(2);
            return {Tok::query, "?-", line, col};
        }
        if (c == '.') {
            advance();
            return {Tok::dot, ".", line, col};
        }
        if (c == ',') {
            advance();
            return {Tok::comma, ",", line, col};
        }
        if (c == '(' || c == ')') {
            fail("atoms must be ground propositions; parentheses are not supported", line, col, std::string(1, c));
        }
        fail("unexpected character", line, col, std::string(1, c));
    }

    [[noreturn]] static void fail(const std::string& msg, std::size_t line, std::size_t col, std::string tok) {
        throw ParseError(msg + " (at '" + tok + "')", line, col, std::move(tok));
    }

private:
    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string take_word() {
        std::string out;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
            out.push_back(c);
            advance();
        }
        return out;
    }

    std::string take_string(std::size_t line, std::size_t col) {
        advance();   // opening quote
        std::string out;
        while (true) {
            if (pos_ >= src_.size()) {
                fail("unterminated template string", line, col, "'");
            }
            const char c = src_[pos_];
            if (c == '\'') {
                advance();
                return out;
            }
            if (c == '\\') {
                advance();
                if (pos_ >= src_.size() || (src_[pos_] != '\'' && src_[pos_] != '\\')) {
                    fail("only \\' and \\\\ escapes are allowed in template strings", line_, col_, "\\");
                }
            }
            out.push_back(src_[pos_]);
            advance();
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

// ── Parser ────────────────────────────────────────────────────────────────

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { bump(); }

    Program program() {
        Program p;
        std::set<AtomId> templated;
        while (cur_.kind != Tok::end) {
            if (cur_.kind == Tok::abducible) {
                bump();
                AtomId a = atom(p);
                expect(Tok::dot, "'.'");
                p.add_directive({Directive::Kind::abducible, a, {}});
            } else if (cur_.kind == Tok::pred) {
                const Token at = cur_;
                bump();
                AtomId a = atom(p);
                expect(Tok::double_colon, "'::'");
                if (cur_.kind != Tok::string) unexpected("quoted template text");
                std::string text = cur_.text;
                bump();
                expect(Tok::dot, "'.'");
                if (!templated.insert(a).second) {
                    throw ParseError("duplicate #pred template for atom '" + p.atoms().name(a) + "'", at.line,
                                     at.column, at.text);
                }
                p.add_directive({Directive::Kind::template_text, a, std::move(text)});
            } else if (cur_.kind == Tok::if_) {
                bump();
                Rule r;
                r.body = body(p);
                expect(Tok::dot, "'.'");
                p.add_rule(std::move(r));
            } else {
                Rule r;
                r.head = atom(p);
                if (cur_.kind == Tok::if_) {
                    bump();
                    r.body = body(p);
                }
                expect(Tok::dot, "'.'");
                p.add_rule(std::move(r));
            }
        }
        return p;
    }

    std::vector<std::pair<std::string, Sign>> query() {
        if (cur_.kind == Tok::query) bump();
        std::vector<std::pair<std::string, Sign>> out;
        do {
            if (!out.empty()) bump();   // comma
            Sign s = Sign::positive;
            if (cur_.kind == Tok::kw_not) {
                s = Sign::naf;
                bump();
            }
            if (cur_.kind != Tok::ident) unexpected("an atom");
            check_name(cur_);
            out.emplace_back(cur_.text, s);
            bump();
        } while (cur_.kind == Tok::comma);
        if (cur_.kind == Tok::dot) bump();
        if (cur_.kind != Tok::end) unexpected("',' or end of query");
        return out;
    }

private:
    void bump() { cur_ = lex_.next(); }

    [[noreturn]] void unexpected(const std::string& what) {
        Lexer::fail("expected " + what, cur_.line, cur_.column, cur_.text);
    }

    void expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) unexpected(what);
        bump();
    }

    static void check_name(const Token& t) {
        if (t.text.find("__") != std::string::npos) {
            Lexer::fail("atom names may not contain '__' (reserved for generated atoms)", t.line, t.column, t.text);
        }
    }

    AtomId atom(Program& p) {
        if (cur_.kind != Tok::ident) unexpected("an atom");
        check_name(cur_);
        AtomId id = p.atoms().intern(cur_.text);
        bump();
        return id;
    }

    std::vector<Literal> body(Program& p) {
        std::vector<Literal> out;
        do {
            if (!out.empty()) bump();
            Sign s = Sign::positive;
            if (cur_.kind == Tok::kw_not) {
                s = Sign::naf;
                bump();
                if (cur_.kind == Tok::kw_not) unexpected("an atom ('not not' is not allowed)");
            }
            out.push_back({atom(p), s});
        } while (cur_.kind == Tok::comma);
        return out;
    }

    Lexer lex_;
    Token cur_{Tok::end, {}, 0, 0};
};

std::string quote(const std::string& text) {
    std::string out = "'";
    for (char c : text) {
        if (c == '\'' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "'";
}

} // namespace

Program parse_program(std::string_view source) {
    return Parser(source).program();
}

std::vector<Literal> parse_query(std::string_view text, const Program& program) {
    std::vector<Literal> out;
    for (const auto& [name, sign] : Parser(text).query()) {
        out.push_back({program.atom(name), sign});
    }
    return out;
}

std::string print_program(const Program& p) {
    std::ostringstream os;
    std::set<AtomId> abducibles;
    for (const auto& d : p.directives()) {
        if (d.kind == Directive::Kind::abducible) {
            abducibles.insert(d.atom);
            os << "#abducible " << p.atoms().name(d.atom) << ".\n";
        } else {
            os << "#pred " << p.atoms().name(d.atom) << " :: " << quote(d.text) << ".\n";
        }
    }
    for (const auto& r : p.rules()) {
        if (r.origin == RuleOrigin::abducible_loop) {
            AtomId a = *r.head;
            if (p.atoms().hidden(a)) continue;
            if (abducibles.insert(a).second) os << "#abducible " << p.atoms().name(a) << ".\n";
            continue;
        }
        os << p.rule_text(r) << "\n";
    }
    return os.str();
}

// ── Validation ────────────────────────────────────────────────────────────

ValidationReport validate(const Program& p) {
    const std::size_t n = p.atoms().size();
    // Parity graph: node 2*a + parity. An atom lies on an odd loop iff
    // (a, even) reaches (a, odd).
    std::vector<std::vector<std::uint32_t>> succ(2 * n);
    for (const auto& r : p.rules()) {
        if (!r.head) continue;
        const AtomId h = *r.head;
        for (auto l : r.body) {
            const std::uint32_t w = l.positive() ? 0 : 1;
            for (std::uint32_t parity = 0; parity < 2; ++parity) {
                succ[2 * h + parity].push_back(2 * l.atom + (parity ^ w));
            }
        }
    }

    ValidationReport report;
    std::vector<char> seen(2 * n);
    std::vector<std::uint32_t> work;
    for (AtomId a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        work.assign(1, 2 * a);
        seen[2 * a] = 1;
        while (!work.empty()) {
            auto v = work.back();
            work.pop_back();
            for (auto w : succ[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    work.push_back(w);
                }
            }
        }
        if (seen[2 * a + 1]) report.odd_loop_atoms.push_back(a);
    }
    std::sort(report.odd_loop_atoms.begin(), report.odd_loop_atoms.end(),
              [&](AtomId x, AtomId y) { return p.atoms().name(x) < p.atoms().name(y); });

    std::set<AtomId> with_user_rules;
    std::set<AtomId> in_rules;
    for (const auto& r : p.rules()) {
        if (r.head && r.origin != RuleOrigin::abducible_loop) with_user_rules.insert(*r.head);
        if (r.head) in_rules.insert(*r.head);
        for (auto l : r.body) in_rules.insert(l.atom);
    }
    std::set<std::string> notes;
    const auto declared = p.abducible_directives();
    for (AtomId a = 0; a < n; ++a) {
        const bool abducible =
            p.atoms().abducible(a) || std::find(declared.begin(), declared.end(), a) != declared.end();
        if (abducible && with_user_rules.count(a)) {
            notes.insert("abducible atom '" + p.atoms().name(a) + "' also has rules; both apply");
        }
    }
    for (const auto& d : p.directives()) {
        if (d.kind == Directive::Kind::template_text && !in_rules.count(d.atom)) {
            notes.insert("template for atom '" + p.atoms().name(d.atom) + "' which appears in no rule");
        }
    }
    report.warnings.assign(notes.begin(), notes.end());
    return report;
}

// ── Desugaring ────────────────────────────────────────────────────────────

Program desugar_abducibles(const Program& p) {
    Program out = p;
    for (AtomId c : p.abducible_directives()) {
        if (out.atoms().abducible(c)) continue;   // declared twice
        const std::string hidden_name = p.atoms().name(c) + std::string(kHiddenSuffix);
        if (auto clash = out.atoms().find(hidden_name); clash && !out.atoms().hidden(*clash)) {
            throw ProgramError("atom '" + hidden_name + "' collides with the hidden complement of abducible '" +
                               p.atoms().name(c) + "'; rename it");
        }
        const AtomId h = out.atoms().intern(hidden_name);
        out.atoms().link_abducible(c, h);
        out.add_rule({c, {naf(h)}, RuleOrigin::abducible_loop});
        out.add_rule({h, {naf(c)}, RuleOrigin::abducible_loop});
    }
    out.remove_directives(Directive::Kind::abducible);
    return out;
}

} // namespace flightgate
