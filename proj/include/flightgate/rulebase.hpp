#pragma once

#include "flightgate/error.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flightgate {

using AtomId = std::uint32_t;

enum class Sign : std::uint8_t { positive, naf };

struct Literal {
    AtomId atom = 0;
    Sign sign = Sign::positive;

    bool positive() const { return sign == Sign::positive; }
    Literal complement() const { return {atom, positive() ? Sign::naf : Sign::positive}; }

    auto operator<=>(const Literal&) const = default;
};

inline Literal pos(AtomId a) { return {a, Sign::positive}; }
inline Literal naf(AtomId a) { return {a, Sign::naf}; }

/// Where a rule came from. Synthetic rules are never printed back as source.
enum class RuleOrigin : std::uint8_t { source, abducible_loop, answer };

struct Rule {
    std::optional<AtomId> head;   // absent for a constraint
    std::vector<Literal> body;
    RuleOrigin origin = RuleOrigin::source;

    bool is_fact() const { return head && body.empty(); }
    bool is_constraint() const { return !head; }
};

struct Directive {
    enum class Kind : std::uint8_t { abducible, template_text };

    Kind kind = Kind::abducible;
    AtomId atom = 0;
    std::string text;   // template text; empty for abducibles
};

/// Interned atom names plus per-atom flags set by desugaring.
class AtomTable {
public:
    AtomId intern(std::string_view name);
    std::optional<AtomId> find(std::string_view name) const;

    const std::string& name(AtomId id) const { return entries_[id].name; }
    std::size_t size() const { return entries_.size(); }

    /// Hidden atoms are generated complements of abducibles; never displayed.
    bool hidden(AtomId id) const { return entries_[id].hidden; }
    /// For an abducible atom: its hidden complement. For a hidden atom: the abducible.
    std::optional<AtomId> partner(AtomId id) const { return entries_[id].partner; }
    bool abducible(AtomId id) const { return !hidden(id) && partner(id).has_value(); }

    void link_abducible(AtomId atom, AtomId hidden_atom);

private:
    struct Entry {
        std::string name;
        bool hidden = false;
        std::optional<AtomId> partner;
    };
    std::vector<Entry> entries_;
    std::unordered_map<std::string, AtomId> index_;
};

/// A propositional rule base. Built by the parser or by desugaring, then
/// treated as immutable and shared between readers.
class Program {
public:
    AtomTable& atoms() { return atoms_; }
    const AtomTable& atoms() const { return atoms_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<Directive>& directives() const { return directives_; }

    void add_rule(Rule rule) { rules_.push_back(std::move(rule)); }
    void add_directive(Directive d) { directives_.push_back(std::move(d)); }
    void remove_directives(Directive::Kind kind);

    /// Atom name, or throws QueryError for an unknown name.
    AtomId atom(std::string_view name) const;
    std::string literal_text(Literal lit) const;
    std::string rule_text(const Rule& rule) const;

    /// Template text from a `#pred` directive, if one exists.
    const std::string* template_for(AtomId atom) const;
    std::vector<AtomId> abducible_directives() const;

    /// Equality by atom names, not ids; directive order relative to rules is ignored.
    friend bool operator==(const Program& a, const Program& b);

private:
    AtomTable atoms_;
    std::vector<Rule> rules_;
    std::vector<Directive> directives_;
};

struct ValidationReport {
    std::vector<AtomId> odd_loop_atoms;   // sorted by atom name
    std::vector<std::string> warnings;

    bool ok() const { return odd_loop_atoms.empty(); }
};

// ── Operations ────────────────────────────────────────────────────────────

/// Parses the `.lp` dialect: rules, facts, constraints, `#abducible a.` and
/// `#pred a :: 'text'.`; `%` starts a comment. Throws ParseError.
Program parse_program(std::string_view source);

/// Parses a query such as `p, not q` (an optional leading `?-` and trailing
/// `.` are accepted) and resolves atoms against `program`.
/// Throws ParseError on syntax, QueryError on unknown atoms.
std::vector<Literal> parse_query(std::string_view text, const Program& program);

/// Prints in the same dialect; synthetic rules from desugaring are printed
/// back as the `#abducible` directive they came from.
std::string print_program(const Program& program);

/// Reports every atom lying on a dependency cycle with an odd number of
/// negation-as-failure edges, in lexicographic order.
ValidationReport validate(const Program& program);

/// Replaces `#abducible c.` by the even loop `c :- not c__neg.` /
/// `c__neg :- not c.` with `c__neg` hidden. Idempotent.
Program desugar_abducibles(const Program& program);

inline constexpr std::string_view kHiddenSuffix = "__neg";

} // namespace flightgate
