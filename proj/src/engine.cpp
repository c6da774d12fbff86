#include "flightgate/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace flightgate {

std::string_view reason_name(Reason r) {
    switch (r) {
        case Reason::fact: return "fact";
        case Reason::rule: return "rule";
        case Reason::dual: return "dual";
        case Reason::abduced: return "abduced";
        case Reason::coinductive_assumption: return "coinductive_assumption";
        case Reason::ruleless_negation: return "ruleless_negation";
        case Reason::proved_above: return "proved_above";
    }
    return "unknown";
}

std::size_t ProofNode::size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
}

// ── DualProgram ───────────────────────────────────────────────────────────

DualProgram::DualProgram(Program desugared) : program_(std::move(desugared)) {
    if (!program_.abducible_directives().empty()) {
        throw ProgramError("program still carries #abducible directives; desugar it first");
    }
    by_head_.resize(program_.atoms().size());
    for (std::size_t i = 0; i < program_.rules().size(); ++i) {
        const auto& r = program_.rules()[i];
        if (r.head) {
            by_head_[*r.head].push_back(i);
        } else {
            constraints_.push_back(i);
        }
    }
    validation_ = validate(program_);
}

std::string DualProgram::describe_dual(AtomId atom) const {
    std::string out = "not " + program_.atoms().name(atom);
    const auto& rules = rules_for(atom);
    if (rules.empty()) return out + ".";
    out += " :- ";
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i) out += ", ";
        const auto& body = program_.rules()[rules[i]].body;
        if (body.empty()) {
            out += "false";
            continue;
        }
        out += "(";
        for (std::size_t j = 0; j < body.size(); ++j) {
            if (j) out += " ; ";
            out += program_.literal_text(body[j].complement());
        }
        out += ")";
    }
    return out + ".";
}

DualProgram compute_duals(Program desugared) {
    return DualProgram(std::move(desugared));
}

// ── PartialModel ──────────────────────────────────────────────────────────

bool PartialModel::holds(Literal lit) const {
    return std::find(literals.begin(), literals.end(), lit) != literals.end();
}

std::vector<AtomId> PartialModel::positives() const {
    std::vector<AtomId> out;
    for (auto l : literals)
        if (l.positive()) out.push_back(l.atom);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<AtomId> PartialModel::negatives() const {
    std::vector<AtomId> out;
    for (auto l : literals)
        if (!l.positive()) out.push_back(l.atom);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Literal> PartialModel::visible(const AtomTable& atoms) const {
    std::vector<Literal> out;
    for (auto l : literals)
        if (!atoms.hidden(l.atom)) out.push_back(l);
    return out;
}

std::string PartialModel::to_string(const Program& program) const {
    std::string out = "{ ";
    bool first = true;
    for (auto l : visible(program.atoms())) {
        if (!first) out += ", ";
        first = false;
        out += program.literal_text(l);
    }
    return out + (first ? "}" : " }");
}

// ── Search ────────────────────────────────────────────────────────────────

namespace {

using Cont = std::function<bool()>;   // returns true to stop the whole search

enum class Mark : std::uint8_t { none, pos_open, pos_done, neg_open, neg_done };

constexpr int kQueryRoot = -1;
constexpr int kConstraintRoot = -2;

struct Frame {
    Literal literal;
    std::size_t negation_depth;   // polarity changes crossed from the root
    // Open positive ancestors this frame's proof so far reaches with no
    // polarity change, through a co-inductive assumption or a reused literal.
    std::vector<AtomId> zero_deps;
};

struct NodeRecord {
    Literal literal;
    Reason reason;
    std::optional<std::size_t> rule;
    int parent;
};

class Search {
public:
    Search(const DualProgram& dp, const SolveOptions& opt, const SolutionVisitor& visit)
        : dp_(dp),
          prog_(dp.program()),
          opt_(opt),
          visit_(visit),
          marks_(prog_.atoms().size(), Mark::none),
          open_frame_(prog_.atoms().size(), 0),
          done_deps_(prog_.atoms().size()) {}

    std::size_t run(std::span<const Literal> query) {
        prove_all(query, 0, kQueryRoot, [this] { return check_constraints(0); });
        return emitted_;
    }

private:
    bool prove_all(std::span<const Literal> goals, std::size_t i, int parent, const Cont& k) {
        if (i == goals.size()) return k();
        return prove(goals[i], parent, [&, i, parent] { return prove_all(goals, i + 1, parent, k); });
    }

    // NMR check: each constraint body must have a refuted literal.
    bool check_constraints(std::size_t c) {
        const auto& cs = dp_.constraints();
        if (c == cs.size()) return emit();
        for (const auto& lit : prog_.rules()[cs[c]].body) {
            if (prove(lit.complement(), kConstraintRoot, [this, c] { return check_constraints(c + 1); })) {
                return true;
            }
        }
        return false;
    }

    bool prove(Literal lit, int parent, const Cont& k) {
        const Mark m = marks_[lit.atom];
        if (lit.positive()) {
            if (m == Mark::neg_open || m == Mark::neg_done) return false;
            if (m == Mark::pos_done) {
                // Reusing a literal whose proof leaned on an open ancestor
                // closes that loop again; it must still cross a negation.
                const auto deps = open_zero_deps(lit.atom);
                const std::size_t h = call_depth(lit);
                for (AtomId a : deps) {
                    if (marks_[a] == Mark::pos_open && stack_[open_frame_[a]].negation_depth == h) return false;
                }
                return leaf(lit, parent, Reason::proved_above, k, deps);
            }
            if (m == Mark::pos_open) {
                // A positive call meeting itself with no negation in between
                // has no well-founded support.
                if (flips_since(open_frame_[lit.atom], lit) == 0) return false;
                const AtomId self[] = {lit.atom};
                return leaf(lit, parent, Reason::coinductive_assumption, k, self);
            }
        } else {
            if (m == Mark::pos_open || m == Mark::pos_done) return false;
            if (m == Mark::neg_done) return leaf(lit, parent, Reason::proved_above, k);
            if (m == Mark::neg_open) return leaf(lit, parent, Reason::coinductive_assumption, k);
        }

        if (stack_.size() >= opt_.max_depth) {
            throw SearchLimitError("search depth limit of " + std::to_string(opt_.max_depth) +
                                   " frames exceeded while proving '" + prog_.literal_text(lit) + "'");
        }

        const int node = static_cast<int>(nodes_.size());
        nodes_.push_back({lit, Reason::rule, std::nullopt, parent});
        stack_.push_back({lit, call_depth(lit), {}});
        open_frame_[lit.atom] = stack_.size() - 1;
        marks_[lit.atom] = lit.positive() ? Mark::pos_open : Mark::neg_open;
        model_.push_back(lit);

        const Cont done = [&, lit] {
            Frame f = std::move(stack_.back());
            stack_.pop_back();
            marks_[lit.atom] = lit.positive() ? Mark::pos_done : Mark::neg_done;
            done_deps_[lit.atom] = f.zero_deps;
            const bool stop = k();
            done_deps_[lit.atom].clear();
            marks_[lit.atom] = lit.positive() ? Mark::pos_open : Mark::neg_open;
            stack_.push_back(std::move(f));
            return stop;
        };

        bool stop = false;
        const auto& rules = dp_.rules_for(lit.atom);
        if (lit.positive()) {
            for (std::size_t ri : rules) {
                const auto& body = prog_.rules()[ri].body;
                nodes_[node].reason = body.empty() ? Reason::fact : Reason::rule;
                nodes_[node].rule = ri;
                stop = prove_all(body, 0, node, done);
                nodes_.resize(node + 1);
                if (stop) break;
            }
        } else if (rules.empty()) {
            nodes_[node].reason = Reason::ruleless_negation;
            stop = done();
        } else {
            nodes_[node].reason = Reason::dual;
            stop = refute(rules, 0, node, done);
        }

        model_.pop_back();
        marks_[lit.atom] = Mark::none;
        stack_.pop_back();
        nodes_.resize(node);
        return stop;
    }

    // Dual of an atom: pick, for every rule in order, one body literal to refute.
    bool refute(const std::vector<std::size_t>& rules, std::size_t j, int node, const Cont& k) {
        if (j == rules.size()) return k();
        for (const auto& lit : prog_.rules()[rules[j]].body) {
            const std::size_t mark = nodes_.size();
            const bool stop = prove(lit.complement(), node, [&, j, node] { return refute(rules, j + 1, node, k); });
            nodes_.resize(mark);
            if (stop) return true;
        }
        return false;
    }

    // `deps` are open positive ancestors the leaf reaches with no polarity
    // change; they are charged to every open frame at the same depth.
    bool leaf(Literal lit, int parent, Reason why, const Cont& k, std::span<const AtomId> deps = {}) {
        const std::size_t mark = nodes_.size();
        nodes_.push_back({lit, why, std::nullopt, parent});
        std::vector<std::size_t> charged;
        if (!deps.empty() && !stack_.empty()) {
            const std::size_t h = call_depth(lit);
            for (std::size_t i = stack_.size(); i-- > 0 && stack_[i].negation_depth == h;) {
                for (AtomId a : deps) {
                    if (marks_[a] == Mark::pos_open && open_frame_[a] < i) {
                        stack_[i].zero_deps.push_back(a);
                        charged.push_back(i);
                    }
                }
            }
        }
        const bool stop = k();
        for (auto it = charged.rbegin(); it != charged.rend(); ++it) stack_[*it].zero_deps.pop_back();
        nodes_.resize(mark);
        return stop;
    }

    // Open ancestors a completed positive literal still leans on with no
    // polarity change. Completed dependencies pass on their own.
    std::vector<AtomId> open_zero_deps(AtomId atom) const {
        std::vector<AtomId> open;
        std::vector<AtomId> todo(done_deps_[atom].begin(), done_deps_[atom].end());
        std::set<AtomId> seen{atom};
        while (!todo.empty()) {
            const AtomId a = todo.back();
            todo.pop_back();
            if (!seen.insert(a).second) continue;
            if (marks_[a] == Mark::pos_open) {
                open.push_back(a);
            } else if (marks_[a] == Mark::pos_done) {
                todo.insert(todo.end(), done_deps_[a].begin(), done_deps_[a].end());
            }
        }
        return open;
    }

    std::size_t call_depth(Literal lit) const {
        if (stack_.empty()) return 0;
        return stack_.back().negation_depth + (stack_.back().literal.sign != lit.sign ? 1 : 0);
    }

    std::size_t flips_since(std::size_t frame, Literal lit) const {
        const Frame& top = stack_.back();
        return top.negation_depth - stack_[frame].negation_depth + (top.literal.sign != lit.sign ? 1 : 0);
    }

    bool emit() {
        std::vector<Literal> key = model_;
        std::sort(key.begin(), key.end());
        if (!seen_.insert(std::move(key)).second) return false;

        Solution s;
        s.model.literals = model_;
        for (auto l : model_) {
            const auto& atoms = prog_.atoms();
            if (!atoms.abducible(l.atom)) continue;
            const Literal partner{*atoms.partner(l.atom), l.positive() ? Sign::naf : Sign::positive};
            if (std::find(model_.begin(), model_.end(), partner) != model_.end()) s.model.abduced.push_back(l);
        }
        build_trees(s);
        ++emitted_;
        const bool keep_going = visit_(s);
        return !keep_going || (opt_.limit && emitted_ >= *opt_.limit);
    }

    void build_trees(Solution& s) const {
        std::vector<std::vector<std::size_t>> children(nodes_.size());
        std::vector<std::size_t> query_roots;
        std::vector<std::size_t> constraint_roots;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const int p = nodes_[i].parent;
            if (p == kQueryRoot) {
                query_roots.push_back(i);
            } else if (p == kConstraintRoot) {
                constraint_roots.push_back(i);
            } else {
                children[p].push_back(i);
            }
        }
        for (auto r : query_roots) s.justification.push_back(make_node(r, children));
        for (auto r : constraint_roots) s.constraint_checks.push_back(make_node(r, children));
    }

    ProofNode make_node(std::size_t i, const std::vector<std::vector<std::size_t>>& children) const {
        const NodeRecord& rec = nodes_[i];
        ProofNode n{rec.literal, rec.reason, rec.rule, {}};
        if (collapses_to_abduced(rec)) {
            n.reason = Reason::abduced;
            n.rule_index.reset();
            return n;
        }
        for (auto c : children[i]) n.children.push_back(make_node(c, children));
        return n;
    }

    // An abducible proven through its generated even loop is reported as an
    // assumption, hiding the loop itself.
    bool collapses_to_abduced(const NodeRecord& rec) const {
        const auto& atoms = prog_.atoms();
        if (!atoms.abducible(rec.literal.atom)) return false;
        if (rec.literal.positive()) {
            return rec.reason == Reason::rule && prog_.rules()[*rec.rule].origin == RuleOrigin::abducible_loop;
        }
        if (rec.reason != Reason::dual) return false;
        for (auto ri : dp_.rules_for(rec.literal.atom)) {
            if (prog_.rules()[ri].origin != RuleOrigin::abducible_loop) return false;
        }
        return true;
    }

    const DualProgram& dp_;
    const Program& prog_;
    const SolveOptions& opt_;
    const SolutionVisitor& visit_;

    std::vector<Mark> marks_;
    std::vector<std::size_t> open_frame_;
    std::vector<std::vector<AtomId>> done_deps_;
    std::vector<Frame> stack_;
    std::vector<Literal> model_;
    std::vector<NodeRecord> nodes_;
    std::set<std::vector<Literal>> seen_;
    std::size_t emitted_ = 0;
};

} // namespace

std::size_t solve(std::span<const Literal> query, const DualProgram& program, const SolveOptions& options,
                  const SolutionVisitor& visit) {
    const auto& v = program.validation();
    if (!v.ok()) {
        std::string names;
        for (auto a : v.odd_loop_atoms) {
            names += (names.empty() ? "" : ", ") + program.program().atoms().name(a);
        }
        throw OddLoopError("program has odd loops through negation involving: " + names);
    }
    for (auto l : query) {
        if (l.atom >= program.program().atoms().size()) {
            throw QueryError("query mentions unknown atom id " + std::to_string(l.atom));
        }
    }
    if (options.limit && *options.limit == 0) return 0;
    return Search(program, options, visit).run(query);
}

std::vector<Solution> solve(std::span<const Literal> query, const DualProgram& program, const SolveOptions& options) {
    std::vector<Solution> out;
    solve(query, program, options, [&](const Solution& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

bool brave_entails(const DualProgram& program, AtomId atom) {
    const Literal q[] = {pos(atom)};
    return solve(q, program, SolveOptions{.limit = 1}, [](const Solution&) { return true; }) > 0;
}

} // namespace flightgate
