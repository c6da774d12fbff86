#include "flightgate/oracle.hpp"


namespace flightgate::oracle {

namespace {

struct MaskRule {
    std::uint64_t head = 0;   // zero for constraints
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
};

std::uint64_t bit(AtomId a) { return std::uint64_t{1} << a; }

// Least model of the reduct of `rules` with respect to `candidate`.
std::uint64_t reduct_fixpoint(const std::vector<MaskRule>& rules, std::uint64_t candidate) {
    std::uint64_t m = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules) {
            if (!r.head || (r.neg & candidate) || (m & r.head)) continue;
            if ((r.pos & ~m) == 0) {
                m |= r.head;
                changed = true;
            }
        }
    }
    return m;
}

} // namespace

bool StableModelSet::contains_model_with(AtomId atom) const {
    for (auto m : models)
        if (m & bit(atom)) return true;
    return false;
}

std::vector<std::vector<AtomId>> StableModelSet::as_atom_sets() const {
    std::vector<std::vector<AtomId>> out;
    for (auto m : models) {
        std::vector<AtomId> s;
        for (AtomId a = 0; a < universe; ++a)
            if (m & bit(a)) s.push_back(a);
        out.push_back(std::move(s));
    }
    return out;
}

StableModelSet stable_models(const Program& input) {
    const Program p = input.abducible_directives().empty() ? input : desugar_abducibles(input);
    const std::size_t n = p.atoms().size();
    if (n > 64) {
        throw ProgramError("oracle supports at most 64 atoms, program has " + std::to_string(n));
    }

    std::vector<MaskRule> rules;
    std::vector<MaskRule> constraints;
    std::uint64_t heads = 0;
    std::uint64_t facts = 0;
    for (const auto& r : p.rules()) {
        MaskRule m;
        for (auto l : r.body) (l.positive() ? m.pos : m.neg) |= bit(l.atom);
        if (r.head) {
            m.head = bit(*r.head);
            heads |= m.head;
            if (r.body.empty()) facts |= m.head;
            rules.push_back(m);
        } else {
            constraints.push_back(m);
        }
    }

    std::vector<AtomId> free;
    for (AtomId a = 0; a < n; ++a)
        if ((heads & ~facts) & bit(a)) free.push_back(a);
    if (free.size() > kMaxFreeAtoms) {
        throw ProgramError("oracle enumeration bound exceeded: " + std::to_string(free.size()) +
                           " undetermined atoms (limit " + std::to_string(kMaxFreeAtoms) + ")");
    }

    StableModelSet out;
    out.universe = n;
    const std::uint64_t count = std::uint64_t{1} << free.size();
    for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t candidate = facts;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (k & (std::uint64_t{1} << i)) candidate |= bit(free[i]);
        if (reduct_fixpoint(rules, candidate) != candidate) continue;
        bool violated = false;
        for (const auto& c : constraints) {
            if ((c.pos & ~candidate) == 0 && (c.neg & candidate) == 0) {
                violated = true;
                break;
            }
        }
        if (!violated) out.models.insert(candidate);
    }
    return out;
}

bool extends(const PartialModel& partial, const StableModelSet& s) {
    std::uint64_t must = 0;
    std::uint64_t must_not = 0;
    for (auto a : partial.positives()) must |= bit(a);
    for (auto a : partial.negatives()) must_not |= bit(a);
    for (auto m : s.models) {
        if ((m & must) == must && (m & must_not) == 0) return true;
    }
    return false;
}

} // namespace flightgate::oracle
