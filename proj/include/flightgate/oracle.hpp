#pragma once

#include "flightgate/engine.hpp"
#include "flightgate/rulebase.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace flightgate::oracle {

/// Upper bound on the number of atoms whose truth value is enumerated.
inline constexpr std::size_t kMaxFreeAtoms = 26;

/// Stable models as bit masks over the program's atom ids (bit i = atom i).
struct StableModelSet {
    std::size_t universe = 0;
    std::set<std::uint64_t> models;

    bool contains_model_with(AtomId atom) const;
    std::vector<std::vector<AtomId>> as_atom_sets() const;
};

/// Enumerates every interpretation and keeps those equal to the least model
/// of their own reduct that violate no constraint. `#abducible` directives
/// are desugared first. Atoms without rules are false and facts are true in
/// every stable model, so only the remaining atoms are enumerated; there may
/// be at most kMaxFreeAtoms of those and 64 atoms in total.
StableModelSet stable_models(const Program& program);

/// True iff some member contains every positive literal of `partial` and
/// none of its negative ones.
bool extends(const PartialModel& partial, const StableModelSet& models);

} // namespace flightgate::oracle
