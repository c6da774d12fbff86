#pragma once

#include "flightgate/proof.hpp"
#include "flightgate/rulebase.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flightgate {

/// A program prepared for goal-directed evaluation: rules indexed by head
/// (the dual of `a` refutes each of them), constraints for the NMR check,
/// and the loop classification used to refuse odd loops.
class DualProgram {
public:
    explicit DualProgram(Program desugared);

    const Program& program() const { return program_; }
    const std::vector<std::size_t>& rules_for(AtomId atom) const { return by_head_[atom]; }
    const std::vector<std::size_t>& constraints() const { return constraints_; }
    const ValidationReport& validation() const { return validation_; }

    /// Readable form of the dual of `atom`, e.g. `not p :- (not a ; b), (not c).`
    std::string describe_dual(AtomId atom) const;

private:
    Program program_;
    std::vector<std::vector<std::size_t>> by_head_;
    std::vector<std::size_t> constraints_;
    ValidationReport validation_;
};

/// Requires a desugared program (no `#abducible` directives left).
DualProgram compute_duals(Program desugared);

/// Literals proven or co-inductively assumed along one successful derivation.
struct PartialModel {
    std::vector<Literal> literals;   // in call order; includes hidden atoms
    std::vector<Literal> abduced;    // abducible literals assumed through their even loop

    bool holds(Literal lit) const;
    std::vector<AtomId> positives() const;
    std::vector<AtomId> negatives() const;
    /// Literals without hidden atoms.
    std::vector<Literal> visible(const AtomTable& atoms) const;
    std::string to_string(const Program& program) const;
};

struct Solution {
    PartialModel model;
    std::vector<ProofNode> justification;       // one tree per query literal
    std::vector<ProofNode> constraint_checks;   // one refutation per constraint
};

struct SolveOptions {
    std::optional<std::size_t> limit;   // distinct models to emit
    std::size_t max_depth = 10'000;     // call-stack frames
};

/// Receives each distinct model in search order; return false to stop.
using SolutionVisitor = std::function<bool(const Solution&)>;

/// Depth-first search over rules in source order, body literals left to
/// right. Duplicate models are suppressed. Returns the number emitted.
/// Throws OddLoopError, QueryError (unknown atom) or SearchLimitError.
std::size_t solve(std::span<const Literal> query, const DualProgram& program, const SolveOptions& options,
                  const SolutionVisitor& visit);

std::vector<Solution> solve(std::span<const Literal> query, const DualProgram& program,
                            const SolveOptions& options = {});

bool brave_entails(const DualProgram& program, AtomId atom);

} // namespace flightgate
