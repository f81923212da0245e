#pragma once

#include <memalg/machine.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace memalg {

/// Functions of the source machine that survive a functional reduction.
struct FunctionalReduction {
    std::vector<TransitionFunction> kept;
};

/// Source state indices (ascending) that survive a state reduction.
struct StateReduction {
    std::vector<StateIndex> kept;
};

/// A functional reduction followed by a state reduction.
struct SubMachineWitness {
    FunctionalReduction functional;
    StateReduction state;
};

/// Keeps only the listed functions. Throws InvalidMachine if keep is empty and
/// InvalidReduction if keep names a function the machine does not realize.
Machine functional_reduce(const Machine & m, std::span<const TransitionFunction> keep);
Machine functional_reduce(const Machine & m, std::span<const std::string> function_names);

bool preserves(const TransitionFunction & f, std::span<const StateIndex> subset);

/// Restricts the machine to the given states, keeping the restriction of every
/// function that maps the subset into itself. The result is unique. Throws
/// InvalidReduction for an empty or out-of-range subset and EmptyReduction
/// when no function preserves it.
Machine state_reduce(const Machine & m, std::span<const StateIndex> keep_states);
Machine state_reduce(const Machine & m, std::span<const std::string> state_labels);

/// Replays a witness on a.
Machine apply_sub_machine(const Machine & a, const SubMachineWitness & w);

/// Some(witness) iff b is literally (same state labels, same function tables
/// up to state order) a functional-then-state reduction of a. The functional
/// part keeps, for each function of b, the first function of a restricting to
/// it, so the witness is canonical.
std::optional<SubMachineWitness> is_sub_machine(const Machine & a, const Machine & b);

} // namespace memalg
