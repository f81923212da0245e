#pragma once

#include <memalg/machine.hpp>
#include <memalg/reductions.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace memalg {

/// Isomorphism witness from a source to a target machine: g maps source state
/// indices to target state indices, h maps source function indices to target
/// function indices.
struct Morphism {
    std::vector<StateIndex> g;
    std::vector<std::size_t> h;

    friend bool operator==(const Morphism &, const Morphism &) = default;
};

/// Locates a sub-machine of the simulating machine (by reductions) and an
/// isomorphism from the simulated machine onto it.
struct CompletenessWitness {
    SubMachineWitness reductions;
    Morphism morphism;
    Machine sub_machine;
};

inline constexpr std::uint64_t default_search_node_cap = 50'000'000;
inline constexpr std::uint64_t default_subset_cap = 1'000'000;

struct SearchLimits {
    std::uint64_t node_cap = default_search_node_cap; ///< backtracking nodes per search
    std::uint64_t subset_cap = default_subset_cap;    ///< state subsets tried by is_complete
};

/// True iff g and h are bijections and g(f(s)) = h(f)(g(s)) for every
/// function f and state s of a. Throws IncompatibleShapes when the machines
/// differ in state or function count.
bool verify_morphism(const Machine & a, const Machine & b, const Morphism & m);

/// The isomorphism a -> b with lexicographically least g, or nullopt. Only g
/// is searched; h is forced to h(f) = g f g^-1. Throws SearchBudgetExceeded
/// when the node cap is hit.
std::optional<Morphism> find_isomorphism(const Machine & a, const Machine & b, const SearchLimits & limits = {});

enum class CompletenessPath {
    Automatic, ///< direct construction when a realizes every self-map, search otherwise
    Construct, ///< direct construction only; throws InvalidArgument unless a is full
    Search,    ///< exhaustive search regardless of a
};

/// Some(witness) iff a sub-machine of a is isomorphic to b (a is b-complete).
/// The morphism maps b onto the witness's sub-machine.
std::optional<CompletenessWitness> is_complete(const Machine & a, const Machine & b, const SearchLimits & limits = {},
    CompletenessPath path = CompletenessPath::Automatic);

/// Embeds b into the full machine on a_states through an injection g of
/// b's states (default: order preserving onto the first |T| states), with
/// h(f) = g f g^-1. The kept functions act as the identity outside g's image.
/// Throws IncompatibleShapes if b has more states than a_states.
CompletenessWitness construct_full_embedding(const StateSet & a_states, const Machine & b,
    const std::optional<std::vector<StateIndex>> & injection = std::nullopt);

/// Replays the reductions on a and checks the morphism against b. Never throws
/// for a malformed witness; returns false instead.
bool verify_completeness(const Machine & a, const Machine & b, const CompletenessWitness & w);

/// Conjugation invariant of a single function: sorted cycle lengths and sorted
/// in-degree profile of its functional graph.
struct FunctionSignature {
    std::vector<std::size_t> cycle_lengths;
    std::vector<std::size_t> in_degrees;

    friend auto operator<=>(const FunctionSignature &, const FunctionSignature &) = default;
};

FunctionSignature function_signature(const TransitionFunction & f);

} // namespace memalg
