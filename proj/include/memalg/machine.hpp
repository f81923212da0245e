#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace memalg {

using StateIndex = std::uint32_t;

inline constexpr std::uint64_t default_enumeration_cap = 1'000'000;

/// An ordered list of distinct state labels. Copies share storage; the order
/// fixed at construction drives every enumeration and witness.
class StateSet {
public:
    explicit StateSet(std::vector<std::string> labels);

    /// Labels "<prefix>0" ... "<prefix>{n-1}".
    static StateSet numbered(std::size_t n, std::string_view prefix = "s");

    std::size_t size() const noexcept;
    const std::string & label(StateIndex s) const;
    const std::vector<std::string> & labels() const noexcept;

    std::optional<StateIndex> find(std::string_view label) const;

    /// Throws DomainMismatch for an unknown label.
    StateIndex index_of(std::string_view label) const;

    bool contains(StateIndex s) const noexcept { return s < size(); }

    friend bool operator==(const StateSet & a, const StateSet & b);

private:
    struct Impl;
    std::shared_ptr<const Impl> _impl;
};

/// A total self-map of a finite state set, stored as a lookup table. Equality
/// is extensional: two functions are equal iff their domains and tables are.
class TransitionFunction {
public:
    /// Throws TotalityViolation if the table has the wrong length or an entry
    /// outside the state set.
    TransitionFunction(StateSet domain, std::vector<StateIndex> table);

    static TransitionFunction identity(const StateSet & domain);
    static TransitionFunction constant(const StateSet & domain, StateIndex target);

    const StateSet & domain() const noexcept { return _domain; }
    std::span<const StateIndex> table() const noexcept { return _table; }
    std::size_t size() const noexcept { return _table.size(); }

    /// Unchecked lookup.
    StateIndex operator()(StateIndex s) const noexcept { return _table[s]; }

    std::size_t image_size() const;
    bool is_bijective() const { return image_size() == size(); }

    friend bool operator==(const TransitionFunction & a, const TransitionFunction & b)
    {
        return a._table == b._table && a._domain == b._domain;
    }

    /// Lexicographic by table; only meaningful for functions on the same domain.
    friend std::strong_ordering operator<=>(const TransitionFunction & a, const TransitionFunction & b)
    {
        return a._table <=> b._table;
    }

private:
    StateSet _domain;
    std::vector<StateIndex> _table;
};

/// Checked application. Throws DomainMismatch for a state outside the domain.
StateIndex apply(const TransitionFunction & f, StateIndex s);
StateIndex apply(const TransitionFunction & f, std::string_view label);

bool is_fixed_point(const TransitionFunction & f, StateIndex s);

/// A state set together with its realizable transition functions. Functions
/// are deduplicated and kept in lexicographic table order; each carries a
/// display name that plays no part in equality.
class Machine {
public:
    const std::string & name() const noexcept { return _name; }
    const StateSet & states() const noexcept { return _states; }
    const std::vector<TransitionFunction> & functions() const noexcept { return _functions; }
    const std::vector<std::string> & function_names() const noexcept { return _function_names; }

    /// Indices into functions(), ascending.
    const std::vector<std::size_t> & output_functions() const noexcept { return _outputs; }

    std::optional<std::size_t> find_function(const TransitionFunction & f) const;
    std::optional<std::size_t> find_function(std::string_view name) const;

    /// True when the realizable set is every self-map of the state set.
    bool is_full() const;

    Machine renamed(std::string name) const;

    /// Structural equality: same states and same function set.
    friend bool operator==(const Machine & a, const Machine & b)
    {
        return a._states == b._states && a._functions == b._functions;
    }

private:
    friend Machine make_machine(StateSet, std::vector<TransitionFunction>, std::vector<std::string>,
        std::vector<std::size_t>, std::string);

    Machine(StateSet states) : _states(std::move(states)) {}

    std::string _name;
    StateSet _states;
    std::vector<TransitionFunction> _functions;
    std::vector<std::string> _function_names;
    std::vector<std::size_t> _outputs;
};

/// Builds a machine, collapsing extensionally equal functions (the first
/// occurrence keeps its name). Missing names default to "f<canonical index>".
/// output_positions index into fns. Throws InvalidMachine for an empty
/// function list, foreign domains or clashing names.
Machine make_machine(StateSet states, std::vector<TransitionFunction> fns, std::vector<std::string> names = {},
    std::vector<std::size_t> output_positions = {}, std::string name = {});

/// All |S|^|S| self-maps in lexicographic table order. Throws
/// EnumerationTooLarge when the count exceeds cap.
std::vector<TransitionFunction> full_transition_set(const StateSet & states, std::uint64_t cap = default_enumeration_cap);

Machine full_machine(const StateSet & states, std::uint64_t cap = default_enumeration_cap);

struct RunResult {
    enum class Outcome { Halted, Cycled, StepLimit };

    Outcome outcome;
    StateIndex final_state = 0;   ///< Halted: the fixed point; otherwise the last state visited
    std::size_t steps = 0;        ///< applications of the function performed
    std::size_t cycle_length = 0; ///< Cycled only
    std::size_t cycle_entry = 0;  ///< Cycled only: step index at which the cycle was first entered
    std::vector<StateIndex> trajectory; ///< filled when requested, starting with s0
};

std::string_view to_string(RunResult::Outcome outcome);

/// Iterates f from s0 until a fixed point, a revisited state, or max_steps
/// applications. With max_steps >= |S| the result is never StepLimit.
RunResult run_to_fixpoint(const TransitionFunction & f, StateIndex s0, std::size_t max_steps,
    bool record_trajectory = false);

} // namespace memalg
