#pragma once

#include <memalg/machine.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace memalg {

/// Random machine with 1..max_states numbered states and up to max_functions
/// uniformly drawn tables (duplicates collapse, so possibly fewer).
Machine random_machine(std::mt19937_64 & rng, std::size_t max_states, std::size_t max_functions);

/// Non-empty uniformly drawn subset of the given indices, ascending.
std::vector<StateIndex> random_subset(std::mt19937_64 & rng, const std::vector<StateIndex> & from);

struct LawTally {
    std::string law;
    std::string statement;
    bool informational = false; ///< reported, but not part of clean()
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::vector<std::string> counterexamples; ///< first few, rendered
};

struct LawCheckReport {
    std::uint64_t seed = 0;
    std::vector<LawTally> laws;

    /// No violations among the non-informational laws.
    bool clean() const;
    const LawTally & tally(std::string_view law) const;
};

/// Randomised check of the reduction composition and commutation laws; each
/// law receives `checks_per_law` applicable instances. Commutation is checked
/// by exhaustive search over every reduction of the opposite order.
LawCheckReport check_reduction_laws(std::uint64_t seed, std::size_t checks_per_law,
    std::size_t max_states = 4, std::size_t max_functions = 6);

std::string format_report(const LawCheckReport & report);

} // namespace memalg
