#pragma once

#include <memalg/cardinal.hpp>

#include <optional>
#include <string>
#include <vector>

namespace memalg {

/// Template parameters used for the report rows.
struct UniversalityParams {
    std::uint64_t tm_registers = 3;
    std::uint64_t tm_symbols = 2;
    std::uint64_t tm_cells = 4;
    std::uint64_t umm_cells = 3;
    std::uint64_t lsm_cells = 1;
    std::uint64_t qudit_levels = 2;
    std::uint64_t qudits = 3;
};

struct UniversalityRow {
    std::string family; ///< "turing", "lsm", "quantum" or "umm"
    MachineTemplate machine;
    bool full_transition_set; ///< the model realizes every self-map of its states
    Cardinal states;
    Derivation state_derivation;
    std::optional<Cardinal> transitions; ///< empty when |S|^|S| exceeds 64 bits
    Derivation transition_derivation;
};

/// The simulator can reproduce the family when every member's state set fits
/// into its own and it realizes every self-map of its states.
struct UniversalityVerdict {
    std::string family;
    Cardinal family_bound; ///< largest state cardinality among the family's rows
    bool fits;             ///< family_bound <= simulator states
    bool simulator_full;
    bool complete() const { return fits && simulator_full; }
};

struct UniversalityReport {
    std::vector<UniversalityRow> rows;
    std::size_t simulator; ///< index of the umm row
    std::vector<UniversalityVerdict> verdicts;
};

UniversalityReport universality_report(const UniversalityParams & params = {});

std::string format_universality(const UniversalityReport & report);

} // namespace memalg
