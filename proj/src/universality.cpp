#include <memalg/error.hpp>
#include <memalg/universality.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

namespace memalg {

namespace {
    UniversalityRow make_row(std::string family, MachineTemplate t, bool full)
    {
        UniversalityRow row{std::move(family), t, full, Cardinal::finite(0), {}, std::nullopt, {}};
        row.states = state_cardinality(t, &row.state_derivation);
        try {
            row.transitions = transition_space_cardinality(row.states, &row.transition_derivation);
        }
        catch (const Error & e) {
            if (e.kind() != ErrorKind::ArithmeticOverflow)
                throw;
            row.transition_derivation.clear();
        }
        return row;
    }
}

UniversalityReport universality_report(const UniversalityParams & p)
{
    UniversalityReport report;
    // A Turing machine realizes a single step function, LSM and quantum
    // dynamics are constrained; only the UMM carries every self-map.
    report.rows.push_back(make_row("turing", MachineTemplate::finite_turing(p.tm_registers, p.tm_symbols, p.tm_cells), false));
    report.rows.push_back(make_row("turing", MachineTemplate::infinite_tape_turing(p.tm_registers, p.tm_symbols), false));
    report.rows.push_back(make_row("lsm", MachineTemplate::lsm(p.lsm_cells), false));
    report.rows.push_back(make_row("quantum", MachineTemplate::quantum(p.qudit_levels, p.qudits), false));
    report.rows.push_back(make_row("umm", MachineTemplate::umm(p.umm_cells), true));
    report.simulator = report.rows.size() - 1;

    auto & sim = report.rows[report.simulator];
    for (std::string family : {"turing", "lsm", "quantum"}) {
        std::optional<Cardinal> bound;
        for (auto & row : report.rows)
            if (row.family == family)
                bound = bound ? std::max(*bound, row.states) : row.states;
        report.verdicts.push_back({family, *bound, *bound <= sim.states, sim.full_transition_set});
    }
    return report;
}

std::string format_universality(const UniversalityReport & report)
{
    std::ostringstream out;
    auto & sim = report.rows[report.simulator];
    out << "machine                        |S|         |Phi_S|\n";
    for (auto & row : report.rows) {
        auto name = row.machine.describe();
        out << name << std::string(name.size() < 31 ? 31 - name.size() : 1, ' ') << row.states.to_string()
            << std::string(row.states.to_string().size() < 12 ? 12 - row.states.to_string().size() : 1, ' ')
            << (row.transitions ? row.transitions->to_string() : "|S|^|S| (beyond 64 bits)") << '\n';
    }
    out << "\nderivations\n";
    for (auto & row : report.rows) {
        out << "  " << row.machine.describe() << '\n';
        out << format_derivation(row.state_derivation, "    ") << format_derivation(row.transition_derivation, "    ");
    }
    out << "\nverdicts (simulator " << sim.machine.describe() << ", |S| = " << sim.states.to_string()
        << ", full transition set: " << (sim.full_transition_set ? "yes" : "no") << ")\n";
    for (auto & v : report.verdicts) {
        out << "  " << v.family << ": sup |T| = " << v.family_bound.to_string() << (v.fits ? " <= " : " > ") << "|S| = "
            << sim.states.to_string() << " -> " << (v.complete() ? "UMM-complete" : "not established") << '\n';
    }
    return out.str();
}

} // namespace memalg
