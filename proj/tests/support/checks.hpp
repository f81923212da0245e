#pragma once

// Cross-checks between two library components, reporting the first mismatch.

#include <memalg/turing.hpp>

#include <optional>
#include <string>

namespace memalg::check {

/// Iterates the compiled step function from c and compares every visited
/// state with the direct simulator's configuration sequence, including the
/// fixed point or rejection state at the end.
inline std::optional<std::string> compiled_matches_simulation(const TuringSpec & t, const CompiledTuring & compiled,
    const TuringConfig & c, std::size_t steps)
{
    auto trace = simulate_tm(t, c, steps);
    auto & step = compiled.machine.functions().at(0);
    auto s = compiled.codec.encode(c);
    for (std::size_t i = 0; i < trace.configs.size(); ++i) {
        auto decoded = compiled.codec.decode(s);
        if (! decoded || ! (*decoded == trace.configs[i]))
            return "step " + std::to_string(i) + ": compiled state " + compiled.machine.states().label(s) + ", simulator "
                + t.render(trace.configs[i]);
        if (i + 1 < trace.configs.size())
            s = step(s);
    }
    switch (trace.status) {
    case TuringTrace::Status::Halted:
        if (step(s) != s)
            return std::string("halted configuration is not a fixed point");
        break;
    case TuringTrace::Status::Rejected: {
        auto r = compiled.codec.reject_state();
        if (! r || step(s) != *r || step(*r) != *r)
            return std::string("rejection does not reach the absorbing rejection state");
        break;
    }
    case TuringTrace::Status::StepLimit:
        break;
    }
    return std::nullopt;
}

} // namespace memalg::check
