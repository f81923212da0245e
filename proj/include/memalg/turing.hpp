#pragma once

#include <memalg/machine.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace memalg {

enum class Move { Left, Right, Stay };
enum class BoundaryPolicy { Reject, Clamp };

using Symbol = std::uint32_t;
using Register = std::uint32_t;

struct TuringRule {
    Register next_register;
    Symbol write;
    Move move;
};

struct TuringConfig {
    Register reg = 0;
    std::vector<Symbol> tape;
    std::uint32_t head = 0;

    friend bool operator==(const TuringConfig &, const TuringConfig &) = default;
};

/// A deterministic Turing machine on a bounded tape of `cells` cells.
/// Missing rules and halting registers both halt in place.
struct TuringSpec {
    std::string name;
    std::vector<std::string> symbols;
    std::vector<std::string> registers;
    std::size_t cells = 0;
    std::map<std::pair<Register, Symbol>, TuringRule> rules;
    std::set<Register> halting;
    BoundaryPolicy boundary = BoundaryPolicy::Reject;
    TuringConfig initial;

    /// Throws InvalidSpec on empty alphabets, dangling indices or a malformed
    /// initial configuration.
    void validate() const;
    void validate_config(const TuringConfig & c) const;

    std::optional<TuringRule> rule(Register r, Symbol s) const;
    bool is_halting(Register r) const { return halting.contains(r); }

    std::string render(const TuringConfig & c) const;
};

TuringSpec parse_turing(std::string_view text);
TuringSpec read_turing_file(const std::filesystem::path & path);
std::string format_turing(const TuringSpec & t);

struct TuringStep {
    enum class Status { Moved, Halted, Rejected };
    Status status;
    TuringConfig next; ///< the unchanged configuration unless Moved
};

/// One step of direct interpretation.
TuringStep step_tm(const TuringSpec & t, const TuringConfig & c);

struct TuringTrace {
    enum class Status { Halted, Rejected, StepLimit };
    Status status;
    std::vector<TuringConfig> configs; ///< starts with the initial configuration
};

std::string_view to_string(TuringTrace::Status status);

/// Runs the rules directly on (register, tape, head) for at most max_steps
/// steps. A Rejected trace ends with the last legal configuration.
TuringTrace simulate_tm(const TuringSpec & t, std::size_t max_steps);
TuringTrace simulate_tm(const TuringSpec & t, const TuringConfig & start, std::size_t max_steps);

/// Bijection between configurations and the compiled machine's state indices.
/// States are ordered by (register, tape read as a base-m number with cell 0
/// most significant, head); the boundary error state, if any, comes last.
class TuringCodec {
public:
    TuringCodec(std::size_t registers, std::size_t symbols, std::size_t cells, bool with_reject_state);

    std::uint64_t configuration_count() const noexcept { return _configurations; }
    std::uint64_t state_count() const noexcept { return _configurations + (_reject ? 1 : 0); }
    std::optional<StateIndex> reject_state() const;

    StateIndex encode(const TuringConfig & c) const;
    /// nullopt for the reject state.
    std::optional<TuringConfig> decode(StateIndex s) const;

private:
    std::size_t _registers, _symbols, _cells;
    std::uint64_t _tapes;
    std::uint64_t _configurations;
    bool _reject;
};

struct CompiledTuring {
    Machine machine;
    TuringCodec codec;
};

/// Compiles the TM into a one-function machine over k * m^n * n states
/// (plus one absorbing error state under the reject policy). Throws
/// EnumerationTooLarge beyond cap.
CompiledTuring compile_tm(const TuringSpec & t, std::uint64_t cap = default_enumeration_cap);

} // namespace memalg
