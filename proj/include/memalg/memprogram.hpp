#pragma once

#include <memalg/machine.hpp>
#include <memalg/turing.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace memalg {

/// A memory cell and the finite set of values it can hold.
struct MemCell {
    std::string name;
    std::vector<std::string> alphabet;
};

/// Ordered list of cell indices read (or written) together.
using Selector = std::vector<std::size_t>;

/// Right-hand side of a transition entry. A halting action leaves the
/// configuration unchanged.
struct MemAction {
    bool halt = false;
    Selector write_cells;
    std::vector<std::uint32_t> write_values;
    std::size_t next_selector = 0; ///< index into MemProgram::selectors
    std::size_t next_function = 0;

    friend bool operator==(const MemAction &, const MemAction &) = default;
};

/// Behaviour of one transition function for one read selector: an action per
/// combination of read values, with an optional fallback for the rest.
struct SelectorTable {
    std::map<std::vector<std::uint32_t>, MemAction> entries;
    std::optional<MemAction> fallback;
};

struct MemFunction {
    std::map<std::size_t, SelectorTable> by_selector; ///< keyed by selector index
};

/// Conjunction of cell == value tests.
struct FinalCondition {
    std::vector<std::pair<std::size_t, std::uint32_t>> equals;
};

struct MemConfig {
    std::vector<std::uint32_t> contents;
    std::size_t selector = 0;
    std::size_t function = 0;

    friend bool operator==(const MemConfig &, const MemConfig &) = default;
};

/// A finite digital memcomputing program: cells, an indexed family of
/// transition functions each choosing what to write, what to read next and
/// which function runs next, final-state conditions and a start configuration.
/// A configuration matching a final condition, or whose (function, selector)
/// pair has no table, does not change.
struct MemProgram {
    std::string name;
    std::vector<MemCell> cells;
    std::vector<Selector> selectors;
    std::vector<MemFunction> functions;
    std::vector<FinalCondition> finals;
    MemConfig initial;

    /// Index of an existing selector or a newly appended one.
    std::size_t intern_selector(const Selector & s);
    std::optional<std::size_t> find_cell(std::string_view name) const;

    /// Throws InvalidSpec for dangling indices, out-of-alphabet values and
    /// tables that are not total without a fallback.
    void validate() const;

    bool is_final(const MemConfig & c) const;
    std::string render(const MemConfig & c) const;
};

MemProgram parse_mem(std::string_view text);
MemProgram read_mem_file(const std::filesystem::path & path);
std::string format_mem(const MemProgram & p);

struct MemStep {
    enum class Status { Moved, Final, Halted };
    Status status;
    MemConfig next;
};

MemStep step_mem(const MemProgram & p, const MemConfig & c);

struct MemTrace {
    enum class Status { Final, Halted, StepLimit };
    Status status;
    std::vector<MemConfig> configs;
};

std::string_view to_string(MemTrace::Status status);

MemTrace run_mem(const MemProgram & p, std::size_t max_steps);

/// Aggregate-state codec: cell contents (mixed radix, cell 0 most
/// significant), then read selector, then function index.
class MemCodec {
public:
    explicit MemCodec(const MemProgram & p);

    std::uint64_t state_count() const noexcept { return _count; }
    StateIndex encode(const MemConfig & c) const;
    MemConfig decode(StateIndex s) const;

private:
    std::vector<std::uint64_t> _radix;
    std::uint64_t _contents = 1;
    std::size_t _selectors;
    std::size_t _functions;
    std::uint64_t _count;
};

struct CompiledMem {
    Machine machine;
    MemCodec codec;
};

/// Compiles the program into a single stationary step function over
/// aggregate states (contents, selector, function index). Final and stuck
/// configurations are fixed points.
CompiledMem compile_mem(const MemProgram & p, std::uint64_t cap = default_enumeration_cap);

/// Memtape cells tape0..tape{n-1}, a memregister cell "reg" and a memaddress
/// cell "addr". Each step reads (reg, addr, tape[addr]), writes the rule's
/// symbol, register and address, and selects the next tape cell to read.
MemProgram tm_to_mem(const TuringSpec & t);

/// Which cells of a memprogram carry the TM's tape, register and head.
struct LockstepMapping {
    std::vector<std::size_t> tape_cells;
    std::size_t register_cell;
    std::size_t address_cell;
    std::optional<std::string> reject_marker; ///< register value standing for a boundary rejection
};

/// The naming convention used by tm_to_mem. Throws InvalidArgument if the
/// program lacks those cells.
LockstepMapping default_lockstep_mapping(const TuringSpec & t, const MemProgram & p);

struct LockstepReport {
    struct Divergence {
        std::size_t step;
        std::string detail;
    };

    std::size_t steps_verified = 0;
    bool halted = false;
    bool rejected = false;
    std::optional<Divergence> divergence;
    LockstepMapping mapping;

    std::string summary() const;
};

/// Runs the TM directly and the memprogram interpreter side by side for up
/// to `steps` steps, checking memtape = tape, memregister = register and
/// memaddress = head after every step.
LockstepReport verify_lockstep(const TuringSpec & t, const MemProgram & p, std::size_t steps,
    const std::optional<LockstepMapping> & mapping = std::nullopt);

} // namespace memalg
