#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace memalg {

/// A cardinal number that is either a finite natural or a Beth number with a
/// finite index. Beth(0) is the cardinality of the naturals and
/// Beth(a + 1) = 2^Beth(a).
class Cardinal {
public:
    static Cardinal finite(std::uint64_t value) { return Cardinal{false, value}; }
    static Cardinal beth(std::uint64_t index) { return Cardinal{true, index}; }

    /// Beth(1), the cardinality of the reals.
    static Cardinal continuum() { return beth(1); }

    bool is_finite() const noexcept { return ! _infinite; }
    bool is_infinite() const noexcept { return _infinite; }

    /// Only meaningful for finite cardinals.
    std::uint64_t value() const noexcept { return _infinite ? 0 : _payload; }

    /// Only meaningful for Beth cardinals.
    std::uint64_t beth_index() const noexcept { return _infinite ? _payload : 0; }

    friend bool operator==(const Cardinal &, const Cardinal &) = default;
    friend std::strong_ordering operator<=>(const Cardinal & a, const Cardinal & b)
    {
        if (a._infinite != b._infinite)
            return a._infinite ? std::strong_ordering::greater : std::strong_ordering::less;
        return a._payload <=> b._payload;
    }

    /// Canonical rendering: "Finite(192)" or "Beth(1)".
    std::string to_string() const;

private:
    Cardinal(bool infinite, std::uint64_t payload) : _infinite(infinite), _payload(payload) {}

    bool _infinite;
    std::uint64_t _payload;
};

/// One rewrite applied while evaluating cardinal arithmetic.
struct DerivationStep {
    std::string rule;      ///< short rule identifier, e.g. "infinite-absorption"
    std::string statement; ///< the law the rule instantiates
    std::string rewrite;   ///< concrete instance, e.g. "Beth(0) + Beth(1) = Beth(1)"
};

using Derivation = std::vector<DerivationStep>;

/// One line per step: "<indent>[rule] rewrite  (statement)".
std::string format_derivation(const Derivation & d, std::string_view indent = "  ");

// The trace parameter is optional everywhere; pass nullptr to skip recording.
Cardinal card_add(const Cardinal & a, const Cardinal & b, Derivation * trace = nullptr);
Cardinal card_mul(const Cardinal & a, const Cardinal & b, Derivation * trace = nullptr);
Cardinal card_pow(const Cardinal & base, const Cardinal & exponent, Derivation * trace = nullptr);

enum class TemplateKind { FiniteTuring, InfiniteTapeTuring, Umm, Lsm, Quantum };

std::string_view to_string(TemplateKind kind);

/// Parametrised description of a machine family whose state-set size can be
/// computed symbolically. Unused parameters are zero.
struct MachineTemplate {
    TemplateKind kind;
    std::uint64_t registers = 0; ///< k, control states of a Turing machine
    std::uint64_t symbols = 0;   ///< m, tape symbols or per-qudit basis states
    std::uint64_t cells = 0;     ///< n, tape cells, memcells, reservoir cells or qudits

    static MachineTemplate finite_turing(std::uint64_t k, std::uint64_t m, std::uint64_t n);
    static MachineTemplate infinite_tape_turing(std::uint64_t k, std::uint64_t m);
    static MachineTemplate umm(std::uint64_t n);
    static MachineTemplate lsm(std::uint64_t n = 1);
    static MachineTemplate quantum(std::uint64_t m, std::uint64_t n);

    /// Throws InvalidArgument when a required parameter is zero.
    void validate() const;

    std::string describe() const;
};

/// |S| for the template, derived through card_add/card_mul/card_pow so the
/// trace shows every rule used.
Cardinal state_cardinality(const MachineTemplate & t, Derivation * trace = nullptr);

/// |Phi_S| = |S|^|S|. Requires state_card >= 1.
Cardinal transition_space_cardinality(const Cardinal & state_card, Derivation * trace = nullptr);

/// Evaluates an expression over integers, beth(a), + * ^ and parentheses.
/// '^' binds tightest and is right associative. Throws ParseError.
Cardinal evaluate_cardinal_expression(std::string_view text, Derivation * trace = nullptr);

} // namespace memalg
