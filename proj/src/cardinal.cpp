#include <memalg/cardinal.hpp>
#include <memalg/error.hpp>

#include <algorithm>
#include <limits>

namespace memalg {

namespace {
    void record(Derivation * trace, std::string rule, std::string statement, std::string rewrite)
    {
        if (trace)
            trace->push_back({std::move(rule), std::move(statement), std::move(rewrite)});
    }

    std::string binary(const Cardinal & a, std::string_view op, const Cardinal & b, const Cardinal & r)
    {
        return a.to_string() + " " + std::string(op) + " " + b.to_string() + " = " + r.to_string();
    }

    std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
    {
        std::uint64_t r;
        if (__builtin_add_overflow(a, b, &r))
            throw Error(ErrorKind::ArithmeticOverflow, std::to_string(a) + " + " + std::to_string(b) + " exceeds 64 bits");
        return r;
    }

    std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
    {
        std::uint64_t r;
        if (__builtin_mul_overflow(a, b, &r))
            throw Error(ErrorKind::ArithmeticOverflow, std::to_string(a) + " * " + std::to_string(b) + " exceeds 64 bits");
        return r;
    }

    std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp)
    {
        std::uint64_t result = 1;
        std::uint64_t b = base;
        std::uint64_t e = exp;
        while (e > 0) {
            if (e & 1) {
                if (__builtin_mul_overflow(result, b, &result))
                    throw Error(ErrorKind::ArithmeticOverflow, std::to_string(base) + " ^ " + std::to_string(exp) + " exceeds 64 bits");
            }
            e >>= 1;
            if (e > 0 && __builtin_mul_overflow(b, b, &b))
                throw Error(ErrorKind::ArithmeticOverflow, std::to_string(base) + " ^ " + std::to_string(exp) + " exceeds 64 bits");
        }
        return result;
    }

    Cardinal next_beth(std::uint64_t index)
    {
        if (index == std::numeric_limits<std::uint64_t>::max())
            throw Error(ErrorKind::ArithmeticOverflow, "Beth index overflow");
        return Cardinal::beth(index + 1);
    }
}

std::string format_derivation(const Derivation & d, std::string_view indent)
{
    std::string out;
    for (auto & step : d)
        out += std::string(indent) + "[" + step.rule + "] " + step.rewrite + "  (" + step.statement + ")\n";
    return out;
}

std::string Cardinal::to_string() const
{
    return (_infinite ? "Beth(" : "Finite(") + std::to_string(_payload) + ")";
}

Cardinal card_add(const Cardinal & a, const Cardinal & b, Derivation * trace)
{
    if (a.is_finite() && b.is_finite()) {
        auto r = Cardinal::finite(checked_add(a.value(), b.value()));
        record(trace, "finite-arithmetic", "integer addition", binary(a, "+", b, r));
        return r;
    }
    auto r = std::max(a, b);
    record(trace, "infinite-absorption", "mu + kappa = max{mu, kappa} when either is infinite", binary(a, "+", b, r));
    return r;
}

Cardinal card_mul(const Cardinal & a, const Cardinal & b, Derivation * trace)
{
    if (a.is_finite() && b.is_finite()) {
        auto r = Cardinal::finite(checked_mul(a.value(), b.value()));
        record(trace, "finite-arithmetic", "integer multiplication", binary(a, "*", b, r));
        return r;
    }
    if (a == Cardinal::finite(0) || b == Cardinal::finite(0)) {
        auto r = Cardinal::finite(0);
        record(trace, "zero-annihilator", "0 * kappa = 0", binary(a, "*", b, r));
        return r;
    }
    auto r = std::max(a, b);
    record(trace, "infinite-absorption", "mu * kappa = max{mu, kappa} when either is infinite and both are nonzero", binary(a, "*", b, r));
    return r;
}

Cardinal card_pow(const Cardinal & base, const Cardinal & exponent, Derivation * trace)
{
    const auto zero = Cardinal::finite(0);
    const auto one = Cardinal::finite(1);

    if (base == zero && exponent == zero)
        throw Error(ErrorKind::UndefinedForm, "0^0 is undefined");

    if (exponent == zero) {
        record(trace, "empty-exponent", "kappa^0 = 1", binary(base, "^", exponent, one));
        return one;
    }
    if (base == one) {
        record(trace, "unit-base", "1^kappa = 1", binary(base, "^", exponent, one));
        return one;
    }
    if (base == zero) {
        record(trace, "zero-base", "0^kappa = 0 for kappa >= 1", binary(base, "^", exponent, zero));
        return zero;
    }

    if (base.is_finite() && exponent.is_finite()) {
        auto r = Cardinal::finite(checked_pow(base.value(), exponent.value()));
        record(trace, "finite-arithmetic", "integer exponentiation", binary(base, "^", exponent, r));
        return r;
    }

    if (exponent.is_infinite()) {
        // base >= 2 here
        auto alpha = exponent.beth_index();
        if (base.is_finite()) {
            auto r = next_beth(alpha);
            record(trace, "cantor-exponent", "mu^Beth(a) = Beth(a+1) for 2 <= mu <= Beth(a+1)", binary(base, "^", exponent, r));
            return r;
        }
        auto beta = base.beth_index();
        auto r = beta > alpha ? Cardinal::beth(beta) : next_beth(alpha);
        if (beta <= alpha + 1)
            record(trace, "cantor-exponent", "mu^Beth(a) = Beth(a+1) for 2 <= mu <= Beth(a+1)", binary(base, "^", exponent, r));
        else
            record(trace, "beth-power-closure", "Beth(b)^Beth(a) = Beth(max(b, a+1))", binary(base, "^", exponent, r));
        return r;
    }

    // infinite base, finite exponent k >= 1
    record(trace, "beth-finite-power", "Beth(a)^k = Beth(a) for finite k >= 1", binary(base, "^", exponent, base));
    return base;
}

std::string_view to_string(TemplateKind kind)
{
    switch (kind) {
    case TemplateKind::FiniteTuring: return "finite-turing";
    case TemplateKind::InfiniteTapeTuring: return "infinite-tape-turing";
    case TemplateKind::Umm: return "umm";
    case TemplateKind::Lsm: return "lsm";
    case TemplateKind::Quantum: return "quantum";
    }
    return "unknown";
}

MachineTemplate MachineTemplate::finite_turing(std::uint64_t k, std::uint64_t m, std::uint64_t n)
{
    return MachineTemplate{TemplateKind::FiniteTuring, k, m, n};
}

MachineTemplate MachineTemplate::infinite_tape_turing(std::uint64_t k, std::uint64_t m)
{
    return MachineTemplate{TemplateKind::InfiniteTapeTuring, k, m, 0};
}

MachineTemplate MachineTemplate::umm(std::uint64_t n)
{
    return MachineTemplate{TemplateKind::Umm, 0, 0, n};
}

MachineTemplate MachineTemplate::lsm(std::uint64_t n)
{
    return MachineTemplate{TemplateKind::Lsm, 0, 0, n};
}

MachineTemplate MachineTemplate::quantum(std::uint64_t m, std::uint64_t n)
{
    return MachineTemplate{TemplateKind::Quantum, 0, m, n};
}

void MachineTemplate::validate() const
{
    auto require = [&](std::uint64_t v, std::string_view name) {
        if (v == 0)
            throw Error(ErrorKind::InvalidArgument, std::string(to_string(kind)) + " requires " + std::string(name) + " >= 1");
    };
    switch (kind) {
    case TemplateKind::FiniteTuring:
        require(registers, "k");
        require(symbols, "m");
        require(cells, "n");
        break;
    case TemplateKind::InfiniteTapeTuring:
        require(registers, "k");
        require(symbols, "m");
        break;
    case TemplateKind::Umm:
    case TemplateKind::Lsm:
        require(cells, "n");
        break;
    case TemplateKind::Quantum:
        require(symbols, "m");
        require(cells, "n");
        break;
    }
}

std::string MachineTemplate::describe() const
{
    auto s = std::string(to_string(kind));
    switch (kind) {
    case TemplateKind::FiniteTuring:
        return s + "(k=" + std::to_string(registers) + ", m=" + std::to_string(symbols) + ", n=" + std::to_string(cells) + ")";
    case TemplateKind::InfiniteTapeTuring:
        return s + "(k=" + std::to_string(registers) + ", m=" + std::to_string(symbols) + ")";
    case TemplateKind::Umm:
    case TemplateKind::Lsm:
        return s + "(n=" + std::to_string(cells) + ")";
    case TemplateKind::Quantum:
        return s + "(m=" + std::to_string(symbols) + ", n=" + std::to_string(cells) + ")";
    }
    return s;
}

Cardinal state_cardinality(const MachineTemplate & t, Derivation * trace)
{
    t.validate();
    const auto k = Cardinal::finite(t.registers);
    const auto m = Cardinal::finite(t.symbols);
    const auto n = Cardinal::finite(t.cells);
    const auto aleph = Cardinal::beth(0);

    switch (t.kind) {
    case TemplateKind::FiniteTuring: {
        // register x tape contents x head position
        auto tapes = card_pow(m, n, trace);
        return card_mul(card_mul(k, tapes, trace), n, trace);
    }
    case TemplateKind::InfiniteTapeTuring: {
        auto tapes = card_pow(m, aleph, trace);
        return card_mul(card_mul(k, tapes, trace), aleph, trace);
    }
    case TemplateKind::Umm:
    case TemplateKind::Lsm:
        // each cell holds a continuous value
        return card_pow(Cardinal::continuum(), n, trace);
    case TemplateKind::Quantum: {
        auto basis = card_pow(m, n, trace);
        auto complex_plane = card_pow(Cardinal::continuum(), Cardinal::finite(2), trace);
        auto amplitudes = card_pow(complex_plane, basis, trace);
        if (trace)
            trace->push_back({"normalisation-quotient",
                "normalisation and global phase remove a copy of R^2; absorbed, no cardinal subtraction performed",
                amplitudes.to_string() + " unchanged"});
        return amplitudes;
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown template kind");
}

Cardinal transition_space_cardinality(const Cardinal & state_card, Derivation * trace)
{
    if (state_card < Cardinal::finite(1))
        throw Error(ErrorKind::InvalidArgument, "a state set must be non-empty");
    return card_pow(state_card, state_card, trace);
}

} // namespace memalg
