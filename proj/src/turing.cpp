#include <memalg/error.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/turing.hpp>

#include "lexer.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace memalg {

using detail::Cursor;
using detail::Token;

namespace {
    void check_name(const std::string & name, std::string_view what)
    {
        if (name.empty() || name.find_first_of("./ \t,:()=#") != std::string::npos || name.find("->") != std::string::npos)
            throw Error(ErrorKind::InvalidSpec, std::string(what) + " '" + name + "' contains a reserved character");
    }

    char move_letter(Move m)
    {
        switch (m) {
        case Move::Left: return 'L';
        case Move::Right: return 'R';
        case Move::Stay: return 'S';
        }
        return '?';
    }

    std::uint32_t lookup(Cursor & c, const Token & t, const std::vector<std::string> & names, std::string_view what)
    {
        auto it = std::find(names.begin(), names.end(), t.text);
        if (it == names.end())
            c.fail_at(t, "undeclared " + std::string(what) + " '" + t.text + "'");
        return static_cast<std::uint32_t>(it - names.begin());
    }

    std::uint64_t parse_count(Cursor & c, const Token & t)
    {
        std::uint64_t v = 0;
        if (t.text.empty() || t.text.size() > 18 || ! std::all_of(t.text.begin(), t.text.end(), ::isdigit))
            c.fail_at(t, "expected a non-negative integer, found '" + t.text + "'");
        for (char d : t.text)
            v = v * 10 + static_cast<std::uint64_t>(d - '0');
        return v;
    }
}

void TuringSpec::validate() const
{
    if (symbols.empty())
        throw Error(ErrorKind::InvalidSpec, "a Turing machine needs at least one tape symbol");
    if (registers.empty())
        throw Error(ErrorKind::InvalidSpec, "a Turing machine needs at least one register state");
    if (cells == 0)
        throw Error(ErrorKind::InvalidSpec, "a Turing machine needs at least one tape cell");
    for (auto & s : symbols)
        check_name(s, "symbol");
    for (auto & r : registers)
        check_name(r, "register");
    auto unique = [](auto v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (! unique(symbols) || ! unique(registers))
        throw Error(ErrorKind::InvalidSpec, "duplicate symbol or register name");
    for (auto & [key, rule] : rules)
        if (key.first >= registers.size() || key.second >= symbols.size() || rule.next_register >= registers.size()
            || rule.write >= symbols.size())
            throw Error(ErrorKind::InvalidSpec, "rule references an undeclared symbol or register");
    for (auto h : halting)
        if (h >= registers.size())
            throw Error(ErrorKind::InvalidSpec, "halting register out of range");
    validate_config(initial);
}

void TuringSpec::validate_config(const TuringConfig & c) const
{
    if (c.reg >= registers.size())
        throw Error(ErrorKind::InvalidSpec, "configuration register out of range");
    if (c.tape.size() != cells)
        throw Error(ErrorKind::InvalidSpec, "configuration tape has " + std::to_string(c.tape.size()) + " cells, expected " + std::to_string(cells));
    for (auto s : c.tape)
        if (s >= symbols.size())
            throw Error(ErrorKind::InvalidSpec, "configuration tape holds an undeclared symbol");
    if (c.head >= cells)
        throw Error(ErrorKind::InvalidSpec, "head position " + std::to_string(c.head) + " is off the tape");
}

std::optional<TuringRule> TuringSpec::rule(Register r, Symbol s) const
{
    auto it = rules.find({r, s});
    if (it == rules.end())
        return std::nullopt;
    return it->second;
}

std::string TuringSpec::render(const TuringConfig & c) const
{
    std::string out = "register " + registers.at(c.reg) + " tape";
    for (std::size_t i = 0; i < c.tape.size(); ++i)
        out += (i == c.head ? " [" : " ") + symbols.at(c.tape[i]) + (i == c.head ? "]" : "");
    return out + " head " + std::to_string(c.head);
}

TuringSpec parse_turing(std::string_view text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty())
        throw ParseError(1, 1, "empty Turing machine description");

    TuringSpec t;
    bool header = false, have_symbols = false, have_registers = false, have_cells = false, have_init = false;
    for (auto & line : lines) {
        Cursor c(line);
        auto & kw = c.word("a keyword");
        if (! header) {
            if (kw.text != "tm")
                c.fail_at(kw, "expected 'tm <name>' header");
            t.name = c.word("a machine name").text;
            c.expect_end();
            header = true;
            continue;
        }
        if (kw.text == "symbols") {
            while (! c.done())
                t.symbols.push_back(c.word("a symbol").text);
            have_symbols = true;
        }
        else if (kw.text == "registers") {
            while (! c.done())
                t.registers.push_back(c.word("a register").text);
            have_registers = true;
        }
        else if (kw.text == "cells") {
            t.cells = parse_count(c, c.word("a cell count"));
            c.expect_end();
            have_cells = true;
        }
        else if (kw.text == "boundary") {
            auto & p = c.word("reject or clamp");
            if (p.text == "reject")
                t.boundary = BoundaryPolicy::Reject;
            else if (p.text == "clamp")
                t.boundary = BoundaryPolicy::Clamp;
            else
                c.fail_at(p, "expected 'reject' or 'clamp'");
            c.expect_end();
        }
        else if (kw.text == "halting") {
            if (! have_registers)
                c.fail_at(kw, "'halting' before 'registers'");
            while (! c.done()) {
                auto & r = c.word("a register");
                t.halting.insert(lookup(c, r, t.registers, "register"));
            }
        }
        else if (kw.text == "rule") {
            if (! have_registers || ! have_symbols)
                c.fail_at(kw, "'rule' before 'symbols' and 'registers'");
            auto & r = c.word("a register");
            auto from = lookup(c, r, t.registers, "register");
            auto & s = c.word("a symbol");
            auto read = lookup(c, s, t.symbols, "symbol");
            c.expect("->");
            auto & r2 = c.word("a register");
            auto & s2 = c.word("a symbol");
            auto & mv = c.word("a move (L, R or S)");
            TuringRule rule{lookup(c, r2, t.registers, "register"), lookup(c, s2, t.symbols, "symbol"), Move::Stay};
            if (mv.text == "L")
                rule.move = Move::Left;
            else if (mv.text == "R")
                rule.move = Move::Right;
            else if (mv.text != "S")
                c.fail_at(mv, "expected a move L, R or S");
            c.expect_end();
            if (! t.rules.emplace(std::pair{from, read}, rule).second)
                c.fail_at(r, "duplicate rule for (" + r.text + ", " + s.text + ")");
        }
        else if (kw.text == "init") {
            if (! have_registers || ! have_symbols || ! have_cells)
                c.fail_at(kw, "'init' before 'symbols', 'registers' and 'cells'");
            c.expect("tape");
            t.initial.tape.clear();
            while (! c.peek_is("head")) {
                auto & s = c.word("a symbol");
                t.initial.tape.push_back(lookup(c, s, t.symbols, "symbol"));
            }
            c.expect("head");
            t.initial.head = static_cast<std::uint32_t>(parse_count(c, c.word("a head position")));
            c.expect("register");
            t.initial.reg = lookup(c, c.word("a register"), t.registers, "register");
            c.expect_end();
            have_init = true;
        }
        else
            c.fail_at(kw, "unknown keyword '" + kw.text + "'");
    }

    auto last = lines.back().number;
    if (! have_symbols || ! have_registers || ! have_cells)
        throw ParseError(last, 1, "a Turing machine needs 'symbols', 'registers' and 'cells' lines");
    if (! have_init)
        t.initial = TuringConfig{0, std::vector<Symbol>(t.cells, 0), 0};
    try {
        t.validate();
    }
    catch (const Error & e) {
        throw ParseError(last, 1, e.what());
    }
    return t;
}

TuringSpec read_turing_file(const std::filesystem::path & path)
{
    return parse_turing(read_text_file(path));
}

std::string format_turing(const TuringSpec & t)
{
    std::ostringstream out;
    out << "tm " << (t.name.empty() ? "unnamed" : t.name) << '\n';
    out << "symbols";
    for (auto & s : t.symbols)
        out << ' ' << s;
    out << "\nregisters";
    for (auto & r : t.registers)
        out << ' ' << r;
    out << "\ncells " << t.cells << '\n';
    out << "boundary " << (t.boundary == BoundaryPolicy::Reject ? "reject" : "clamp") << '\n';
    if (! t.halting.empty()) {
        out << "halting";
        for (auto h : t.halting)
            out << ' ' << t.registers[h];
        out << '\n';
    }
    for (auto & [key, rule] : t.rules)
        out << "rule " << t.registers[key.first] << ' ' << t.symbols[key.second] << " -> " << t.registers[rule.next_register]
            << ' ' << t.symbols[rule.write] << ' ' << move_letter(rule.move) << '\n';
    out << "init tape";
    for (auto s : t.initial.tape)
        out << ' ' << t.symbols[s];
    out << " head " << t.initial.head << " register " << t.registers[t.initial.reg] << '\n';
    return out.str();
}

TuringStep step_tm(const TuringSpec & t, const TuringConfig & c)
{
    if (t.is_halting(c.reg))
        return {TuringStep::Status::Halted, c};
    auto rule = t.rule(c.reg, c.tape[c.head]);
    if (! rule)
        return {TuringStep::Status::Halted, c};

    TuringConfig next = c;
    next.reg = rule->next_register;
    next.tape[c.head] = rule->write;
    long head = c.head;
    if (rule->move == Move::Left)
        --head;
    else if (rule->move == Move::Right)
        ++head;
    if (head < 0 || head >= static_cast<long>(t.cells)) {
        if (t.boundary == BoundaryPolicy::Reject)
            return {TuringStep::Status::Rejected, c};
        head = c.head;
    }
    next.head = static_cast<std::uint32_t>(head);
    return {TuringStep::Status::Moved, std::move(next)};
}

std::string_view to_string(TuringTrace::Status status)
{
    switch (status) {
    case TuringTrace::Status::Halted: return "halted";
    case TuringTrace::Status::Rejected: return "rejected";
    case TuringTrace::Status::StepLimit: return "step-limit";
    }
    return "unknown";
}

TuringTrace simulate_tm(const TuringSpec & t, std::size_t max_steps)
{
    return simulate_tm(t, t.initial, max_steps);
}

TuringTrace simulate_tm(const TuringSpec & t, const TuringConfig & start, std::size_t max_steps)
{
    t.validate_config(start);
    TuringTrace trace{TuringTrace::Status::StepLimit, {start}};
    for (std::size_t i = 0; i < max_steps; ++i) {
        auto step = step_tm(t, trace.configs.back());
        if (step.status == TuringStep::Status::Halted) {
            trace.status = TuringTrace::Status::Halted;
            return trace;
        }
        if (step.status == TuringStep::Status::Rejected) {
            trace.status = TuringTrace::Status::Rejected;
            return trace;
        }
        trace.configs.push_back(std::move(step.next));
    }
    // a step budget that ends exactly on a halted configuration still counts as halted
    if (step_tm(t, trace.configs.back()).status == TuringStep::Status::Halted)
        trace.status = TuringTrace::Status::Halted;
    return trace;
}

TuringCodec::TuringCodec(std::size_t registers, std::size_t symbols, std::size_t cells, bool with_reject_state) :
    _registers(registers), _symbols(symbols), _cells(cells), _tapes(1), _configurations(0), _reject(with_reject_state)
{
    auto overflow = [] { throw Error(ErrorKind::EnumerationTooLarge, "Turing configuration count exceeds 64 bits"); };
    for (std::size_t i = 0; i < cells; ++i)
        if (__builtin_mul_overflow(_tapes, static_cast<std::uint64_t>(symbols), &_tapes))
            overflow();
    if (__builtin_mul_overflow(_tapes, static_cast<std::uint64_t>(registers), &_configurations)
        || __builtin_mul_overflow(_configurations, static_cast<std::uint64_t>(cells), &_configurations))
        overflow();
}

std::optional<StateIndex> TuringCodec::reject_state() const
{
    if (! _reject)
        return std::nullopt;
    return static_cast<StateIndex>(_configurations);
}

StateIndex TuringCodec::encode(const TuringConfig & c) const
{
    std::uint64_t tape = 0;
    for (auto s : c.tape)
        tape = tape * _symbols + s;
    return static_cast<StateIndex>((c.reg * _tapes + tape) * _cells + c.head);
}

std::optional<TuringConfig> TuringCodec::decode(StateIndex s) const
{
    if (s >= _configurations)
        return std::nullopt;
    TuringConfig c;
    c.head = static_cast<std::uint32_t>(s % _cells);
    auto rest = s / _cells;
    auto tape = rest % _tapes;
    c.reg = static_cast<Register>(rest / _tapes);
    c.tape.assign(_cells, 0);
    for (std::size_t i = _cells; i-- > 0;) {
        c.tape[i] = static_cast<Symbol>(tape % _symbols);
        tape /= _symbols;
    }
    return c;
}

CompiledTuring compile_tm(const TuringSpec & t, std::uint64_t cap)
{
    t.validate();
    const auto k = t.registers.size();
    const auto m = t.symbols.size();
    const auto n = t.cells;
    const bool reject = t.boundary == BoundaryPolicy::Reject;
    TuringCodec codec(k, m, n, reject);
    if (codec.state_count() > cap)
        throw Error(ErrorKind::EnumerationTooLarge, std::to_string(codec.state_count()) + " states exceed the cap of " + std::to_string(cap));

    // place value of each cell in the tape number
    std::vector<std::uint64_t> weight(n);
    std::uint64_t tapes = 1;
    for (std::size_t i = n; i-- > 0;) {
        weight[i] = tapes;
        tapes *= m;
    }

    std::vector<std::string> labels;
    labels.reserve(codec.state_count());
    std::vector<StateIndex> table;
    table.reserve(codec.state_count());

    for (std::uint64_t reg = 0; reg < k; ++reg) {
        for (std::uint64_t tape = 0; tape < tapes; ++tape) {
            std::string contents;
            for (std::size_t i = 0; i < n; ++i)
                contents += (i ? "." : "") + t.symbols[(tape / weight[i]) % m];
            for (std::uint64_t head = 0; head < n; ++head) {
                const auto self = static_cast<StateIndex>((reg * tapes + tape) * n + head);
                labels.push_back(t.registers[reg] + "/" + contents + "/" + std::to_string(head));

                const auto read = static_cast<Symbol>((tape / weight[head]) % m);
                auto rule = t.is_halting(static_cast<Register>(reg)) ? std::nullopt : t.rule(static_cast<Register>(reg), read);
                if (! rule) {
                    table.push_back(self);
                    continue;
                }
                auto new_tape = tape - read * weight[head] + rule->write * weight[head];
                std::int64_t new_head = static_cast<std::int64_t>(head)
                    + (rule->move == Move::Right ? 1 : rule->move == Move::Left ? -1 : 0);
                if (new_head < 0 || new_head >= static_cast<std::int64_t>(n)) {
                    if (reject) {
                        table.push_back(*codec.reject_state());
                        continue;
                    }
                    new_head = static_cast<std::int64_t>(head);
                }
                table.push_back(static_cast<StateIndex>((rule->next_register * tapes + new_tape) * n + static_cast<std::uint64_t>(new_head)));
            }
        }
    }
    if (reject) {
        labels.push_back("rejected");
        table.push_back(*codec.reject_state());
    }

    StateSet states(std::move(labels));
    auto machine = make_machine(states, {TransitionFunction(states, std::move(table))}, {"step"}, {}, t.name);
    return CompiledTuring{std::move(machine), codec};
}

} // namespace memalg
