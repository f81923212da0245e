#include <memalg/error.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/memprogram.hpp>

#include "lexer.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>

namespace memalg {

using detail::Cursor;
using detail::Token;

namespace {
    void check_value_name(const std::string & name, std::string_view what)
    {
        if (name.empty() || name.find_first_of("./ \t,:()=#") != std::string::npos || name.find("->") != std::string::npos)
            throw Error(ErrorKind::InvalidSpec, std::string(what) + " '" + name + "' contains a reserved character");
    }

    std::uint64_t combinations(const MemProgram & p, const Selector & s)
    {
        std::uint64_t total = 1;
        for (auto c : s)
            if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(p.cells[c].alphabet.size()), &total))
                return std::numeric_limits<std::uint64_t>::max();
        return total;
    }

    void validate_action(const MemProgram & p, const MemAction & a)
    {
        if (a.halt)
            return;
        if (a.write_cells.size() != a.write_values.size())
            throw Error(ErrorKind::InvalidSpec, "write selector and write values differ in length");
        std::set<std::size_t> seen;
        for (std::size_t i = 0; i < a.write_cells.size(); ++i) {
            auto c = a.write_cells[i];
            if (c >= p.cells.size())
                throw Error(ErrorKind::InvalidSpec, "write selector references an undeclared cell");
            if (! seen.insert(c).second)
                throw Error(ErrorKind::InvalidSpec, "cell '" + p.cells[c].name + "' written twice in one step");
            if (a.write_values[i] >= p.cells[c].alphabet.size())
                throw Error(ErrorKind::InvalidSpec, "value outside the alphabet of cell '" + p.cells[c].name + "'");
        }
        if (a.next_selector >= p.selectors.size())
            throw Error(ErrorKind::InvalidSpec, "next read selector out of range");
        if (a.next_function >= p.functions.size())
            throw Error(ErrorKind::InvalidSpec, "next function index " + std::to_string(a.next_function) + " is not declared");
    }

    // --- parsing helpers -------------------------------------------------

    std::size_t cell_index(const MemProgram & p, Cursor & c, const Token & t)
    {
        auto i = p.find_cell(t.text);
        if (! i)
            c.fail_at(t, "undeclared cell '" + t.text + "'");
        return *i;
    }

    Selector parse_cell_list(const MemProgram & p, Cursor & c)
    {
        Selector s;
        c.expect("(");
        if (c.accept(")"))
            return s;
        while (true) {
            s.push_back(cell_index(p, c, c.word("a cell name")));
            if (c.accept(")"))
                break;
            c.expect(",");
        }
        return s;
    }

    std::vector<std::uint32_t> parse_values(const MemProgram & p, Cursor & c, const Selector & cells)
    {
        std::vector<std::uint32_t> values;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                c.expect(",");
            auto & t = c.word("a cell value");
            auto & alphabet = p.cells[cells[i]].alphabet;
            auto it = std::find(alphabet.begin(), alphabet.end(), t.text);
            if (it == alphabet.end())
                c.fail_at(t, "'" + t.text + "' is not in the alphabet of cell '" + p.cells[cells[i]].name + "'");
            values.push_back(static_cast<std::uint32_t>(it - alphabet.begin()));
        }
        return values;
    }

    std::size_t parse_index(Cursor & c)
    {
        auto & t = c.word("an index");
        if (t.text.empty() || t.text.size() > 9 || ! std::all_of(t.text.begin(), t.text.end(), ::isdigit))
            c.fail_at(t, "expected a function index, found '" + t.text + "'");
        return std::stoul(t.text);
    }

    MemAction parse_action(MemProgram & p, Cursor & c, std::vector<std::pair<std::size_t, std::size_t>> & used_functions)
    {
        MemAction a;
        if (c.accept("halt")) {
            a.halt = true;
            return a;
        }
        if (c.accept("write")) {
            a.write_cells = parse_cell_list(p, c);
            c.expect("=");
            a.write_values = parse_values(p, c, a.write_cells);
        }
        c.expect("next");
        c.expect("read");
        a.next_selector = p.intern_selector(parse_cell_list(p, c));
        c.expect("fn");
        a.next_function = parse_index(c);
        used_functions.emplace_back(a.next_function, c.line_number());
        return a;
    }

    std::string render_selector(const MemProgram & p, const Selector & s)
    {
        std::string out = "(";
        for (std::size_t i = 0; i < s.size(); ++i)
            out += (i ? "," : "") + p.cells[s[i]].name;
        return out + ")";
    }

    std::string render_values(const MemProgram & p, const Selector & s, const std::vector<std::uint32_t> & v)
    {
        std::string out;
        for (std::size_t i = 0; i < s.size(); ++i)
            out += (i ? "," : "") + p.cells[s[i]].alphabet[v[i]];
        return out;
    }

    std::string render_action(const MemProgram & p, const MemAction & a)
    {
        if (a.halt)
            return "halt";
        std::string out;
        if (! a.write_cells.empty())
            out += "write" + render_selector(p, a.write_cells) + "=" + render_values(p, a.write_cells, a.write_values) + " ";
        return out + "next read" + render_selector(p, p.selectors[a.next_selector]) + " fn " + std::to_string(a.next_function);
    }
}

std::size_t MemProgram::intern_selector(const Selector & s)
{
    auto it = std::find(selectors.begin(), selectors.end(), s);
    if (it != selectors.end())
        return static_cast<std::size_t>(it - selectors.begin());
    selectors.push_back(s);
    return selectors.size() - 1;
}

std::optional<std::size_t> MemProgram::find_cell(std::string_view cell) const
{
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].name == cell)
            return i;
    return std::nullopt;
}

void MemProgram::validate() const
{
    if (cells.empty())
        throw Error(ErrorKind::InvalidSpec, "a memprogram needs at least one cell");
    if (functions.empty())
        throw Error(ErrorKind::InvalidSpec, "a memprogram needs at least one transition function");
    if (selectors.empty())
        throw Error(ErrorKind::InvalidSpec, "a memprogram needs at least one read selector");
    std::set<std::string> names;
    for (auto & cell : cells) {
        check_value_name(cell.name, "cell");
        if (! names.insert(cell.name).second)
            throw Error(ErrorKind::InvalidSpec, "duplicate cell '" + cell.name + "'");
        if (cell.alphabet.empty())
            throw Error(ErrorKind::InvalidSpec, "cell '" + cell.name + "' has an empty alphabet");
        std::set<std::string> values;
        for (auto & v : cell.alphabet) {
            check_value_name(v, "cell value");
            if (! values.insert(v).second)
                throw Error(ErrorKind::InvalidSpec, "duplicate value '" + v + "' in cell '" + cell.name + "'");
        }
    }
    for (auto & s : selectors) {
        std::set<std::size_t> seen;
        for (auto c : s)
            if (c >= cells.size() || ! seen.insert(c).second)
                throw Error(ErrorKind::InvalidSpec, "read selector references an undeclared or repeated cell");
    }
    for (std::size_t f = 0; f < functions.size(); ++f) {
        for (auto & [sel, table] : functions[f].by_selector) {
            if (sel >= selectors.size())
                throw Error(ErrorKind::InvalidSpec, "table keyed by an unknown selector");
            auto & selector = selectors[sel];
            for (auto & [values, action] : table.entries) {
                if (values.size() != selector.size())
                    throw Error(ErrorKind::InvalidSpec, "entry read values do not match its selector");
                for (std::size_t i = 0; i < values.size(); ++i)
                    if (values[i] >= cells[selector[i]].alphabet.size())
                        throw Error(ErrorKind::InvalidSpec, "entry reads a value outside a cell alphabet");
                validate_action(*this, action);
            }
            if (table.fallback)
                validate_action(*this, *table.fallback);
            else if (table.entries.size() != combinations(*this, selector))
                throw Error(ErrorKind::TotalityViolation, "fn " + std::to_string(f) + " covers " + std::to_string(table.entries.size())
                        + " of " + std::to_string(combinations(*this, selector)) + " read combinations of read"
                        + render_selector(*this, selector) + " and has no default");
        }
    }
    for (auto & fc : finals)
        for (auto & [cell, value] : fc.equals)
            if (cell >= cells.size() || value >= cells[cell].alphabet.size())
                throw Error(ErrorKind::InvalidSpec, "final condition references an undeclared cell or value");
    if (initial.contents.size() != cells.size())
        throw Error(ErrorKind::InvalidSpec, "initial contents must assign every cell");
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (initial.contents[i] >= cells[i].alphabet.size())
            throw Error(ErrorKind::InvalidSpec, "initial value outside the alphabet of cell '" + cells[i].name + "'");
    if (initial.selector >= selectors.size() || initial.function >= functions.size())
        throw Error(ErrorKind::InvalidSpec, "initial selector or function out of range");
}

bool MemProgram::is_final(const MemConfig & c) const
{
    return std::any_of(finals.begin(), finals.end(), [&](const FinalCondition & fc) {
        return std::all_of(fc.equals.begin(), fc.equals.end(), [&](auto & eq) { return c.contents[eq.first] == eq.second; });
    });
}

std::string MemProgram::render(const MemConfig & c) const
{
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        out += cells[i].name + "=" + cells[i].alphabet[c.contents[i]] + " ";
    return out + "read" + render_selector(*this, selectors[c.selector]) + " fn " + std::to_string(c.function);
}

MemProgram parse_mem(std::string_view text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty())
        throw ParseError(1, 1, "empty memprogram description");

    MemProgram p;
    std::map<std::size_t, MemFunction> declared;
    std::optional<std::size_t> current;
    std::vector<std::pair<std::size_t, std::size_t>> used_functions; // index, line
    bool header = false, have_init = false;

    for (auto & line : lines) {
        Cursor c(line);
        auto & kw = c.word("a keyword");
        if (! header) {
            if (kw.text != "mem")
                c.fail_at(kw, "expected 'mem <name>' header");
            p.name = c.word("a program name").text;
            c.expect_end();
            header = true;
            continue;
        }
        if (kw.text == "cell") {
            if (! declared.empty())
                c.fail_at(kw, "cells must be declared before functions");
            MemCell cell{c.word("a cell name").text, {}};
            if (p.find_cell(cell.name))
                c.fail_at(kw, "duplicate cell '" + cell.name + "'");
            while (! c.done())
                cell.alphabet.push_back(c.word("a cell value").text);
            if (cell.alphabet.empty())
                c.fail("cell '" + cell.name + "' needs at least one value");
            p.cells.push_back(std::move(cell));
        }
        else if (kw.text == "fn") {
            auto idx = parse_index(c);
            c.expect_end();
            if (declared.contains(idx))
                c.fail_at(kw, "fn " + std::to_string(idx) + " declared twice");
            declared[idx];
            current = idx;
        }
        else if (kw.text == "entry" || kw.text == "default") {
            if (! current)
                c.fail_at(kw, "'" + kw.text + "' outside a 'fn' block");
            c.expect("read");
            auto selector = parse_cell_list(p, c);
            auto sel = p.intern_selector(selector);
            auto & table = declared[*current].by_selector[sel];
            if (kw.text == "entry") {
                c.expect("=");
                auto & at = c.peek();
                auto values = parse_values(p, c, selector);
                c.expect("->");
                auto action = parse_action(p, c, used_functions);
                c.expect_end();
                if (! table.entries.emplace(std::move(values), std::move(action)).second)
                    c.fail_at(at, "duplicate entry for these read values");
            }
            else {
                c.expect("->");
                auto action = parse_action(p, c, used_functions);
                c.expect_end();
                if (table.fallback)
                    c.fail_at(kw, "duplicate default for this selector");
                table.fallback = std::move(action);
            }
        }
        else if (kw.text == "final") {
            FinalCondition fc;
            while (! c.done()) {
                auto cell = cell_index(p, c, c.word("a cell name"));
                c.expect("=");
                auto values = parse_values(p, c, Selector{cell});
                fc.equals.emplace_back(cell, values.front());
            }
            if (fc.equals.empty())
                c.fail("'final' needs at least one cell=value test");
            p.finals.push_back(std::move(fc));
        }
        else if (kw.text == "init") {
            p.initial.contents.assign(p.cells.size(), 0);
            std::vector<bool> assigned(p.cells.size(), false);
            while (! c.peek_is("read")) {
                auto & name = c.word("a cell name");
                auto cell = cell_index(p, c, name);
                c.expect("=");
                p.initial.contents[cell] = parse_values(p, c, Selector{cell}).front();
                assigned[cell] = true;
            }
            for (std::size_t i = 0; i < assigned.size(); ++i)
                if (! assigned[i])
                    c.fail("initial value missing for cell '" + p.cells[i].name + "'");
            c.expect("read");
            p.initial.selector = p.intern_selector(parse_cell_list(p, c));
            c.expect("fn");
            p.initial.function = parse_index(c);
            used_functions.emplace_back(p.initial.function, line.number);
            c.expect_end();
            have_init = true;
        }
        else
            c.fail_at(kw, "unknown keyword '" + kw.text + "'");
    }

    auto last = lines.back().number;
    if (! have_init)
        throw ParseError(last, 1, "missing 'init' line");
    std::size_t expected = 0;
    for (auto & [idx, fn] : declared) {
        if (idx != expected)
            throw ParseError(last, 1, "function indices must be 0.." + std::to_string(declared.size() - 1) + "; fn " + std::to_string(expected) + " is missing");
        p.functions.push_back(std::move(fn));
        ++expected;
    }
    for (auto & [idx, line] : used_functions)
        if (idx >= p.functions.size())
            throw ParseError(line, 1, "fn " + std::to_string(idx) + " is not declared");
    try {
        p.validate();
    }
    catch (const Error & e) {
        throw ParseError(last, 1, e.what());
    }
    return p;
}

MemProgram read_mem_file(const std::filesystem::path & path)
{
    return parse_mem(read_text_file(path));
}

std::string format_mem(const MemProgram & p)
{
    std::ostringstream out;
    out << "mem " << (p.name.empty() ? "unnamed" : p.name) << '\n';
    for (auto & cell : p.cells) {
        out << "cell " << cell.name;
        for (auto & v : cell.alphabet)
            out << ' ' << v;
        out << '\n';
    }
    for (std::size_t f = 0; f < p.functions.size(); ++f) {
        out << "fn " << f << '\n';
        for (auto & [sel, table] : p.functions[f].by_selector) {
            auto & selector = p.selectors[sel];
            for (auto & [values, action] : table.entries)
                out << "entry read" << render_selector(p, selector) << "=" << render_values(p, selector, values) << " -> "
                    << render_action(p, action) << '\n';
            if (table.fallback)
                out << "default read" << render_selector(p, selector) << " -> " << render_action(p, *table.fallback) << '\n';
        }
    }
    for (auto & fc : p.finals) {
        out << "final";
        for (auto & [cell, value] : fc.equals)
            out << ' ' << p.cells[cell].name << '=' << p.cells[cell].alphabet[value];
        out << '\n';
    }
    out << "init " << p.render(p.initial) << '\n';
    return out.str();
}

MemStep step_mem(const MemProgram & p, const MemConfig & c)
{
    if (p.is_final(c))
        return {MemStep::Status::Final, c};
    auto & fn = p.functions.at(c.function);
    auto it = fn.by_selector.find(c.selector);
    if (it == fn.by_selector.end())
        return {MemStep::Status::Halted, c};

    std::vector<std::uint32_t> read;
    for (auto cell : p.selectors[c.selector])
        read.push_back(c.contents[cell]);
    const MemAction * action = nullptr;
    if (auto e = it->second.entries.find(read); e != it->second.entries.end())
        action = &e->second;
    else if (it->second.fallback)
        action = &*it->second.fallback;
    else
        throw Error(ErrorKind::TotalityViolation, "no entry for the values read by fn " + std::to_string(c.function));

    if (action->halt)
        return {MemStep::Status::Halted, c};
    MemConfig next = c;
    for (std::size_t i = 0; i < action->write_cells.size(); ++i)
        next.contents[action->write_cells[i]] = action->write_values[i];
    next.selector = action->next_selector;
    next.function = action->next_function;
    return {MemStep::Status::Moved, std::move(next)};
}

std::string_view to_string(MemTrace::Status status)
{
    switch (status) {
    case MemTrace::Status::Final: return "final";
    case MemTrace::Status::Halted: return "halted";
    case MemTrace::Status::StepLimit: return "step-limit";
    }
    return "unknown";
}

MemTrace run_mem(const MemProgram & p, std::size_t max_steps)
{
    p.validate();
    MemTrace trace{MemTrace::Status::StepLimit, {p.initial}};
    for (std::size_t i = 0; i <= max_steps; ++i) {
        auto step = step_mem(p, trace.configs.back());
        if (step.status == MemStep::Status::Final) {
            trace.status = MemTrace::Status::Final;
            break;
        }
        if (step.status == MemStep::Status::Halted) {
            trace.status = MemTrace::Status::Halted;
            break;
        }
        if (i == max_steps)
            break;
        trace.configs.push_back(std::move(step.next));
    }
    return trace;
}

MemCodec::MemCodec(const MemProgram & p) : _selectors(p.selectors.size()), _functions(p.functions.size())
{
    auto overflow = [] { throw Error(ErrorKind::EnumerationTooLarge, "aggregate state count exceeds 64 bits"); };
    for (auto & cell : p.cells) {
        _radix.push_back(cell.alphabet.size());
        if (__builtin_mul_overflow(_contents, static_cast<std::uint64_t>(cell.alphabet.size()), &_contents))
            overflow();
    }
    if (__builtin_mul_overflow(_contents, static_cast<std::uint64_t>(_selectors), &_count)
        || __builtin_mul_overflow(_count, static_cast<std::uint64_t>(_functions), &_count))
        overflow();
}

StateIndex MemCodec::encode(const MemConfig & c) const
{
    std::uint64_t contents = 0;
    for (std::size_t i = 0; i < _radix.size(); ++i)
        contents = contents * _radix[i] + c.contents[i];
    return static_cast<StateIndex>((contents * _selectors + c.selector) * _functions + c.function);
}

MemConfig MemCodec::decode(StateIndex s) const
{
    MemConfig c;
    c.function = s % _functions;
    std::uint64_t rest = s / _functions;
    c.selector = rest % _selectors;
    rest /= _selectors;
    c.contents.assign(_radix.size(), 0);
    for (std::size_t i = _radix.size(); i-- > 0;) {
        c.contents[i] = static_cast<std::uint32_t>(rest % _radix[i]);
        rest /= _radix[i];
    }
    return c;
}

CompiledMem compile_mem(const MemProgram & p, std::uint64_t cap)
{
    p.validate();
    MemCodec codec(p);
    if (codec.state_count() > cap)
        throw Error(ErrorKind::EnumerationTooLarge, std::to_string(codec.state_count()) + " aggregate states exceed the cap of " + std::to_string(cap));

    std::vector<std::string> labels;
    std::vector<StateIndex> table;
    const auto count = static_cast<StateIndex>(codec.state_count());
    labels.reserve(count);
    table.reserve(count);
    for (StateIndex s = 0; s < count; ++s) {
        auto c = codec.decode(s);
        std::string label;
        for (std::size_t i = 0; i < p.cells.size(); ++i)
            label += (i ? "." : "") + p.cells[i].alphabet[c.contents[i]];
        labels.push_back(label + "/p" + std::to_string(c.selector) + "/f" + std::to_string(c.function));

        auto step = step_mem(p, c);
        table.push_back(step.status == MemStep::Status::Moved ? codec.encode(step.next) : s);
    }
    StateSet states(std::move(labels));
    auto machine = make_machine(states, {TransitionFunction(states, std::move(table))}, {"step"}, {}, p.name);
    return CompiledMem{std::move(machine), codec};
}

MemProgram tm_to_mem(const TuringSpec & t)
{
    t.validate();
    MemProgram p;
    p.name = t.name.empty() ? "memtm" : t.name + "_mem";

    const auto n = t.cells;
    for (std::size_t i = 0; i < n; ++i)
        p.cells.push_back({"tape" + std::to_string(i), t.symbols});

    auto registers = t.registers;
    std::optional<std::uint32_t> reject_value;
    if (t.boundary == BoundaryPolicy::Reject) {
        std::string marker = "rejected";
        while (std::find(registers.begin(), registers.end(), marker) != registers.end())
            marker += "_";
        reject_value = static_cast<std::uint32_t>(registers.size());
        registers.push_back(marker);
    }
    const auto reg_cell = p.cells.size();
    p.cells.push_back({"reg", registers});
    const auto addr_cell = p.cells.size();
    std::vector<std::string> addresses;
    for (std::size_t i = 0; i < n; ++i)
        addresses.push_back(std::to_string(i));
    p.cells.push_back({"addr", addresses});

    // selector p reads (memregister, memaddress, memtape cell p)
    std::vector<std::size_t> read_at(n);
    for (std::size_t pos = 0; pos < n; ++pos)
        read_at[pos] = p.intern_selector({reg_cell, addr_cell, pos});

    MemFunction step;
    for (std::size_t pos = 0; pos < n; ++pos) {
        SelectorTable table;
        MemAction halt;
        halt.halt = true;
        table.fallback = halt;
        for (Register r = 0; r < t.registers.size(); ++r) {
            if (t.is_halting(r))
                continue;
            for (Symbol x = 0; x < t.symbols.size(); ++x) {
                auto rule = t.rule(r, x);
                if (! rule)
                    continue;
                long target = static_cast<long>(pos) + (rule->move == Move::Right ? 1 : rule->move == Move::Left ? -1 : 0);
                MemAction action;
                if (target < 0 || target >= static_cast<long>(n)) {
                    if (reject_value) {
                        action.write_cells = {reg_cell};
                        action.write_values = {*reject_value};
                        action.next_selector = read_at[pos];
                        table.entries[{r, static_cast<std::uint32_t>(pos), x}] = action;
                        continue;
                    }
                    target = static_cast<long>(pos);
                }
                action.write_cells = {pos, reg_cell, addr_cell};
                action.write_values = {rule->write, rule->next_register, static_cast<std::uint32_t>(target)};
                action.next_selector = read_at[static_cast<std::size_t>(target)];
                table.entries[{r, static_cast<std::uint32_t>(pos), x}] = action;
            }
        }
        step.by_selector[read_at[pos]] = std::move(table);
    }
    p.functions.push_back(std::move(step));

    for (auto h : t.halting)
        p.finals.push_back({{{reg_cell, h}}});
    if (reject_value)
        p.finals.push_back({{{reg_cell, *reject_value}}});

    p.initial.contents.assign(t.initial.tape.begin(), t.initial.tape.end());
    p.initial.contents.push_back(t.initial.reg);
    p.initial.contents.push_back(t.initial.head);
    p.initial.selector = read_at[t.initial.head];
    p.initial.function = 0;
    p.validate();
    return p;
}

LockstepMapping default_lockstep_mapping(const TuringSpec & t, const MemProgram & p)
{
    LockstepMapping m;
    auto require = [&](const std::string & name) {
        auto c = p.find_cell(name);
        if (! c)
            throw Error(ErrorKind::InvalidArgument, "memprogram has no cell '" + name + "' for the lockstep mapping");
        return *c;
    };
    for (std::size_t i = 0; i < t.cells; ++i)
        m.tape_cells.push_back(require("tape" + std::to_string(i)));
    m.register_cell = require("reg");
    m.address_cell = require("addr");
    for (auto & v : p.cells[m.register_cell].alphabet)
        if (std::find(t.registers.begin(), t.registers.end(), v) == t.registers.end()) {
            m.reject_marker = v;
            break;
        }
    return m;
}

std::string LockstepReport::summary() const
{
    std::string out = "verified " + std::to_string(steps_verified) + " step(s), ";
    out += halted ? "halted" : rejected ? "rejected at the tape boundary" : "step budget reached";
    if (divergence)
        return out + ", divergence at step " + std::to_string(divergence->step) + ": " + divergence->detail;
    return out + ", no divergence";
}

LockstepReport verify_lockstep(const TuringSpec & t, const MemProgram & p, std::size_t steps, const std::optional<LockstepMapping> & mapping)
{
    t.validate();
    p.validate();
    LockstepReport report;
    report.mapping = mapping ? *mapping : default_lockstep_mapping(t, p);
    auto & map = report.mapping;
    if (map.tape_cells.size() != t.cells)
        throw Error(ErrorKind::InvalidArgument, "lockstep mapping must name one memtape cell per tape cell");

    auto value = [&](const MemConfig & c, std::size_t cell) -> const std::string & { return p.cells.at(cell).alphabet[c.contents.at(cell)]; };

    auto compare = [&](const TuringConfig & tm, const MemConfig & mem) -> std::optional<std::string> {
        for (std::size_t i = 0; i < t.cells; ++i)
            if (value(mem, map.tape_cells[i]) != t.symbols[tm.tape[i]])
                return "memtape cell " + std::to_string(i) + " holds '" + value(mem, map.tape_cells[i]) + "', tape holds '"
                    + t.symbols[tm.tape[i]] + "'";
        if (value(mem, map.register_cell) != t.registers[tm.reg])
            return "memregister holds '" + value(mem, map.register_cell) + "', register is '" + t.registers[tm.reg] + "'";
        if (value(mem, map.address_cell) != std::to_string(tm.head))
            return "memaddress holds '" + value(mem, map.address_cell) + "', head is at " + std::to_string(tm.head);
        return std::nullopt;
    };

    auto tm = t.initial;
    auto mem = p.initial;
    if (auto d = compare(tm, mem)) {
        report.divergence = LockstepReport::Divergence{0, *d};
        return report;
    }

    for (std::size_t step = 1; step <= steps; ++step) {
        auto tm_step = step_tm(t, tm);
        auto mem_step = step_mem(p, mem);
        bool mem_still = mem_step.status != MemStep::Status::Moved || mem_step.next == mem;

        if (tm_step.status == TuringStep::Status::Halted) {
            report.halted = true;
            if (! mem_still)
                report.divergence = LockstepReport::Divergence{step, "the TM halted but the memprogram moved to " + p.render(mem_step.next)};
            return report;
        }
        if (tm_step.status == TuringStep::Status::Rejected) {
            report.rejected = true;
            if (! map.reject_marker)
                report.divergence = LockstepReport::Divergence{step, "the TM left the tape but the mapping has no rejection marker"};
            else if (mem_step.status != MemStep::Status::Moved || value(mem_step.next, map.register_cell) != *map.reject_marker)
                report.divergence = LockstepReport::Divergence{step, "the TM left the tape but the memregister does not hold '" + *map.reject_marker + "'"};
            else
                report.steps_verified = step;
            return report;
        }
        if (mem_step.status != MemStep::Status::Moved) {
            report.divergence = LockstepReport::Divergence{step, "the TM moved but the memprogram stopped"};
            return report;
        }
        if (auto d = compare(tm_step.next, mem_step.next)) {
            report.divergence = LockstepReport::Divergence{step, *d};
            return report;
        }
        tm = std::move(tm_step.next);
        mem = std::move(mem_step.next);
        report.steps_verified = step;
    }
    // budget exhausted; note whether the TM is sitting on a halted configuration
    report.halted = step_tm(t, tm).status == TuringStep::Status::Halted;
    return report;
}

} // namespace memalg
