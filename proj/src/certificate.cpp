#include <memalg/cardinal.hpp>
#include <memalg/certificate.hpp>
#include <memalg/error.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/models.hpp>
#include <memalg/reduction_laws.hpp>
#include <memalg/universality.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace memalg {

namespace {
    constexpr std::string_view header = "memalg certificate";

    std::vector<std::string> split_list(const std::string & s)
    {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(s);
        while (std::getline(in, item, ','))
            if (! item.empty())
                out.push_back(item);
        return out;
    }

    std::string join(const std::vector<std::string> & items)
    {
        std::string out;
        for (std::size_t i = 0; i < items.size(); ++i)
            out += (i ? "," : "") + items[i];
        return out;
    }

    std::pair<std::string, std::string> split_arrow(const std::string & line)
    {
        auto pos = line.find(" -> ");
        if (pos == std::string::npos)
            throw Error(ErrorKind::InvalidArgument, "malformed mapping line '" + line + "'");
        return {line.substr(0, pos), line.substr(pos + 4)};
    }

    std::uint64_t number(const Certificate & c, std::string_view key)
    {
        auto v = c.require(key);
        if (v.empty() || ! std::all_of(v.begin(), v.end(), ::isdigit) || v.size() > 19)
            throw Error(ErrorKind::InvalidArgument, "certificate field '" + std::string(key) + "' is not a number");
        return std::stoull(v);
    }

    std::uint64_t number_or(const Certificate & c, std::string_view key, std::uint64_t fallback)
    {
        return c.get(key) ? number(c, key) : fallback;
    }

    void add_mapping_lines(Certificate & c, const Machine & from, const Machine & to, const Morphism & m)
    {
        for (StateIndex s = 0; s < m.g.size(); ++s)
            c.add("g", from.states().label(s) + " -> " + to.states().label(m.g[s]));
        for (std::size_t f = 0; f < m.h.size(); ++f)
            c.add("h", from.function_names()[f] + " -> " + to.function_names()[m.h[f]]);
    }

    // Reads g/h lines back into index tables. Unknown or missing entries make
    // the morphism malformed; verify_morphism then rejects it.
    Morphism read_mapping_lines(const Certificate & c, const Machine & from, const Machine & to)
    {
        constexpr auto unset_state = std::numeric_limits<StateIndex>::max();
        constexpr auto unset_fn = std::numeric_limits<std::size_t>::max();
        Morphism m{std::vector<StateIndex>(from.states().size(), unset_state), std::vector<std::size_t>(from.functions().size(), unset_fn)};
        for (auto & line : c.all("g")) {
            auto [src, dst] = split_arrow(line);
            auto s = from.states().find(src);
            auto t = to.states().find(dst);
            if (! s || ! t)
                throw Error(ErrorKind::InvalidArgument, "g maps an unknown state in '" + line + "'");
            if (m.g[*s] != unset_state)
                throw Error(ErrorKind::InvalidArgument, "g maps '" + src + "' twice");
            m.g[*s] = *t;
        }
        for (auto & line : c.all("h")) {
            auto [src, dst] = split_arrow(line);
            auto f = from.find_function(src);
            auto t = to.find_function(dst);
            if (! f || ! t)
                throw Error(ErrorKind::InvalidArgument, "h maps an unknown function in '" + line + "'");
            if (m.h[*f] != unset_fn)
                throw Error(ErrorKind::InvalidArgument, "h maps '" + src + "' twice");
            m.h[*f] = *t;
        }
        if (std::count(m.g.begin(), m.g.end(), unset_state) || std::count(m.h.begin(), m.h.end(), unset_fn))
            throw Error(ErrorKind::InvalidArgument, "the g/h lines do not cover every state and function");
        return m;
    }

    SubMachineWitness read_reductions(const Certificate & c, const Machine & a)
    {
        SubMachineWitness w;
        for (auto & name : split_list(c.require("keep-fns"))) {
            auto f = a.find_function(name);
            if (! f)
                throw Error(ErrorKind::InvalidArgument, "keep-fns names unknown function '" + name + "'");
            w.functional.kept.push_back(a.functions()[*f]);
        }
        for (auto & label : split_list(c.require("keep-states")))
            w.state.kept.push_back(a.states().index_of(label));
        std::sort(w.state.kept.begin(), w.state.kept.end());
        return w;
    }

    void add_reductions(Certificate & c, const Machine & a, const SubMachineWitness & w)
    {
        std::vector<std::string> fns, states;
        for (auto & f : w.functional.kept)
            fns.push_back(a.function_names()[*a.find_function(f)]);
        for (auto s : w.state.kept)
            states.push_back(a.states().label(s));
        c.add("keep-fns", join(fns));
        c.add("keep-states", join(states));
    }

    // Same states by label and the same function tables after relabelling.
    bool literally_equal(const Machine & x, const Machine & y)
    {
        if (x.states().size() != y.states().size() || x.functions().size() != y.functions().size())
            return false;
        std::vector<StateIndex> to_x(y.states().size());
        for (StateIndex s = 0; s < to_x.size(); ++s) {
            auto t = x.states().find(y.states().label(s));
            if (! t)
                return false;
            to_x[s] = *t;
        }
        for (auto & f : y.functions()) {
            std::vector<StateIndex> table(x.states().size());
            for (StateIndex s = 0; s < to_x.size(); ++s)
                table[to_x[s]] = to_x[f(s)];
            if (! x.find_function(TransitionFunction(x.states(), std::move(table))))
                return false;
        }
        return true;
    }

    std::string replay_card(const Certificate & c)
    {
        std::ostringstream out;
        Derivation trace;
        if (auto expr = c.get("expression")) {
            auto value = evaluate_cardinal_expression(*expr, &trace);
            out << value.to_string() << '\n' << format_derivation(trace);
            return out.str();
        }
        auto kind = c.require("template");
        MachineTemplate t;
        if (kind == "finite-turing")
            t = MachineTemplate::finite_turing(number(c, "k"), number(c, "m"), number(c, "n"));
        else if (kind == "infinite-tape-turing")
            t = MachineTemplate::infinite_tape_turing(number(c, "k"), number(c, "m"));
        else if (kind == "umm")
            t = MachineTemplate::umm(number(c, "n"));
        else if (kind == "lsm")
            t = MachineTemplate::lsm(number_or(c, "n", 1));
        else if (kind == "quantum")
            t = MachineTemplate::quantum(number(c, "m"), number(c, "n"));
        else
            throw Error(ErrorKind::InvalidArgument, "unknown template '" + kind + "'");
        auto states = state_cardinality(t, &trace);
        out << t.describe() << '\n' << "|S| = " << states.to_string() << '\n' << format_derivation(trace);
        trace.clear();
        try {
            auto fns = transition_space_cardinality(states, &trace);
            out << "|Phi_S| = " << fns.to_string() << '\n' << format_derivation(trace);
        }
        catch (const Error & e) {
            if (e.kind() != ErrorKind::ArithmeticOverflow)
                throw;
            out << "|Phi_S| = |S|^|S|, beyond 64 bits\n";
        }
        return out.str();
    }

    std::string replay_universality(const Certificate & c)
    {
        UniversalityParams p;
        p.tm_registers = number_or(c, "tm-registers", p.tm_registers);
        p.tm_symbols = number_or(c, "tm-symbols", p.tm_symbols);
        p.tm_cells = number_or(c, "tm-cells", p.tm_cells);
        p.umm_cells = number_or(c, "umm-cells", p.umm_cells);
        p.lsm_cells = number_or(c, "lsm-cells", p.lsm_cells);
        p.qudit_levels = number_or(c, "qudit-levels", p.qudit_levels);
        p.qudits = number_or(c, "qudits", p.qudits);
        return format_universality(universality_report(p));
    }

    std::string replay_reduce(const Certificate & c)
    {
        auto source = parse_machine(c.require_block("source"));
        if (auto fns = c.get("keep-fns")) {
            auto names = split_list(*fns);
            return format_machine(functional_reduce(source, names));
        }
        auto labels = split_list(c.require("keep-states"));
        return format_machine(state_reduce(source, labels));
    }

    std::string replay_sim(const Certificate & c)
    {
        std::ostringstream out;
        auto steps = number(c, "steps");
        if (c.require("program") == "mem") {
            auto p = parse_mem(c.require_block("mem"));
            auto trace = run_mem(p, steps);
            for (std::size_t i = 0; i < trace.configs.size(); ++i)
                out << i << ": " << p.render(trace.configs[i]) << '\n';
            out << "status: " << to_string(trace.status) << '\n';
            return out.str();
        }
        auto t = parse_turing(c.require_block("tm"));
        auto trace = simulate_tm(t, steps);
        for (std::size_t i = 0; i < trace.configs.size(); ++i)
            out << i << ": " << t.render(trace.configs[i]) << '\n';
        out << "status: " << to_string(trace.status) << '\n';
        return out.str();
    }

    std::string describe_states(std::uint64_t count, bool reject)
    {
        return "# " + std::to_string(count) + " states" + (reject ? ", including the boundary rejection state" : "") + "\n";
    }
}

std::optional<std::string> Certificate::get(std::string_view key) const
{
    for (auto & [k, v] : fields)
        if (k == key)
            return v;
    return std::nullopt;
}

std::string Certificate::require(std::string_view key) const
{
    auto v = get(key);
    if (! v)
        throw Error(ErrorKind::InvalidArgument, "certificate lacks field '" + std::string(key) + "'");
    return *v;
}

std::vector<std::string> Certificate::all(std::string_view key) const
{
    std::vector<std::string> out;
    for (auto & [k, v] : fields)
        if (k == key)
            out.push_back(v);
    return out;
}

std::optional<std::string> Certificate::block(std::string_view name) const
{
    for (auto & [n, text] : blocks)
        if (n == name)
            return text;
    return std::nullopt;
}

std::string Certificate::require_block(std::string_view name) const
{
    auto b = block(name);
    if (! b)
        throw Error(ErrorKind::InvalidArgument, "certificate lacks block '" + std::string(name) + "'");
    return *b;
}

std::string format_certificate(const Certificate & c)
{
    std::ostringstream out;
    out << header << '\n' << "kind: " << c.kind << '\n';
    for (auto & [k, v] : c.fields)
        out << k << ": " << v << '\n';
    for (auto & [name, text] : c.blocks) {
        out << "begin " << name << '\n' << text;
        if (! text.empty() && text.back() != '\n')
            out << '\n';
        out << "end " << name << '\n';
    }
    return out.str();
}

Certificate parse_certificate(std::string_view text)
{
    Certificate c;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    bool seen_header = false;
    std::optional<std::pair<std::string, std::string>> open; // name, text so far
    while (std::getline(in, line)) {
        ++number;
        if (! line.empty() && line.back() == '\r')
            line.pop_back();
        if (open) {
            if (line == "end " + open->first) {
                c.blocks.push_back(std::move(*open));
                open.reset();
            }
            else
                open->second += line + '\n';
            continue;
        }
        if (line.empty())
            continue;
        if (! seen_header) {
            if (line != header)
                throw ParseError(number, 1, "expected '" + std::string(header) + "' header");
            seen_header = true;
            continue;
        }
        if (line.starts_with("begin ")) {
            open.emplace(line.substr(6), std::string{});
            if (open->first.empty())
                throw ParseError(number, 7, "block without a name");
            continue;
        }
        auto colon = line.find(": ");
        if (colon == std::string::npos || colon == 0)
            throw ParseError(number, 1, "expected 'key: value'");
        auto key = line.substr(0, colon);
        auto value = line.substr(colon + 2);
        if (key == "kind") {
            if (! c.kind.empty())
                throw ParseError(number, 1, "duplicate 'kind'");
            c.kind = value;
        }
        else
            c.add(std::move(key), std::move(value));
    }
    if (open)
        throw ParseError(number, 1, "block '" + open->first + "' is not closed");
    if (! seen_header)
        throw ParseError(1, 1, "empty certificate");
    if (c.kind.empty())
        throw ParseError(number, 1, "certificate lacks 'kind'");
    return c;
}

Certificate iso_certificate(const Machine & a, const Machine & b, const std::optional<Morphism> & m)
{
    Certificate c{"iso", {}, {}};
    c.add("result", m ? "yes" : "no");
    if (m)
        add_mapping_lines(c, a, b, *m);
    c.add_block("a", format_machine(a));
    c.add_block("b", format_machine(b));
    return c;
}

Certificate complete_certificate(const Machine & a, const Machine & b, const std::optional<CompletenessWitness> & w)
{
    Certificate c{"complete", {}, {}};
    c.add("result", w ? "yes" : "no");
    if (w) {
        add_reductions(c, a, w->reductions);
        auto sub = apply_sub_machine(a, w->reductions);
        add_mapping_lines(c, b, sub, w->morphism);
    }
    c.add_block("a", format_machine(a));
    c.add_block("b", format_machine(b));
    return c;
}

Certificate submachine_certificate(const Machine & a, const Machine & b, const std::optional<SubMachineWitness> & w)
{
    Certificate c{"submachine", {}, {}};
    c.add("result", w ? "yes" : "no");
    if (w)
        add_reductions(c, a, *w);
    c.add_block("a", format_machine(a));
    c.add_block("b", format_machine(b));
    return c;
}

std::string format_witness(const Certificate & c)
{
    std::string out;
    for (auto key : {"keep-fns", "keep-states"})
        if (auto v = c.get(key))
            out += std::string(key) + ": " + *v + "\n";
    for (auto key : {"g", "h"})
        for (auto & line : c.all(key))
            out += std::string(key) + ": " + line + "\n";
    return out;
}

std::string replay(const Certificate & c)
{
    const auto & k = c.kind;
    if (k == "card")
        return replay_card(c);
    if (k == "universality")
        return replay_universality(c);
    if (k == "reduce")
        return replay_reduce(c);
    if (k == "compile-tm") {
        auto compiled = compile_tm(parse_turing(c.require_block("tm")), number_or(c, "cap", default_enumeration_cap));
        return describe_states(compiled.codec.state_count(), compiled.codec.reject_state().has_value()) + format_machine(compiled.machine);
    }
    if (k == "compile-mem") {
        auto compiled = compile_mem(parse_mem(c.require_block("mem")), number_or(c, "cap", default_enumeration_cap));
        return describe_states(compiled.codec.state_count(), false) + format_machine(compiled.machine);
    }
    if (k == "tm2mem")
        return format_mem(tm_to_mem(parse_turing(c.require_block("tm"))));
    if (k == "lockstep") {
        auto t = parse_turing(c.require_block("tm"));
        auto p = c.block("mem") ? parse_mem(*c.block("mem")) : tm_to_mem(t);
        return verify_lockstep(t, p, number(c, "steps")).summary() + "\n";
    }
    if (k == "sim")
        return replay_sim(c);
    if (k == "check-lemmas")
        return format_report(check_reduction_laws(number(c, "seed"), number(c, "iters"), number_or(c, "max-states", 4),
            number_or(c, "max-functions", 6)));
    throw Error(ErrorKind::InvalidArgument, "certificate kind '" + k + "' has no recorded computation");
}

VerifyOutcome verify_certificate(const Certificate & c, const SearchLimits & limits)
{
    VerifyOutcome out;
    try {
        if (c.kind == "iso" || c.kind == "complete" || c.kind == "submachine") {
            auto a = parse_machine(c.require_block("a"));
            auto b = parse_machine(c.require_block("b"));
            auto result = c.require("result");
            if (result != "yes" && result != "no")
                throw Error(ErrorKind::InvalidArgument, "result must be 'yes' or 'no'");
            const bool claimed = result == "yes";

            if (! claimed) {
                out.method = "re-decided by search";
                bool found = c.kind == "iso" ? find_isomorphism(a, b, limits).has_value()
                    : c.kind == "complete"   ? is_complete(a, b, limits).has_value()
                                             : is_sub_machine(a, b).has_value();
                out.valid = ! found;
                out.detail = found ? "a witness exists, the negative claim is wrong" : "no witness exists";
                return out;
            }

            out.method = "witness checked";
            if (c.kind == "iso") {
                auto m = read_mapping_lines(c, a, b);
                out.valid = verify_morphism(a, b, m);
                out.detail = out.valid ? "g and h are bijections satisfying the commuting condition" : "the commuting condition fails";
            }
            else if (c.kind == "complete") {
                CompletenessWitness w{read_reductions(c, a), {}, a};
                w.sub_machine = apply_sub_machine(a, w.reductions);
                w.morphism = read_mapping_lines(c, b, w.sub_machine);
                out.valid = verify_completeness(a, b, w);
                out.detail = out.valid ? "the reductions yield a sub-machine isomorphic to b" : "the witness does not map b onto the reduced machine";
            }
            else {
                auto sub = apply_sub_machine(a, read_reductions(c, a));
                out.valid = literally_equal(sub, b);
                out.detail = out.valid ? "the reductions reproduce b" : "the reductions do not reproduce b";
            }
            return out;
        }

        out.method = "recomputed";
        auto recorded = c.require_block("output");
        auto actual = replay(c);
        out.valid = actual == recorded;
        out.detail = out.valid ? "recorded output matches" : "recorded output differs from the recomputed output";
    }
    catch (const Error & e) {
        if (e.kind() == ErrorKind::SearchBudgetExceeded)
            throw;
        out.valid = false;
        out.detail = e.what();
    }
    return out;
}

} // namespace memalg
