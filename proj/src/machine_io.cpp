#include <memalg/error.hpp>
#include <memalg/machine_io.hpp>

#include "lexer.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace memalg {

using detail::Cursor;

namespace {
    struct PendingFunction {
        std::string name;
        std::vector<StateIndex> table;
    };
}

Machine parse_machine(std::string_view text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty())
        throw ParseError(1, 1, "empty machine description");

    std::string name;
    std::optional<StateSet> states;
    std::vector<PendingFunction> fns;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::size_t, std::size_t>> output_positions; // line, column

    bool seen_header = false;
    for (auto & line : lines) {
        Cursor c(line);
        auto & keyword = c.word("a keyword");
        if (! seen_header) {
            if (keyword.text != "machine")
                c.fail_at(keyword, "expected 'machine <name>' header");
            name = c.word("a machine name").text;
            c.expect_end();
            seen_header = true;
            continue;
        }

        if (keyword.text == "states") {
            if (states)
                c.fail_at(keyword, "duplicate 'states' line");
            std::vector<std::string> labels;
            while (! c.done())
                labels.push_back(c.word("a state label").text);
            if (labels.empty())
                c.fail("a machine needs at least one state");
            try {
                states.emplace(std::move(labels));
            }
            catch (const Error & e) {
                c.fail_at(keyword, e.what());
            }
        }
        else if (keyword.text == "fn") {
            if (! states)
                c.fail_at(keyword, "'fn' before 'states'");
            PendingFunction f;
            f.name = c.word("a function name").text;
            for (auto & g : fns)
                if (g.name == f.name)
                    c.fail_at(keyword, "duplicate function name '" + f.name + "'");
            c.expect(":");
            constexpr auto unset = std::numeric_limits<StateIndex>::max();
            f.table.assign(states->size(), unset);
            while (true) {
                auto & from = c.word("a state label");
                auto src = states->find(from.text);
                if (! src)
                    c.fail_at(from, "unknown state '" + from.text + "'");
                c.expect("->");
                auto & to = c.word("a state label");
                auto dst = states->find(to.text);
                if (! dst)
                    c.fail_at(to, "unknown state '" + to.text + "'");
                if (f.table[*src] != unset)
                    c.fail_at(from, "state '" + from.text + "' mapped twice");
                f.table[*src] = *dst;
                if (c.done())
                    break;
                c.expect(",");
            }
            for (std::size_t i = 0; i < f.table.size(); ++i)
                if (f.table[i] == unset)
                    c.fail("function '" + f.name + "' has no clause for state '" + states->label(static_cast<StateIndex>(i)) + "'");
            fns.push_back(std::move(f));
        }
        else if (keyword.text == "output") {
            while (! c.done()) {
                auto & t = c.word("a function name");
                outputs.push_back(t.text);
                output_positions.emplace_back(line.number, t.column);
            }
        }
        else
            c.fail_at(keyword, "unknown keyword '" + keyword.text + "'");
    }

    if (! states)
        throw ParseError(lines.back().number, 1, "missing 'states' line");
    if (fns.empty())
        throw ParseError(lines.back().number, 1, "a machine needs at least one 'fn' line");

    std::vector<TransitionFunction> tables;
    std::vector<std::string> names;
    for (auto & f : fns) {
        tables.emplace_back(*states, std::move(f.table));
        names.push_back(f.name);
    }
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        std::size_t p = 0;
        while (p < names.size() && names[p] != outputs[i])
            ++p;
        if (p == names.size())
            throw ParseError(output_positions[i].first, output_positions[i].second, "unknown output function '" + outputs[i] + "'");
        positions.push_back(p);
    }

    try {
        return make_machine(*states, std::move(tables), std::move(names), std::move(positions), std::move(name));
    }
    catch (const Error & e) {
        // extensional duplicates whose names both survive cannot happen; anything else is a format error
        throw ParseError(lines.front().number, 1, e.what());
    }
}

std::string read_text_file(const std::filesystem::path & path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error(ErrorKind::InvalidArgument, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Machine read_machine_file(const std::filesystem::path & path)
{
    return parse_machine(read_text_file(path));
}

std::string format_machine(const Machine & m)
{
    std::ostringstream out;
    out << "machine " << (m.name().empty() ? "unnamed" : m.name()) << '\n';
    out << "states";
    for (auto & l : m.states().labels())
        out << ' ' << l;
    out << '\n';
    for (std::size_t i = 0; i < m.functions().size(); ++i) {
        auto & f = m.functions()[i];
        out << "fn " << m.function_names()[i] << ':';
        for (StateIndex s = 0; s < f.size(); ++s)
            out << (s == 0 ? " " : ", ") << m.states().label(s) << "->" << m.states().label(f(s));
        out << '\n';
    }
    if (! m.output_functions().empty()) {
        out << "output";
        for (auto o : m.output_functions())
            out << ' ' << m.function_names()[o];
        out << '\n';
    }
    return out.str();
}

} // namespace memalg
