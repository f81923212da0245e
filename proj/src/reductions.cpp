#include <memalg/error.hpp>
#include <memalg/reductions.hpp>

#include <algorithm>
#include <limits>

namespace memalg {

namespace {
    constexpr auto absent = std::numeric_limits<StateIndex>::max();

    std::vector<StateIndex> normalise_subset(const Machine & m, std::span<const StateIndex> keep)
    {
        if (keep.empty())
            throw Error(ErrorKind::InvalidReduction, "a state reduction must keep at least one state");
        std::vector<StateIndex> sorted(keep.begin(), keep.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (! m.states().contains(sorted.back()))
            throw Error(ErrorKind::InvalidReduction, "state index " + std::to_string(sorted.back()) + " is not a state of the machine");
        return sorted;
    }
}

Machine functional_reduce(const Machine & m, std::span<const TransitionFunction> keep)
{
    if (keep.empty())
        throw Error(ErrorKind::InvalidMachine, "a functional reduction must keep at least one function");

    std::vector<bool> kept(m.functions().size(), false);
    for (auto & f : keep) {
        auto i = m.find_function(f);
        if (! i)
            throw Error(ErrorKind::InvalidReduction, "kept function is not realized by machine '" + m.name() + "'");
        kept[*i] = true;
    }

    std::vector<TransitionFunction> fns;
    std::vector<std::string> names;
    std::vector<std::size_t> outputs;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (! kept[i])
            continue;
        if (std::binary_search(m.output_functions().begin(), m.output_functions().end(), i))
            outputs.push_back(fns.size());
        fns.push_back(m.functions()[i]);
        names.push_back(m.function_names()[i]);
    }
    return make_machine(m.states(), std::move(fns), std::move(names), std::move(outputs), m.name());
}

Machine functional_reduce(const Machine & m, std::span<const std::string> function_names)
{
    std::vector<TransitionFunction> keep;
    for (auto & n : function_names) {
        auto i = m.find_function(n);
        if (! i)
            throw Error(ErrorKind::InvalidReduction, "machine '" + m.name() + "' has no function named '" + n + "'");
        keep.push_back(m.functions()[*i]);
    }
    return functional_reduce(m, keep);
}

bool preserves(const TransitionFunction & f, std::span<const StateIndex> subset)
{
    std::vector<bool> inside(f.size(), false);
    for (auto s : subset)
        inside.at(s) = true;
    return std::all_of(subset.begin(), subset.end(), [&](StateIndex s) { return inside[f(s)]; });
}

Machine state_reduce(const Machine & m, std::span<const StateIndex> keep_states)
{
    auto subset = normalise_subset(m, keep_states);

    std::vector<StateIndex> position(m.states().size(), absent);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        position[subset[i]] = static_cast<StateIndex>(i);
        labels.push_back(m.states().label(subset[i]));
    }
    StateSet reduced(std::move(labels));

    std::vector<TransitionFunction> fns;
    std::vector<std::string> names;
    std::vector<std::size_t> outputs;
    for (std::size_t i = 0; i < m.functions().size(); ++i) {
        auto & f = m.functions()[i];
        std::vector<StateIndex> table;
        table.reserve(subset.size());
        for (auto s : subset) {
            auto image = position[f(s)];
            if (image == absent)
                break;
            table.push_back(image);
        }
        if (table.size() != subset.size())
            continue;

        TransitionFunction restricted(reduced, std::move(table));
        // canonical order means the first function restricting to a table names it
        auto dup = std::find(fns.begin(), fns.end(), restricted);
        auto at = static_cast<std::size_t>(dup - fns.begin());
        if (dup == fns.end()) {
            fns.push_back(std::move(restricted));
            names.push_back(m.function_names()[i]);
        }
        if (std::binary_search(m.output_functions().begin(), m.output_functions().end(), i))
            outputs.push_back(at);
    }
    if (fns.empty())
        throw Error(ErrorKind::EmptyReduction, "no function of machine '" + m.name() + "' maps the kept states into themselves");
    return make_machine(std::move(reduced), std::move(fns), std::move(names), std::move(outputs), m.name());
}

Machine state_reduce(const Machine & m, std::span<const std::string> state_labels)
{
    std::vector<StateIndex> keep;
    for (auto & l : state_labels) {
        auto s = m.states().find(l);
        if (! s)
            throw Error(ErrorKind::InvalidReduction, "machine '" + m.name() + "' has no state '" + l + "'");
        keep.push_back(*s);
    }
    return state_reduce(m, keep);
}

Machine apply_sub_machine(const Machine & a, const SubMachineWitness & w)
{
    return state_reduce(functional_reduce(a, w.functional.kept), w.state.kept);
}

std::optional<SubMachineWitness> is_sub_machine(const Machine & a, const Machine & b)
{
    std::vector<StateIndex> subset;
    for (auto & l : b.states().labels()) {
        auto s = a.states().find(l);
        if (! s)
            return std::nullopt;
        subset.push_back(*s);
    }
    std::sort(subset.begin(), subset.end());

    std::optional<Machine> reduced;
    try {
        reduced.emplace(state_reduce(a, subset));
    }
    catch (const Error & e) {
        if (e.kind() == ErrorKind::EmptyReduction)
            return std::nullopt;
        throw;
    }

    // b's functions rewritten in the reduced machine's state order
    std::vector<StateIndex> to_reduced(b.states().size());
    for (StateIndex s = 0; s < b.states().size(); ++s)
        to_reduced[s] = reduced->states().index_of(b.states().label(s));

    std::vector<TransitionFunction> wanted;
    for (auto & g : b.functions()) {
        std::vector<StateIndex> table(g.size());
        for (StateIndex s = 0; s < g.size(); ++s)
            table[to_reduced[s]] = to_reduced[g(s)];
        TransitionFunction rewritten(reduced->states(), std::move(table));
        if (! reduced->find_function(rewritten))
            return std::nullopt;
        wanted.push_back(std::move(rewritten));
    }

    SubMachineWitness w;
    w.state.kept = subset;
    for (auto & target : wanted) {
        for (auto & f : a.functions()) {
            if (! preserves(f, subset))
                continue;
            std::vector<StateIndex> table;
            for (auto s : subset)
                table.push_back(reduced->states().index_of(a.states().label(f(s))));
            if (std::equal(table.begin(), table.end(), target.table().begin())) {
                w.functional.kept.push_back(f);
                break;
            }
        }
    }
    std::sort(w.functional.kept.begin(), w.functional.kept.end());
    w.functional.kept.erase(std::unique(w.functional.kept.begin(), w.functional.kept.end()), w.functional.kept.end());
    return w;
}

} // namespace memalg
