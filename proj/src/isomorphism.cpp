#include <memalg/error.hpp>
#include <memalg/isomorphism.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

namespace memalg {

namespace {
    constexpr auto unassigned = std::numeric_limits<StateIndex>::max();

    bool is_permutation_table(std::span<const std::size_t> table, std::size_t size)
    {
        if (table.size() != size)
            return false;
        std::vector<bool> hit(size, false);
        for (auto v : table) {
            if (v >= size || hit[v])
                return false;
            hit[v] = true;
        }
        return true;
    }

    std::vector<bool> cyclic_states(const TransitionFunction & f)
    {
        // a state is cyclic iff it is reached again after at most n steps
        const auto n = f.size();
        std::vector<bool> cyclic(n, false);
        std::vector<int> colour(n, 0); // 0 new, 1 on current path, 2 done
        for (StateIndex start = 0; start < n; ++start) {
            if (colour[start])
                continue;
            std::vector<StateIndex> path;
            auto s = start;
            while (colour[s] == 0) {
                colour[s] = 1;
                path.push_back(s);
                s = f(s);
            }
            if (colour[s] == 1)
                for (auto it = std::find(path.begin(), path.end(), s); it != path.end(); ++it)
                    cyclic[*it] = true;
            for (auto p : path)
                colour[p] = 2;
        }
        return cyclic;
    }

    using StateSignature = std::vector<std::tuple<std::size_t, std::size_t, bool, bool>>;

    /// Per-machine data used to prune the conjugacy search.
    struct Profile {
        std::vector<std::size_t> function_class;      // signature id per function
        std::vector<StateSignature> state_signature;  // only built in isomorphism mode
        std::vector<std::vector<std::vector<StateIndex>>> preimages; // [function][state]
    };

    Profile profile(const Machine & m, std::map<FunctionSignature, std::size_t> & classes, bool with_states)
    {
        Profile p;
        const auto n = m.states().size();
        if (with_states)
            p.state_signature.resize(n);
        for (auto & f : m.functions()) {
            auto sig = function_signature(f);
            auto id = classes.emplace(std::move(sig), classes.size()).first->second;
            p.function_class.push_back(id);

            std::vector<std::vector<StateIndex>> pre(n);
            for (StateIndex s = 0; s < n; ++s)
                pre[f(s)].push_back(s);
            if (with_states) {
                auto cyclic = cyclic_states(f);
                for (StateIndex s = 0; s < n; ++s)
                    p.state_signature[s].emplace_back(id, pre[s].size(), f(s) == s, cyclic[s]);
            }
            p.preimages.push_back(std::move(pre));
        }
        for (auto & sig : p.state_signature)
            std::sort(sig.begin(), sig.end());
        return p;
    }

    /// Backtracking over bijections g: source.states -> target.states such that
    /// every g f g^-1 lies in target. Source states are assigned in index order
    /// and targets tried in ascending order, so the first hit has the least g.
    class ConjugacySearch {
    public:
        ConjugacySearch(const Machine & source, const Machine & target, bool isomorphism_mode, std::uint64_t node_cap) :
            _source(source), _target(target), _iso(isomorphism_mode), _node_cap(node_cap)
        {
        }

        std::optional<Morphism> run()
        {
            const auto n = _source.states().size();
            if (n != _target.states().size())
                return std::nullopt;
            if (_iso ? _source.functions().size() != _target.functions().size()
                     : _source.functions().size() > _target.functions().size())
                return std::nullopt;

            std::map<FunctionSignature, std::size_t> classes;
            _sp = profile(_source, classes, _iso);
            _tp = profile(_target, classes, _iso);

            if (_iso) {
                auto a = _sp.function_class, b = _tp.function_class;
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (a != b)
                    return std::nullopt;
                auto sa = _sp.state_signature, sb = _tp.state_signature;
                std::sort(sa.begin(), sa.end());
                std::sort(sb.begin(), sb.end());
                if (sa != sb)
                    return std::nullopt;
            }

            Candidates initial(_source.functions().size());
            for (std::size_t i = 0; i < initial.size(); ++i) {
                for (std::size_t j = 0; j < _target.functions().size(); ++j)
                    if (_sp.function_class[i] == _tp.function_class[j])
                        initial[i].push_back(j);
                if (initial[i].empty())
                    return std::nullopt;
            }

            _g.assign(n, unassigned);
            _used.assign(n, false);
            if (! extend(0, initial))
                return std::nullopt;
            return Morphism{_g, _h};
        }

    private:
        using Candidates = std::vector<std::vector<std::size_t>>;

        const Machine & _source;
        const Machine & _target;
        bool _iso;
        std::uint64_t _node_cap;
        std::uint64_t _nodes = 0;
        Profile _sp, _tp;
        std::vector<StateIndex> _g;
        std::vector<bool> _used;
        std::vector<std::size_t> _h;

        bool extend(StateIndex s, const Candidates & candidates)
        {
            const auto n = _source.states().size();
            if (s == n) {
                _h.clear();
                for (auto & c : candidates)
                    _h.push_back(c.front());
                return true;
            }

            for (StateIndex t = 0; t < n; ++t) {
                if (_used[t])
                    continue;
                if (_iso && _sp.state_signature[s] != _tp.state_signature[t])
                    continue;
                if (++_nodes > _node_cap)
                    throw Error(ErrorKind::SearchBudgetExceeded, "isomorphism search exceeded the node cap of " + std::to_string(_node_cap));

                _g[s] = t;
                _used[t] = true;
                Candidates narrowed;
                if (narrow(s, candidates, narrowed) && extend(s + 1, narrowed))
                    return true;
                _g[s] = unassigned;
                _used[t] = false;
            }
            return false;
        }

        // Keeps, per source function f, the target functions agreeing with every
        // pair (x -> f(x)) that became fully mapped once s was assigned.
        bool narrow(StateIndex s, const Candidates & in, Candidates & out)
        {
            out.resize(in.size());
            for (std::size_t i = 0; i < in.size(); ++i) {
                auto & f = _source.functions()[i];
                std::vector<std::pair<StateIndex, StateIndex>> pairs;
                if (_g[f(s)] != unassigned)
                    pairs.emplace_back(_g[s], _g[f(s)]);
                for (auto x : _sp.preimages[i][s])
                    if (x != s && _g[x] != unassigned)
                        pairs.emplace_back(_g[x], _g[s]);

                if (pairs.empty()) {
                    out[i] = in[i];
                    continue;
                }
                out[i].clear();
                for (auto j : in[i]) {
                    auto & candidate = _target.functions()[j];
                    if (std::all_of(pairs.begin(), pairs.end(), [&](auto & p) { return candidate(p.first) == p.second; }))
                        out[i].push_back(j);
                }
                if (out[i].empty())
                    return false;
            }
            return true;
        }
    };

    std::vector<std::vector<StateIndex>> combinations_in_order(std::size_t n, std::size_t k, std::uint64_t cap)
    {
        std::vector<std::vector<StateIndex>> result;
        std::vector<StateIndex> current(k);
        for (std::size_t i = 0; i < k; ++i)
            current[i] = static_cast<StateIndex>(i);
        while (true) {
            if (result.size() >= cap)
                throw Error(ErrorKind::SearchBudgetExceeded, "completeness search exceeded the subset cap of " + std::to_string(cap));
            result.push_back(current);
            std::size_t i = k;
            while (i > 0 && current[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++current[i - 1];
            for (auto j = i; j < k; ++j)
                current[j] = current[j - 1] + 1;
        }
        return result;
    }

    std::optional<CompletenessWitness> complete_by_search(const Machine & a, const Machine & b, const SearchLimits & limits)
    {
        for (auto & subset : combinations_in_order(a.states().size(), b.states().size(), limits.subset_cap)) {
            std::optional<Machine> reduced;
            try {
                reduced.emplace(state_reduce(a, subset));
            }
            catch (const Error & e) {
                if (e.kind() == ErrorKind::EmptyReduction)
                    continue;
                throw;
            }
            auto found = ConjugacySearch(b, *reduced, false, limits.node_cap).run();
            if (! found)
                continue;

            SubMachineWitness reductions;
            reductions.state.kept = subset;
            for (auto j : found->h) {
                auto & image = reduced->functions()[j];
                for (auto & f : a.functions()) {
                    if (! preserves(f, subset))
                        continue;
                    bool same = true;
                    for (std::size_t r = 0; r < subset.size() && same; ++r)
                        same = reduced->states().label(image(static_cast<StateIndex>(r))) == a.states().label(f(subset[r]));
                    if (same) {
                        reductions.functional.kept.push_back(f);
                        break;
                    }
                }
            }
            std::sort(reductions.functional.kept.begin(), reductions.functional.kept.end());
            reductions.functional.kept.erase(
                std::unique(reductions.functional.kept.begin(), reductions.functional.kept.end()), reductions.functional.kept.end());

            auto sub = apply_sub_machine(a, reductions);
            Morphism morphism{found->g, {}};
            for (auto j : found->h)
                morphism.h.push_back(*sub.find_function(reduced->functions()[j]));
            return CompletenessWitness{std::move(reductions), std::move(morphism), std::move(sub)};
        }
        return std::nullopt;
    }
}

FunctionSignature function_signature(const TransitionFunction & f)
{
    FunctionSignature sig;
    const auto n = f.size();
    sig.in_degrees.assign(n, 0);
    for (StateIndex s = 0; s < n; ++s)
        ++sig.in_degrees[f(s)];
    std::sort(sig.in_degrees.begin(), sig.in_degrees.end());

    auto cyclic = cyclic_states(f);
    std::vector<bool> seen(n, false);
    for (StateIndex s = 0; s < n; ++s) {
        if (! cyclic[s] || seen[s])
            continue;
        std::size_t length = 0;
        for (auto x = s; ! seen[x]; x = f(x)) {
            seen[x] = true;
            ++length;
        }
        sig.cycle_lengths.push_back(length);
    }
    std::sort(sig.cycle_lengths.begin(), sig.cycle_lengths.end());
    return sig;
}

bool verify_morphism(const Machine & a, const Machine & b, const Morphism & m)
{
    const auto n = a.states().size();
    const auto k = a.functions().size();
    if (n != b.states().size() || k != b.functions().size())
        throw Error(ErrorKind::IncompatibleShapes, "machines differ in state or function count");

    std::vector<std::size_t> g(m.g.begin(), m.g.end());
    if (! is_permutation_table(g, n) || ! is_permutation_table(m.h, k))
        return false;

    for (std::size_t i = 0; i < k; ++i) {
        auto & f = a.functions()[i];
        auto & image = b.functions()[m.h[i]];
        for (StateIndex s = 0; s < n; ++s)
            if (m.g[f(s)] != image(m.g[s]))
                return false;
    }
    return true;
}

std::optional<Morphism> find_isomorphism(const Machine & a, const Machine & b, const SearchLimits & limits)
{
    return ConjugacySearch(a, b, true, limits.node_cap).run();
}

CompletenessWitness construct_full_embedding(const StateSet & a_states, const Machine & b,
    const std::optional<std::vector<StateIndex>> & injection)
{
    const auto t = b.states().size();
    const auto n = a_states.size();
    if (t > n)
        throw Error(ErrorKind::IncompatibleShapes, "cannot embed " + std::to_string(t) + " states into " + std::to_string(n));

    std::vector<StateIndex> g;
    if (injection) {
        g = *injection;
        if (g.size() != t)
            throw Error(ErrorKind::InvalidArgument, "injection must map every state of the embedded machine");
        auto sorted = g;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || (! sorted.empty() && sorted.back() >= n))
            throw Error(ErrorKind::InvalidArgument, "state map is not an injection into the simulating state set");
    }
    else {
        for (std::size_t i = 0; i < t; ++i)
            g.push_back(static_cast<StateIndex>(i));
    }

    auto subset = g;
    std::sort(subset.begin(), subset.end());
    std::vector<StateIndex> rank(n, unassigned);
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < subset.size(); ++r) {
        rank[subset[r]] = static_cast<StateIndex>(r);
        labels.push_back(a_states.label(subset[r]));
    }
    StateSet sub_states(std::move(labels));

    Morphism morphism;
    for (auto x : g)
        morphism.g.push_back(rank[x]);

    std::vector<TransitionFunction> conjugates;
    SubMachineWitness reductions;
    reductions.state.kept = subset;
    for (auto & f : b.functions()) {
        // g f g^-1 on the image, identity elsewhere
        std::vector<StateIndex> table(t);
        std::vector<StateIndex> extended(n);
        for (StateIndex x = 0; x < n; ++x)
            extended[x] = x;
        for (StateIndex s = 0; s < t; ++s) {
            table[morphism.g[s]] = morphism.g[f(s)];
            extended[g[s]] = g[f(s)];
        }
        conjugates.emplace_back(sub_states, std::move(table));
        reductions.functional.kept.emplace_back(a_states, std::move(extended));
    }
    std::sort(reductions.functional.kept.begin(), reductions.functional.kept.end());

    auto sub = make_machine(sub_states, conjugates, b.function_names(), {}, b.name());
    for (auto & c : conjugates)
        morphism.h.push_back(*sub.find_function(c));
    return CompletenessWitness{std::move(reductions), std::move(morphism), std::move(sub)};
}

std::optional<CompletenessWitness> is_complete(const Machine & a, const Machine & b, const SearchLimits & limits, CompletenessPath path)
{
    if (b.states().size() > a.states().size())
        return std::nullopt;

    bool construct = path == CompletenessPath::Construct || (path == CompletenessPath::Automatic && a.is_full());
    if (construct) {
        if (! a.is_full())
            throw Error(ErrorKind::InvalidArgument, "direct construction needs a machine realizing every self-map");
        auto w = construct_full_embedding(a.states(), b);
        // rebuild from a so the sub-machine carries a's function names
        w.sub_machine = apply_sub_machine(a, w.reductions);
        return w;
    }
    return complete_by_search(a, b, limits);
}

bool verify_completeness(const Machine & a, const Machine & b, const CompletenessWitness & w)
{
    try {
        auto sub = apply_sub_machine(a, w.reductions);
        if (! (sub == w.sub_machine))
            return false;
        return verify_morphism(b, sub, w.morphism);
    }
    catch (const Error &) {
        return false;
    }
}

} // namespace memalg
