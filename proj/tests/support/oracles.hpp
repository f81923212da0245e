#pragma once

// Brute-force reference implementations and generators shared by the unit and
// acceptance tests. Nothing here uses the library's search code.

#include <memalg/machine.hpp>
#include <memalg/turing.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace memalg::oracle {

inline std::vector<StateIndex> iota_states(std::size_t n)
{
    std::vector<StateIndex> v(n);
    std::iota(v.begin(), v.end(), StateIndex{0});
    return v;
}

/// Tries every state bijection g and every function bijection h and checks
/// g(f(s)) = h(f)(g(s)) on all states.
inline bool brute_isomorphic(const Machine & a, const Machine & b)
{
    const auto n = a.states().size();
    const auto k = a.functions().size();
    if (n != b.states().size() || k != b.functions().size())
        return false;
    auto g = iota_states(n);
    do {
        std::vector<std::size_t> h(k);
        std::iota(h.begin(), h.end(), std::size_t{0});
        do {
            bool ok = true;
            for (std::size_t f = 0; f < k && ok; ++f)
                for (StateIndex s = 0; s < n && ok; ++s)
                    ok = g[a.functions()[f](s)] == b.functions()[h[f]](g[s]);
            if (ok)
                return true;
        } while (std::next_permutation(h.begin(), h.end()));
    } while (std::next_permutation(g.begin(), g.end()));
    return false;
}

/// g f g^-1 as a table.
inline std::vector<StateIndex> conjugate(const std::vector<StateIndex> & g, std::span<const StateIndex> f)
{
    std::vector<StateIndex> out(f.size());
    for (StateIndex s = 0; s < f.size(); ++s)
        out[g[s]] = g[f[s]];
    return out;
}

/// Isomorphic iff some g maps a's function set onto b's by conjugation.
inline bool conjugation_isomorphic(const Machine & a, const Machine & b)
{
    const auto n = a.states().size();
    if (n != b.states().size() || a.functions().size() != b.functions().size())
        return false;
    std::set<std::vector<StateIndex>> target;
    for (auto & f : b.functions())
        target.emplace(f.table().begin(), f.table().end());
    auto g = iota_states(n);
    do {
        std::set<std::vector<StateIndex>> image;
        for (auto & f : a.functions())
            image.insert(conjugate(g, f.table()));
        if (image == target)
            return true;
    } while (std::next_permutation(g.begin(), g.end()));
    return false;
}

inline std::vector<StateIndex> random_permutation(std::mt19937_64 & rng, std::size_t n)
{
    auto g = iota_states(n);
    std::shuffle(g.begin(), g.end(), rng);
    return g;
}

/// The image of m under a random relabelling, on a fresh state set.
inline Machine random_conjugate(std::mt19937_64 & rng, const Machine & m, std::string_view prefix = "t")
{
    auto g = random_permutation(rng, m.states().size());
    auto states = StateSet::numbered(m.states().size(), prefix);
    std::vector<TransitionFunction> fns;
    for (auto & f : m.functions())
        fns.emplace_back(states, conjugate(g, f.table()));
    return make_machine(states, std::move(fns));
}

/// Random bounded-tape TM with k <= 3 registers, m <= 2 symbols and n <= 4
/// cells whose configuration count is at least min_configs.
inline TuringSpec random_tm(std::mt19937_64 & rng, std::uint64_t min_configs = 1)
{
    auto pick = [&](std::uint32_t lo, std::uint32_t hi) { return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng); };
    TuringSpec t;
    std::uint64_t k, m, n;
    do {
        k = pick(1, 3);
        m = pick(1, 2);
        n = pick(1, 4);
    } while (k * static_cast<std::uint64_t>(std::pow(m, n)) * n < min_configs);
    t.name = "random";
    for (std::uint32_t i = 0; i < k; ++i)
        t.registers.push_back("q" + std::to_string(i));
    for (std::uint32_t i = 0; i < m; ++i)
        t.symbols.push_back(std::to_string(i));
    t.cells = n;
    t.boundary = pick(0, 1) ? BoundaryPolicy::Reject : BoundaryPolicy::Clamp;
    for (Register r = 0; r < k; ++r)
        if (k > 1 && pick(0, 2) == 0)
            t.halting.insert(r);
    for (Register r = 0; r < k; ++r) {
        if (t.halting.contains(r))
            continue;
        for (Symbol s = 0; s < m; ++s)
            if (pick(0, 99) < 85)
                t.rules[{r, s}] = TuringRule{pick(0, k - 1), pick(0, m - 1), static_cast<Move>(pick(0, 2))};
    }
    t.initial.reg = 0;
    t.initial.tape.assign(n, 0);
    t.initial.head = 0;
    return t;
}

inline TuringConfig random_config(std::mt19937_64 & rng, const TuringSpec & t)
{
    auto pick = [&](std::size_t hi) { return static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, hi - 1)(rng)); };
    TuringConfig c;
    c.reg = pick(t.registers.size());
    for (std::size_t i = 0; i < t.cells; ++i)
        c.tape.push_back(pick(t.symbols.size()));
    c.head = pick(t.cells);
    return c;
}

/// Up to `count` distinct random configurations.
inline std::vector<TuringConfig> distinct_configs(std::mt19937_64 & rng, const TuringSpec & t, std::size_t count)
{
    std::vector<TuringConfig> out;
    for (std::size_t attempts = 0; out.size() < count && attempts < 100 * count; ++attempts) {
        auto c = random_config(rng, t);
        if (std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(std::move(c));
    }
    return out;
}

} // namespace memalg::oracle
