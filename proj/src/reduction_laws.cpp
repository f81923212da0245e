#include <memalg/error.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/reduction_laws.hpp>
#include <memalg/reductions.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace memalg {

namespace {
    constexpr std::size_t max_counterexamples = 3;
    constexpr std::size_t max_attempts_per_check = 1000;

    std::optional<Machine> try_state_reduce(const Machine & m, std::span<const StateIndex> keep)
    {
        try {
            return state_reduce(m, keep);
        }
        catch (const Error & e) {
            if (e.kind() == ErrorKind::EmptyReduction)
                return std::nullopt;
            throw;
        }
    }

    std::vector<StateIndex> all_states(const Machine & m)
    {
        std::vector<StateIndex> v(m.states().size());
        for (StateIndex s = 0; s < v.size(); ++s)
            v[s] = s;
        return v;
    }

    template <typename T>
    std::vector<T> pick(const std::vector<T> & items, std::uint64_t mask)
    {
        std::vector<T> out;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (mask >> i & 1)
                out.push_back(items[i]);
        return out;
    }

    std::vector<TransitionFunction> random_function_subset(std::mt19937_64 & rng, const std::vector<TransitionFunction> & from)
    {
        std::uniform_int_distribution<std::uint64_t> dist(1, (std::uint64_t{1} << from.size()) - 1);
        return pick(from, dist(rng));
    }

    std::string render_states(const Machine & m, std::span<const StateIndex> subset)
    {
        std::string s = "{";
        for (std::size_t i = 0; i < subset.size(); ++i)
            s += (i ? "," : "") + m.states().label(subset[i]);
        return s + "}";
    }

    std::string render_functions(const Machine & m, std::span<const TransitionFunction> fns)
    {
        std::string s = "{";
        for (std::size_t i = 0; i < fns.size(); ++i)
            s += (i ? "," : "") + m.function_names()[*m.find_function(fns[i])];
        return s + "}";
    }

    /// Does some state-then-functional reduction of a produce exactly b?
    bool reachable_state_then_functional(const Machine & a, const Machine & b)
    {
        auto states = all_states(a);
        for (std::uint64_t sm = 1; sm < (std::uint64_t{1} << states.size()); ++sm) {
            auto reduced = try_state_reduce(a, pick(states, sm));
            if (! reduced || ! (reduced->states() == b.states()))
                continue;
            auto & fns = reduced->functions();
            for (std::uint64_t fm = 1; fm < (std::uint64_t{1} << fns.size()); ++fm)
                if (functional_reduce(*reduced, pick(fns, fm)) == b)
                    return true;
        }
        return false;
    }

    /// Does some functional-then-state reduction of a produce exactly b?
    bool reachable_functional_then_state(const Machine & a, const Machine & b)
    {
        auto states = all_states(a);
        auto & fns = a.functions();
        for (std::uint64_t fm = 1; fm < (std::uint64_t{1} << fns.size()); ++fm) {
            auto functional = functional_reduce(a, pick(fns, fm));
            for (std::uint64_t sm = 1; sm < (std::uint64_t{1} << states.size()); ++sm) {
                auto reduced = try_state_reduce(functional, pick(states, sm));
                if (reduced && *reduced == b)
                    return true;
            }
        }
        return false;
    }

    // One law check: returns nullopt when the random instance is not applicable,
    // otherwise an empty string on success or a rendered counterexample.
    using Check = std::function<std::optional<std::string>(std::mt19937_64 &, const Machine &)>;
}

Machine random_machine(std::mt19937_64 & rng, std::size_t max_states, std::size_t max_functions)
{
    if (max_states == 0 || max_functions == 0)
        throw Error(ErrorKind::InvalidArgument, "random machines need at least one state and one function");
    std::uniform_int_distribution<std::size_t> n_dist(1, max_states);
    std::uniform_int_distribution<std::size_t> f_dist(1, max_functions);
    auto n = n_dist(rng);
    auto states = StateSet::numbered(n);
    std::uniform_int_distribution<StateIndex> entry(0, static_cast<StateIndex>(n - 1));
    std::vector<TransitionFunction> fns;
    for (std::size_t i = 0, count = f_dist(rng); i < count; ++i) {
        std::vector<StateIndex> table(n);
        for (auto & t : table)
            t = entry(rng);
        fns.emplace_back(states, std::move(table));
    }
    return make_machine(states, std::move(fns));
}

std::vector<StateIndex> random_subset(std::mt19937_64 & rng, const std::vector<StateIndex> & from)
{
    if (from.empty())
        throw Error(ErrorKind::InvalidArgument, "cannot draw a non-empty subset of an empty set");
    std::uniform_int_distribution<std::uint64_t> dist(1, (std::uint64_t{1} << from.size()) - 1);
    return pick(from, dist(rng));
}

bool LawCheckReport::clean() const
{
    return std::all_of(laws.begin(), laws.end(), [](auto & l) { return l.informational || l.violations == 0; });
}

const LawTally & LawCheckReport::tally(std::string_view law) const
{
    for (auto & l : laws)
        if (l.law == law)
            return l;
    throw Error(ErrorKind::InvalidArgument, "no law named '" + std::string(law) + "'");
}

LawCheckReport check_reduction_laws(std::uint64_t seed, std::size_t checks_per_law, std::size_t max_states, std::size_t max_functions)
{
    struct Law {
        LawTally tally;
        Check check;
    };

    std::vector<Law> laws;

    laws.push_back({{"functional-composition", "fr(fr(m, K1), K2) = fr(m, K2) for K2 in K1", false, 0, 0, {}}, [](auto & rng, const Machine & m) -> std::optional<std::string> {
        auto k1 = random_function_subset(rng, m.functions());
        auto k2 = random_function_subset(rng, k1);
        if (functional_reduce(functional_reduce(m, k1), k2) == functional_reduce(m, k2))
            return std::string{};
        return format_machine(m) + "K1=" + render_functions(m, k1) + " K2=" + render_functions(m, k2);
    }});

    laws.push_back({{"state-composition", "sr(sr(m, S1), S2) = sr(m, S2) for S2 in S1", false, 0, 0, {}}, [](auto & rng, const Machine & m) -> std::optional<std::string> {
        auto s1 = random_subset(rng, all_states(m));
        auto s2 = random_subset(rng, s1);
        auto outer = try_state_reduce(m, s1);
        if (! outer)
            return std::nullopt;
        std::vector<StateIndex> inner;
        for (auto s : s2)
            inner.push_back(static_cast<StateIndex>(std::lower_bound(s1.begin(), s1.end(), s) - s1.begin()));
        auto twice = try_state_reduce(*outer, inner);
        auto once = try_state_reduce(m, s2);
        if (twice && once && *twice == *once)
            return std::string{};
        return format_machine(m) + "S1=" + render_states(m, s1) + " S2=" + render_states(m, s2);
    }});

    laws.push_back({{"state-composition-as-sub-machine",
                        "sr(sr(m, S1), S2) = sr(fr(m, P(S1)), S2), P(S1) the functions preserving S1", true, 0, 0, {}},
        [](auto & rng, const Machine & m) -> std::optional<std::string> {
            auto s1 = random_subset(rng, all_states(m));
            auto s2 = random_subset(rng, s1);
            auto outer = try_state_reduce(m, s1);
            if (! outer)
                return std::nullopt;
            std::vector<StateIndex> inner;
            for (auto s : s2)
                inner.push_back(static_cast<StateIndex>(std::lower_bound(s1.begin(), s1.end(), s) - s1.begin()));
            auto twice = try_state_reduce(*outer, inner);
            std::vector<TransitionFunction> preserving;
            for (auto & f : m.functions())
                if (preserves(f, s1))
                    preserving.push_back(f);
            auto single = try_state_reduce(functional_reduce(m, preserving), s2);
            if (twice.has_value() == single.has_value() && (! twice || (*twice == *single && is_sub_machine(m, *twice))))
                return std::string{};
            return format_machine(m) + "S1=" + render_states(m, s1) + " S2=" + render_states(m, s2);
        }});

    laws.push_back({{"functional-then-state-commutes", "every fr-then-sr result is some sr-then-fr result", false, 0, 0, {}},
        [](auto & rng, const Machine & m) -> std::optional<std::string> {
            auto k = random_function_subset(rng, m.functions());
            auto s = random_subset(rng, all_states(m));
            auto b = try_state_reduce(functional_reduce(m, k), s);
            if (! b)
                return std::nullopt;
            if (reachable_state_then_functional(m, *b))
                return std::string{};
            return format_machine(m) + "K=" + render_functions(m, k) + " S=" + render_states(m, s);
        }});

    laws.push_back({{"state-then-functional-commutes", "every sr-then-fr result is some fr-then-sr result", false, 0, 0, {}},
        [](auto & rng, const Machine & m) -> std::optional<std::string> {
            auto s = random_subset(rng, all_states(m));
            auto reduced = try_state_reduce(m, s);
            if (! reduced)
                return std::nullopt;
            auto k = random_function_subset(rng, reduced->functions());
            auto b = functional_reduce(*reduced, k);
            if (reachable_functional_then_state(m, b))
                return std::string{};
            return format_machine(m) + "S=" + render_states(m, s) + " K'=" + render_functions(*reduced, k);
        }});

    LawCheckReport report;
    report.seed = seed;
    for (std::size_t li = 0; li < laws.size(); ++li) {
        auto & law = laws[li];
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + li);
        std::size_t attempts = 0;
        while (law.tally.checks < checks_per_law && attempts < checks_per_law * max_attempts_per_check) {
            ++attempts;
            auto m = random_machine(rng, max_states, max_functions);
            auto outcome = law.check(rng, m);
            if (! outcome)
                continue;
            ++law.tally.checks;
            if (! outcome->empty()) {
                ++law.tally.violations;
                if (law.tally.counterexamples.size() < max_counterexamples)
                    law.tally.counterexamples.push_back(*outcome);
            }
        }
        report.laws.push_back(std::move(law.tally));
    }
    return report;
}

std::string format_report(const LawCheckReport & report)
{
    std::ostringstream out;
    out << "seed " << report.seed << '\n';
    for (auto & l : report.laws) {
        out << l.law << (l.informational ? " (informational)" : "") << ": " << l.checks << " checks, "
            << l.violations << " violations\n";
        out << "  " << l.statement << '\n';
        for (auto & c : l.counterexamples) {
            out << "  counterexample:\n";
            std::istringstream lines(c);
            for (std::string line; std::getline(lines, line);)
                out << "    " << line << '\n';
        }
    }
    out << (report.clean() ? "all laws hold" : "violations found") << '\n';
    return out.str();
}

} // namespace memalg
