#include <memalg/error.hpp>
#include <memalg/machine.hpp>

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace memalg {

struct StateSet::Impl {
    std::vector<std::string> labels;
    std::unordered_map<std::string, StateIndex> index;
};

StateSet::StateSet(std::vector<std::string> labels)
{
    if (labels.empty())
        throw Error(ErrorKind::InvalidArgument, "a state set needs at least one state");
    if (labels.size() > std::numeric_limits<StateIndex>::max())
        throw Error(ErrorKind::InvalidArgument, "too many states");

    auto impl = std::make_shared<Impl>();
    impl->index.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (! impl->index.emplace(labels[i], static_cast<StateIndex>(i)).second)
            throw Error(ErrorKind::InvalidArgument, "duplicate state label '" + labels[i] + "'");
    impl->labels = std::move(labels);
    _impl = std::move(impl);
}

StateSet StateSet::numbered(std::size_t n, std::string_view prefix)
{
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::string(prefix) + std::to_string(i));
    return StateSet(std::move(labels));
}

std::size_t StateSet::size() const noexcept
{
    return _impl->labels.size();
}

const std::string & StateSet::label(StateIndex s) const
{
    if (! contains(s))
        throw Error(ErrorKind::DomainMismatch, "state index " + std::to_string(s) + " outside a set of " + std::to_string(size()));
    return _impl->labels[s];
}

const std::vector<std::string> & StateSet::labels() const noexcept
{
    return _impl->labels;
}

std::optional<StateIndex> StateSet::find(std::string_view label) const
{
    auto it = _impl->index.find(std::string(label));
    if (it == _impl->index.end())
        return std::nullopt;
    return it->second;
}

StateIndex StateSet::index_of(std::string_view label) const
{
    if (auto s = find(label))
        return *s;
    throw Error(ErrorKind::DomainMismatch, "unknown state '" + std::string(label) + "'");
}

bool operator==(const StateSet & a, const StateSet & b)
{
    return a._impl == b._impl || a._impl->labels == b._impl->labels;
}

TransitionFunction::TransitionFunction(StateSet domain, std::vector<StateIndex> table) :
    _domain(std::move(domain)),
    _table(std::move(table))
{
    if (_table.size() != _domain.size())
        throw Error(ErrorKind::TotalityViolation, "table has " + std::to_string(_table.size()) + " entries for "
                + std::to_string(_domain.size()) + " states");
    for (std::size_t i = 0; i < _table.size(); ++i)
        if (! _domain.contains(_table[i]))
            throw Error(ErrorKind::TotalityViolation, "entry for state " + std::to_string(i) + " maps outside the state set");
}

TransitionFunction TransitionFunction::identity(const StateSet & domain)
{
    std::vector<StateIndex> table(domain.size());
    std::iota(table.begin(), table.end(), StateIndex{0});
    return TransitionFunction(domain, std::move(table));
}

TransitionFunction TransitionFunction::constant(const StateSet & domain, StateIndex target)
{
    return TransitionFunction(domain, std::vector<StateIndex>(domain.size(), target));
}

std::size_t TransitionFunction::image_size() const
{
    std::vector<bool> hit(_table.size(), false);
    std::size_t count = 0;
    for (auto t : _table)
        if (! hit[t]) {
            hit[t] = true;
            ++count;
        }
    return count;
}

StateIndex apply(const TransitionFunction & f, StateIndex s)
{
    if (! f.domain().contains(s))
        throw Error(ErrorKind::DomainMismatch, "state index " + std::to_string(s) + " is not in the function's domain");
    return f(s);
}

StateIndex apply(const TransitionFunction & f, std::string_view label)
{
    return f(f.domain().index_of(label));
}

bool is_fixed_point(const TransitionFunction & f, StateIndex s)
{
    return apply(f, s) == s;
}

std::optional<std::size_t> Machine::find_function(const TransitionFunction & f) const
{
    if (! (f.domain() == _states))
        return std::nullopt;
    auto it = std::lower_bound(_functions.begin(), _functions.end(), f);
    if (it != _functions.end() && *it == f)
        return static_cast<std::size_t>(it - _functions.begin());
    return std::nullopt;
}

std::optional<std::size_t> Machine::find_function(std::string_view name) const
{
    auto it = std::find(_function_names.begin(), _function_names.end(), name);
    if (it == _function_names.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - _function_names.begin());
}

bool Machine::is_full() const
{
    // functions are distinct self-maps, so reaching n^n of them means all
    const auto n = _states.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (__builtin_mul_overflow(total, n, &total))
            return false;
    return _functions.size() == total;
}

Machine Machine::renamed(std::string name) const
{
    auto copy = *this;
    copy._name = std::move(name);
    return copy;
}

Machine make_machine(StateSet states, std::vector<TransitionFunction> fns, std::vector<std::string> names,
    std::vector<std::size_t> output_positions, std::string name)
{
    if (fns.empty())
        throw Error(ErrorKind::InvalidMachine, "a machine needs at least one transition function");
    if (! names.empty() && names.size() != fns.size())
        throw Error(ErrorKind::InvalidMachine, "function name count does not match function count");
    for (auto & f : fns)
        if (! (f.domain() == states))
            throw Error(ErrorKind::InvalidMachine, "transition function defined on a different state set");

    std::vector<std::size_t> order(fns.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fns[a] < fns[b]; });

    Machine m(std::move(states));
    m._name = std::move(name);
    std::vector<std::size_t> canonical_of(fns.size());
    for (auto i : order) {
        if (m._functions.empty() || ! (m._functions.back() == fns[i])) {
            m._functions.push_back(fns[i]);
            m._function_names.push_back(names.empty() ? std::string{} : names[i]);
        }
        canonical_of[i] = m._functions.size() - 1;
    }
    // stable sort keeps the first occurrence of each duplicate first, so its name won
    for (std::size_t i = 0; i < m._function_names.size(); ++i)
        if (m._function_names[i].empty())
            m._function_names[i] = "f" + std::to_string(i);

    auto sorted_names = m._function_names;
    std::sort(sorted_names.begin(), sorted_names.end());
    if (auto d = std::adjacent_find(sorted_names.begin(), sorted_names.end()); d != sorted_names.end())
        throw Error(ErrorKind::InvalidMachine, "duplicate function name '" + *d + "'");

    for (auto p : output_positions) {
        if (p >= fns.size())
            throw Error(ErrorKind::InvalidMachine, "output function position out of range");
        m._outputs.push_back(canonical_of[p]);
    }
    std::sort(m._outputs.begin(), m._outputs.end());
    m._outputs.erase(std::unique(m._outputs.begin(), m._outputs.end()), m._outputs.end());
    return m;
}

std::vector<TransitionFunction> full_transition_set(const StateSet & states, std::uint64_t cap)
{
    const auto n = states.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (__builtin_mul_overflow(total, n, &total) || total > cap)
            throw Error(ErrorKind::EnumerationTooLarge, std::to_string(n) + "^" + std::to_string(n)
                    + " transition functions exceed the enumeration cap of " + std::to_string(cap));

    std::vector<TransitionFunction> result;
    result.reserve(total);
    std::vector<StateIndex> table(n, 0);
    for (std::uint64_t count = 0; count < total; ++count) {
        result.emplace_back(states, table);
        // odometer with the last entry least significant gives lexicographic order
        for (std::size_t pos = n; pos-- > 0;) {
            if (++table[pos] < n)
                break;
            table[pos] = 0;
        }
    }
    return result;
}

Machine full_machine(const StateSet & states, std::uint64_t cap)
{
    return make_machine(states, full_transition_set(states, cap));
}

std::string_view to_string(RunResult::Outcome outcome)
{
    switch (outcome) {
    case RunResult::Outcome::Halted: return "halted";
    case RunResult::Outcome::Cycled: return "cycled";
    case RunResult::Outcome::StepLimit: return "step-limit";
    }
    return "unknown";
}

RunResult run_to_fixpoint(const TransitionFunction & f, StateIndex s0, std::size_t max_steps, bool record_trajectory)
{
    if (! f.domain().contains(s0))
        throw Error(ErrorKind::DomainMismatch, "initial state is not in the function's domain");

    constexpr auto unseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> first_seen(f.size(), unseen);

    RunResult result;
    result.outcome = RunResult::Outcome::StepLimit;
    auto s = s0;
    std::size_t step = 0;
    if (record_trajectory)
        result.trajectory.push_back(s);

    while (true) {
        first_seen[s] = step;
        if (f(s) == s) {
            result.outcome = RunResult::Outcome::Halted;
            break;
        }
        if (step == max_steps)
            break;
        s = f(s);
        ++step;
        if (record_trajectory)
            result.trajectory.push_back(s);
        if (first_seen[s] != unseen) {
            result.outcome = RunResult::Outcome::Cycled;
            result.cycle_entry = first_seen[s];
            result.cycle_length = step - first_seen[s];
            break;
        }
    }
    result.final_state = s;
    result.steps = step;
    return result;
}

} // namespace memalg
