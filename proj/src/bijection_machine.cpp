#include <memalg/error.hpp>
#include <memalg/models.hpp>

#include <algorithm>
#include <numeric>

namespace memalg {

Machine full_bijection_machine(const StateSet & states, std::uint64_t cap)
{
    const auto n = states.size();
    std::uint64_t count = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        count *= i;
        if (count > cap)
            throw Error(ErrorKind::EnumerationTooLarge,
                std::to_string(n) + "! permutations exceed the cap of " + std::to_string(cap));
    }
    std::vector<StateIndex> table(n);
    std::iota(table.begin(), table.end(), StateIndex{0});
    std::vector<TransitionFunction> fns;
    fns.reserve(count);
    do
        fns.emplace_back(states, table);
    while (std::next_permutation(table.begin(), table.end()));
    return make_machine(states, std::move(fns), {}, {}, "bijections" + std::to_string(n));
}

} // namespace memalg
