#include <memalg/cardinal.hpp>
#include <memalg/error.hpp>
#include <memalg/isomorphism.hpp>
#include <memalg/models.hpp>

#include "../support/oracles.hpp"

#include <doctest.h>

using namespace memalg;

TEST_CASE("bijection machines")
{
    auto two = full_bijection_machine(StateSet::numbered(2));
    CHECK(two.functions().size() == 2);
    CHECK(two.find_function(TransitionFunction::identity(two.states())));
    CHECK(two.find_function(TransitionFunction(two.states(), {1, 0})));
    CHECK(full_bijection_machine(StateSet::numbered(3)).functions().size() == 6);
    CHECK(full_bijection_machine(StateSet::numbered(1)) == full_machine(StateSet::numbered(1)));
    CHECK_THROWS_AS(full_bijection_machine(StateSet::numbered(11)), Error);
    auto four = full_bijection_machine(StateSet::numbered(4));
    for (auto & f : four.functions())
        CHECK(f.is_bijective());
}

TEST_CASE("bijection machines are closed under conjugation")
{
    auto m = full_bijection_machine(StateSet::numbered(4));
    auto g = oracle::iota_states(4);
    do
        for (auto & f : m.functions())
            CHECK(m.find_function(TransitionFunction(m.states(), oracle::conjugate(g, f.table()))));
    while (std::next_permutation(g.begin(), g.end()));
}
