#include <memalg/error.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/reduction_laws.hpp>
#include <memalg/reductions.hpp>

#include <doctest.h>

using namespace memalg;

namespace {
Machine sample()
{
    return parse_machine(R"(machine m
states 0 1 2 3
fn phi: 0->1, 1->0, 2->3, 3->3
fn id: 0->0, 1->1, 2->2, 3->3
fn zero: 0->0, 1->0, 2->0, 3->0
)");
}

std::vector<StateIndex> idx(std::initializer_list<StateIndex> l) { return l; }
}

TEST_CASE("functional reduction keeps the listed functions")
{
    auto m = sample();
    std::vector<std::string> keep{"phi", "zero"};
    auto r = functional_reduce(m, keep);
    CHECK(r.functions().size() == 2);
    CHECK(r.states() == m.states());
    CHECK_THROWS_AS(functional_reduce(m, std::vector<std::string>{}), Error);
    CHECK_THROWS_AS(functional_reduce(m, std::vector<std::string>{"nope"}), Error);
}

TEST_CASE("state reduction keeps restrictions of preserving functions")
{
    auto m = sample();
    auto r = state_reduce(m, idx({0, 1}));
    CHECK(r.states().labels() == std::vector<std::string>{"0", "1"});
    CHECK(r.functions().size() == 3);

    r = state_reduce(m, idx({0, 1, 2}));
    CHECK(r.functions().size() == 2); // phi leaves the subset

    r = state_reduce(m, idx({3}));
    CHECK(r.functions().size() == 1); // phi and id restrict to the same map
    CHECK(r.function_names() == std::vector<std::string>{"id"}); // first in table order

    try {
        state_reduce(parse_machine("machine n\nstates a b\nfn f: a->b, b->a\n"), idx({0}));
        FAIL("expected an empty reduction");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::EmptyReduction);
    }
    CHECK_THROWS_AS(state_reduce(m, idx({})), Error);
    CHECK_THROWS_AS(state_reduce(m, idx({9})), Error);
}

TEST_CASE("repeated state reductions differ from a single one")
{
    // phi preserves {0,1} but not {0,1,2}: reducing through {0,1,2} drops it.
    auto m = sample();
    auto twice = state_reduce(state_reduce(m, idx({0, 1, 2})), idx({0, 1}));
    auto once = state_reduce(m, idx({0, 1}));
    CHECK_FALSE(twice == once);
    CHECK(twice.functions().size() == 2);
    CHECK(once.functions().size() == 3);

    // Dropping the non-preserving functions first reconciles the two.
    std::vector<std::string> preserving{"id", "zero"};
    CHECK(twice == state_reduce(functional_reduce(m, preserving), idx({0, 1})));
}

TEST_CASE("sub-machine witnesses")
{
    auto m = sample();
    auto b = state_reduce(functional_reduce(m, std::vector<std::string>{"phi"}), idx({0, 1}));
    auto w = is_sub_machine(m, b);
    REQUIRE(w);
    CHECK(apply_sub_machine(m, *w) == b);
    CHECK(w->state.kept == idx({0, 1}));

    auto other = parse_machine("machine o\nstates 0 1\nfn f: 0->1, 1->1\n");
    CHECK_FALSE(is_sub_machine(m, other));
    CHECK_FALSE(is_sub_machine(m, parse_machine("machine o\nstates x\nfn f: x->x\n")));
    CHECK(is_sub_machine(m, m));
}

TEST_CASE("law checker")
{
    auto report = check_reduction_laws(11, 150);
    CHECK(report.tally("functional-composition").violations == 0);
    CHECK(report.tally("functional-then-state-commutes").violations == 0);
    CHECK(report.tally("state-then-functional-commutes").violations == 0);
    CHECK(report.tally("state-composition-as-sub-machine").violations == 0);
    CHECK(report.tally("state-composition").violations > 0);
    CHECK_FALSE(report.clean());
    for (auto & l : report.laws)
        CHECK(l.checks == 150);
    CHECK(format_report(report) == format_report(check_reduction_laws(11, 150)));
}
