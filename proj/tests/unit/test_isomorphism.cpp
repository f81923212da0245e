#include <memalg/error.hpp>
#include <memalg/isomorphism.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/models.hpp>
#include <memalg/reduction_laws.hpp>

#include "../support/oracles.hpp"

#include <doctest.h>

using namespace memalg;

namespace {
Machine one(std::vector<StateIndex> table, std::string_view prefix = "s")
{
    auto s = StateSet::numbered(table.size(), prefix);
    return make_machine(s, {TransitionFunction(s, std::move(table))});
}
}

TEST_CASE("constant machines are isomorphic through 1 - s")
{
    auto m = find_isomorphism(one({0, 0}), one({1, 1}));
    REQUIRE(m);
    CHECK(m->g == std::vector<StateIndex>{1, 0});
    CHECK(m->h == std::vector<std::size_t>{0});
    CHECK(verify_morphism(one({0, 0}), one({1, 1}), *m));
}

TEST_CASE("identity and negation are not isomorphic")
{
    CHECK_FALSE(find_isomorphism(one({0, 1}), one({1, 0})));
    CHECK_FALSE(oracle::brute_isomorphic(one({0, 1}), one({1, 0})));
}

TEST_CASE("a machine is isomorphic to itself through the identity")
{
    auto m = full_machine(StateSet::numbered(3));
    auto w = find_isomorphism(m, m);
    REQUIRE(w);
    CHECK(w->g == oracle::iota_states(3));
}

TEST_CASE("verify_morphism rejects malformed witnesses")
{
    auto a = one({0, 0});
    auto b = one({1, 1});
    CHECK_FALSE(verify_morphism(a, b, Morphism{{0, 1}, {0}}));
    CHECK_FALSE(verify_morphism(a, b, Morphism{{1, 1}, {0}}));
    CHECK_FALSE(verify_morphism(a, b, Morphism{{1}, {0}}));
    CHECK_THROWS_AS(verify_morphism(a, one({0, 0, 0}), Morphism{{0, 1}, {0}}), Error);
}

TEST_CASE("function signatures are conjugation invariant")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        auto m = random_machine(rng, 5, 1);
        auto c = oracle::random_conjugate(rng, m);
        CHECK(function_signature(m.functions()[0]) == function_signature(c.functions()[0]));
    }
    auto sig = function_signature(one({1, 0, 2, 2}).functions()[0]);
    CHECK(sig.cycle_lengths == std::vector<std::size_t>{1, 2});
}

TEST_CASE("search agrees with the brute-force oracle on small machines")
{
    std::mt19937_64 rng(99);
    int yes = 0;
    for (int i = 0; i < 300; ++i) {
        auto a = random_machine(rng, 3, 4);
        auto b = (i % 2) ? oracle::random_conjugate(rng, a) : random_machine(rng, 3, 4);
        auto found = find_isomorphism(a, b);
        CHECK(found.has_value() == oracle::brute_isomorphic(a, b));
        if (found) {
            CHECK(verify_morphism(a, b, *found));
            ++yes;
        }
    }
    CHECK(yes >= 150);
}

TEST_CASE("the witness has the least g")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        auto a = random_machine(rng, 4, 3);
        auto b = oracle::random_conjugate(rng, a);
        auto found = find_isomorphism(a, b);
        REQUIRE(found);
        auto g = oracle::iota_states(a.states().size());
        do {
            std::vector<std::size_t> h;
            bool ok = true;
            for (auto & f : a.functions()) {
                auto image = b.find_function(TransitionFunction(b.states(), oracle::conjugate(g, f.table())));
                if (! image) {
                    ok = false;
                    break;
                }
                h.push_back(*image);
            }
            if (ok) {
                CHECK(found->g == g);
                break;
            }
        } while (std::next_permutation(g.begin(), g.end()));
    }
}

TEST_CASE("search budget is enforced")
{
    auto a = full_machine(StateSet::numbered(4));
    try {
        find_isomorphism(a, full_bijection_machine(StateSet::numbered(4)), {1, 1});
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::SearchBudgetExceeded);
    }
}

TEST_CASE("full machines embed every smaller machine")
{
    std::mt19937_64 rng(23);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto full = full_machine(StateSet::numbered(n));
        for (int i = 0; i < 20; ++i) {
            auto b = random_machine(rng, n, 5);
            auto fast = is_complete(full, b, {}, CompletenessPath::Construct);
            auto slow = is_complete(full, b, {}, CompletenessPath::Search);
            REQUIRE(fast);
            REQUIRE(slow);
            CHECK(verify_completeness(full, b, *fast));
            CHECK(verify_completeness(full, b, *slow));
        }
    }
}

TEST_CASE("construct_full_embedding honours a custom injection")
{
    auto b = one({1, 0}, "t");
    auto w = construct_full_embedding(StateSet::numbered(3), b, std::vector<StateIndex>{2, 0});
    CHECK(w.reductions.state.kept == std::vector<StateIndex>{0, 2});
    CHECK(verify_completeness(full_machine(StateSet::numbered(3)), b, w));
    CHECK_THROWS_AS(construct_full_embedding(StateSet::numbered(1), b), Error);
}

TEST_CASE("completeness search on non-full machines")
{
    auto a = parse_machine("machine a\nstates 0 1 2\nfn rot: 0->1, 1->2, 2->0\nfn swap: 0->1, 1->0, 2->2\n");
    auto neg = one({1, 0});
    auto w = is_complete(a, neg);
    REQUIRE(w);
    CHECK(verify_completeness(a, neg, *w));
    CHECK(w->reductions.state.kept == std::vector<StateIndex>{0, 1});

    CHECK_FALSE(is_complete(a, one({0, 0})));
    CHECK_FALSE(is_complete(a, one({0, 1, 2, 3})));
    CHECK_THROWS_AS(is_complete(a, neg, {}, CompletenessPath::Construct), Error);
}

TEST_CASE("bijection-only machines never match machines with a collapsing map")
{
    for (std::size_t n = 2; n <= 3; ++n) {
        auto bij = full_bijection_machine(StateSet::numbered(n));
        auto fns = full_transition_set(StateSet::numbered(n));
        auto swapped = bij.functions();
        swapped.back() = TransitionFunction::constant(StateSet::numbered(n), 0);
        auto other = make_machine(StateSet::numbered(n), swapped);
        CHECK_FALSE(find_isomorphism(bij, other));
        CHECK_FALSE(oracle::conjugation_isomorphic(bij, other));
    }
}
