// Acceptance suite: one PASS/FAIL line per criterion.
//
//   memalg_acceptance                 run every criterion
//   memalg_acceptance --criterion N   run one

#include <memalg/cardinal.hpp>
#include <memalg/error.hpp>
#include <memalg/isomorphism.hpp>
#include <memalg/models.hpp>
#include <memalg/reduction_laws.hpp>
#include <memalg/universality.hpp>

#include "../support/checks.hpp"
#include "../support/oracles.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace memalg;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string & what)
    {
        if (! ok && pass) {
            pass = false;
            detail << "first failure: " << what << "; ";
        }
    }
};

struct Criterion {
    int number;
    const char * title;
    double seconds;
    std::function<void(Outcome &)> body;
};

const auto F = Cardinal::finite;
const auto B = Cardinal::beth;

void cardinalities(Outcome & o)
{
    for (std::uint64_t k = 1; k <= 4; ++k)
        for (std::uint64_t m = 1; m <= 4; ++m)
            for (std::uint64_t n = 1; n <= 6; ++n) {
                std::uint64_t expected = k * n;
                for (std::uint64_t i = 0; i < n; ++i)
                    expected *= m;
                o.require(state_cardinality(MachineTemplate::finite_turing(k, m, n)) == F(expected), "finite-turing formula");
            }
    o.require(state_cardinality(MachineTemplate::finite_turing(3, 2, 4)) == F(192), "finite-turing(3,2,4) = 192");
    o.require(state_cardinality(MachineTemplate::infinite_tape_turing(3, 2)) == B(1), "infinite tape");
    o.require(state_cardinality(MachineTemplate::umm(4)) == B(1), "umm");
    o.require(state_cardinality(MachineTemplate::quantum(2, 3)) == B(1), "quantum");
    o.require(state_cardinality(MachineTemplate::lsm()) == B(1), "lsm");
    o.require(transition_space_cardinality(B(1)) == B(2), "|Phi| of Beth(1)");
    o.require(transition_space_cardinality(F(2)) == F(4), "|Phi| of 2");

    auto report = universality_report();
    int complete = 0;
    for (auto & v : report.verdicts) {
        o.require(v.complete(), v.family + " verdict");
        complete += v.complete();
    }
    o.require(report.verdicts.size() == 3, "three verdicts");
    o.detail << complete << "/3 UMM-complete verdicts";
}

Machine one(std::vector<StateIndex> table)
{
    auto s = StateSet::numbered(table.size());
    return make_machine(s, {TransitionFunction(s, std::move(table))});
}

void worked_examples(Outcome & o)
{
    auto w = find_isomorphism(one({0, 0}), one({1, 1}));
    o.require(w && w->g == std::vector<StateIndex>{1, 0}, "const-0 vs const-1 witness f(s) = 1 - s");
    o.require(w && verify_morphism(one({0, 0}), one({1, 1}), *w), "witness verifies");
    o.require(! find_isomorphism(one({0, 1}), one({1, 0})), "identity vs negation rejected");
    o.detail << "const-0 ~ const-1 via g = (1, 0); identity !~ negation";
}

void full_set_isomorphism(Outcome & o)
{
    std::mt19937_64 rng(2024);
    int pairs = 0, ok = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::string> reversed;
        for (std::size_t i = n; i-- > 0;)
            reversed.push_back("r" + std::to_string(i));
        std::vector<StateSet> sets{StateSet::numbered(n, "s"), StateSet::numbered(n, "t"), StateSet(reversed)};
        for (auto & x : sets)
            for (auto & y : sets) {
                ++pairs;
                auto a = full_machine(x), b = full_machine(y);
                bool good = find_isomorphism(a, b).has_value();
                // h = g f g^-1 from an arbitrary g
                auto g = oracle::random_permutation(rng, n);
                Morphism m{g, {}};
                for (auto & f : a.functions()) {
                    auto image = b.find_function(TransitionFunction(b.states(), oracle::conjugate(g, f.table())));
                    good = good && image.has_value();
                    m.h.push_back(image.value_or(0));
                }
                good = good && verify_morphism(a, b, m);
                o.require(good, "full machines of size " + std::to_string(n));
                ok += good;
            }
    }
    o.detail << ok << "/" << pairs << " pairs";
}

void full_machines_complete(Outcome & o)
{
    std::mt19937_64 rng(77);
    int targets = 0, agreed = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto full = full_machine(StateSet::numbered(n));
        int per_size = n == 4 ? 60 : 30;
        for (int i = 0; i < per_size; ++i) {
            auto b = random_machine(rng, n, 6);
            ++targets;
            auto fast = is_complete(full, b, {}, CompletenessPath::Construct);
            auto slow = is_complete(full, b, {}, CompletenessPath::Search);
            bool good = fast && slow && verify_completeness(full, b, *fast) && verify_completeness(full, b, *slow);
            o.require(good, "target " + std::to_string(targets) + " on |S| = " + std::to_string(n));
            agreed += good;
        }
    }
    o.detail << agreed << "/" << targets << " targets embedded by both paths";
}

void reduction_laws(Outcome & o)
{
    auto report = check_reduction_laws(5, 1000);
    for (auto & law : report.laws) {
        if (! law.informational)
            o.require(law.violations == 0, law.law + " violated " + std::to_string(law.violations) + "/" + std::to_string(law.checks));
        o.detail << law.law << (law.informational ? " (informational)" : "") << " " << law.violations << "/" << law.checks << "; ";
    }
}

void oracle_equivalence(Outcome & o)
{
    std::mt19937_64 rng(606);
    int pairs = 0, positives = 0, agreed = 0;
    for (int i = 0; i < 600; ++i) {
        auto a = random_machine(rng, 3, 4);
        Machine b = i % 3 == 0 ? random_machine(rng, 3, 4) : oracle::random_conjugate(rng, a);
        if (i % 3 == 2) {
            // same shape as a, one function replaced
            auto fns = b.functions();
            std::vector<StateIndex> table(b.states().size());
            for (auto & x : table)
                x = static_cast<StateIndex>(rng() % table.size());
            fns[rng() % fns.size()] = TransitionFunction(b.states(), table);
            b = make_machine(b.states(), fns);
        }
        ++pairs;
        bool fast = find_isomorphism(a, b).has_value();
        bool slow = oracle::brute_isomorphic(a, b);
        positives += slow;
        o.require(fast == slow, "pair " + std::to_string(pairs));
        agreed += fast == slow;
    }
    o.detail << agreed << "/" << pairs << " pairs agree (" << positives << " isomorphic)";
}

void tm_compiler(Outcome & o)
{
    std::mt19937_64 rng(1234);
    int machines = 0, runs = 0, matched = 0;
    for (int i = 0; i < 60; ++i) {
        auto t = oracle::random_tm(rng, 20);
        auto compiled = compile_tm(t);
        ++machines;
        std::uint64_t k = t.registers.size(), m = t.symbols.size(), n = t.cells;
        auto card = state_cardinality(MachineTemplate::finite_turing(k, m, n));
        auto extra = t.boundary == BoundaryPolicy::Reject ? 1 : 0;
        o.require(compiled.machine.states().size() == card.value() + extra, "state count of machine " + std::to_string(machines));
        for (auto & c : oracle::distinct_configs(rng, t, 20)) {
            ++runs;
            auto mismatch = check::compiled_matches_simulation(t, compiled, c, 50);
            o.require(! mismatch, mismatch.value_or(""));
            matched += ! mismatch;
        }
    }
    o.detail << machines << " machines, " << matched << "/" << runs << " traces identical";
}

void tm_simulation(Outcome & o)
{
    std::mt19937_64 rng(4321);
    int machines = 0, runs = 0, clean = 0, caught = 0, controls = 0;
    for (int i = 0; i < 60; ++i) {
        auto t = oracle::random_tm(rng, 20);
        ++machines;
        for (auto & c : oracle::distinct_configs(rng, t, 20)) {
            t.initial = c;
            auto p = tm_to_mem(t);
            ++runs;
            auto report = verify_lockstep(t, p, 50);
            o.require(! report.divergence, report.summary());
            clean += ! report.divergence;

            // negative control: corrupt the entry used by the first moving step
            auto step = step_tm(t, c);
            if (step.status != TuringStep::Status::Moved || t.symbols.size() < 2)
                continue;
            ++controls;
            auto & table = p.functions[0].by_selector.at(c.head);
            auto & action = table.entries.at({c.reg, c.head, c.tape[c.head]});
            action.write_values[0] = 1 - action.write_values[0];
            auto bad = verify_lockstep(t, p, 50);
            bool ok = bad.divergence && bad.divergence->step == 1;
            o.require(ok, "corrupted entry not caught at step 1");
            caught += ok;
        }
    }
    o.detail << clean << "/" << runs << " runs without divergence over " << machines << " machines; " << caught << "/" << controls
             << " corruptions caught";
}

void bijection_obstruction(Outcome & o)
{
    std::size_t checked = 0, rejected = 0, oracle_agrees = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        auto states = StateSet::numbered(n);
        auto bij = full_bijection_machine(states);
        auto all = full_transition_set(states);
        const auto k = bij.functions().size();
        // Isomorphism needs |Phi'| = n!, so only subsets of that size matter.
        std::vector<bool> choose(all.size(), false);
        std::fill(choose.end() - static_cast<long>(k), choose.end(), true);
        do {
            std::vector<TransitionFunction> fns;
            bool collapsing = false;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (choose[i]) {
                    fns.push_back(all[i]);
                    collapsing = collapsing || ! all[i].is_bijective();
                }
            if (! collapsing)
                continue;
            auto other = make_machine(states, std::move(fns));
            ++checked;
            bool iso = find_isomorphism(bij, other).has_value();
            rejected += ! iso;
            oracle_agrees += iso == oracle::conjugation_isomorphic(bij, other);
            o.require(! iso, "bijection machine matched a collapsing machine");
        } while (std::next_permutation(choose.begin(), choose.end()));
    }
    o.require(oracle_agrees == checked, "oracle disagreement");
    o.detail << rejected << "/" << checked << " rejected, oracle agrees on " << oracle_agrees;
}

const std::vector<Criterion> criteria{
    {1, "cardinality reproduction", 1, cardinalities},
    {2, "worked isomorphism examples", 1, worked_examples},
    {3, "full-set isomorphism", 10, full_set_isomorphism},
    {4, "full machines are complete (fast and slow paths)", 60, full_machines_complete},
    {5, "reduction composition and commutation laws", 60, reduction_laws},
    {6, "isomorphism search vs brute-force oracle", 120, oracle_equivalence},
    {7, "TM compiler vs direct simulation", 60, tm_compiler},
    {8, "TM to memprogram lockstep", 60, tm_simulation},
    {9, "bijection-closure obstruction", 30, bijection_obstruction},
};

bool run(const Criterion & c)
{
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
        c.body(o);
    }
    catch (const std::exception & e) {
        o.pass = false;
        o.detail << "exception: " << e.what();
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.seconds) {
        o.pass = false;
        o.detail << "; exceeded " << c.seconds << " s";
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " [" << std::fixed
              << std::setprecision(2) << elapsed << " s] " << o.detail.str() << std::endl;
    return o.pass;
}

} // namespace

int main(int argc, char ** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: memalg_acceptance [--criterion N]\n";
            return 2;
        }
    }
    bool all = true;
    bool any = false;
    for (auto & c : criteria)
        if (only == 0 || c.number == only) {
            any = true;
            all = run(c) && all;
        }
    if (! any) {
        std::cerr << "no criterion " << only << '\n';
        return 2;
    }
    return all ? 0 : 1;
}
