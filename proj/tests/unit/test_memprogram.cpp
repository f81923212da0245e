#include <memalg/error.hpp>
#include <memalg/isomorphism.hpp>
#include <memalg/models.hpp>

#include "../support/oracles.hpp"

#include <doctest.h>

using namespace memalg;

namespace {
const char * switch_program = R"(mem switch
cell b 0 1
fn 0
entry read(b)=0 -> write(b)=1 next read(b) fn 0
entry read(b)=1 -> write(b)=0 next read(b) fn 0
init b=0 read(b) fn 0
)";

const char * unary_inc = R"(tm unary_inc
symbols _ 1
registers scan halt
cells 3
boundary reject
halting halt
rule scan 1 -> scan 1 R
rule scan _ -> halt 1 S
init tape 1 1 _ head 0 register scan
)";

const char * bitflip = R"(tm bitflip
symbols 0 1
registers q0 halt
cells 1
halting halt
rule q0 0 -> halt 1 S
rule q0 1 -> halt 0 S
)";
}

TEST_CASE("the one-cell negation program is the switch machine")
{
    auto p = parse_mem(switch_program);
    auto compiled = compile_mem(p);
    CHECK(compiled.machine.states().size() == 2);
    auto s = StateSet::numbered(2);
    auto sw = make_machine(s, {TransitionFunction(s, {1, 0})});
    CHECK(find_isomorphism(compiled.machine, sw));
    CHECK(compiled.machine.states().label(0) == "0/p0/f0");

    auto trace = run_mem(p, 3);
    CHECK(trace.status == MemTrace::Status::StepLimit);
    CHECK(trace.configs.size() == 4);
    CHECK(trace.configs[3].contents == std::vector<std::uint32_t>{1});
}

TEST_CASE("final configurations are fixed points")
{
    auto p = parse_mem(R"(mem done
cell x a b c
fn 0
default read(x) -> write(x)=c next read(x) fn 0
final x=c
init x=a read(x) fn 0
)");
    auto compiled = compile_mem(p);
    auto & f = compiled.machine.functions()[0];
    for (StateIndex s = 0; s < compiled.machine.states().size(); ++s) {
        auto r = run_to_fixpoint(f, s, 10);
        CHECK(r.outcome == RunResult::Outcome::Halted);
        CHECK(r.steps <= 1);
    }
    CHECK(run_mem(p, 10).status == MemTrace::Status::Final);
}

TEST_CASE("alternating functions fold into aggregate states")
{
    auto p = parse_mem(R"(mem alternate
cell x 0 1
cell y 0 1
fn 0
entry read(x)=0 -> write(x)=1 next read(y) fn 1
entry read(x)=1 -> write(x)=0 next read(y) fn 1
fn 1
default read(y) -> write(y)=1 next read(x) fn 0
init x=0 y=0 read(x) fn 0
)");
    auto compiled = compile_mem(p);
    CHECK(compiled.codec.state_count() == 4 * 2 * 2);
    CHECK(compiled.machine.functions().size() == 1);
    for (StateIndex s = 0; s < compiled.codec.state_count(); ++s)
        CHECK(compiled.codec.encode(compiled.codec.decode(s)) == s);
    auto trace = run_mem(p, 4);
    CHECK(trace.configs[1].function == 1);
    CHECK(trace.configs[2].function == 0);
    CHECK(trace.configs[2].contents == std::vector<std::uint32_t>{1, 1});
    // fn 0 has no table for read(y), fn 1 none for read(x): stuck states stay put.
    MemConfig stuck{{0, 0}, 1, 0};
    CHECK(step_mem(p, stuck).status == MemStep::Status::Halted);
}

TEST_CASE("memprogram validation")
{
    CHECK_THROWS_AS(parse_mem(R"(mem partial
cell b 0 1
fn 0
entry read(b)=0 -> halt
init b=0 read(b) fn 0
)"),
        ParseError);
    CHECK_THROWS_AS(parse_mem("mem m\ncell b 0 1\nfn 0\nentry read(b)=2 -> halt\ninit b=0 read(b) fn 0\n"), ParseError);
    CHECK_THROWS_AS(parse_mem("mem m\ncell b 0 1\nfn 0\ndefault read(b) -> next read(b) fn 3\ninit b=0 read(b) fn 0\n"), ParseError);
    CHECK_THROWS_AS(parse_mem("mem m\ncell b 0 1\nfn 1\ndefault read(b) -> halt\ninit b=0 read(b) fn 1\n"), ParseError);
    CHECK_THROWS_AS(parse_mem("mem m\ncell b 0 1\nfn 0\ndefault read(b) -> halt\n"), ParseError);
    CHECK_THROWS_AS(parse_mem("mem m\ncell b 0 1\nfn 0\ndefault read(c) -> halt\ninit b=0 read(b) fn 0\n"), ParseError);
    CHECK_THROWS_AS(
        parse_mem("mem m\ncell b 0 1\nfn 0\ndefault read(b) -> write(b,b)=0,1 next read(b) fn 0\ninit b=0 read(b) fn 0\n"), ParseError);

    auto p = parse_mem(switch_program);
    p.functions[0].by_selector[0].entries.erase(std::vector<std::uint32_t>{0});
    try {
        p.validate();
        FAIL("accepted a partial table");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::TotalityViolation);
    }
}

TEST_CASE("memprogram text format round-trips")
{
    for (auto text : {switch_program}) {
        auto p = parse_mem(text);
        CHECK(format_mem(parse_mem(format_mem(p))) == format_mem(p));
    }
    auto p = tm_to_mem(parse_turing(unary_inc));
    CHECK(format_mem(parse_mem(format_mem(p))) == format_mem(p));
}

TEST_CASE("Turing machine to memprogram")
{
    auto t = parse_turing(bitflip);
    auto p = tm_to_mem(t);
    CHECK(p.cells.size() == 3);
    CHECK(p.cells[0].alphabet == t.symbols);
    auto report = verify_lockstep(t, p, 10);
    CHECK_FALSE(report.divergence);
    CHECK(report.steps_verified == 1);
    CHECK(report.halted);
    CHECK(report.summary() == "verified 1 step(s), halted, no divergence");

    auto zero = verify_lockstep(t, p, 0);
    CHECK(zero.steps_verified == 0);
    CHECK_FALSE(zero.divergence);
    CHECK_FALSE(zero.halted);

    t.initial.reg = 1;
    auto halted = tm_to_mem(t);
    CHECK(step_mem(halted, halted.initial).status == MemStep::Status::Final);
}

TEST_CASE("unary increment runs in lockstep")
{
    auto t = parse_turing(unary_inc);
    auto p = tm_to_mem(t);
    for (std::size_t steps = 0; steps <= t.cells + 1; ++steps) {
        auto report = verify_lockstep(t, p, steps);
        CHECK_FALSE(report.divergence);
        CHECK(report.steps_verified == std::min<std::size_t>(steps, 3));
    }
    CHECK(verify_lockstep(t, p, 4).halted);

    t.initial.tape = {1, 1, 1};
    auto rejected = verify_lockstep(t, tm_to_mem(t), 10);
    CHECK(rejected.rejected);
    CHECK_FALSE(rejected.divergence);
    CHECK(rejected.steps_verified == 3);
}

TEST_CASE("a corrupted entry is caught where it is first used")
{
    auto t = parse_turing(unary_inc);
    auto p = tm_to_mem(t);
    // second step reads (scan, addr 1, tape 1); make it write a blank instead
    auto & table = p.functions[0].by_selector.at(1);
    auto & action = table.entries.at({0, 1, 1});
    action.write_values[0] = 0;
    auto report = verify_lockstep(t, p, 10);
    REQUIRE(report.divergence);
    CHECK(report.divergence->step == 2);
    CHECK(report.steps_verified == 1);
}

TEST_CASE("random machines run in lockstep from many configurations")
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 30; ++i) {
        auto t = oracle::random_tm(rng, 20);
        auto p = tm_to_mem(t);
        for (auto & c : oracle::distinct_configs(rng, t, 20)) {
            t.initial = c;
            p.initial = tm_to_mem(t).initial;
            auto report = verify_lockstep(t, p, 50);
            CHECK_MESSAGE(! report.divergence, report.summary());
        }
    }
}
